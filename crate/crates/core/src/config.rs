//! Budgets shared by the classification engines.

use serde::{Deserialize, Serialize};

use crate::par::Mode;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Budget {
    pub precision_bits: u32,
    pub conductor_bound: u32,
    pub prime_budget: u32,
    pub subdivision_depth: u32,
    #[serde(skip)]
    pub mode: Mode,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            precision_bits: 128,
            conductor_bound: 2000,
            prime_budget: 50,
            subdivision_depth: 40,
            mode: Mode::Parallel,
        }
    }
}

impl Budget {
    pub fn sequential(mut self) -> Self {
        self.mode = Mode::Sequential;
        self
    }
}
