//! Run configuration: defaults, then a TOML file, then flags and `SPIDERS_*` variables.

use std::path::{Path, PathBuf};

use abelian_spiders::config::Budget;
use abelian_spiders::par::Mode;
use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub conductor_bound: u32,
    pub prime_budget: u32,
    pub subdivision_depth: u32,
    /// 0 lets the pool pick.
    pub worker_count: usize,
    pub journal_path: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let b = Budget::default();
        RunConfig {
            precision_bits: b.precision_bits,
            conductor_bound: b.conductor_bound,
            prime_budget: b.prime_budget,
            subdivision_depth: b.subdivision_depth,
            worker_count: 0,
            journal_path: None,
            data_dir: None,
        }
    }
}

/// The file form: every key optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub precision_bits: Option<u32>,
    pub conductor_bound: Option<u32>,
    pub prime_budget: Option<u32>,
    pub subdivision_depth: Option<u32>,
    pub worker_count: Option<usize>,
    pub journal_path: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Layers `over` on top of `self`.
    pub fn merge(self, over: FileConfig) -> FileConfig {
        FileConfig {
            precision_bits: over.precision_bits.or(self.precision_bits),
            conductor_bound: over.conductor_bound.or(self.conductor_bound),
            prime_budget: over.prime_budget.or(self.prime_budget),
            subdivision_depth: over.subdivision_depth.or(self.subdivision_depth),
            worker_count: over.worker_count.or(self.worker_count),
            journal_path: over.journal_path.or(self.journal_path),
            data_dir: over.data_dir.or(self.data_dir),
        }
    }

    pub fn resolve(self) -> Result<RunConfig> {
        let d = RunConfig::default();
        let c = RunConfig {
            precision_bits: self.precision_bits.unwrap_or(d.precision_bits),
            conductor_bound: self.conductor_bound.unwrap_or(d.conductor_bound),
            prime_budget: self.prime_budget.unwrap_or(d.prime_budget),
            subdivision_depth: self.subdivision_depth.unwrap_or(d.subdivision_depth),
            worker_count: self.worker_count.unwrap_or(d.worker_count),
            journal_path: self.journal_path,
            data_dir: self.data_dir,
        };
        for (name, v) in [
            ("precision_bits", c.precision_bits),
            ("conductor_bound", c.conductor_bound),
            ("prime_budget", c.prime_budget),
            ("subdivision_depth", c.subdivision_depth),
        ] {
            if v == 0 {
                bail!("{name} must be positive");
            }
        }
        Ok(c)
    }
}

impl RunConfig {
    pub fn budget(&self, mode: Mode) -> Budget {
        Budget {
            precision_bits: self.precision_bits,
            conductor_bound: self.conductor_bound,
            prime_budget: self.prime_budget,
            subdivision_depth: self.subdivision_depth,
            mode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let file: FileConfig = toml::from_str("precision_bits = 200\nprime_budget = 7\n").unwrap();
        let flags = FileConfig { prime_budget: Some(9), ..Default::default() };
        let c = file.merge(flags).resolve().unwrap();
        assert_eq!((c.precision_bits, c.prime_budget), (200, 9));
        assert_eq!(c.conductor_bound, RunConfig::default().conductor_bound);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(toml::from_str::<FileConfig>("precision = 3").is_err());
        let zero = FileConfig { conductor_bound: Some(0), ..Default::default() };
        assert!(zero.resolve().is_err());
    }
}
