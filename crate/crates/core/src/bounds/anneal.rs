//! Simulated annealing over the weights `a_N`, scored by the minimum of `B` on `[0, 4]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bfunc::BFunction;
use super::cert::{verify_b_nonneg_with, NonnegCertificate};
use crate::error::Result;
use crate::par::Mode;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnnealResult {
    pub weights: Vec<(u64, u32)>,
    /// Floating-point grid minimum of the best weights.
    pub grid_min: f64,
    /// Certificate for the best weights (complete only if `B ≥ 0` was proved).
    pub certificate: NonnegCertificate,
}

/// Grid minimum of `B`, dense near 0 where the tabulated minimum sits.
pub fn grid_min(b: &BFunction) -> f64 {
    let fine = (1..10_000).map(|i| i as f64 * 1e-6);
    let coarse = (1..40_000).map(|i| i as f64 * 1e-4);
    fine.chain(coarse).map(|x| b.eval_f64(x)).filter(|v| !v.is_nan()).fold(f64::INFINITY, f64::min)
}

/// Anneals from the tabulated weights; the result never replaces them elsewhere.
pub fn anneal_coefficients(seed: u64, iterations: u32, mode: Mode) -> Result<AnnealResult> {
    let base = BFunction::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = base.weights();
    let mut cur_score = grid_min(&base);
    let (mut best, mut best_score) = (cur.clone(), cur_score);
    for it in 0..iterations {
        let temp = 1e-3 * (1.0 - it as f64 / iterations.max(1) as f64) + 1e-6;
        let mut cand = cur.clone();
        let i = rng.gen_range(0..cand.len());
        let step: i64 = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3);
        cand[i] = (cand[i] as i64 + step).max(0) as u32;
        let score = grid_min(&base.with_weights(&cand));
        if score > cur_score || rng.gen::<f64>() < ((score - cur_score) / temp).exp() {
            cur = cand;
            cur_score = score;
            if score > best_score {
                best = cur.clone();
                best_score = score;
            }
        }
    }
    let b = base.with_weights(&best);
    let certificate = verify_b_nonneg_with(&b, 40, 128, mode)?;
    let weights = b.terms.iter().map(|t| (t.n, t.weight)).collect();
    Ok(AnnealResult { weights, grid_min: best_score, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_min_of_known_functions() {
        assert!((grid_min(&BFunction::standard()) - 0.00599).abs() < 1e-5);
        let linear = BFunction::standard().with_weights(&[0; 16]);
        assert!((grid_min(&linear) + 1.75).abs() < 1e-3);
    }

    #[test]
    fn annealing_is_reproducible() {
        let a = anneal_coefficients(7, 3, Mode::Sequential).unwrap();
        let b = anneal_coefficients(7, 3, Mode::Sequential).unwrap();
        assert_eq!(a.weights, b.weights);
        assert!(a.grid_min >= grid_min(&BFunction::standard()));
    }
}
