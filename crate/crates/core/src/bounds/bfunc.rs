//! The auxiliary function `B(x) = 9/4 - x - (1/1000) Σ a_N log|Ch_N(x)|`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclo::{ch_entries, ch_polynomial, ChEntry};
use crate::error::{Error, Result};
use crate::polyzq::elementary::ln_interval;
use crate::polyzq::{isolate_real_roots, refine_interval, Dyadic, DyadicInterval, IntPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BTerm {
    pub n: u64,
    pub ch: IntPolynomial,
    pub weight: u32,
}

/// `B` with integer weights `a_N` over a set of `Ch_N`, scaled by `1/scale`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFunction {
    pub terms: Vec<BTerm>,
    pub scale: u32,
}

/// A root of some `Ch_N` with positive weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Singularity {
    pub n: u64,
    pub root: DyadicInterval,
}

impl BFunction {
    /// The tabulated weights.
    pub fn standard() -> Self {
        Self::from_entries(ch_entries())
    }

    pub fn from_entries(entries: &[ChEntry]) -> Self {
        let terms = entries.iter().map(|e| BTerm { n: e.n, ch: e.poly.clone(), weight: e.a_n }).collect();
        BFunction { terms, scale: 1000 }
    }

    /// Same `N` set with different weights (used by the annealer).
    pub fn with_weights(&self, weights: &[u32]) -> Self {
        assert_eq!(weights.len(), self.terms.len());
        let terms = self
            .terms
            .iter()
            .zip(weights)
            .map(|(t, &w)| BTerm { weight: w, ..t.clone() })
            .collect();
        BFunction { terms, scale: self.scale }
    }

    /// Weights for an arbitrary list of `N`.
    pub fn from_weights(pairs: &[(u64, u32)]) -> Self {
        let terms = pairs.iter().map(|&(n, w)| BTerm { n, ch: ch_polynomial(n), weight: w }).collect();
        BFunction { terms, scale: 1000 }
    }

    pub fn weights(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.weight).collect()
    }

    fn active(&self) -> impl Iterator<Item = &BTerm> {
        self.terms.iter().filter(|t| t.weight > 0)
    }

    /// Roots of every weighted `Ch_N`, sorted; integer roots as points, others
    /// refined to width `2^-bits`.
    pub fn singularities(&self, bits: u32) -> Vec<Singularity> {
        let mut out: Vec<Singularity> = self
            .active()
            .flat_map(|t| {
                isolate_real_roots(&t.ch).into_iter().map(move |r| {
                    let root = if t.ch.deg() == 1 {
                        let x = -t.ch.coeff(0);
                        DyadicInterval::point(Dyadic::from_bigint(x))
                    } else {
                        refine_interval(&t.ch, &r.interval, bits)
                    };
                    Singularity { n: t.n, root }
                })
            })
            .collect();
        out.sort_by(|a, b| a.root.lo.cmp(&b.root.lo));
        out
    }

    /// Enclosure of `B` over `x`, or `Singularity(N)` if `|Ch_N|` cannot be
    /// bounded away from zero on `x`.
    pub fn eval(&self, x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
        self.eval_skipping(x, bits, None)
    }

    /// `B` without the term for `skip`.
    pub fn eval_skipping(&self, x: &DyadicInterval, bits: u32, skip: Option<u64>) -> Result<DyadicInterval> {
        let mut sum = DyadicInterval::point(Dyadic::zero());
        for t in self.active().filter(|t| Some(t.n) != skip) {
            let v = t.ch.eval_interval(x, bits).abs();
            if v.contains_zero() {
                return Err(Error::Singularity(t.n as u32));
            }
            let l = ln_interval(&v, bits)?;
            sum = sum.add(&l.mul_dyadic(&Dyadic::from_int(t.weight as i64), bits), bits);
        }
        let scaled = sum.div(&DyadicInterval::point(Dyadic::from_int(self.scale as i64)), bits)?;
        let base = DyadicInterval::from_ratio(9, 4, bits).sub(x, bits);
        Ok(base.sub(&scaled, bits))
    }

    /// Enclosure of `B(r)` for a rational `r`.
    pub fn eval_rational(&self, r: &BigRational, bits: u32) -> Result<DyadicInterval> {
        self.eval(&DyadicInterval::from_rational(r, bits + 8), bits)
    }

    /// Enclosure of the derivative `B'(x) = -1 - (1/scale) Σ a_N Ch_N'(x)/Ch_N(x)`.
    pub fn derivative(&self, x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
        let mut sum = DyadicInterval::point(Dyadic::zero());
        for t in self.active() {
            let v = t.ch.eval_interval(x, bits);
            if v.contains_zero() {
                return Err(Error::Singularity(t.n as u32));
            }
            let q = t.ch.derivative().eval_interval(x, bits).div(&v, bits)?;
            sum = sum.add(&q.mul_dyadic(&Dyadic::from_int(t.weight as i64), bits), bits);
        }
        let scaled = sum.div(&DyadicInterval::point(Dyadic::from_int(self.scale as i64)), bits)?;
        Ok(DyadicInterval::point(Dyadic::from_int(-1)).sub(&scaled, bits))
    }

    /// Floating-point value, for diagnostics and the annealer's coarse scans.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let s: f64 = self
            .active()
            .map(|t| {
                let v = t.ch.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + bigint_f64(c));
                t.weight as f64 * v.abs().ln()
            })
            .sum();
        2.25 - x - s / self.scale as f64
    }
}

fn bigint_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyzq::dyadic::parse_decimal;

    #[test]
    fn linear_part_with_zero_weights() {
        let b = BFunction::standard().with_weights(&[0; 16]);
        let v = b.eval(&DyadicInterval::from_ints(1, 1), 64).unwrap();
        assert!(v.contains_rational(&parse_decimal("1.25").unwrap()));
    }

    #[test]
    fn singularity_reported() {
        let b = BFunction::standard();
        // a root of Ch_5 = x^2 - 3x + 1
        let r = isolate_real_roots(&ch_polynomial(5)).pop().unwrap().interval;
        assert!(matches!(b.eval(&r, 64), Err(Error::Singularity(5))));
        assert!(matches!(b.eval(&DyadicInterval::from_ints(1, 1), 64), Err(Error::Singularity(3))));
    }

    #[test]
    fn singularities_lie_in_range() {
        let s = BFunction::standard().singularities(64);
        assert_eq!(s.len(), 1 + 1 + 1 + 2 + 3 + 1 + 3 + 1 + 4 + 2 + 2 + 6 + 2 + 3 + 5 + 6);
        assert!(s.iter().all(|x| x.root.lo >= Dyadic::zero() && x.root.hi <= Dyadic::from_int(4)));
    }
}
