//! Sparse integer polynomials for cheap high-degree interval evaluation.

use num_bigint::BigInt;
use num_bigint::Sign;

use super::dyadic::{Dyadic, DyadicInterval};
use super::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    /// `(exponent, coefficient)`, merged and sorted by exponent.
    terms: Vec<(u64, i64)>,
}

impl SparsePoly {
    pub fn new(mut terms: Vec<(u64, i64)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(u64, i64)> = Vec::new();
        for (e, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        SparsePoly { terms: merged }
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.0)
    }

    pub fn to_dense(&self) -> IntPolynomial {
        let mut v = vec![BigInt::from(0); self.degree() as usize + 1];
        for &(e, c) in &self.terms {
            v[e as usize] += c;
        }
        IntPolynomial::new(v)
    }

    /// Enclosure of the value on a nonnegative interval (powers are monotone there).
    pub fn eval_nonneg(&self, x: &DyadicInterval, bits: u32) -> DyadicInterval {
        assert!(!x.lo.is_negative(), "eval_nonneg needs x ≥ 0");
        let mut acc = DyadicInterval::point(Dyadic::zero());
        for &(e, c) in &self.terms {
            let pw = x.pow(e, bits);
            let term = pw.mul_dyadic(&Dyadic::from_int(c), bits);
            acc = acc.add(&term, bits);
        }
        acc
    }

    /// Sign at a dyadic point, certified, or `None` if the enclosure contains 0 at `bits`.
    pub fn sign_at(&self, x: &Dyadic, bits: u32) -> Option<Sign> {
        let v = self.eval_nonneg(&DyadicInterval::point(x.clone()), bits);
        if v.is_positive() {
            Some(Sign::Plus)
        } else if v.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Bisection for the unique sign change in `[lo, hi]` down to width `2^-bits`.
    /// Uses interval evaluation; ambiguous midpoints retry at double precision and
    /// fall back to exact dense evaluation.
    pub fn bisect(&self, lo: &Dyadic, hi: &Dyadic, bits: u32) -> Option<DyadicInterval> {
        let work = bits + 64;
        let s_hi = self.exact_sign(hi, work);
        let s_lo = self.exact_sign(lo, work);
        if s_hi == Sign::NoSign || s_lo == Sign::NoSign || s_hi == s_lo {
            return None;
        }
        let (mut a, mut b) = (lo.clone(), hi.clone());
        while b.sub(&a).msb() > -(bits as i64) {
            let m = a.add(&b).shl(-1);
            let s = self.exact_sign(&m, work);
            if s == Sign::NoSign {
                return Some(DyadicInterval::point(m));
            }
            if s == s_hi {
                b = m;
            } else {
                a = m;
            }
        }
        Some(DyadicInterval::new(a, b))
    }

    fn exact_sign(&self, x: &Dyadic, bits: u32) -> Sign {
        let mut w = bits;
        for _ in 0..3 {
            if let Some(s) = self.sign_at(x, w) {
                return s;
            }
            w *= 2;
        }
        self.to_dense().sign_at(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_dense() {
        let s = SparsePoly::new(vec![(3, 1), (0, -2), (3, 1), (1, 0)]);
        assert_eq!(s.terms(), &[(0, -2), (3, 2)]);
        assert_eq!(s.to_dense(), IntPolynomial::from_i64(&[-2, 0, 0, 2]));
    }

    #[test]
    fn bisection_finds_cube_root() {
        let s = SparsePoly::new(vec![(3, 1), (0, -2)]);
        let iv = s.bisect(&Dyadic::one(), &Dyadic::from_int(2), 50).unwrap();
        let r = 2f64.powf(1.0 / 3.0);
        let (a, b) = iv.to_f64();
        assert!(a <= r && r <= b);
        assert!(iv.width().msb() <= -50);
        assert!(s.bisect(&Dyadic::from_int(2), &Dyadic::from_int(3), 10).is_none());
    }
}
