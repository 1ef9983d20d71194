//! Sturm sequences and exact root counting on dyadic intervals.

use num_bigint::Sign;
use num_traits::Signed;

use super::dyadic::{Dyadic, DyadicInterval};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let mut seq = vec![p.primitive_part()];
        let d = p.derivative();
        if d.is_zero() {
            return SturmSequence { seq };
        }
        seq.push(d.primitive_part());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.is_constant() {
                break;
            }
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let delta = a.deg() - b.deg();
            let flip = b.leading().is_negative() && (delta + 1) % 2 == 1;
            let next = if flip { r } else { -r };
            let c = next.content();
            seq.push(next.div_scalar_exact(&c));
        }
        SturmSequence { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn changes(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut n = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        Self::changes(self.seq.iter().map(|q| q.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::changes(self.seq.iter().map(|q| q.leading().sign()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::changes(self.seq.iter().map(|q| {
            let s = q.leading().sign();
            if q.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in the open interval; endpoints must not be roots.
    pub fn count(&self, lo: &Dyadic, hi: &Dyadic) -> Result<usize> {
        let p = &self.seq[0];
        for e in [lo, hi] {
            if p.sign_at(e) == Sign::NoSign {
                return Err(Error::EndpointIsRoot(format!("{e}")));
            }
        }
        Ok(self.variations_at(lo).saturating_sub(self.variations_at(hi)))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }

    pub fn first(&self) -> &IntPolynomial {
        &self.seq[0]
    }
}

/// Exact number of distinct real roots of `p` strictly inside `iv`.
pub fn sturm_count(p: &IntPolynomial, iv: &DyadicInterval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SturmSequence::new(p).count(&iv.lo, &iv.hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn counts_on_known_polynomials() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &DyadicInterval::from_ints(0, 2)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[-4, 5, -6, 1]), &DyadicInterval::from_ints(4, 6)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[-1, 0, -2, 0, -2, 0, 1]), &DyadicInterval::from_ints(1, 2)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &DyadicInterval::from_ints(-2, 2)).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_an_error() {
        let e = sturm_count(&p(&[-1, 0, 1]), &DyadicInterval::from_ints(0, 1));
        assert!(matches!(e, Err(Error::EndpointIsRoot(_))));
    }

    #[test]
    fn counts_distinct_roots_of_non_squarefree() {
        // (x-1)^2 (x+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let s = SturmSequence::new(&f);
        assert_eq!(s.count_all(), 2);
        assert_eq!(SturmSequence::new(&p(&[1, 0, 1])).count_all(), 0);
        assert_eq!(SturmSequence::new(&p(&[0, 0, 0, 1])).count_all(), 1);
    }
}
