//! Real-root isolation and refinement.

use std::fmt;

use num_bigint::{BigInt, Sign};
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, DyadicInterval};
use super::gcd::{squarefree_decomposition, squarefree_part};
use super::poly::IntPolynomial;
use super::sturm::SturmSequence;
use crate::error::{Error, Result};

/// One isolated real root: an interval whose interior holds exactly one root of
/// the squarefree `factor`, and its multiplicity in the original polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCandidate {
    pub interval: DyadicInterval,
    pub factor: IntPolynomial,
    pub multiplicity: usize,
}

/// An irreducible primitive polynomial together with an isolating interval.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    pub minpoly: IntPolynomial,
    pub root: DyadicInterval,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in {:?}", self.minpoly, self.root)
    }
}

impl AlgebraicNumber {
    /// Checks the invariants and normalizes a point interval into an open one.
    pub fn new(minpoly: IntPolynomial, root: DyadicInterval) -> Result<Self> {
        let minpoly = minpoly.primitive_part();
        if minpoly.is_constant() {
            return Err(Error::Precondition("constant minimal polynomial".into()));
        }
        let root = if root.is_point() { open_around_point(&minpoly, &root.lo)? } else { root };
        let n = SturmSequence::new(&minpoly).count(&root.lo, &root.hi)?;
        if n != 1 {
            return Err(Error::Precondition(format!("interval holds {n} roots of {minpoly}")));
        }
        Ok(AlgebraicNumber { minpoly, root })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn refine(&self, bits: u32) -> DyadicInterval {
        refine_root(self, bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.refine(60).mid().to_f64()
    }
}

/// Interval of width at most `2^-bits` containing the root.
pub fn refine_root(a: &AlgebraicNumber, bits: u32) -> DyadicInterval {
    refine_interval(&a.minpoly, &a.root, bits)
}

/// Bisection on a squarefree `p` whose single root in `iv` is a sign change.
pub fn refine_interval(p: &IntPolynomial, iv: &DyadicInterval, bits: u32) -> DyadicInterval {
    let target = -(bits as i64);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = p.sign_at(&lo);
    if slo == Sign::NoSign {
        return DyadicInterval::point(lo);
    }
    if p.sign_at(&hi) == Sign::NoSign {
        return DyadicInterval::point(hi);
    }
    while hi.sub(&lo).msb() > target {
        let mid = lo.add(&hi).shl(-1);
        let s = p.sign_at(&mid);
        if s == Sign::NoSign {
            return DyadicInterval::point(mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    DyadicInterval::new(lo, hi)
}

/// Shrinks `[x - 2^-k, x + 2^-k]` until it isolates the root `x` of `p`.
fn open_around_point(p: &IntPolynomial, x: &Dyadic) -> Result<DyadicInterval> {
    if p.sign_at(x) != Sign::NoSign {
        return Err(Error::Precondition("point interval is not a root".into()));
    }
    let s = SturmSequence::new(p);
    let mut k = 1i64;
    loop {
        let eps = Dyadic::one().shl(-k);
        let (lo, hi) = (x.sub(&eps), x.add(&eps));
        if p.sign_at(&lo) != Sign::NoSign && p.sign_at(&hi) != Sign::NoSign && s.count(&lo, &hi)? == 1 {
            return Ok(DyadicInterval::new(lo, hi));
        }
        k += 1;
    }
}

/// Isolating intervals for the distinct real roots of `p`, sorted increasingly.
/// Interval endpoints are never roots of `p`.
pub fn isolate_squarefree(p: &IntPolynomial) -> Vec<DyadicInterval> {
    if p.is_constant() {
        return vec![];
    }
    let s = SturmSequence::new(p);
    let k = p.root_bound_log2() as i64 + 1;
    let b = Dyadic::one().shl(k);
    let mut out = Vec::new();
    let mut stack = vec![(b.neg(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = s.variations_at(&lo) - s.variations_at(&hi);
        match n {
            0 => {}
            1 => out.push(DyadicInterval::new(lo, hi)),
            _ => {
                let mid = split_point(p, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Midpoint of `(lo, hi)`, nudged off any root of `p`.
fn split_point(p: &IntPolynomial, lo: &Dyadic, hi: &Dyadic) -> Dyadic {
    let mid = lo.add(hi).shl(-1);
    if p.sign_at(&mid) != Sign::NoSign {
        return mid;
    }
    let w = hi.sub(lo);
    let mut t = 3;
    loop {
        let step = w.shl(-t);
        for cand in [mid.add(&step), mid.sub(&step)] {
            if p.sign_at(&cand) != Sign::NoSign {
                return cand;
            }
        }
        t += 1;
    }
}

/// Isolates every distinct real root, with multiplicities from the squarefree decomposition.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RootCandidate> {
    let mut all: Vec<RootCandidate> = Vec::new();
    for (f, m) in squarefree_decomposition(p) {
        for iv in isolate_squarefree(&f) {
            all.push(RootCandidate { interval: iv, factor: f.clone(), multiplicity: m });
        }
    }
    all.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    // roots of different factors are distinct: refine until intervals are disjoint
    loop {
        let mut clash = None;
        for i in 1..all.len() {
            if all[i - 1].interval.overlaps(&all[i].interval) {
                clash = Some(i);
                break;
            }
        }
        let Some(i) = clash else { break };
        for j in [i - 1, i] {
            let c = &all[j];
            let w = -c.interval.width().msb() + 1;
            all[j].interval = refine_interval(&c.factor, &c.interval, w.max(1) as u32);
        }
        all.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    }
    // exact hits become small open intervals clear of their neighbours
    for i in 0..all.len() {
        if !all[i].interval.is_point() {
            continue;
        }
        let x = all[i].interval.lo.clone();
        let mut k = 1i64;
        loop {
            let eps = Dyadic::one().shl(-k);
            let iv = DyadicInterval::new(x.sub(&eps), x.add(&eps));
            let clear = (i == 0 || all[i - 1].interval.hi < iv.lo)
                && (i + 1 == all.len() || iv.hi < all[i + 1].interval.lo);
            if clear && p.sign_at(&iv.lo) != Sign::NoSign && p.sign_at(&iv.hi) != Sign::NoSign {
                all[i].interval = iv;
                break;
            }
            k += 1;
        }
    }
    all
}

/// Largest real root of `p`, as an isolating interval for the squarefree part.
pub fn largest_real_root(p: &IntPolynomial) -> Option<(IntPolynomial, DyadicInterval)> {
    let sf = squarefree_part(p);
    isolate_squarefree(&sf).pop().map(|iv| (sf, iv))
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`, where
/// `lo`/`hi` may be roots themselves (they are excluded).
pub fn count_roots_open(p: &IntPolynomial, lo: &BigInt, hi: &BigInt) -> usize {
    let sf = squarefree_part(p);
    let lo_d = Dyadic::from_bigint(lo.clone());
    let hi_d = Dyadic::from_bigint(hi.clone());
    isolate_squarefree(&sf)
        .into_iter()
        .filter(|iv| {
            let r = refine_away(&sf, iv, &lo_d, &hi_d);
            if r.is_point() {
                lo_d < r.lo && r.lo < hi_d
            } else {
                lo_d <= r.lo && r.hi <= hi_d
            }
        })
        .count()
}

/// Cuts `iv` at reference points so it no longer straddles them
/// (a root equal to a reference point collapses to a point interval).
fn refine_away(p: &IntPolynomial, iv: &DyadicInterval, a: &Dyadic, b: &Dyadic) -> DyadicInterval {
    let mut cur = iv.clone();
    for x in [a, b] {
        if !(cur.lo < *x && *x < cur.hi) {
            continue;
        }
        let sx = p.sign_at(x);
        if sx == Sign::NoSign {
            return DyadicInterval::point(x.clone());
        }
        cur = if sx == p.sign_at(&cur.lo) {
            DyadicInterval::new(x.clone(), cur.hi.clone())
        } else {
            DyadicInterval::new(cur.lo.clone(), x.clone())
        };
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn isolates_sqrt2() {
        let r = isolate_real_roots(&p(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        let s = std::f64::consts::SQRT_2;
        let (a, b) = r[0].interval.to_f64();
        assert!(a < -s && -s < b);
        let (a, b) = r[1].interval.to_f64();
        assert!(a < s && s < b);
    }

    #[test]
    fn double_root_at_zero() {
        let r = isolate_real_roots(&p(&[0, 0, 1]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!(r[0].interval.lo.is_negative() && r[0].interval.hi.is_positive());
    }

    #[test]
    fn gamma_cubic() {
        let f = p(&[-4, 5, -6, 1]);
        let r = isolate_real_roots(&f);
        assert_eq!(r.len(), 1);
        let a = AlgebraicNumber::new(f, r[0].interval.clone()).unwrap();
        let iv = refine_root(&a, 40);
        let g = 5.184_387_171_4;
        assert!(iv.lo.to_f64() <= g + 1e-9 && iv.hi.to_f64() >= g - 1e-9);
        assert!(iv.width().msb() <= -40);
    }

    #[test]
    fn refinement_widths() {
        let f = p(&[-2, 0, 1]);
        let a = AlgebraicNumber::new(f, DyadicInterval::from_ints(1, 2)).unwrap();
        let iv = refine_root(&a, 30);
        assert!(iv.width().msb() <= -30);
        let (lo, hi) = iv.to_f64();
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
    }

    #[test]
    fn rational_roots_and_mixed_factors() {
        // (2x-1)(x-1)^2(x^2-2): roots 1/2, 1, ±√2
        let f = &(&p(&[-1, 2]) * &p(&[-1, 1]).pow(2)) * &p(&[-2, 0, 1]);
        let r = isolate_real_roots(&f);
        assert_eq!(r.len(), 4);
        for w in r.windows(2) {
            assert!(w[0].interval.hi <= w[1].interval.lo);
        }
        assert_eq!(r.iter().map(|c| c.multiplicity).collect::<Vec<_>>(), vec![1, 1, 2, 1]);
        let a = AlgebraicNumber::new(p(&[-1, 2]), DyadicInterval::point(Dyadic::one().shl(-1))).unwrap();
        assert!(!a.root.is_point());
    }

    #[test]
    fn open_counts() {
        // x(x-2)(x-1): only 1 lies strictly inside (0, 2)
        let f = &(&p(&[0, 1]) * &p(&[-2, 1])) * &p(&[-1, 1]);
        assert_eq!(count_roots_open(&f, &BigInt::from(0), &BigInt::from(2)), 1);
        assert_eq!(count_roots_open(&f, &BigInt::from(-1), &BigInt::from(3)), 3);
    }
}
