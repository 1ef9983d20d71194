//! Certified caps on the legs of an abelian 3-spider with `M(λ² - 2) ≥ 14/5`.
//!
//! Under that assumption `D = [Q(λ²):Q] ≤ 12`. The a-cap comes from a norm
//! argument on `2λ² - 9`; the b- and c-caps from norms of the limit polynomials
//! evaluated at ρ².

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::rho::{lambda2_from_rho2, one_leg_limit, root_above_one, star_class, three_spider_rho2, two_leg_limit};
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::polyzq::dyadic::parse_decimal;
use crate::polyzq::elementary::pow_rational;
use crate::polyzq::{Dyadic, DyadicInterval, SparsePoly};
use crate::spider::three_spider_v;

/// Exponents of `|x|, |x-1|, |x-2|, |x-3|` in the weighted product.
const WEIGHTS: [(i64, i64, i64); 4] = [(0, 52, 100), (1, 337, 1000), (2, 3, 10), (3, 13, 100)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCaps {
    /// Upper bound for `|2x-9| Π|x-k|^w_k` on `[0,4]`.
    #[serde(with = "crate::serde_util::rational")]
    pub product_cap: BigRational,
    /// Upper bound for `Π|x-k|^w_k` on `[4, 9/2]`.
    #[serde(with = "crate::serde_util::rational")]
    pub derivative_cap: BigRational,
    pub max_degree: u32,
}

impl ProductCaps {
    /// The constants as printed: 5.58, 4.63 and `D ≤ 12`.
    pub fn printed() -> Self {
        ProductCaps {
            product_cap: parse_decimal("5.58").unwrap(),
            derivative_cap: parse_decimal("4.63").unwrap(),
            max_degree: 12,
        }
    }

    /// A product cap that certifies; the true maximum is about 5.6332.
    pub fn certified() -> Self {
        ProductCaps { product_cap: parse_decimal("5.64").unwrap(), ..Self::printed() }
    }
}

fn abs_hull(iv: &DyadicInterval, k: i64) -> DyadicInterval {
    let s = iv.sub(&DyadicInterval::point(Dyadic::from_int(k)), 256);
    let hi = s.abs_upper();
    let lo = if s.contains_zero() { Dyadic::zero() } else { s.abs_lower() };
    DyadicInterval::new(lo, hi)
}

/// Enclosure of `Π|x-k|^w_k` over `iv`.
fn weighted(iv: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    let mut acc = DyadicInterval::point(Dyadic::one());
    for &(k, n, d) in &WEIGHTS {
        let q = BigRational::new(BigInt::from(n), BigInt::from(d));
        acc = acc.mul(&pow_rational(&abs_hull(iv, k), &q, bits)?, bits);
    }
    Ok(acc)
}

fn product(iv: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    let lin = abs_hull(&iv.shl(1), 9);
    Ok(weighted(iv, bits)?.mul(&lin, bits))
}

fn bound_on(
    f: impl Fn(&DyadicInterval) -> Result<DyadicInterval>,
    domain: DyadicInterval,
    cap: &BigRational,
    what: &str,
) -> Result<usize> {
    let cap = DyadicInterval::from_rational(cap, 64);
    let mut stack = vec![domain];
    let mut boxes = 0usize;
    while let Some(iv) = stack.pop() {
        let v = f(&iv)?;
        if v.hi < cap.lo {
            boxes += 1;
            continue;
        }
        let m = iv.mid();
        let at_mid = f(&DyadicInterval::point(m.clone()))?;
        if at_mid.lo > cap.hi {
            return Err(Error::Certification(format!(
                "{what} is {} > cap at x = {} in {}",
                at_mid.display_with(8),
                m.to_decimal(8),
                iv.display_with(8)
            )));
        }
        if iv.width().msb() < -40 {
            return Err(Error::Certification(format!("{what} not separated from the cap on {}", iv.display_with(12))));
        }
        stack.push(DyadicInterval::new(m.clone(), iv.hi.clone()));
        stack.push(DyadicInterval::new(iv.lo, m));
    }
    Ok(boxes)
}

/// Certifies `|2x-9| Π|x-k|^w_k < cap` on `[0,4]`; returns the number of boxes used.
pub fn certify_product_cap(cap: &BigRational, bits: u32) -> Result<usize> {
    bound_on(|iv| product(iv, bits), DyadicInterval::from_ints(0, 4), cap, "weighted product")
}

/// Certifies `Π|x-k|^w_k < cap` on `[4, 9/2]`, where λ² lives.
pub fn certify_derivative_cap(cap: &BigRational, bits: u32) -> Result<usize> {
    let dom = DyadicInterval::new(Dyadic::from_int(4), Dyadic::from_int(9).shl(-1));
    bound_on(|iv| weighted(iv, bits), dom, cap, "weighted product without 2x-9")
}

/// `1 / (2·derivative_cap·product_cap^(D-1))`, the forced gap `|λ² - 9/2|`.
pub fn gap_bound(caps: &ProductCaps, bits: u32) -> DyadicInterval {
    let p = DyadicInterval::from_rational(&caps.product_cap, bits + 16);
    let d = DyadicInterval::from_rational(&caps.derivative_cap, bits + 16);
    let den = p.pow(caps.max_degree.saturating_sub(1) as u64, bits + 16).mul(&d, bits + 16).shl(1);
    den.recip(bits).expect("positive caps")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABoundReport {
    pub caps: ProductCaps,
    pub gap: DyadicInterval,
    pub a_max: u32,
    pub boxes: usize,
}

/// `9/2 - λ²(a,a,a) > gap`, decided with growing precision.
fn passes_gap(a: u32, gap: &DyadicInterval) -> bool {
    let half9 = Dyadic::from_int(9).shl(-1);
    let mut bits = 96;
    loop {
        let Some(u) = three_spider_rho2(a, a, a, bits) else { return true };
        let l2 = lambda2_from_rho2(&u, bits);
        let diff = DyadicInterval::new(half9.sub(&l2.hi), half9.sub(&l2.lo));
        if diff.lo > gap.hi {
            return true;
        }
        if diff.hi < gap.lo || bits > 2048 {
            return false;
        }
        bits *= 2;
    }
}

/// Certifies both caps, then returns the largest `a` with `9/2 - λ²(a,a,a)` above the gap.
pub fn a_bound_with(caps: &ProductCaps, bits: u32) -> Result<ABoundReport> {
    let boxes = certify_product_cap(&caps.product_cap, bits)? + certify_derivative_cap(&caps.derivative_cap, bits)?;
    let gap = gap_bound(caps, 128);
    let mut a = 1;
    while passes_gap(a + 1, &gap) {
        a += 1;
    }
    Ok(ABoundReport { caps: caps.clone(), gap, a_max: a, boxes })
}

/// The cap on the shortest leg, `a ≤ 30`.
pub fn three_spider_a_bound() -> Result<u32> {
    Ok(a_bound_with(&ProductCaps::certified(), 48)?.a_max)
}

/// `|p(ρ²)| ≤ threshold` for the given spider, decided with growing precision.
fn below_threshold(p: &SparsePoly, legs: (u32, u32, u32), threshold: &DyadicInterval) -> bool {
    let (a, b, c) = legs;
    let mut bits = 128 + 2 * (a + b + c);
    loop {
        let u = three_spider_rho2(a, b, c, bits).expect("hyperbolic spider");
        let v = p.eval_nonneg(&u, bits + 32).abs();
        if v.hi <= threshold.lo {
            return true;
        }
        if v.lo > threshold.hi || bits > 8192 {
            return false;
        }
        bits *= 2;
    }
}

fn inv_pow(base: i64, e: u64, bits: u32) -> DyadicInterval {
    DyadicInterval::from_ints(base, base).pow(e, bits).recip(bits).expect("nonzero")
}

/// The point `u*` below the limit root where `p(u*) = -threshold`, bracketed by
/// `lo` (where `p < -threshold`) and the root of `p` above 1.
fn threshold_point(p: &SparsePoly, lo: &Dyadic, threshold: &DyadicInterval, bits: u32) -> Option<DyadicInterval> {
    let shifted = |x: &Dyadic| -> Option<bool> {
        let v = p.eval_nonneg(&DyadicInterval::point(x.clone()), bits + 64).add(threshold, bits + 64);
        if v.is_negative() {
            Some(false)
        } else if v.is_positive() {
            Some(true)
        } else {
            None
        }
    };
    let mut hi = root_above_one(p, bits)?.hi;
    let mut lo = lo.clone();
    if shifted(&lo) != Some(false) || shifted(&hi) != Some(true) {
        return None;
    }
    while hi.sub(&lo).msb() > -(bits as i64) {
        let m = lo.add(&hi).shl(-1);
        match shifted(&m) {
            Some(true) => hi = m,
            Some(false) => lo = m,
            None => break,
        }
    }
    Some(DyadicInterval::new(lo, hi))
}

/// First member of the family `n ↦ legs(n)`, `n ≥ start`, at which `|p(ρ²)| ≤ threshold`.
/// Failure is monotone in `n` because ρ increases towards the root of `p`; the
/// search compares each spider's `V` against `u*` and confirms the boundary exactly.
fn first_failure(p: &SparsePoly, threshold: &DyadicInterval, start: u32, legs: impl Fn(u32) -> (u32, u32, u32)) -> u32 {
    let exact = |n: u32| below_threshold(p, legs(n), threshold);
    if exact(start) {
        return start;
    }
    let (a, b, c) = legs(start);
    let bits = 96 + a + b;
    let u0 = three_spider_rho2(a, b, c, bits).expect("hyperbolic spider");
    let star = threshold_point(p, &u0.lo, threshold, bits);
    let test = |n: u32| -> bool {
        if let Some(us) = &star {
            let (a, b, c) = legs(n);
            let v = three_spider_v(a, b, c);
            if v.sign_at(&us.hi, bits + 64) == Some(Sign::Minus) {
                return true;
            }
            if v.sign_at(&us.lo, bits + 64) == Some(Sign::Plus) {
                return false;
            }
        }
        exact(n)
    };
    let (mut lo, mut step) = (start, 1u32);
    let mut hi = loop {
        let n = lo + step;
        if test(n) {
            break n;
        }
        lo = n;
        step *= 2;
    };
    while hi - lo > 1 {
        let m = lo + (hi - lo) / 2;
        if test(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    if exact(hi) && !exact(hi - 1) {
        hi
    } else {
        (start..).find(|&n| exact(n)).expect("ρ tends to the root of the limit polynomial")
    }
}

/// First `b ≥ a` with `(a,b,b)` hyperbolic and `|1 - 2ρ^(2a+2) + ρ^(2a+4)| ≤ 4^-23`.
pub fn b_row(a: u32) -> u32 {
    let start = (a.max(1)..).find(|&b| star_class(a, b, b).is_gt()).expect("hyperbolic for large b");
    first_failure(&one_leg_limit(a), &inv_pow(4, 23, 96), start, |b| (a, b, b))
}

/// First `c ≥ b` where `|ρ^(2a+2b+4) - 2ρ^(2a+2b+2) + ρ^(2b) + ρ^(2a) - 1| ≤ 6^-23`.
/// `None` when every `(a,b,c)` spider is Dynkin or affine.
pub fn three_spider_c_bound(a: u32, b: u32) -> Result<Option<u32>> {
    if a > b {
        return Err(Error::Precondition(format!("c bound needs a ≤ b, got ({a},{b})")));
    }
    // the limit (a,b,∞) has λ > 2 exactly when 1/(a+1) + 1/(b+1) < 1
    if (a as u64 + 1) * (b as u64 + 1) <= a as u64 + b as u64 + 2 {
        return Ok(None);
    }
    let start = (b..).find(|&c| star_class(a, b, c).is_gt()).expect("hyperbolic for large c");
    Ok(Some(first_failure(&two_leg_limit(a, b), &inv_pow(6, 23, 96), start, |c| (a, b, c))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    /// `a → ` first failing `min(b,c)`.
    pub rows: BTreeMap<u32, u32>,
    /// `(a,b) →` first failing `c`, for every `b ≤ rows[a]`.
    pub c_rows: BTreeMap<(u32, u32), u32>,
    pub a_max: u32,
    pub b_max: u32,
    pub c_max: u32,
}

/// The b-table for `a = 1..=a_max`.
pub fn three_spider_b_table(a_max: u32, mode: Mode) -> BTreeMap<u32, u32> {
    let rows = par::map(mode, (1..=a_max).collect(), |a| (a, b_row(a)));
    rows.into_iter().collect()
}

/// All three caps.
pub fn three_spider_bounds(mode: Mode) -> Result<BoundTable> {
    let a_max = three_spider_a_bound()?;
    let rows = three_spider_b_table(a_max, mode);
    let pairs: Vec<(u32, u32)> = rows.iter().flat_map(|(&a, &bm)| (a..=bm).map(move |b| (a, b))).collect();
    let cs = par::map(mode, pairs, |(a, b)| three_spider_c_bound(a, b).map(|c| ((a, b), c)));
    let mut c_rows = BTreeMap::new();
    for r in cs {
        if let ((a, b), Some(c)) = r? {
            c_rows.insert((a, b), c);
        }
    }
    let b_max = rows.values().copied().max().unwrap_or(0);
    let c_max = c_rows.values().copied().max().unwrap_or(0);
    Ok(BoundTable { rows, c_rows, a_max, b_max, c_max })
}

impl BoundTable {
    /// Whether `(a,b,c)` with `a ≤ b ≤ c` lies inside the caps.
    pub fn admits(&self, a: u32, b: u32, c: u32) -> bool {
        match self.rows.get(&a) {
            None => false,
            Some(&bm) => b <= bm && self.c_rows.get(&(a, b)).is_none_or(|&cm| c <= cm),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_gap_value() {
        let g = gap_bound(&ProductCaps::printed(), 96);
        let (lo, hi) = g.to_f64();
        assert!(lo > 6.6132e-10 && hi < 6.6133e-10, "{lo}");
    }

    #[test]
    fn printed_product_cap_fails_near_its_maximum() {
        let err = certify_product_cap(&ProductCaps::printed().product_cap, 40).unwrap_err();
        let Error::Certification(msg) = err else { panic!("{err:?}") };
        assert!(msg.contains("> cap at x = 0.5"), "{msg}");
        assert!(certify_derivative_cap(&ProductCaps::printed().derivative_cap, 40).is_ok());
    }

    #[test]
    fn smaller_degree_gives_smaller_cap() {
        let caps = ProductCaps { max_degree: 6, ..ProductCaps::certified() };
        let r = a_bound_with(&caps, 40).unwrap();
        assert!(r.gap.lo > gap_bound(&ProductCaps::certified(), 64).hi);
        assert!(r.a_max < 30);
    }

    #[test]
    fn first_rows() {
        assert_eq!(b_row(1), 67);
        assert_eq!(b_row(2), 55);
    }

    #[test]
    fn c_bound_edge_cases() {
        assert!(three_spider_c_bound(3, 2).is_err());
        assert_eq!(three_spider_c_bound(1, 1).unwrap(), None);
        let c = three_spider_c_bound(2, 3).unwrap().unwrap();
        let p = two_leg_limit(2, 3);
        let thr = inv_pow(6, 23, 96);
        assert!(below_threshold(&p, (2, 3, c), &thr));
        assert!(!below_threshold(&p, (2, 3, c - 1), &thr));
    }
}
