//! The Salem parameter ρ of a 3-spider and of its limits as legs grow.
//!
//! With `λ = t + 1/t` the PF eigenvalue, `u = ρ² = t²` is the unique root above 1
//! of the spider's numerator `V(u)`. All functions here work with `u`.

use std::cmp::Ordering;

use num_bigint::Sign;

use crate::polyzq::{Dyadic, DyadicInterval, SparsePoly};
use crate::spider::three_spider_v;

/// Compares λ of the 3-spider with 2: `Less` for Dynkin, `Equal` for affine Dynkin.
pub fn star_class(a: u32, b: u32, c: u32) -> Ordering {
    // 1/(a+1) + 1/(b+1) + 1/(c+1) against 1, cleared of denominators
    let (p, q, r) = (a as u64 + 1, b as u64 + 1, c as u64 + 1);
    (p * q * r).cmp(&(q * r + p * r + p * q))
}

/// `u^(a+b+2) - 2u^(a+b+1) + u^a + u^b - 1`: the limit of `V / u^(c+2)` as `c → ∞`.
pub fn two_leg_limit(a: u32, b: u32) -> SparsePoly {
    let (a, b) = (a as u64, b as u64);
    SparsePoly::new(vec![(a + b + 2, 1), (a + b + 1, -2), (a, 1), (b, 1), (0, -1)])
}

/// `u^(a+2) - 2u^(a+1) + 1`: the limit as both `b, c → ∞`.
pub fn one_leg_limit(a: u32) -> SparsePoly {
    let a = a as u64;
    SparsePoly::new(vec![(a + 2, 1), (a + 1, -2), (0, 1)])
}

fn eval_f64(p: &SparsePoly, x: f64) -> f64 {
    p.terms().iter().map(|&(e, c)| c as f64 * x.powi(e as i32)).sum()
}

fn sign(p: &SparsePoly, x: &Dyadic, bits: u32) -> Sign {
    let mut w = bits;
    for _ in 0..4 {
        if let Some(s) = p.sign_at(x, w) {
            return s;
        }
        w *= 2;
    }
    p.to_dense().sign_at(x)
}

/// The root above 1 of `p`, assuming `p` is negative just above 1, changes sign
/// once on `(1, ∞)` and is positive beyond. `None` if no such root is found.
pub fn root_above_one(p: &SparsePoly, bits: u32) -> Option<DyadicInterval> {
    let work = bits + 32;
    let mut hi = Dyadic::from_int(2);
    let mut tries = 0;
    while sign(p, &hi, work) != Sign::Plus {
        hi = hi.shl(1);
        tries += 1;
        if tries > 8 {
            return None;
        }
    }
    if let Some(iv) = quick_bracket(p, &hi, work) {
        return p.bisect(&iv.lo, &iv.hi, bits);
    }
    let one = Dyadic::one();
    let mut k = 1i64;
    let lo = loop {
        let x = one.add(&Dyadic::one().shl(-k));
        match sign(p, &x, work) {
            Sign::Minus => break x,
            Sign::NoSign => return Some(DyadicInterval::point(x)),
            Sign::Plus if k < 4 * bits as i64 => k += 1,
            Sign::Plus => return None,
        }
    };
    p.bisect(&lo, &hi, bits)
}

/// A narrow bracket from an `f64` bisection, kept only if the signs check out.
fn quick_bracket(p: &SparsePoly, hi: &Dyadic, bits: u32) -> Option<DyadicInterval> {
    let (mut lo, mut up) = (1.0f64 + 1e-12, hi.to_f64());
    if !(eval_f64(p, lo) < 0.0) || !eval_f64(p, up).is_finite() {
        return None;
    }
    for _ in 0..80 {
        let m = 0.5 * (lo + up);
        if eval_f64(p, m) > 0.0 {
            up = m;
        } else {
            lo = m;
        }
    }
    let eps = Dyadic::one().shl(-36);
    let mid = Dyadic::new(num_bigint::BigInt::from((lo * 2f64.powi(52)).round() as i64), -52);
    let a = mid.sub(&eps);
    let b = mid.add(&eps);
    if a <= Dyadic::one() {
        return None;
    }
    (sign(p, &a, bits) == Sign::Minus && sign(p, &b, bits) == Sign::Plus).then(|| DyadicInterval::new(a, b))
}

/// `ρ²` for the `(a,b,c)` 3-spider, or `None` when λ ≤ 2.
pub fn three_spider_rho2(a: u32, b: u32, c: u32, bits: u32) -> Option<DyadicInterval> {
    if star_class(a, b, c) != Ordering::Greater {
        return None;
    }
    root_above_one(&three_spider_v(a, b, c), bits)
}

/// `λ² = u + 1/u + 2`; `u > 1`, so the map is increasing.
pub fn lambda2_from_rho2(u: &DyadicInterval, bits: u32) -> DyadicInterval {
    let inv = u.recip(bits).expect("ρ² > 1");
    u.add(&inv, bits).add_dyadic(&Dyadic::from_int(2), bits)
}

/// `λ = ρ + 1/ρ`.
pub fn lambda_from_rho2(u: &DyadicInterval, bits: u32) -> DyadicInterval {
    crate::polyzq::elementary::sqrt_interval(&lambda2_from_rho2(u, bits + 4), bits).expect("λ² > 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_classes() {
        assert_eq!(star_class(1, 1, 9), Ordering::Less);
        assert_eq!(star_class(2, 2, 2), Ordering::Equal);
        assert_eq!(star_class(1, 3, 3), Ordering::Equal);
        assert_eq!(star_class(1, 2, 5), Ordering::Equal);
        assert_eq!(star_class(1, 2, 6), Ordering::Greater);
    }

    #[test]
    fn haagerup_value() {
        let u = three_spider_rho2(3, 3, 3, 80).unwrap();
        let l2 = lambda2_from_rho2(&u, 80);
        let want = (5.0 + 13f64.sqrt()) / 2.0;
        let (lo, hi) = l2.to_f64();
        assert!(lo - 1e-12 <= want && want <= hi + 1e-12);
        assert!(three_spider_rho2(2, 2, 2, 40).is_none());
    }

    #[test]
    fn barely_hyperbolic_star() {
        // (1,2,6) has λ just above 2
        let u = three_spider_rho2(1, 2, 6, 60).unwrap();
        let l = lambda_from_rho2(&u, 60).to_f64().0;
        assert!(l > 2.0 && l < 2.01, "{l}");
    }

    #[test]
    fn limits_bound_finite_spiders() {
        let lim = root_above_one(&one_leg_limit(3), 60).unwrap();
        for (b, c) in [(3, 3), (5, 9), (20, 40)] {
            let u = three_spider_rho2(3, b, c, 60).unwrap();
            assert!(u.hi < lim.lo);
        }
        let lim2 = root_above_one(&two_leg_limit(2, 3), 60).unwrap();
        assert!(three_spider_rho2(2, 3, 30, 60).unwrap().hi < lim2.lo);
        // λ tends to 3/√2 for long legs: u + 1/u → 5/2, so u → 2
        let l = lambda2_from_rho2(&lim, 60).to_f64().0;
        assert!(l < 4.5);
    }
}
