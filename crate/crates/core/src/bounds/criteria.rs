//! The trace-bound criterion and the effective Morrison estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::bfunc::BFunction;
use crate::error::{Error, Result};
use crate::polyzq::elementary::{pow_rational, sqrt_interval};
use crate::polyzq::{isolate_real_roots, refine_interval, Dyadic, DyadicInterval, IntPolynomial};
use crate::spider::charpoly::morrison_v;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceFactor {
    /// `20/11`, the constant of the general theorem.
    #[default]
    TwentyElevenths,
    /// `2`, the looser constant used in the 3-spider argument.
    Two,
}

impl TraceFactor {
    pub fn ratio(self) -> (i64, i64) {
        match self {
            TraceFactor::TwentyElevenths => (20, 11),
            TraceFactor::Two => (2, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceVerdict {
    /// `M(β) < 14/5` is guaranteed.
    BoundHolds,
    Inconclusive,
}

/// Decides whether `B(L²) > 0` or `D ≥ factor·M·|B(L²)|`, with `B(L²)` certified.
pub fn trace_bound_criterion(
    b: &BFunction,
    l: &DyadicInterval,
    m: u32,
    d: u32,
    bits: u32,
    factor: TraceFactor,
) -> Result<TraceVerdict> {
    if l.lo.is_negative() {
        return Err(Error::Precondition("L must be nonnegative".into()));
    }
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let v = b.eval(&l.sqr(bits), bits)?;
    if v.is_positive() {
        return Ok(TraceVerdict::BoundHolds);
    }
    // |B(L²)| ≤ -lo when the enclosure is not positive
    let (p, q) = factor.ratio();
    let need = v.lo.neg().mul(&Dyadic::from_int(p * m as i64));
    let have = Dyadic::from_int(q * d as i64);
    Ok(if have >= need { TraceVerdict::BoundHolds } else { TraceVerdict::Inconclusive })
}

/// Smallest degree for which the criterion holds, searching `1..=limit`.
pub fn degree_threshold(b: &BFunction, l: &DyadicInterval, m: u32, bits: u32, factor: TraceFactor, limit: u32) -> Result<Option<u32>> {
    for d in 1..=limit {
        if trace_bound_criterion(b, l, m, d, bits, factor)? == TraceVerdict::BoundHolds {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `11n/25 - 1/3`, a strict lower bound on `[Q(λ²):Q]` for Morrison spiders with legs `≥ n ≥ 10`.
pub fn morrison_degree_bound(n: u32) -> Result<BigRational> {
    if n < 10 {
        return Err(Error::Precondition(format!("n = {n} < 10")));
    }
    Ok(BigRational::new(BigInt::from(11 * n), BigInt::from(25)) - BigRational::new(1.into(), 3.into()))
}

fn largest_root(p: &IntPolynomial, bits: u32) -> DyadicInterval {
    let top = isolate_real_roots(p).pop().expect("a real root");
    refine_interval(&top.factor, &top.interval, bits)
}

/// `ρ_∞`, the largest root of `t^6 - 2t^4 - 2t^2 - 1`.
pub fn rho_infinity(bits: u32) -> DyadicInterval {
    largest_root(&IntPolynomial::from_i64(&[-1, 0, -2, 0, -2, 0, 1]), bits)
}

/// `γ = (ρ_∞ + 1/ρ_∞)²`, the largest root of `x^3 - 6x^2 + 5x - 4`.
pub fn gamma(bits: u32) -> DyadicInterval {
    largest_root(&IntPolynomial::from_i64(&[-4, 5, -6, 1]), bits)
}

/// `ρ > 1` with `ρ + 1/ρ` the PF eigenvalue of the `(a, b)` Morrison spider.
pub fn morrison_rho(a: u32, b: u32, bits: u32) -> Result<DyadicInterval> {
    let u = largest_root(&morrison_v(a, b).to_dense(), bits + 8);
    sqrt_interval(&u, bits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapVerdict {
    Verified,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: u32,
    pub rho: DyadicInterval,
    /// `ρ_∞ - ρ`.
    pub epsilon: DyadicInterval,
    /// `(1/6)(1.682)^(-2n)`.
    pub epsilon_bound: DyadicInterval,
    /// The mollified product at `λ`.
    pub product: DyadicInterval,
    /// `23 (1.682)^(-2n)`.
    pub product_bound: DyadicInterval,
    pub verdict: GapVerdict,
}

/// `|x^3-6x^2+5x-4| x^(29/1000) |x-2|^(14/100) |x-3|^(471/1000) |x-4|^(362/1000) |x^3-6x^2+9x-1|^(8/625)` at `x = λ²`.
pub fn mollified_product(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let poly = |c: &[i64]| IntPolynomial::from_i64(c).eval_interval(x, bits).abs();
    let mut acc = poly(&[-4, 5, -6, 1]);
    let factors: [(Vec<i64>, BigRational); 5] = [
        (vec![0, 1], r(29, 1000)),
        (vec![-2, 1], r(14, 100)),
        (vec![-3, 1], r(471, 1000)),
        (vec![-4, 1], r(362, 1000)),
        (vec![-1, 9, -6, 1], r(8, 625)),
    ];
    for (c, e) in factors.iter() {
        let v = poly(c);
        if v.contains_zero() {
            return Err(Error::Precondition("mollifier factor vanishes".into()));
        }
        acc = acc.mul(&pow_rational(&v, e, bits)?, bits);
    }
    Ok(acc)
}

/// Checks both convergence estimates for the `(n, n)` Morrison spider.
pub fn morrison_gap_check(n: u32, bits: u32) -> Result<GapReport> {
    if n < 10 {
        return Err(Error::Precondition(format!("n = {n} < 10")));
    }
    let rho = morrison_rho(n, n, bits)?;
    let epsilon = rho_infinity(bits).sub(&rho, bits);
    let decay = BigRational::new(BigInt::from(1000).pow(2 * n), BigInt::from(1682).pow(2 * n));
    let epsilon_bound = DyadicInterval::from_rational(&(decay.clone() / BigInt::from(6)), bits);
    let lambda2 = rho.sqr(bits).add(&rho.sqr(bits).recip(bits)?, bits).add(&DyadicInterval::from_ints(2, 2), bits);
    let product = mollified_product(&lambda2, bits)?;
    let product_bound = DyadicInterval::from_rational(&(decay * BigInt::from(23)), bits);
    let three_halves = Dyadic::new(3.into(), -1);
    let verdict = if rho.lo < three_halves {
        GapVerdict::Failed(format!("ρ = {} below 3/2", rho.display_with(8)))
    } else if !epsilon.is_positive() {
        GapVerdict::Failed(format!("ρ not certified below ρ_∞ (ε = {})", epsilon.display_with(8)))
    } else if !epsilon.lt(&epsilon_bound) {
        GapVerdict::Failed(format!("ε = {} not below {}", epsilon.display_with(8), epsilon_bound.display_with(8)))
    } else if !product.lt(&product_bound) {
        GapVerdict::Failed(format!("product {} not below {}", product.display_with(8), product_bound.display_with(8)))
    } else {
        GapVerdict::Verified
    };
    Ok(GapReport { n, rho, epsilon, epsilon_bound, product, product_bound, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyzq::dyadic::parse_decimal;

    #[test]
    fn degree_bound_values() {
        let r = |s: &str| parse_decimal(s).unwrap();
        assert_eq!(morrison_degree_bound(10).unwrap(), r("61/15"));
        assert!(morrison_degree_bound(56).unwrap() > r("24"));
        assert!(morrison_degree_bound(55).unwrap() < r("24"));
        assert!(morrison_degree_bound(9).is_err());
    }

    #[test]
    fn constants() {
        assert!((rho_infinity(64).to_f64().0 - 1.6826).abs() < 1e-4);
        assert!((gamma(64).to_f64().0 - 5.18438).abs() < 1e-5);
        let r = rho_infinity(64);
        let g = r.add(&r.recip(64).unwrap(), 64).sqr(64);
        assert!(g.overlaps(&gamma(60)));
    }

    #[test]
    fn gap_check_small_n() {
        assert_eq!(morrison_gap_check(10, 128).unwrap().verdict, GapVerdict::Verified);
        assert!(morrison_gap_check(9, 128).is_err());
    }

    #[test]
    fn criterion_thresholds() {
        let b = BFunction::standard();
        let half5 = DyadicInterval::from_ratio(5, 2, 128);
        let run = |l: &DyadicInterval, d, f| trace_bound_criterion(&b, l, 1, d, 128, f).unwrap();
        assert_eq!(run(&half5, 13, TraceFactor::TwentyElevenths), TraceVerdict::BoundHolds);
        assert_eq!(run(&half5, 12, TraceFactor::TwentyElevenths), TraceVerdict::Inconclusive);
        assert_eq!(run(&half5, 15, TraceFactor::Two), TraceVerdict::BoundHolds);
        assert_eq!(run(&half5, 14, TraceFactor::Two), TraceVerdict::Inconclusive);
        let l = gamma(128).sub(&DyadicInterval::from_ints(2, 2), 128);
        assert_eq!(run(&l, 24, TraceFactor::TwentyElevenths), TraceVerdict::BoundHolds);
        assert_eq!(run(&l, 23, TraceFactor::TwentyElevenths), TraceVerdict::Inconclusive);
        assert!(trace_bound_criterion(&b, &DyadicInterval::from_ints(2, 2), 1, 5, 64, TraceFactor::default()).is_err());
        let small = DyadicInterval::from_ratio(201, 100, 64);
        assert_eq!(run(&small, 1, TraceFactor::TwentyElevenths), TraceVerdict::BoundHolds);
    }
}
