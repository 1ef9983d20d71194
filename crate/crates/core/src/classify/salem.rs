//! Salem numbers of abelian type.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::cyclo::{abelian_check, AbelianVerdict};
use crate::error::{Error, Result};
use crate::polyzq::{count_roots_open, factorize, largest_real_root, laurent_descend, refine_interval, Dyadic, DyadicInterval, IntPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalemCandidate {
    pub minpoly: IntPolynomial,
    /// Enclosure of ρ.
    pub value: DyadicInterval,
    /// Minimal polynomial of `ρ + 1/ρ`.
    pub trace_minpoly: IntPolynomial,
    /// Whether `Q(ρ + 1/ρ)` is abelian.
    pub abelian_type: AbelianVerdict,
}

impl SalemCandidate {
    pub fn is_abelian_type(&self) -> bool {
        matches!(self.abelian_type, AbelianVerdict::Abelian(_))
    }

    /// ρ refined to `bits`.
    pub fn refine(&self, bits: u32) -> DyadicInterval {
        refine_interval(&self.minpoly, &self.value, bits)
    }
}

fn not_salem(p: &IntPolynomial, why: &str) -> Error {
    Error::NotSalem(format!("{p}: {why}"))
}

/// Certifies that the largest root of `p` is a Salem number and decides its type.
///
/// With `x = ρ + 1/ρ`, `p` is Salem exactly when its descended polynomial has one
/// root above 2, none at or below -2, none at 2, and at least one in `(-2, 2)`,
/// all of them real.
pub fn salem_check(p: &IntPolynomial, budget: &Budget) -> Result<SalemCandidate> {
    if !p.is_monic() {
        return Err(not_salem(p, "not monic"));
    }
    if p.deg() < 4 || !p.is_palindromic() {
        return Err(not_salem(p, "not reciprocal of even degree at least 4"));
    }
    let f = factorize(p);
    if f.factors.len() != 1 || f.factors[0].1 != 1 {
        return Err(not_salem(p, "reducible"));
    }
    let q = laurent_descend(p)?;
    let n = q.deg();
    let big = BigInt::from(1) << (q.root_bound_log2() + 1);
    let two = BigInt::from(2);
    if count_roots_open(&q, &-&big, &big) != n {
        return Err(not_salem(p, "a conjugate off the real line and off the unit circle"));
    }
    if q.eval(&two) == BigInt::from(0) || q.eval(&-&two) == BigInt::from(0) {
        return Err(not_salem(p, "a root at ±1"));
    }
    if count_roots_open(&q, &two, &big) != 1 {
        return Err(not_salem(p, "not exactly one root above 1"));
    }
    if count_roots_open(&q, &-&big, &-&two) != 0 {
        return Err(not_salem(p, "a real root below -1"));
    }
    if count_roots_open(&q, &-&two, &two) == 0 {
        return Err(not_salem(p, "no root on the unit circle"));
    }
    let (_, value) = largest_real_root(p).ok_or_else(|| not_salem(p, "no real root"))?;
    let abelian_type = abelian_check(&q, budget)?;
    Ok(SalemCandidate { minpoly: p.clone(), value, trace_minpoly: q, abelian_type })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separation {
    Consistent,
    /// `ρ - ρ'` is certified at or below the bound.
    Violation,
}

/// Checks `ρ - ρ' > (2ρ)^(-16ρ^4)` for abelian-type Salem numbers `ρ > ρ'`.
pub fn salem_separation_audit(rho: &SalemCandidate, rho_prime: &SalemCandidate) -> Result<Separation> {
    if !rho.is_abelian_type() || !rho_prime.is_abelian_type() {
        return Err(Error::Precondition("both Salem numbers must be of abelian type".into()));
    }
    if rho.minpoly == rho_prime.minpoly {
        return Err(Error::Precondition("ρ and ρ' are equal".into()));
    }
    let mut bits = 64;
    loop {
        let (r, s) = (rho.refine(bits), rho_prime.refine(bits));
        let gap = r.sub(&s, bits);
        if gap.hi.is_negative() || gap.hi.is_zero() {
            return Err(Error::Precondition("ρ must exceed ρ'".into()));
        }
        if gap.lo.is_positive() {
            // (2ρ)^(16ρ^4) only shrinks if ρ is replaced by a lower bound
            let base = DyadicInterval::point(r.lo.shl(1));
            let e_lo = DyadicInterval::point(r.lo.clone()).pow(4, bits).lo.shl(4).floor_int();
            let lhs = DyadicInterval::point(gap.lo.clone()).mul(&base.pow(e_lo.try_into().unwrap_or(u64::MAX), bits), bits);
            if lhs.lo > Dyadic::one() {
                return Ok(Separation::Consistent);
            }
            let base_hi = DyadicInterval::point(r.hi.shl(1));
            let e_hi = DyadicInterval::point(r.hi.clone()).pow(4, bits).hi.shl(4).floor_int() + BigInt::from(1);
            let rhs = DyadicInterval::point(gap.hi.clone()).mul(&base_hi.pow(e_hi.try_into().unwrap_or(u64::MAX), bits), bits);
            if rhs.hi <= Dyadic::one() {
                return Ok(Separation::Violation);
            }
        }
        if bits >= 4096 {
            return Err(Error::Certification("separation undecided at 4096 bits".into()));
        }
        bits *= 2;
    }
}
