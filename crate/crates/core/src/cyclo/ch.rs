//! `Ch_N`, the minimal polynomial of `(ζ_N + ζ_N^-1)^2 = 4cos²(2π/N)`, and the
//! normalized trace `M`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyzq::{factorize, isolate_real_roots, real_cyclotomic, square_transform, IntPolynomial};

/// `(N, a_N)` for the weighted sum in the auxiliary function; every other `N` has weight 0.
pub const CH_WEIGHTS: [(u64, u32); 16] = [
    (1, 673),
    (3, 6),
    (4, 4),
    (5, 2),
    (7, 5),
    (8, 157),
    (9, 13),
    (12, 578),
    (15, 43),
    (16, 49),
    (20, 215),
    (21, 10),
    (24, 25),
    (28, 80),
    (44, 24),
    (52, 1),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChEntry {
    pub n: u64,
    pub poly: IntPolynomial,
    #[serde(with = "crate::serde_util::rational")]
    pub m_value: BigRational,
    pub a_n: u32,
}

/// Minimal polynomial of `4cos²(2π/n)`.
pub fn ch_polynomial(n: u64) -> IntPolynomial {
    assert!(n >= 1, "ch_polynomial(0)");
    let sq = square_transform(&real_cyclotomic(n));
    let target = 4.0 * (std::f64::consts::TAU / n as f64).cos().powi(2);
    let factors = factorize(&sq).factors;
    if factors.len() == 1 {
        return factors[0].0.clone();
    }
    // pick the factor with a root nearest the numeric value
    factors
        .into_iter()
        .map(|(f, _)| {
            let dist = isolate_real_roots(&f)
                .iter()
                .map(|r| (r.interval.mid().to_f64() - target).abs())
                .fold(f64::INFINITY, f64::min);
            (f, dist)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(f, _)| f)
        .expect("nonempty factorization")
}

/// `-c_{d-1}/d` for a monic polynomial of degree `d`: the mean of its roots.
pub fn m_value(p: &IntPolynomial) -> Result<BigRational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::Precondition("constant polynomial".into()));
    }
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(BigRational::new(-p.coeff(d - 1), BigInt::from(d)))
}

/// The weighted table rows, computed.
pub fn ch_table() -> Vec<ChEntry> {
    CH_WEIGHTS
        .iter()
        .map(|&(n, a_n)| {
            let poly = ch_polynomial(n);
            let m_value = m_value(&poly).expect("Ch_N is monic");
            ChEntry { n, poly, m_value, a_n }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cases() {
        assert_eq!(ch_polynomial(1), p(&[-4, 1]));
        assert_eq!(ch_polynomial(4), p(&[0, 1]));
        assert_eq!(ch_polynomial(5), p(&[1, -3, 1]));
        assert_eq!(ch_polynomial(6), p(&[-1, 1]));
    }

    #[test]
    fn m_values() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(m_value(&p(&[-4, 1])).unwrap(), r(4, 1));
        assert_eq!(m_value(&p(&[1, -3, 1])).unwrap(), r(3, 2));
        assert_eq!(m_value(&p(&[-1, 6, -5, 1])).unwrap(), r(5, 3));
        assert!(matches!(m_value(&p(&[1, 2])), Err(Error::NonMonic)));
    }
}
