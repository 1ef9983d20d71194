//! Perron–Frobenius data of a graph characteristic polynomial.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyzq::{
    count_roots_open, factorize, laurent_ascend, laurent_descend, largest_real_root, real_cyclotomic,
    refine_interval, square_transform, strip_cyclotomic, AlgebraicNumber, DyadicInterval, IntPolynomial,
    SturmSequence,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub char_poly: IntPolynomial,
    /// λ with its minimal polynomial.
    pub pf: AlgebraicNumber,
    /// λ² with its minimal polynomial.
    pub pf_squared: AlgebraicNumber,
    /// Minimal polynomial of `λ² - 2`.
    pub beta_minpoly: IntPolynomial,
    /// Real conjugates of `λ² - 2` outside `[-2, 2]`.
    pub large_conjugates: usize,
}

impl SpectrumSummary {
    /// Whether λ ≤ 2, i.e. the graph is Dynkin or affine Dynkin.
    pub fn is_small(&self) -> bool {
        count_outside_two(&self.pf.minpoly) == 0
    }
}

/// Largest real root λ of `p`, its minimal polynomial, and the minimal polynomial of `λ² - 2`.
///
/// Cyclotomic factors are removed in `t`, where `x = t + 1/t`; if nothing is left
/// every root lies in `[-2, 2]` and λ is `2cos(2π/n)` for the best surviving `n`.
pub fn perron_frobenius(p: &IntPolynomial) -> Result<SpectrumSummary> {
    if p.is_constant() {
        return Err(Error::Precondition("constant characteristic polynomial".into()));
    }
    let (rest, cyc) = strip_cyclotomic(&laurent_ascend(p));
    let pf = if rest.is_constant() {
        let n = cyc
            .iter()
            .map(|&(n, _)| n)
            .max_by_key(|&n| match n {
                1 => u64::MAX,
                2 => 0,
                n => n,
            })
            .ok_or_else(|| Error::Precondition(format!("{p} has no real roots")))?;
        let m = real_cyclotomic(n);
        let (_, iv) = largest_real_root(&m).expect("Ψ_n has real roots");
        AlgebraicNumber::new(m, iv)?
    } else {
        let nc = laurent_descend(&rest)?;
        let (sf, iv) = largest_real_root(&nc).ok_or_else(|| Error::Precondition(format!("{p} has no large real root")))?;
        debug_assert!(SturmSequence::new(&sf).count(&iv.lo, &iv.hi)? == 1);
        let m = factorize(&nc)
            .factors
            .into_iter()
            .map(|(f, _)| f)
            .find(|f| holds_root(f, &iv))
            .expect("some factor vanishes at λ");
        AlgebraicNumber::new(m, iv)?
    };
    let m2 = monic_sign(square_transform(&pf.minpoly));
    let pf_squared = AlgebraicNumber::new(m2.clone(), square_isolating(&pf, &m2))?;
    let beta_minpoly = m2.shift(&BigInt::from(2));
    let large_conjugates = count_outside_two(&beta_minpoly);
    Ok(SpectrumSummary { char_poly: p.clone(), pf, pf_squared, beta_minpoly, large_conjugates })
}

fn holds_root(f: &IntPolynomial, iv: &DyadicInterval) -> bool {
    if iv.is_point() {
        return f.sign_at(&iv.lo) == num_bigint::Sign::NoSign;
    }
    let s = SturmSequence::new(f);
    matches!(s.count(&iv.lo, &iv.hi), Ok(1))
}

fn monic_sign(p: IntPolynomial) -> IntPolynomial {
    if p.leading() < BigInt::zero() {
        -p
    } else {
        p
    }
}

/// An interval around λ² isolating it among the roots of `m2`.
fn square_isolating(pf: &AlgebraicNumber, m2: &IntPolynomial) -> DyadicInterval {
    let s = SturmSequence::new(m2);
    let mut bits = 32;
    loop {
        let iv = refine_interval(&pf.minpoly, &pf.root, bits);
        let sq = iv.sqr(bits + 8);
        if sq.is_point() || matches!(s.count(&sq.lo, &sq.hi), Ok(1)) {
            return sq;
        }
        bits *= 2;
    }
}

/// Number of distinct real roots of `p` outside the closed interval `[-2, 2]`.
pub fn count_outside_two(p: &IntPolynomial) -> usize {
    let total = SturmSequence::new(&crate::polyzq::squarefree_part(p)).count_all();
    let two = BigInt::from(2);
    let inside = count_roots_open(p, &-two.clone(), &two);
    let at_ends = [-2i64, 2].iter().filter(|&&e| p.eval(&BigInt::from(e)).is_zero()).count();
    total - inside - at_ends
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spider::charpoly::{char_poly, morrison_charpoly, three_spider_charpoly};
    use crate::spider::graph::{build_spider, SpiderSpec};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_graphs() {
        let s = perron_frobenius(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(s.pf.minpoly, p(&[-1, 1]));
        assert_eq!(s.large_conjugates, 0);
        let d4 = perron_frobenius(&p(&[0, 0, -3, 0, 1])).unwrap();
        assert_eq!(d4.pf.minpoly, p(&[-3, 0, 1]));
        assert_eq!(d4.pf_squared.minpoly, p(&[-3, 1]));
        let affine = perron_frobenius(&three_spider_charpoly(2, 2, 2).unwrap()).unwrap();
        assert_eq!(affine.pf.minpoly, p(&[-2, 1]));
        assert!(affine.is_small());
    }

    #[test]
    fn haagerup_family_values() {
        let s = perron_frobenius(&three_spider_charpoly(3, 3, 3).unwrap()).unwrap();
        assert_eq!(s.pf_squared.minpoly, p(&[3, -5, 1]));
        assert!((s.pf_squared.to_f64() - 4.302775).abs() < 1e-6);
        assert_eq!(s.large_conjugates, 1);
        let s = perron_frobenius(&three_spider_charpoly(3, 3, 7).unwrap()).unwrap();
        assert!((s.pf_squared.to_f64() - 4.377202).abs() < 1e-6);
    }

    #[test]
    fn morrison_base_spectra() {
        for (a, b) in [(0, 0), (1, 1)] {
            let s = perron_frobenius(&morrison_charpoly(a, b).unwrap()).unwrap();
            assert!(s.pf.to_f64() > 2.0);
            let g = build_spider(&SpiderSpec::morrison(a, b)).unwrap();
            assert!(s.pf.to_f64() <= g.max_valence() as f64);
        }
        assert_eq!(char_poly(&build_spider(&SpiderSpec::morrison(0, 0)).unwrap()), morrison_charpoly(0, 0).unwrap());
    }
}
