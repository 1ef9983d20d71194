//! The single-instance pipeline: from `β = λ² - 2` to a verdict.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

use super::record::{ClassificationRecord, NotAbelianKind, Provenance, Subject, Verdict};
use crate::bounds::{degree_threshold, BFunction, TraceFactor};
use crate::config::Budget;
use crate::cyclo::{abelian_check, exceptional_list, AbelianVerdict, ExceptionalEntry};
use crate::error::{Error, Result};
use crate::polyzq::elementary::sqrt_interval;
use crate::polyzq::{factorize, AlgebraicNumber, Dyadic, DyadicInterval, IntPolynomial};
use crate::spider::{perron_frobenius, spider_charpoly, SpiderSpec};

/// How the degree obstruction is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRule {
    /// `D ≥ n` forces `M(β) < 14/5`.
    AtLeast(usize),
    /// Threshold from the trace-bound criterion at `L = β`.
    TraceBound,
    Off,
}

/// `M(β) = Σβ_i² / deg β` for a monic `m_β`.
pub fn m_of_beta(m: &IntPolynomial) -> Result<BigRational> {
    if !m.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = m.deg();
    let e1 = -m.coeff(d - 1);
    let e2 = if d >= 2 { m.coeff(d - 2) } else { BigInt::from(0) };
    Ok(BigRational::new(&e1 * &e1 - BigInt::from(2) * e2, BigInt::from(d)))
}

fn negate_var(m: &IntPolynomial) -> IntPolynomial {
    let p = m.neg_x();
    if p.leading().sign() == Sign::Minus {
        -p
    } else {
        p
    }
}

/// The exceptional entry equal to `±β` up to conjugation, if any.
pub fn exceptional_match(beta_minpoly: &IntPolynomial) -> Option<&'static ExceptionalEntry> {
    let neg = negate_var(beta_minpoly);
    exceptional_list()
        .iter()
        .find(|e| e.minpoly_beta.deg() == beta_minpoly.deg() && (&e.minpoly_beta == beta_minpoly || e.minpoly_beta == neg))
}

/// Smallest `D` for which `β ≤ 5/2` with one large conjugate forces `M(β) < 14/5`.
pub fn three_spider_degree_threshold() -> usize {
    static T: OnceLock<usize> = OnceLock::new();
    *T.get_or_init(|| {
        let l = DyadicInterval::from_ratio(5, 2, 64);
        degree_threshold(&BFunction::standard(), &l, 1, 96, TraceFactor::default(), 200)
            .ok()
            .flatten()
            .expect("B(25/4) is finite") as usize
    })
}

pub(crate) fn from_abelian(v: AbelianVerdict) -> Verdict {
    match v {
        AbelianVerdict::Abelian(e) => Verdict::Abelian(e),
        AbelianVerdict::NotGalois { prime, degrees } => Verdict::NotAbelian(NotAbelianKind::NotGalois { prime, degrees }),
        AbelianVerdict::NotAbelianCertified { reason } => Verdict::NotAbelian(NotAbelianKind::ConductorsRefuted { reason }),
        AbelianVerdict::Unknown { reason } => Verdict::Unknown { reason },
    }
}

/// Verdict for `β > 2` with all but `large` conjugates in `[-2, 2]`.
pub fn decide_beta(
    beta: &AlgebraicNumber,
    large: usize,
    t_degree: usize,
    rule: DegreeRule,
    budget: &Budget,
) -> Result<(Verdict, Provenance)> {
    let d = beta.degree();
    if let Some(e) = exceptional_match(&beta.minpoly) {
        let v = abelian_check(&beta.minpoly, budget)?;
        return Ok((from_abelian(v), Provenance::ExceptionalList { label: e.label.clone() }));
    }
    let threshold = match rule {
        DegreeRule::AtLeast(n) => Some(n),
        DegreeRule::TraceBound => {
            let l = beta.refine(64);
            degree_threshold(&BFunction::standard(), &l, large as u32, 96, TraceFactor::default(), 4096)?.map(|n| n as usize)
        }
        DegreeRule::Off => None,
    };
    if let Some(t) = threshold {
        if d >= t {
            let v = Verdict::NotAbelian(NotAbelianKind::Degree { degree: d, threshold: t });
            return Ok((v, Provenance::DegreeObstruction { t_degree, degree: d }));
        }
    }
    Ok((from_abelian(abelian_check(&beta.minpoly, budget)?), Provenance::AbelianCheck))
}

/// `λ = √(β + 2)`.
pub fn lambda_interval(beta: &AlgebraicNumber, bits: u32) -> DyadicInterval {
    let b = beta.refine(bits + 8).add_dyadic(&Dyadic::from_int(2), bits + 8);
    sqrt_interval(&b, bits).expect("β > -2")
}

pub(crate) fn record_for_beta(
    subject: Subject,
    beta: &AlgebraicNumber,
    verdict: Verdict,
    provenance: Provenance,
) -> Result<ClassificationRecord> {
    Ok(ClassificationRecord {
        subject,
        pf_interval: lambda_interval(beta, 64),
        lambda2_minpoly: Some(beta.minpoly.shift(&BigInt::from(-2))),
        m_value: Some(m_of_beta(&beta.minpoly)?),
        degree: Some(beta.degree()),
        verdict,
        provenance,
    })
}

/// Full pipeline for one characteristic polynomial.
pub fn check_charpoly(subject: Subject, p: &IntPolynomial, rule: DegreeRule, budget: &Budget) -> Result<ClassificationRecord> {
    let s = perron_frobenius(p)?;
    let beta = AlgebraicNumber::new(
        s.beta_minpoly.clone(),
        s.pf_squared.root.add_dyadic(&Dyadic::from_int(-2), 256),
    )?;
    if s.is_small() {
        let affine = s.pf.minpoly == IntPolynomial::from_i64(&[-2, 1]);
        let verdict = if affine { Verdict::AffineDynkin } else { Verdict::Dynkin };
        return Ok(ClassificationRecord {
            subject,
            pf_interval: s.pf.refine(64),
            lambda2_minpoly: Some(s.pf_squared.minpoly.clone()),
            m_value: Some(m_of_beta(&s.beta_minpoly)?),
            degree: Some(s.pf_squared.degree()),
            verdict,
            provenance: Provenance::Spectrum,
        });
    }
    let t_degree = non_cyclotomic_degree(p);
    let (verdict, provenance) = decide_beta(&beta, s.large_conjugates, t_degree, rule, budget)?;
    record_for_beta(subject, &beta, verdict, provenance)
}

/// Degree in `t` of the non-cyclotomic part of `t^n p(t + 1/t)`.
fn non_cyclotomic_degree(p: &IntPolynomial) -> usize {
    crate::polyzq::strip_cyclotomic(&crate::polyzq::laurent_ascend(p)).0.deg()
}

/// The generic checker for a connected spider.
pub fn check_spider(spec: &SpiderSpec, budget: &Budget) -> Result<ClassificationRecord> {
    let subject = subject_of(spec);
    let p = spider_charpoly(spec);
    check_charpoly(subject, &p, DegreeRule::TraceBound, budget)
}

fn subject_of(spec: &SpiderSpec) -> Subject {
    if spec.base.n() == 1 && spec.legs.len() == 3 {
        let mut l = spec.legs.clone();
        l.sort_unstable();
        return Subject::ThreeSpider { a: l[0], b: l[1], c: l[2] };
    }
    if spec.base == crate::spider::Graph::morrison_base() && spec.attach == [6, 3] {
        return Subject::Morrison { a: spec.legs[0], b: spec.legs[1] };
    }
    Subject::Spider { base: spec.base.n(), attach: spec.attach.clone(), legs: spec.legs.clone() }
}

/// Splits the descended numerator and keeps the factor vanishing at `β`, given an
/// interval `iv` around `β` that excludes the roots of every other factor.
pub fn select_factor(g: &IntPolynomial, iv_at: impl Fn(u32) -> DyadicInterval) -> Result<AlgebraicNumber> {
    let factors: Vec<IntPolynomial> = factorize(g).factors.into_iter().map(|(f, _)| f).collect();
    let mut bits = 64;
    loop {
        let iv = iv_at(bits);
        let vals: Vec<DyadicInterval> = factors.iter().map(|f| f.eval_interval(&iv, bits + 64)).collect();
        let zeros: Vec<usize> = (0..factors.len()).filter(|&i| vals[i].contains_zero()).collect();
        if zeros.len() == 1 {
            let f = factors[zeros[0]].clone();
            return AlgebraicNumber::new(f, iv);
        }
        if zeros.is_empty() || bits > 4096 {
            return Err(Error::Certification(format!("cannot isolate β among the factors of {g}")));
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_values() {
        // β = 1 + 2cos(2π/7): M = 2
        let m = IntPolynomial::from_i64(&[1, -1, -2, 1]);
        assert_eq!(m_of_beta(&m).unwrap(), BigRational::from_integer(2.into()));
        assert!(exceptional_match(&m).is_some());
        assert!(exceptional_match(&IntPolynomial::from_i64(&[-1, -1, 2, 1])).is_some());
        assert!(exceptional_match(&IntPolynomial::from_i64(&[-5, 0, 1])).is_none());
    }

    #[test]
    fn degree_threshold_for_three_spiders() {
        assert_eq!(three_spider_degree_threshold(), 13);
    }

    #[test]
    fn small_graphs() {
        let b = Budget::default();
        let path = SpiderSpec::star(&[3, 4]);
        assert_eq!(check_spider(&path, &b).unwrap().verdict, Verdict::Dynkin);
        let d4 = SpiderSpec::star(&[1, 1, 1, 1]);
        let r = check_spider(&d4, &b).unwrap();
        assert_eq!(r.verdict, Verdict::AffineDynkin);
        assert!(r.pf_interval.contains(&Dyadic::from_int(2)));
    }

    #[test]
    fn haagerup_is_abelian() {
        let r = check_spider(&SpiderSpec::star(&[3, 3, 3]), &Budget::default()).unwrap();
        assert!(matches!(r.verdict, Verdict::Abelian(ref e) if e.conductor == 13), "{:?}", r.verdict);
        assert_eq!(r.lambda2_minpoly.unwrap(), IntPolynomial::from_i64(&[3, -5, 1]));
    }
}
