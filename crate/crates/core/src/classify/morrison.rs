//! The Morrison engine: brute force on small legs, the degree bound on long ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::pipeline::{check_charpoly, DegreeRule};
use super::record::{ClassificationRecord, NotAbelianKind, Provenance, Subject, Verdict};
use crate::bounds::{gamma, morrison_degree_bound, morrison_rho, trace_bound_criterion, BFunction, TraceFactor, TraceVerdict};
use crate::config::Budget;
use crate::cyclo::exceptional_list;
use crate::error::{Error, Result};
use crate::par;
use crate::polyzq::{isolate_real_roots, refine_interval, Dyadic, DyadicInterval};
use crate::spider::morrison_charpoly;

/// Shortest leg from which the bound path applies.
pub const BOUND_FROM: u32 = 56;

/// Which pairs to run. Pairs are taken with `a ≤ b`; the polynomial is symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorrisonScope {
    /// Brute force for `a ≤ b ≤ brute_max`.
    pub brute_max: u32,
    /// Bound path for `lo ≤ a ≤ b ≤ hi`.
    pub corner: Option<(u32, u32)>,
}

impl Default for MorrisonScope {
    fn default() -> Self {
        MorrisonScope { brute_max: 10, corner: Some((56, 60)) }
    }
}

fn pairs(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    (lo..=hi).flat_map(|a| (a..=hi).map(move |b| (a, b))).collect()
}

/// Generic pipeline on `P_{a,b}`.
pub fn morrison_brute(a: u32, b: u32, budget: &Budget) -> Result<ClassificationRecord> {
    let (a, b) = (a.min(b), a.max(b));
    check_charpoly(Subject::Morrison { a, b }, &morrison_charpoly(a, b)?, DegreeRule::TraceBound, budget)
}

/// `[γ - 2 - 1/100, γ - 2]`, the window holding `λ² - 2` once both legs are long.
pub fn morrison_window(bits: u32) -> DyadicInterval {
    let top = gamma(bits).add_dyadic(&Dyadic::from_int(-2), bits);
    let hundredth = DyadicInterval::from_ratio(1, 100, bits);
    DyadicInterval::new(top.sub(&hundredth, bits).lo, top.hi)
}

/// Whether no conjugate of any exceptional number, or of its negative, lies in `window`.
pub fn window_excludes_exceptional(window: &DyadicInterval) -> bool {
    exceptional_list().iter().all(|e| {
        isolate_real_roots(&e.minpoly_beta).iter().all(|r| {
            let mut bits = 64;
            loop {
                let iv = refine_interval(&r.factor, &r.interval, bits);
                let abs = iv.abs();
                if abs.hi < window.lo || abs.lo > window.hi {
                    return true;
                }
                if bits > 1024 {
                    return false;
                }
                bits *= 2;
            }
        })
    })
}

/// The certified argument for `a, b ≥ 56`: the degree bound forces `M(λ² - 2) < 14/5`,
/// so `λ² - 2` would be exceptional, and the window rules every exceptional value out.
pub fn morrison_bound_path(a: u32, b: u32, bits: u32) -> Result<ClassificationRecord> {
    let (a, b) = (a.min(b), a.max(b));
    if a < BOUND_FROM {
        return Err(Error::Precondition(format!("bound path needs both legs ≥ {BOUND_FROM}, got ({a},{b})")));
    }
    let subject = Subject::Morrison { a, b };
    let rho = morrison_rho(a, b, bits)?;
    let pf = rho.add(&rho.recip(bits)?, bits);
    let unknown = |reason: String| ClassificationRecord {
        subject: subject.clone(),
        pf_interval: pf.clone(),
        lambda2_minpoly: None,
        m_value: None,
        degree: None,
        verdict: Verdict::Unknown { reason },
        provenance: Provenance::MorrisonBounds,
    };
    // D > 11n/25 - 1/3, so D ≥ floor of the bound plus one
    let lower = morrison_degree_bound(a)?;
    let d_min = (lower.numer().div_floor(lower.denom()) + BigInt::from(1)).to_u32().expect("small");
    let l = gamma(bits).add_dyadic(&Dyadic::from_int(-2), bits);
    if trace_bound_criterion(&BFunction::standard(), &l, 1, d_min, bits, TraceFactor::TwentyElevenths)? != TraceVerdict::BoundHolds {
        return Ok(unknown(format!("trace bound inconclusive at D = {d_min}")));
    }
    let beta = pf.sqr(bits).add_dyadic(&Dyadic::from_int(-2), bits);
    let window = morrison_window(bits);
    if beta.lo < window.lo || beta.hi >= window.hi {
        return Ok(unknown(format!("λ² - 2 = {} outside the window", beta.display_with(8))));
    }
    if !window_excludes_exceptional(&window) {
        return Ok(unknown("an exceptional value meets the window".into()));
    }
    Ok(ClassificationRecord {
        verdict: Verdict::NotAbelian(NotAbelianKind::Window),
        ..unknown(String::new())
    })
}

/// Brute force on the small square, then the bound path on the corner.
pub fn classify_morrison(scope: &MorrisonScope, budget: &Budget) -> Result<Vec<ClassificationRecord>> {
    let brute = par::map(budget.mode, pairs(0, scope.brute_max), |(a, b)| morrison_brute(a, b, budget));
    let mut out = brute.into_iter().collect::<Result<Vec<_>>>()?;
    if let Some((lo, hi)) = scope.corner {
        let bits = budget.precision_bits;
        let bound = par::map(budget.mode, pairs(lo.max(BOUND_FROM), hi), |(a, b)| morrison_bound_path(a, b, bits));
        out.extend(bound.into_iter().collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// The `(a, b)` with an abelian verdict.
pub fn abelian_pairs(records: &[ClassificationRecord]) -> Vec<(u32, u32)> {
    records
        .iter()
        .filter(|r| r.verdict.is_abelian())
        .filter_map(|r| match r.subject {
            Subject::Morrison { a, b } => Some((a, b)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_square() {
        let recs = classify_morrison(&MorrisonScope { brute_max: 10, corner: None }, &Budget::default()).unwrap();
        assert_eq!(recs.len(), 66);
        assert!(recs.iter().all(|r| !r.verdict.is_unknown()));
        assert_eq!(abelian_pairs(&recs), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn window_is_clear() {
        let w = morrison_window(96);
        let (lo, hi) = w.to_f64();
        assert!((lo - 3.17438).abs() < 1e-5 && (hi - 3.18438).abs() < 1e-5, "{lo} {hi}");
        assert!(window_excludes_exceptional(&w));
    }

    #[test]
    fn bound_path_on_long_legs() {
        let r = morrison_bound_path(60, 60, 128).unwrap();
        assert_eq!(r.verdict, Verdict::NotAbelian(NotAbelianKind::Window));
        assert!(morrison_bound_path(55, 60, 128).is_err());
    }
}
