//! The elimination ladder for the small-trace branch.
//!
//! When `M(λ² - 2) < 14/5`, `λ² - 2` is an exceptional number. Only entries with
//! house below `5/2` and no conjugate below `-2` can occur, and for each such gate
//! `g` the ladder shows that `λ(a,b,c) = √(g + 2)` is impossible outside a finite
//! residual set, using that λ grows with every leg.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rho::{lambda2_from_rho2, one_leg_limit, root_above_one, star_class, three_spider_rho2, two_leg_limit};
use crate::cyclo::{exceptional_list, ExceptionalEntry};
use crate::error::{Error, Result};
use crate::polyzq::dyadic::parse_decimal;
use crate::polyzq::elementary::sqrt_interval;
use crate::polyzq::{count_roots_open, isolate_real_roots, refine_interval, Dyadic, DyadicInterval, IntPolynomial};

/// A spider or a limit of spiders whose λ bounds a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Spider(u32, u32, u32),
    /// `(a, b, c → ∞)`.
    TwoLeg(u32, u32),
    /// `(a, b, c → ∞)` with `b, c → ∞`.
    OneLeg(u32),
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Spider(a, b, c) => write!(f, "({a},{b},{c})"),
            Boundary::TwoLeg(a, b) => write!(f, "({a},{b},∞)"),
            Boundary::OneLeg(a) => write!(f, "({a},∞,∞)"),
        }
    }
}

impl Boundary {
    /// `λ² - 2 = ρ² + ρ⁻²`, or `None` when λ ≤ 2.
    pub fn beta(&self, bits: u32) -> Option<DyadicInterval> {
        let u = match *self {
            Boundary::Spider(a, b, c) => three_spider_rho2(a, b, c, bits)?,
            Boundary::TwoLeg(a, b) => {
                if (a as u64 + 1) * (b as u64 + 1) <= a as u64 + b as u64 + 2 {
                    return None;
                }
                root_above_one(&two_leg_limit(a, b), bits)?
            }
            Boundary::OneLeg(a) => root_above_one(&one_leg_limit(a), bits)?,
        };
        Some(lambda2_from_rho2(&u, bits).add_dyadic(&Dyadic::from_int(-2), bits))
    }

    pub fn lambda(&self, bits: u32) -> Option<DyadicInterval> {
        let b = self.beta(bits + 8)?;
        Some(sqrt_interval(&b.add_dyadic(&Dyadic::from_int(2), bits + 8), bits).expect("λ² > 0"))
    }
}

/// An exceptional value that λ² - 2 could take for a 3-spider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub label: String,
    pub minpoly_beta: IntPolynomial,
    /// `√(β + 2)`, the λ it would force.
    pub lambda: DyadicInterval,
}

impl Gate {
    fn beta(&self, bits: u32) -> DyadicInterval {
        let top = isolate_real_roots(&self.minpoly_beta).pop().expect("real roots");
        refine_interval(&top.factor, &top.interval, bits)
    }
}

impl Gate {
    fn of(e: &ExceptionalEntry) -> Gate {
        let g = Gate { label: e.label.clone(), minpoly_beta: e.minpoly_beta.clone(), lambda: DyadicInterval::from_ints(0, 0) };
        let b = g.beta(72).add_dyadic(&Dyadic::from_int(2), 72);
        Gate { lambda: sqrt_interval(&b, 64).expect("positive"), ..g }
    }
}

fn below_five_halves() -> impl Iterator<Item = &'static ExceptionalEntry> {
    let half5 = Dyadic::from_int(5).shl(-1);
    exceptional_list().iter().filter(move |e| e.house.hi < half5)
}

/// Exceptional entries with house `< 5/2` and every conjugate `≥ -2`: the values
/// `λ² - 2` can actually take, since `λ²` is totally positive.
pub fn gates() -> Vec<Gate> {
    below_five_halves().filter(|e| no_conjugate_below_minus_two(e)).map(Gate::of).collect()
}

/// The two values the printed ladder eliminates, `1 + 2cos(2π/7)` and
/// `ζ_12 + ζ_20 + ζ_20^17`. The second has the conjugate `-2.404867`, so
/// `gates` already drops it; its ladder is still derived for comparison.
pub fn printed_gates() -> Vec<Gate> {
    let wanted = ["1 + 2cos(2π/7)", "ζ_12 + ζ_20 + ζ_20^17"];
    below_five_halves().filter(|e| wanted.contains(&e.label.as_str())).map(Gate::of).collect()
}

fn no_conjugate_below_minus_two(e: &ExceptionalEntry) -> bool {
    let m = &e.minpoly_beta;
    // every conjugate is bounded by the house, which is below 4
    count_roots_open(m, &BigInt::from(-4), &BigInt::from(-2)) == 0 && !m.eval(&BigInt::from(-2)).is_zero()
}

/// Compares `λ(boundary)` with the gate; `None` if they agree to 1024 bits.
fn compare(boundary: Boundary, gate: &Gate) -> Option<Ordering> {
    let mut bits = 64;
    while bits <= 1024 {
        let Some(b) = boundary.beta(bits) else { return Some(Ordering::Less) };
        let g = gate.beta(bits + 8);
        if b.hi < g.lo {
            return Some(Ordering::Less);
        }
        if b.lo > g.hi {
            return Some(Ordering::Greater);
        }
        bits *= 2;
    }
    None
}

/// Which side of the gate a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Below,
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderStep {
    pub region: String,
    pub boundary: Boundary,
    /// Where every λ in the region lies relative to the gate.
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub gate: Gate,
    pub steps: Vec<LadderStep>,
    /// Spiders whose λ could not be separated from the gate numerically.
    pub residual: Vec<(u32, u32, u32)>,
}

/// Derives a complete ladder for one gate by walking `a`, then `b`, then `c`.
pub fn derive_ladder(gate: &Gate) -> Result<Ladder> {
    let mut steps = Vec::new();
    let mut residual = Vec::new();
    let cmp = |bd: Boundary| compare(bd, gate).ok_or_else(|| Error::Certification(format!("{bd} not separated from {}", gate.label)));
    for a in 1.. {
        if cmp(Boundary::Spider(a, a, a))? == Ordering::Greater {
            steps.push(LadderStep { region: format!("a ≥ {a}"), boundary: Boundary::Spider(a, a, a), side: Side::Above });
            break;
        }
        if cmp(Boundary::OneLeg(a))? == Ordering::Less {
            steps.push(LadderStep { region: format!("a = {a}"), boundary: Boundary::OneLeg(a), side: Side::Below });
            continue;
        }
        for b in a.. {
            if cmp(Boundary::Spider(a, b, b))? == Ordering::Greater {
                let region = format!("a = {a}, b ≥ {b}");
                steps.push(LadderStep { region, boundary: Boundary::Spider(a, b, b), side: Side::Above });
                break;
            }
            if cmp(Boundary::TwoLeg(a, b))? == Ordering::Less {
                let region = format!("a = {a}, b = {b}");
                steps.push(LadderStep { region, boundary: Boundary::TwoLeg(a, b), side: Side::Below });
                continue;
            }
            for c in b.. {
                match compare(Boundary::Spider(a, b, c), gate) {
                    Some(Ordering::Greater) => {
                        let region = format!("a = {a}, b = {b}, c ≥ {c}");
                        steps.push(LadderStep { region, boundary: Boundary::Spider(a, b, c), side: Side::Above });
                        break;
                    }
                    Some(_) => {
                        if star_class(a, b, c).is_gt() {
                            let region = format!("a = {a}, b = {b}, c = {c}");
                            steps.push(LadderStep { region, boundary: Boundary::Spider(a, b, c), side: Side::Below });
                        }
                    }
                    None => residual.push((a, b, c)),
                }
            }
        }
    }
    Ok(Ladder { gate: gate.clone(), steps, residual })
}

/// One inequality from the printed ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedClaim {
    pub region: &'static str,
    pub boundary: Boundary,
    /// The printed value of λ at the boundary.
    pub printed: &'static str,
    pub side: Side,
    /// The constant it is compared with in print.
    pub compared_with: &'static str,
}

const fn claim(region: &'static str, boundary: Boundary, printed: &'static str, side: Side, compared_with: &'static str) -> PrintedClaim {
    PrintedClaim { region, boundary, printed, side, compared_with }
}

/// The nine printed inequalities, with `√(2+√5)` written as 2.058171.
pub const PRINTED_CLAIMS: [PrintedClaim; 9] = [
    claim("a ≥ 3", Boundary::Spider(3, 3, 3), "2.074313", Side::Above, "2.060820"),
    claim("a = 2, b ≥ 4", Boundary::Spider(2, 4, 4), "2.074313", Side::Above, "2.060820"),
    claim("a = 2, b = 2", Boundary::TwoLeg(2, 2), "2.058171", Side::Below, "2.060820"),
    claim("a = 2, b = 3, c ≥ 5", Boundary::Spider(2, 3, 5), "2.069782", Side::Above, "2.060820"),
    claim("a = 1", Boundary::OneLeg(1), "2.058171", Side::Below, "2.060820"),
    claim("a ≥ 4", Boundary::Spider(4, 4, 4), "2.101002", Side::Above, "2.098777"),
    claim("a = 2, b ≥ 5", Boundary::Spider(2, 5, 5), "2.101002", Side::Above, "2.098777"),
    claim("a = 2, b ≤ 4", Boundary::TwoLeg(2, 4), "2.084868", Side::Below, "2.060820"),
    claim("a ≤ 2", Boundary::OneLeg(2), "2.093555", Side::Below, "2.098777"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: PrintedClaim,
    pub lambda: DyadicInterval,
    /// The printed value is λ at the boundary, truncated to six places.
    pub value_holds: bool,
    /// The printed value lies on the claimed side of the compared constant.
    pub chain_holds: bool,
}

impl ClaimCheck {
    pub fn holds(&self) -> bool {
        self.value_holds && self.chain_holds
    }
}

/// Re-checks every printed claim on its boundary case.
pub fn check_printed_claims() -> Result<Vec<ClaimCheck>> {
    PRINTED_CLAIMS
        .iter()
        .map(|c| {
            let lambda = c.boundary.lambda(64).ok_or_else(|| Error::Precondition(format!("{} is not hyperbolic", c.boundary)))?;
            let printed = DyadicInterval::from_rational(&parse_decimal(c.printed)?, 64);
            let other = DyadicInterval::from_rational(&parse_decimal(c.compared_with)?, 64);
            let next = DyadicInterval::from_rational(&(parse_decimal(c.printed)? + parse_decimal("0.000001")?), 64);
            let value_holds = lambda.lo >= printed.hi && lambda.hi < next.lo;
            let chain_holds = match c.side {
                Side::Above => printed.lo > other.hi,
                Side::Below => printed.hi < other.lo,
            };
            Ok(ClaimCheck { claim: c.clone(), lambda, value_holds, chain_holds })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_gate_survives() {
        let labels: Vec<String> = gates().into_iter().map(|g| g.label).collect();
        assert_eq!(labels, vec!["1 + 2cos(2π/7)"]);
        let g = printed_gates();
        assert_eq!(g.len(), 2);
        assert!(g[0].lambda.to_f64().0 > 2.06082 && g[0].lambda.to_f64().1 < 2.060821);
        assert!(g[1].lambda.to_f64().0 > 2.098777 && g[1].lambda.to_f64().1 < 2.098778);
    }

    #[test]
    fn printed_claims() {
        let checks = check_printed_claims().unwrap();
        let failing: Vec<&str> = checks.iter().filter(|c| !c.holds()).map(|c| c.claim.region).collect();
        assert_eq!(failing, vec!["a = 2, b ≥ 5", "a = 2, b ≤ 4"]);
        assert!(checks[7].value_holds && !checks[7].chain_holds);
        assert!(!checks[6].value_holds);
    }

    #[test]
    fn ladders_leave_nothing() {
        for g in printed_gates() {
            let l = derive_ladder(&g).unwrap();
            assert!(l.residual.is_empty());
            assert!(l.steps.iter().all(|s| matches!(s.boundary, Boundary::Spider(a, _, _) | Boundary::TwoLeg(a, _) | Boundary::OneLeg(a) if a <= 4)));
        }
    }
}
