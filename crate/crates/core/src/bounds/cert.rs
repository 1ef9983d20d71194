//! Certificate that `B ≥ 0` on `[0, 4]` away from the roots of the `Ch_N`.
//!
//! The interval is covered by singularity neighborhoods, where the log term of
//! the vanishing `Ch_N` dominates, and by bisection pieces with a certified
//! nonnegative lower bound.

use serde::{Deserialize, Serialize};

use super::bfunc::{BFunction, Singularity};
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::polyzq::elementary::ln_upper;
use crate::polyzq::{Dyadic, DyadicInterval};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub interval: DyadicInterval,
    /// Certified lower bound of `B` on the interval.
    pub lower: Dyadic,
}

/// On `interval \ {root}`: `|Ch_N(x)| ≤ |x - r|·max|Ch_N'| ≤ ch_upper`, so
/// `B(x) ≥ rest_lower - (a_N/scale)·ln(ch_upper) ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub n: u64,
    pub root: DyadicInterval,
    pub interval: DyadicInterval,
    pub rest_lower: Dyadic,
    pub ch_upper: Dyadic,
    pub lower: Dyadic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonnegCertificate {
    pub bits: u32,
    pub max_depth: u32,
    pub function: BFunction,
    pub neighborhoods: Vec<Neighborhood>,
    pub pieces: Vec<Piece>,
    /// Intervals where the depth budget ran out.
    pub failures: Vec<DyadicInterval>,
    /// Enclosure of the smallest value found and of where it is attained.
    pub minimum: Option<DyadicInterval>,
    pub minimizer: Option<DyadicInterval>,
}

impl NonnegCertificate {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    /// Re-checks every piece and neighborhood and that they cover `[0, 4]`.
    pub fn verify(&self) -> Result<()> {
        let b = &self.function;
        let bits = self.bits;
        if !self.is_complete() {
            return Err(Error::Certification(format!("{} uncovered intervals", self.failures.len())));
        }
        for nb in &self.neighborhoods {
            check_neighborhood(b, nb, bits)?;
        }
        let checks = par::map(Mode::Parallel, self.pieces.clone(), |p| piece_lower(b, &p.interval, bits));
        for (p, lo) in self.pieces.iter().zip(checks) {
            match lo {
                Some(lo) if !lo.is_negative() => {}
                _ => return Err(Error::Certification(format!("piece {:?} not certified", p.interval.to_f64()))),
            }
        }
        let mut spans: Vec<&DyadicInterval> =
            self.neighborhoods.iter().map(|n| &n.interval).chain(self.pieces.iter().map(|p| &p.interval)).collect();
        spans.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut reach = Dyadic::zero();
        for s in spans {
            if s.lo > reach {
                return Err(Error::Certification(format!("gap at {}", reach.to_f64())));
            }
            reach = reach.max(s.hi.clone());
        }
        if reach < Dyadic::from_int(4) {
            return Err(Error::Certification("cover stops short of 4".into()));
        }
        Ok(())
    }
}

fn check_neighborhood(b: &BFunction, nb: &Neighborhood, bits: u32) -> Result<()> {
    let term = b
        .terms
        .iter()
        .find(|t| t.n == nb.n && t.weight > 0)
        .ok_or_else(|| Error::Certification(format!("no weighted Ch_{}", nb.n)))?;
    let found = neighborhood_bound(b, term.n, &term.ch, term.weight, &nb.root, &nb.interval, bits)
        .ok_or_else(|| Error::Certification(format!("neighborhood of Ch_{} root fails", nb.n)))?;
    if found.lower.is_negative() || !nb.interval.contains_interval(&nb.root) {
        return Err(Error::Certification(format!("neighborhood of Ch_{} root fails", nb.n)));
    }
    if term.ch.sign_at(&nb.root.lo) == term.ch.sign_at(&nb.root.hi) && !nb.root.is_point() {
        return Err(Error::Certification(format!("Ch_{} does not change sign on the root interval", nb.n)));
    }
    Ok(())
}

/// Lower bound of `B` on `iv`, the better of the direct enclosure and the
/// mean-value form; `None` when a `Ch_N` cannot be separated from zero.
fn piece_lower(b: &BFunction, iv: &DyadicInterval, bits: u32) -> Option<Dyadic> {
    let direct = b.eval(iv, bits).ok()?;
    let m = DyadicInterval::point(iv.mid());
    let mv = b.eval(&m, bits).ok().and_then(|bm| {
        let d = b.derivative(iv, bits).ok()?;
        let off = iv.sub(&m, bits);
        Some(bm.add(&d.mul(&off, bits), bits))
    });
    Some(match mv {
        Some(v) => direct.lo.max(v.lo),
        None => direct.lo,
    })
}

fn neighborhood_bound(
    b: &BFunction,
    n: u64,
    ch: &crate::polyzq::IntPolynomial,
    weight: u32,
    root: &DyadicInterval,
    u: &DyadicInterval,
    bits: u32,
) -> Option<Neighborhood> {
    let rest = b.eval_skipping(u, bits, Some(n)).ok()?;
    let dmax = ch.derivative().eval_interval(u, bits).abs_upper();
    let dist = root.hi.sub(&u.lo).max(u.hi.sub(&root.lo));
    let ch_upper = dist.mul(&dmax).ceil_bits(bits);
    if !ch_upper.is_positive() {
        return None;
    }
    let l = ln_upper(&ch_upper, bits).ok()?;
    // lower = rest.lo - weight·l/scale, rounded down
    let wl = l.mul(&Dyadic::from_int(weight as i64));
    let wl = wl.div(&Dyadic::from_int(b.scale as i64), bits, true);
    let lower = rest.lo.sub(&wl).floor_bits(bits);
    Some(Neighborhood { n, root: root.clone(), interval: u.clone(), rest_lower: rest.lo, ch_upper, lower })
}

/// Finds the widest `2^-k` neighborhood of `s` (clipped to `[0, 4]`) on which the
/// log blow-up is certified.
fn build_neighborhood(b: &BFunction, s: &Singularity, bits: u32) -> Option<Neighborhood> {
    let term = b.terms.iter().find(|t| t.n == s.n)?;
    let (zero, four) = (Dyadic::zero(), Dyadic::from_int(4));
    let mut k: i64 = 6;
    while k < 60_000 {
        let d = Dyadic::new(1.into(), -k);
        let lo = s.root.lo.sub(&d).max(zero.clone());
        let hi = s.root.hi.add(&d).min(four.clone());
        let u = DyadicInterval::new(lo, hi);
        match neighborhood_bound(b, s.n, &term.ch, term.weight, &s.root, &u, bits) {
            Some(nb) if !nb.lower.is_negative() => return Some(nb),
            Some(nb) if nb.rest_lower.is_negative() => {
                // ln(2^-k K) ≤ rest·scale/a fixes the radius up to rounding
                let dmax = nb.ch_upper.to_f64().log2() + k as f64;
                let need = -nb.rest_lower.to_f64() * b.scale as f64 / term.weight as f64 / std::f64::consts::LN_2;
                k = (k + 1).max((need + dmax).ceil() as i64 + 1);
            }
            _ => k += 1,
        }
    }
    None
}

/// Adaptive certificate of `B ≥ 0` on `[0, 4]`.
pub fn verify_b_nonneg_with(b: &BFunction, max_depth: u32, bits: u32, mode: Mode) -> Result<NonnegCertificate> {
    let sing = b.singularities(bits);
    let built = par::map(mode, sing.clone(), |s| build_neighborhood(b, &s, bits).ok_or(s));
    let mut neighborhoods = Vec::new();
    for r in built {
        match r {
            Ok(nb) => neighborhoods.push(nb),
            Err(s) => {
                return Err(Error::Certification(format!(
                    "no certified neighborhood for the Ch_{} root near {:.6}",
                    s.n,
                    s.root.mid().to_f64()
                )))
            }
        }
    }
    neighborhoods.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    let mut frontier: Vec<DyadicInterval> = Vec::new();
    let mut reach = Dyadic::zero();
    for nb in &neighborhoods {
        if nb.interval.lo > reach {
            frontier.push(DyadicInterval::new(reach.clone(), nb.interval.lo.clone()));
        }
        reach = reach.max(nb.interval.hi.clone());
    }
    let four = Dyadic::from_int(4);
    if reach < four {
        frontier.push(DyadicInterval::new(reach, four));
    }
    let mut pieces = Vec::new();
    let mut failures = Vec::new();
    for depth in 0..=max_depth {
        if frontier.is_empty() {
            break;
        }
        let results = par::map(mode, frontier, |iv| {
            let lo = piece_lower(b, &iv, bits);
            (iv, lo)
        });
        frontier = Vec::new();
        for (iv, lo) in results {
            match lo {
                Some(lo) if !lo.is_negative() => pieces.push(Piece { interval: iv, lower: lo }),
                _ if depth == max_depth => failures.push(iv),
                _ => {
                    let m = iv.mid();
                    frontier.push(DyadicInterval::new(iv.lo.clone(), m.clone()));
                    frontier.push(DyadicInterval::new(m, iv.hi));
                }
            }
        }
    }
    failures.extend(frontier);
    pieces.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    let (minimum, minimizer) = match locate_minimum(b, bits) {
        Some((v, x)) => (Some(v), Some(x)),
        None => (None, None),
    };
    Ok(NonnegCertificate { bits, max_depth, function: b.clone(), neighborhoods, pieces, failures, minimum, minimizer })
}

/// The tabulated `B` with the given budget.
pub fn verify_b_nonneg(max_depth: u32, bits: u32) -> Result<NonnegCertificate> {
    verify_b_nonneg_with(&BFunction::standard(), max_depth, bits, Mode::Parallel)
}

/// Smallest value of `B` on `(0, 4)`: a floating-point scan picks the basin,
/// then the sign of `B'` is bisected with interval arithmetic.
pub fn locate_minimum(b: &BFunction, bits: u32) -> Option<(DyadicInterval, DyadicInterval)> {
    const STEPS: usize = 400_000;
    let h = 4.0 / STEPS as f64;
    let (mut best, mut at) = (f64::INFINITY, 0usize);
    for i in 1..STEPS {
        let v = b.eval_f64(i as f64 * h);
        if v < best {
            best = v;
            at = i;
        }
    }
    let to_dy = |x: f64| Dyadic::new(num_bigint::BigInt::from((x * (1u64 << 52) as f64) as i64), -52);
    let mut lo = to_dy((at as f64 - 1.0) * h);
    let mut hi = to_dy((at as f64 + 1.0) * h);
    let sign = |x: &Dyadic| b.derivative(&DyadicInterval::point(x.clone()), bits).ok();
    let (dl, dh) = (sign(&lo)?, sign(&hi)?);
    if !(dl.is_negative() && dh.is_positive()) {
        return None;
    }
    for _ in 0..(bits / 2) {
        let m = lo.add(&hi).shl(-1);
        let d = sign(&m)?;
        if d.is_negative() {
            lo = m;
        } else if d.is_positive() {
            hi = m;
        } else {
            break;
        }
    }
    let x = DyadicInterval::new(lo, hi);
    let v = b.eval(&x, bits).ok()?;
    Some((v, x))
}
