//! Outward-rounded `ln`, `exp`, `sqrt` and powers on dyadic intervals, plus
//! fixed-point cosines for non-certified numerics.
//!
//! Every certified routine computes a fixed-point approximation `A` at `w` bits
//! together with an explicit bound `E` on `|A - value·2^w|`, then returns
//! `[(A - E)/2^w, (A + E)/2^w]`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};

/// `2·atanh(num/den)·2^w` with an error bound, valid for `|num/den| ≤ 1/3`.
fn two_atanh(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    let n2 = num * num;
    let d2 = den * den;
    // truncating division so negative terms still reach zero
    let mut pw = (num << w as usize) / den;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !pw.is_zero() {
        sum += &pw / BigInt::from(2 * j + 1);
        pw = (&pw * &n2) / &d2;
        j += 1;
    }
    // per-term error ≤ 2.125, tail ≤ 0.2, doubled
    (sum << 1, BigInt::from(5 * (j + 2)))
}

fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    static C: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = c.lock().ok().and_then(|m| m.get(&w).cloned()) {
        return v;
    }
    let v = two_atanh(&BigInt::one(), &BigInt::from(3), w);
    if let Ok(mut m) = c.lock() {
        m.insert(w, v.clone());
    }
    v
}

fn to_interval(a: &BigInt, e: &BigInt, w: u32) -> DyadicInterval {
    DyadicInterval::new(Dyadic::new(a - e, -(w as i64)), Dyadic::new(a + e, -(w as i64)))
}

/// `ln 2` enclosed with absolute error `≤ 2^-bits`.
pub fn ln2(bits: u32) -> DyadicInterval {
    let w = bits + 16;
    let (a, e) = ln2_fixed(w);
    to_interval(&a, &e, w)
}

/// Enclosure of `ln x` for a positive dyadic `x`, absolute error about `2^-bits`.
pub fn ln_point(x: &Dyadic, bits: u32) -> Result<DyadicInterval> {
    if !x.is_positive() {
        return Err(Error::Precondition("ln of a non-positive number".into()));
    }
    let w = bits + 16;
    let m = x.mant();
    let b = m.bits() as i64;
    // y = m / 2^s with y in [1/√2, √2)
    let s = if (m * m) > (BigInt::one() << (2 * b - 1) as usize) { b } else { b - 1 };
    let k = x.exp() + s;
    let two_s = BigInt::one() << s as usize;
    let (ly, ey) = two_atanh(&(m - &two_s), &(m + &two_s), w);
    let (l2, e2) = ln2_fixed(w + 64);
    let kk = BigInt::from(k);
    let kl2 = (&kk * &l2) >> 64usize;
    let ek = ((kk.abs() * &e2) >> 64usize) + 2;
    Ok(to_interval(&(ly + kl2), &(ey + ek), w))
}

/// `ln` of a positive interval.
pub fn ln_interval(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    let lo = ln_point(&x.lo, bits)?;
    let hi = if x.is_point() { lo.clone() } else { ln_point(&x.hi, bits)? };
    Ok(DyadicInterval::new(lo.lo, hi.hi))
}

/// Upper bound on `ln x` for `x > 0`.
pub fn ln_upper(x: &Dyadic, bits: u32) -> Result<Dyadic> {
    Ok(ln_point(x, bits)?.hi)
}

/// Taylor sum of `exp(R/2^w)` for `|R| < 2^w`, with error bound.
fn exp_taylor(r: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w as usize;
    let mut t = one.clone();
    let mut sum = one.clone();
    let mut j: u64 = 1;
    while !t.is_zero() {
        t = (&t * r) / (&one * BigInt::from(j));
        sum += &t;
        j += 1;
    }
    (sum, BigInt::from(2 * j + 6))
}

/// Enclosure of `exp x` with relative error about `2^-bits`.
pub fn exp_point(x: &Dyadic, bits: u32) -> Result<DyadicInterval> {
    exp_interval(&DyadicInterval::point(x.clone()), bits)
}

pub fn exp_interval(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    let w = bits + 16;
    let approx = x.mid().to_f64();
    if !approx.is_finite() || approx.abs() > 1e12 {
        return Err(Error::Precondition("exp argument out of range".into()));
    }
    let k = (approx / std::f64::consts::LN_2).floor() as i64;
    let (l2, e2) = ln2_fixed(w + 64);
    let kk = BigInt::from(k);
    // k·ln2 at w bits, rounded outward
    let kl2_lo = ((&kk * &l2) - kk.abs() * &e2) >> 64usize;
    let kl2_hi = (((&kk * &l2) + kk.abs() * &e2) >> 64usize) + 1;
    let fixed = |d: &Dyadic, up: bool| -> BigInt {
        let sh = d.exp() + w as i64;
        if sh >= 0 {
            d.mant() << sh as usize
        } else if up {
            -((-d.mant()) >> (-sh) as usize)
        } else {
            d.mant() >> (-sh) as usize
        }
    };
    let r_lo: BigInt = fixed(&x.lo, false) - &kl2_hi;
    let r_hi: BigInt = fixed(&x.hi, true) - &kl2_lo;
    let limit = BigInt::one() << w as usize;
    if r_lo.abs() >= limit || r_hi.abs() >= limit {
        return Err(Error::Precondition("exp argument reduction failed".into()));
    }
    let (s_lo, e_lo) = exp_taylor(&r_lo, w);
    let (s_hi, e_hi) = exp_taylor(&r_hi, w);
    let scale = k - w as i64;
    Ok(DyadicInterval::new(Dyadic::new(s_lo - e_lo, scale), Dyadic::new(s_hi + e_hi, scale)))
}

/// `x^q` for `x ≥ 0` and rational `q > 0`.
pub fn pow_rational(x: &DyadicInterval, q: &BigRational, bits: u32) -> Result<DyadicInterval> {
    if x.lo.is_negative() || !q.is_positive() {
        return Err(Error::Precondition("pow needs x ≥ 0 and q > 0".into()));
    }
    let qi = DyadicInterval::from_rational(q, bits + 32);
    let up = |d: &Dyadic| -> Result<Dyadic> {
        let l = ln_point(d, bits + 8)?;
        let t = l.mul(&qi, bits + 32);
        Ok(exp_interval(&DyadicInterval::point(t.hi.clone()), bits)?.hi)
    };
    let hi = if x.hi.is_zero() { Dyadic::zero() } else { up(&x.hi)? };
    let lo = if x.lo.is_zero() {
        Dyadic::zero()
    } else {
        let l = ln_point(&x.lo, bits + 8)?;
        let t = l.mul(&qi, bits + 32);
        exp_interval(&DyadicInterval::point(t.lo.clone()), bits)?.lo
    };
    Ok(DyadicInterval::new(lo.min(hi.clone()), hi))
}

/// `√x` for `x ≥ 0`, absolute error `≤ 2^-bits`.
pub fn sqrt_interval(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    if x.lo.is_negative() {
        return Err(Error::Precondition("sqrt of a negative number".into()));
    }
    let root = |d: &Dyadic, up: bool| -> Dyadic {
        if d.is_zero() {
            return Dyadic::zero();
        }
        // value·2^(2w) must be an integer
        let w = (bits as i64).max((-d.exp() + 1) / 2);
        let n = d.mant() << (d.exp() + 2 * w) as usize;
        let r = n.sqrt();
        let r = if up && &r * &r != n { r + 1 } else { r };
        Dyadic::new(r, -w)
    };
    Ok(DyadicInterval::new(root(&x.lo, false), root(&x.hi, true)))
}

/// `π·2^w` (error of a few units).
pub fn pi_fixed(w: u32) -> BigInt {
    fn atan_inv(n: u64, w: u32) -> BigInt {
        let nn = BigInt::from(n * n);
        let mut pw = (BigInt::one() << w as usize) / BigInt::from(n);
        let mut sum = BigInt::zero();
        let mut j: u64 = 0;
        while !pw.is_zero() {
            let t = &pw / BigInt::from(2 * j + 1);
            if j.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            pw /= &nn;
            j += 1;
        }
        sum
    }
    let g = w + 16;
    ((atan_inv(5, g) << 4) - (atan_inv(239, g) << 2)) >> 16usize
}

/// `2cos(2πj/f)·2^w` for `j = 0..f`, by rotation; accurate to about `w - log2(f) - 8` bits.
pub fn two_cos_table(f: u64, w: u32) -> Vec<BigInt> {
    let g = w + 32 + (64 - f.leading_zeros());
    let one = BigInt::one() << g as usize;
    let theta: BigInt = (pi_fixed(g) << 1usize) / BigInt::from(f);
    // cos and sin of theta by Taylor
    let mut c = one.clone();
    let mut s = theta.clone();
    let mut t = one.clone();
    let mut j: u64 = 1;
    loop {
        t = (&t * &theta) / (&one * BigInt::from(j));
        if t.is_zero() {
            break;
        }
        match j % 4 {
            0 => c += &t,
            1 if j > 1 => s += &t,
            2 => c -= &t,
            3 => s -= &t,
            _ => {}
        }
        j += 1;
    }
    let mut out = Vec::with_capacity(f as usize);
    let (mut cj, mut sj) = (one.clone(), BigInt::zero());
    for _ in 0..f {
        out.push((&cj << 1usize) >> (g - w) as usize);
        let nc = (&cj * &c - &sj * &s) >> g as usize;
        let ns = (&sj * &c + &cj * &s) >> g as usize;
        cj = nc;
        sj = ns;
    }
    out
}

/// Convenience: `f64` view of a fixed-point value.
pub fn fixed_to_f64(a: &BigInt, w: u32) -> f64 {
    Dyadic::new(a.clone(), -(w as i64)).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(x: f64) -> Dyadic {
        let m = (x * (1u64 << 40) as f64).round() as i64;
        Dyadic::new(BigInt::from(m), -40)
    }

    #[test]
    fn ln2_is_tight() {
        let iv = ln2(100);
        let (a, b) = iv.to_f64();
        assert!(a <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= b);
        assert!(iv.width().msb() <= -100);
    }

    #[test]
    fn ln_matches_f64() {
        for x in [1e-9, 0.002093, 0.5, 1.0, 1.41, 2.0, 3.5, 6.25, 1234.5] {
            let d = dy(x);
            let iv = ln_point(&d, 80).unwrap();
            let v = d.to_f64().ln();
            let (a, b) = iv.to_f64();
            assert!(a <= v + 1e-15 && v - 1e-15 <= b, "ln({x}) = {v} not in [{a}, {b}]");
            assert!(iv.width().msb() <= -70);
        }
        assert!(ln_point(&Dyadic::zero(), 10).is_err());
        let z = ln_point(&Dyadic::one(), 60).unwrap();
        assert!(z.contains(&Dyadic::zero()));
    }

    #[test]
    fn exp_matches_f64() {
        for x in [-20.0, -1.0, -0.001, 0.0, 0.3, 1.0, 7.5, 40.0] {
            let iv = exp_point(&dy(x), 80).unwrap();
            let v = dy(x).to_f64().exp();
            let (a, b) = iv.to_f64();
            assert!(a <= v * (1.0 + 1e-14) && v * (1.0 - 1e-14) <= b, "exp({x})");
            assert!(iv.width().to_f64() <= v * 1e-20);
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = DyadicInterval::point(dy(5.58));
        let q = BigRational::new(BigInt::from(52), BigInt::from(100));
        let p = pow_rational(&x, &q, 80).unwrap();
        let v = 5.58f64.powf(0.52);
        let (a, b) = p.to_f64();
        assert!(a <= v * (1.0 + 1e-14) && v * (1.0 - 1e-14) <= b);
        let z = pow_rational(&DyadicInterval::from_ints(0, 1), &q, 40).unwrap();
        assert!(z.lo.is_zero());
    }

    #[test]
    fn sqrt_brackets() {
        let iv = sqrt_interval(&DyadicInterval::from_ints(2, 2), 60).unwrap();
        let (a, b) = iv.to_f64();
        assert!(a <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= b);
        let e = sqrt_interval(&DyadicInterval::point(Dyadic::new(BigInt::from(9), -6)), 10).unwrap();
        assert_eq!(e, DyadicInterval::point(Dyadic::new(BigInt::from(3), -3)));
    }

    #[test]
    fn cos_table() {
        let t = two_cos_table(7, 80);
        for (j, v) in t.iter().enumerate() {
            let exact = 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 7.0).cos();
            assert!((fixed_to_f64(v, 80) - exact).abs() < 1e-14);
        }
        let pi = fixed_to_f64(&pi_fixed(100), 100);
        assert!((pi - std::f64::consts::PI).abs() < 1e-15);
    }
}
