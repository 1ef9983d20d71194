//! Dyadic rationals `m·2^e` and outward-rounded intervals over them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Exact dyadic rational `mant · 2^exp`, normalized so `mant` is odd (or zero with `exp = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Position of the most significant bit: `2^(msb-1) ≤ |x| < 2^msb`.
    pub fn msb(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        ((&a.mant) << (a.exp - e) as usize, (&b.mant) << (b.exp - e) as usize, e)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Self::align(self, o);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Round to at most `bits` significant bits toward −∞ (`up = false`) or +∞.
    pub fn round(&self, bits: u32, up: bool) -> Dyadic {
        let nb = self.mant.bits() as i64;
        let drop = nb - bits as i64;
        if drop <= 0 {
            return self.clone();
        }
        let d = drop as usize;
        let q = if up {
            -((-&self.mant) >> d)
        } else {
            &self.mant >> d
        };
        Dyadic::new(q, self.exp + drop)
    }

    pub fn floor_bits(&self, bits: u32) -> Dyadic {
        self.round(bits, false)
    }

    pub fn ceil_bits(&self, bits: u32) -> Dyadic {
        self.round(bits, true)
    }

    /// `floor(r · 2^k) / 2^k`.
    pub fn from_rational_floor(r: &BigRational, k: i64) -> Dyadic {
        let (n, d) = scaled(r, k);
        Dyadic::new(n.div_floor(&d), -k)
    }

    pub fn from_rational_ceil(r: &BigRational, k: i64) -> Dyadic {
        let (n, d) = scaled(r, k);
        Dyadic::new(-((-n).div_floor(&d)), -k)
    }

    /// Quotient rounded toward −∞ or +∞ with `bits` significant bits.
    pub fn div(&self, o: &Dyadic, bits: u32, up: bool) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = bits as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let shift = shift.max(0);
        let num = (&self.mant) << shift as usize;
        let (q, r) = num.div_mod_floor(&o.mant);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, self.exp - o.exp - shift)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.mant.bits() as i64;
        let keep = nb.min(60);
        let m = (&self.mant >> (nb - keep) as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + nb - keep).clamp(-2000, 2000) as i32)
    }

    /// Floor of the value as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            &self.mant >> (-self.exp) as usize
        }
    }

    /// Decimal string with `digits` digits after the point, truncated toward zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let r = self.to_rational() * BigRational::from_integer(num_traits::pow(BigInt::from(10), digits));
        let t = r.to_integer();
        let neg = self.is_negative();
        let s = t.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        format!("{}{}{}{}", if neg { "-" } else { "" }, ip, if digits > 0 { "." } else { "" }, fp)
    }
}

fn scaled(r: &BigRational, k: i64) -> (BigInt, BigInt) {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    if k >= 0 {
        n <<= k as usize;
    } else {
        d <<= (-k) as usize;
    }
    (n, d)
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.sub(o).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.mant.to_string(), self.exp).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (m, e): (String, i64) = Deserialize::deserialize(d)?;
        let m = m.parse::<BigInt>().map_err(serde::de::Error::custom)?;
        Ok(Dyadic::new(m, e))
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyadicInterval { lo: x.clone(), hi: x }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(Dyadic::from_int(lo), Dyadic::from_int(hi))
    }

    /// Tight enclosure of a rational with `bits` bits after the binary point.
    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let k = bits as i64;
        Self::new(Dyadic::from_rational_floor(r, k), Dyadic::from_rational_ceil(r, k))
    }

    pub fn from_ratio(n: i64, d: i64, bits: u32) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()), bits)
    }

    /// Enclosure of a decimal literal like `"4.302775"` (exact value, not the rounded real).
    pub fn from_decimal(s: &str, bits: u32) -> Result<Self> {
        let r = parse_decimal(s)?;
        Ok(Self::from_rational(&r, bits))
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, o: &DyadicInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &DyadicInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn intersect(&self, o: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then_some(DyadicInterval { lo, hi })
    }

    pub fn hull(&self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certainly `self < o`.
    pub fn lt(&self, o: &DyadicInterval) -> bool {
        self.hi < o.lo
    }

    pub fn abs_upper(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn abs_lower(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(&self) -> DyadicInterval {
        DyadicInterval { lo: self.abs_lower(), hi: self.abs_upper() }
    }

    pub fn round(&self, bits: u32) -> DyadicInterval {
        DyadicInterval { lo: self.lo.floor_bits(bits), hi: self.hi.ceil_bits(bits) }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, o: &DyadicInterval, bits: u32) -> DyadicInterval {
        DyadicInterval { lo: self.lo.add(&o.lo).floor_bits(bits), hi: self.hi.add(&o.hi).ceil_bits(bits) }
    }

    pub fn sub(&self, o: &DyadicInterval, bits: u32) -> DyadicInterval {
        self.add(&o.neg(), bits)
    }

    pub fn add_dyadic(&self, d: &Dyadic, bits: u32) -> DyadicInterval {
        DyadicInterval { lo: self.lo.add(d).floor_bits(bits), hi: self.hi.add(d).ceil_bits(bits) }
    }

    pub fn mul(&self, o: &DyadicInterval, bits: u32) -> DyadicInterval {
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        DyadicInterval { lo: lo.floor_bits(bits), hi: hi.ceil_bits(bits) }
    }

    pub fn mul_dyadic(&self, d: &Dyadic, bits: u32) -> DyadicInterval {
        self.mul(&DyadicInterval::point(d.clone()), bits)
    }

    pub fn shl(&self, k: i64) -> DyadicInterval {
        DyadicInterval { lo: self.lo.shl(k), hi: self.hi.shl(k) }
    }

    pub fn sqr(&self, bits: u32) -> DyadicInterval {
        let a = self.abs();
        DyadicInterval { lo: a.lo.mul(&a.lo).floor_bits(bits), hi: a.hi.mul(&a.hi).ceil_bits(bits) }
    }

    pub fn pow(&self, e: u64, bits: u32) -> DyadicInterval {
        let dpow = |x: &Dyadic, up: bool| -> Dyadic {
            let mut acc = Dyadic::one();
            let mut base = x.clone();
            let mut k = e;
            while k > 0 {
                if k & 1 == 1 {
                    acc = acc.mul(&base).round(bits, up);
                }
                k >>= 1;
                if k > 0 {
                    base = base.mul(&base).round(bits, up);
                }
            }
            acc
        };
        if e % 2 == 1 {
            // odd powers are monotone; directed rounding of a negative base flips
            let lo = if self.lo.is_negative() { dpow(&self.lo.abs(), true).neg() } else { dpow(&self.lo, false) };
            let hi = if self.hi.is_negative() { dpow(&self.hi.abs(), false).neg() } else { dpow(&self.hi, true) };
            DyadicInterval { lo, hi }
        } else {
            let a = self.abs();
            DyadicInterval { lo: dpow(&a.lo, false), hi: dpow(&a.hi, true) }
        }
    }

    pub fn recip(&self, bits: u32) -> Result<DyadicInterval> {
        if self.contains_zero() {
            return Err(Error::Precondition("reciprocal of interval containing 0".into()));
        }
        let one = Dyadic::one();
        Ok(DyadicInterval { lo: one.div(&self.hi, bits, false), hi: one.div(&self.lo, bits, true) })
    }

    pub fn div(&self, o: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
        Ok(self.mul(&o.recip(bits + 8)?, bits))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    /// `mid ± radius` with `digits` decimal digits of the midpoint.
    pub fn display_with(&self, digits: usize) -> String {
        let rad = self.width().shl(-1).to_f64();
        format!("{} ± {:.1e}", self.mid().to_decimal(digits), rad)
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(12))
    }
}

/// Parses `-12.345` or `3/7` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad number `{t}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let r = BigRational::new(digits, num_traits::pow(BigInt::from(10), fp.len()));
    Ok(if neg { -r } else { r })
}

impl IntPolynomial {
    /// Horner enclosure of `p(X)`.
    pub fn eval_interval_horner(&self, x: &DyadicInterval, bits: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::point(Dyadic::zero());
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(x, bits).add_dyadic(&Dyadic::from_bigint(c.clone()), bits);
        }
        acc
    }

    /// Horner enclosure intersected with the mean-value form `p(m) + p'(X)(X - m)`.
    pub fn eval_interval(&self, x: &DyadicInterval, bits: u32) -> DyadicInterval {
        let h = self.eval_interval_horner(x, bits);
        if x.is_point() || self.deg() < 2 {
            return h;
        }
        let m = x.mid();
        let pm = self.eval_interval_horner(&DyadicInterval::point(m.clone()), bits);
        let dp = self.derivative().eval_interval_horner(x, bits);
        let dx = DyadicInterval { lo: x.lo.sub(&m), hi: x.hi.sub(&m) };
        let mv = pm.add(&dp.mul(&dx, bits), bits);
        h.intersect(&mv).unwrap_or(h)
    }

    /// Exact sign of `p` at a dyadic point.
    pub fn sign_at(&self, x: &Dyadic) -> Sign {
        if x.exp() >= 0 {
            return self.eval(&x.floor_int()).sign();
        }
        self.sign_at_dyadic(x.mant(), (-x.exp()) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_and_order() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7), Dyadic::zero());
        assert!(d(3, -1) < d(2, 0));
        assert!(d(-3, -1) < d(-1, 0));
        assert_eq!(d(3, -1).add(&d(1, -1)), d(2, 0));
        assert_eq!(d(3, -1).mul(&d(3, -1)), d(9, -2));
    }

    #[test]
    fn rounding_is_directed() {
        let x = d(0b1011011, 0);
        assert_eq!(x.floor_bits(3), d(0b101, 4));
        assert_eq!(x.ceil_bits(3), d(0b110, 4));
        let y = x.neg();
        assert_eq!(y.floor_bits(3), d(-0b110, 4));
        assert_eq!(y.ceil_bits(3), d(-0b101, 4));
    }

    #[test]
    fn division_brackets_quotient() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 40, false);
        let hi = one.div(&three, 40, true);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.sub(&lo).msb() <= -40);
    }

    #[test]
    fn rational_enclosure_and_decimal() {
        let r = parse_decimal("-6.452262").unwrap();
        let iv = DyadicInterval::from_rational(&r, 60);
        assert!(iv.contains_rational(&r));
        assert_eq!(Dyadic::from_int(-5).shl(-2).to_decimal(3), "-1.250");
        assert_eq!(d(1, -3).to_decimal(2), "0.12");
        assert_eq!(parse_decimal("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn interval_arithmetic_encloses() {
        let a = DyadicInterval::from_ints(-1, 2);
        let b = DyadicInterval::from_ints(3, 4);
        assert_eq!(a.mul(&b, 64), DyadicInterval::from_ints(-4, 8));
        assert_eq!(a.sqr(64), DyadicInterval::from_ints(0, 4));
        assert_eq!(a.pow(3, 64), DyadicInterval::from_ints(-1, 8));
        assert_eq!(a.pow(2, 64), DyadicInterval::from_ints(0, 4));
        let r = b.recip(30).unwrap();
        assert!(r.contains(&d(1, -2)) && r.contains(&Dyadic::one().div(&Dyadic::from_int(3), 60, false)));
        assert!(a.recip(30).is_err());
    }

    #[test]
    fn serde_shape() {
        let iv = DyadicInterval::new(d(3, -2), d(1, 0));
        let s = serde_json::to_string(&iv).unwrap();
        assert_eq!(s, r#"{"lo":["3",-2],"hi":["1",0]}"#);
        let back: DyadicInterval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, iv);
    }

    #[test]
    fn polynomial_enclosures() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let x = DyadicInterval::new(d(5, -2), d(3, -1));
        let v = p.eval_interval(&x, 64);
        // exact range of x^2-2 on [1.25, 1.5] is [-0.4375, 0.25]
        assert!(v.lo <= d(-7, -4) && v.hi >= d(1, -2));
        assert_eq!(p.sign_at(&d(3, -1)), Sign::Plus);
        assert_eq!(p.sign_at(&d(2, 0)), Sign::Plus);
        assert_eq!(p.sign_at(&d(1, 0)), Sign::Minus);
    }
}
