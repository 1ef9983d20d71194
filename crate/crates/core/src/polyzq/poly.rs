use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// constant term first. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // homogeneous Horner on numerator/denominator
        let (n, d) = (x.numer(), x.denom());
        let k = self.coeffs.len();
        if k == 0 {
            return BigRational::zero();
        }
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        let den = num_traits::pow(d.clone(), k - 1);
        BigRational::new(acc, den)
    }

    /// Sign of `p(m / 2^s)` computed exactly.
    pub fn sign_at_dyadic(&self, m: &BigInt, s: u64) -> Sign {
        let n = self.coeffs.len();
        if n == 0 {
            return Sign::NoSign;
        }
        let mut acc = BigInt::zero();
        for (j, c) in self.coeffs.iter().rev().enumerate() {
            acc = acc * m + (c << (s as usize * j));
        }
        acc.sign()
    }

    /// Quotient and remainder when every division step is exact over Z
    /// (always the case for a monic divisor). `None` otherwise.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.coeffs.last()?;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Some((Self::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        let monic = dl.is_one();
        for i in (0..q.len()).rev() {
            let top = &r[i + dn];
            if top.is_zero() {
                continue;
            }
            let c = if monic {
                top.clone()
            } else {
                let (qq, rr) = top.div_rem(dl);
                if !rr.is_zero() {
                    return None;
                }
                qq
            };
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dn);
        Some((Self::new(q), Self::new(r)))
    }

    /// `self / d` when the division is exact over Z.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d)?;
        r.is_zero().then_some(q)
    }

    /// Pseudo-division: `lc(d)^(deg self - deg d + 1) * self = q*d + r`.
    pub fn pseudo_divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "pseudo division by zero");
        let dn = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let steps = r.len() - dn;
        let mut q = vec![BigInt::zero(); steps];
        for i in (0..steps).rev() {
            let top = r[i + dn].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            q[i] += &top;
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &top * dc;
                }
            }
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    pub fn pseudo_rem(&self, d: &Self) -> Self {
        self.pseudo_divrem(d).1
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `self(-x)`.
    pub fn neg_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg * self(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    /// Inverse of [`inflate`](Self::inflate); `None` if some exponent is not a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        let mut v = Vec::with_capacity(self.coeffs.len() / k + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                v.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Self::new(v))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn l2_norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Cauchy bound `1 + max |c_i / c_n|` rounded up to a power of two; returns the exponent.
    pub fn root_bound_log2(&self) -> u64 {
        let lc = self.leading().abs();
        let m = self.max_abs_coeff();
        let ratio = m.div_ceil(&lc) + BigInt::one();
        ratio.bits()
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 || !a.is_one() {
                s.push_str(&a.to_string());
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    s.push_str(var);
                    s.push('^');
                    s.push_str(&i.to_string());
                }
            }
        }
        s
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts `x^2 - 3x + 1` style text (any single-letter variable, optional `*`)
    /// or a JSON array of coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(format!("{t}: {e}")));
        }
        parse_expr(t)
    }
}

fn parse_expr(s: &str) -> Result<IntPolynomial> {
    let clean: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if clean.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in clean.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut var: Option<char> = None;
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, term.trim_start_matches('+').to_string()),
        };
        let bad = || Error::Parse(format!("bad term `{term}`"));
        let split = body.find(|c: char| c.is_alphabetic());
        let (num, exp) = match split {
            None => (body.as_str(), 0usize),
            Some(pos) => {
                let v = body[pos..].chars().next().ok_or_else(bad)?;
                if *var.get_or_insert(v) != v {
                    return Err(Error::Parse(format!("mixed variables in `{s}`")));
                }
                let rest = &body[pos + v.len_utf8()..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (&body[..pos], e)
            }
        };
        let mut c = if num.is_empty() {
            if split.is_none() {
                return Err(bad());
            }
            BigInt::one()
        } else {
            num.parse::<BigInt>().map_err(|_| bad())?
        };
        if neg {
            c = -c;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += c;
    }
    Ok(IntPolynomial::new(coeffs))
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum C {
            S(String),
            I(i64),
        }
        let v: Vec<C> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for c in v {
            out.push(match c {
                C::S(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom)?,
                C::I(i) => BigInt::from(i),
            });
        }
        Ok(IntPolynomial::new(out))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPolynomial::new(v)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let mut v = self.coeffs.clone();
        if v.len() < o.coeffs.len() {
            v.resize(o.coeffs.len(), BigInt::zero());
        }
        for (a, b) in v.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
        IntPolynomial::new(v)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, o: IntPolynomial) -> IntPolynomial {
                (&self).$m(&o)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, o: &IntPolynomial) -> IntPolynomial {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}
