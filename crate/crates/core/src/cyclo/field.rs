//! Elements of `Z[ζ_f]` as group-ring vectors, with exact minimal polynomials
//! computed from conjugate products modulo primes `q ≡ 1 (mod f)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyzq::gcd::squarefree_part;
use crate::polyzq::modp::{is_prime_u64, mul_mod, pow_mod, primitive_root, reduce, FpPoly};
use crate::polyzq::IntPolynomial;

/// `Σ coeffs[j] ζ_f^j` in `Z[x]/(x^f - 1)`; distinct vectors may represent the same number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloInt {
    f: u64,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(f: u64) -> Self {
        assert!(f >= 1);
        CycloInt { f, coeffs: vec![BigInt::zero(); f as usize] }
    }

    pub fn from_terms(f: u64, terms: &[(i64, i64)]) -> Self {
        let mut z = Self::zero(f);
        for &(e, c) in terms {
            z.coeffs[e.rem_euclid(f as i64) as usize] += c;
        }
        z
    }

    pub fn constant(f: u64, c: i64) -> Self {
        Self::from_terms(f, &[(0, c)])
    }

    /// `2cos(2πj/f) = ζ^j + ζ^-j`.
    pub fn two_cos(f: u64, j: i64) -> Self {
        Self::from_terms(f, &[(j, 1), (-j, 1)])
    }

    pub fn conductor(&self) -> u64 {
        self.f
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The same number viewed in `Z[ζ_g]` for a multiple `g` of `f`.
    pub fn lift(&self, g: u64) -> Self {
        assert!(g.is_multiple_of(self.f));
        let k = (g / self.f) as usize;
        let mut z = Self::zero(g);
        for (j, c) in self.coeffs.iter().enumerate() {
            z.coeffs[j * k] = c.clone();
        }
        z
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = common(self, o);
        CycloInt { f: a.f, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycloInt { f: self.f, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = common(self, o);
        let f = a.f as usize;
        let mut out = vec![BigInt::zero(); f];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % f] += x * y;
            }
        }
        CycloInt { f: a.f, coeffs: out }
    }

    /// `σ_k: ζ ↦ ζ^k`, for `k` prime to `f`.
    pub fn galois(&self, k: u64) -> Self {
        debug_assert_eq!(k.gcd(&self.f), 1);
        let f = self.f as usize;
        let mut out = vec![BigInt::zero(); f];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[(j * k as usize) % f] += c;
        }
        CycloInt { f: self.f, coeffs: out }
    }

    /// Invariance under `ζ ↦ ζ^-1` as a vector (sufficient for being real).
    pub fn is_symmetric(&self) -> bool {
        let f = self.f as usize;
        (0..f).all(|j| self.coeffs[j] == self.coeffs[(f - j) % f])
    }

    /// Canonical representative: remainder modulo `Φ_f`.
    pub fn reduced(&self) -> IntPolynomial {
        let phi = crate::polyzq::cyclotomic_polynomial(self.f);
        let (_, r) = IntPolynomial::new(self.coeffs.clone()).divrem(&phi).expect("Φ_f is monic");
        r
    }

    pub fn equals(&self, o: &Self) -> bool {
        let (a, b) = common(self, o);
        a.reduced() == b.reduced()
    }

    /// Image under `ζ ↦ w` in `F_q`.
    pub fn eval_mod(&self, q: u64, w: u64) -> u64 {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, w, q) + reduce(c, q)) % q;
        }
        acc
    }

    /// Real part at the standard embedding, as a fixed-point integer with `w`
    /// fractional bits (numerical, not certified).
    pub fn real_fixed(&self, table: &[BigInt]) -> BigInt {
        // table[j] = 2cos(2πj/f) scaled; Re ζ^j = table[j] / 2
        let s: BigInt = self.coeffs.iter().zip(table).map(|(c, t)| c * t).sum();
        s >> 1usize
    }

    pub fn to_f64(&self) -> f64 {
        let f = self.f as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.to_f64().unwrap_or(f64::NAN) * (std::f64::consts::TAU * j as f64 / f).cos())
            .sum()
    }

    /// An upper bound for `|σ(x)|` over all embeddings.
    pub fn abs_bound(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// `∏_k (X - σ_k(x))` over the representatives `ks`, assuming the product has
    /// rational integer coefficients (the caller guarantees the set is Galois-stable).
    pub fn conjugate_product(&self, ks: &[u64]) -> IntPolynomial {
        let d = ks.len();
        let b = self.abs_bound().max(BigInt::one());
        // |coeff_i| ≤ C(d,i) b^i ≤ (2b)^d
        let bound: BigInt = (b * 2u32).pow(d as u32);
        let target = bound * 2u32 + 1u32;
        let mut modulus = BigInt::one();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); d + 1];
        let mut k = (1u64 << 31) / self.f + 1;
        while modulus < target {
            let q = loop {
                let q = k * self.f + 1;
                k += 1;
                if q < (1 << 32) && is_prime_u64(q) {
                    break q;
                }
                assert!(q < 1 << 32, "ran out of 32-bit primes");
            };
            let w = pow_mod(primitive_root(q), (q - 1) / self.f, q);
            let mut prod = FpPoly::one(q);
            for &s in ks {
                let r = self.eval_mod(q, pow_mod(w, s, q));
                prod = prod.mul(&FpPoly::new(q, vec![(q - r) % q, 1]));
            }
            crt_accumulate(&mut acc, &mut modulus, &prod, q);
        }
        let half = &modulus >> 1usize;
        let coeffs = acc.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect();
        IntPolynomial::new(coeffs)
    }

    /// Characteristic polynomial over `Q(ζ_f)`, i.e. the product over all of `(Z/f)^*`.
    pub fn charpoly(&self) -> IntPolynomial {
        self.conjugate_product(&units(self.f))
    }

    /// Minimal polynomial over Q (monic).
    pub fn minpoly(&self) -> IntPolynomial {
        squarefree_part(&self.charpoly())
    }
}

fn common(a: &CycloInt, b: &CycloInt) -> (CycloInt, CycloInt) {
    if a.f == b.f {
        return (a.clone(), b.clone());
    }
    let g = a.f.lcm(&b.f);
    (a.lift(g), b.lift(g))
}

fn crt_accumulate(acc: &mut [BigInt], modulus: &mut BigInt, r: &FpPoly, q: u64) {
    let qb = BigInt::from(q);
    let m_mod_q = reduce(modulus, q);
    let inv = pow_mod(m_mod_q, q - 2, q);
    for (i, a) in acc.iter_mut().enumerate() {
        let ri = r.c.get(i).copied().unwrap_or(0);
        let ai = reduce(a, q);
        let t = mul_mod((ri + q - ai) % q, inv, q);
        *a += &*modulus * BigInt::from(t);
    }
    *modulus *= qb;
}

/// `(Z/f)^*` in increasing order.
pub fn units(f: u64) -> Vec<u64> {
    if f == 1 {
        return vec![1];
    }
    (1..f).filter(|k| k.gcd(&f) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn two_cos_minpolys() {
        assert_eq!(CycloInt::two_cos(8, 1).minpoly(), p(&[-2, 0, 1]));
        assert_eq!(CycloInt::two_cos(5, 1).minpoly(), p(&[-1, 1, 1]));
        assert_eq!(CycloInt::two_cos(7, 1).minpoly(), p(&[-1, -2, 1, 1]));
        assert_eq!(CycloInt::constant(3, 5).minpoly(), p(&[-5, 1]));
    }

    #[test]
    fn arithmetic_and_galois() {
        let t = CycloInt::two_cos(12, 1);
        let sq = t.mul(&t);
        assert!(sq.equals(&CycloInt::constant(1, 3)));
        assert!(t.galois(5).equals(&t.scale(&BigInt::from(-1))));
        let a = CycloInt::two_cos(5, 1).add(&CycloInt::two_cos(7, 1));
        assert_eq!(a.conductor(), 35);
        assert!((a.to_f64() - (0.6180339887 + 1.2469796037)).abs() < 1e-9);
    }
}
