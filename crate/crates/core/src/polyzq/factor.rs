//! Factorization over Z by the Zassenhaus method.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gcd::squarefree_decomposition;
use super::modp::{factor_degrees, factor_squarefree, is_prime_u64, FpPoly};
use super::poly::IntPolynomial;

/// `content · ∏ factor^multiplicity`; factors are primitive, irreducible, positive leading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, usize)>,
}

impl Factorization {
    pub fn product(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization into irreducibles; factors sorted by degree then coefficients.
pub fn factorize(p: &IntPolynomial) -> Factorization {
    assert!(!p.is_zero(), "factorize: zero polynomial");
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let mut factors = Vec::new();
    for (f, m) in squarefree_decomposition(p) {
        for g in factor_squarefree_primitive(&f) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Factorization { content, factors }
}

/// Irreducible factors of a squarefree primitive polynomial with positive leading coefficient.
pub fn factor_squarefree_primitive(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    if f.deg() >= 1 && f.coeff(0).is_zero() {
        out.push(IntPolynomial::x());
        f = f.div_exact(&IntPolynomial::x()).expect("x divides f");
    }
    if f.deg() == 0 {
        return out;
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    out.extend(zassenhaus(&f));
    out
}

/// Good primes: `p ≥ 31`, `p ∤ lc`, and `f mod p` squarefree.
pub fn good_primes(f: &IntPolynomial, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 31u64;
    while out.len() < count {
        if is_prime_u64(p) && !(f.leading() % BigInt::from(p)).is_zero() {
            let fp = FpPoly::from_int(f, p);
            if fp.deg() == f.deg() && fp.is_squarefree() {
                out.push(p);
            }
        }
        p += 2;
    }
    out
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    // degree-pattern sieve over several primes; lift at the smallest good prime
    let primes = good_primes(f, 4);
    let mut allowed: Option<BTreeSet<usize>> = None;
    for &p in &primes {
        let s = subset_sums(&factor_degrees(&FpPoly::from_int(f, p)));
        allowed = Some(match allowed {
            None => s,
            Some(a) => a.intersection(&s).copied().collect(),
        });
    }
    let allowed = allowed.unwrap_or_default();
    if allowed.iter().all(|&d| d == 0 || d == n) {
        return vec![f.clone()];
    }
    let p = primes[0];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let modular = factor_squarefree(&FpPoly::from_int(f, p), &mut rng);

    let lc = f.leading();
    let norm = f.l2_norm_sq().sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &modular, p, k);
    recombine(f, lifted, &modulus, &allowed)
}

fn reduce_poly(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m >> 1;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

fn to_int(f: &FpPoly) -> IntPolynomial {
    IntPolynomial::new(f.c.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts `f ≡ lc·∏ u_i (mod p)` to monic factors modulo `p^k`.
fn hensel_lift_all(f: &IntPolynomial, us: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    let m = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = inv_mod_big(&f.leading(), &m);
    let monic = reduce_poly(&f.scale(&lc_inv), &m);
    lift_tree(&monic, us, p, k)
}

fn lift_tree(f: &IntPolynomial, us: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    if us.len() == 1 {
        return vec![f.clone()];
    }
    let mid = us.len() / 2;
    let prod = |s: &[FpPoly]| s.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (g0, h0) = (prod(&us[..mid]), prod(&us[mid..]));
    let (g, h) = hensel_two(f, &g0, &h0, p, k);
    let mut out = lift_tree(&g, &us[..mid], p, k);
    out.extend(lift_tree(&h, &us[mid..], p, k));
    out
}

/// Quadratic Hensel lifting of a monic `f ≡ g·h (mod p)` to `mod p^k`.
fn hensel_two(f: &IntPolynomial, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (IntPolynomial, IntPolynomial) {
    let (one, s0, t0) = g0.xgcd(h0);
    debug_assert_eq!(one, FpPoly::one(p));
    let (mut g, mut h, mut s, mut t) = (to_int(g0), to_int(h0), to_int(&s0), to_int(&t0));
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let mut m = BigInt::from(p);
    while m < pk {
        let m2 = &m * &m;
        let e = reduce_poly(&(f - &(&g * &h)), &m2);
        let (q, r) = reduce_poly(&(&s * &e), &m2).divrem(&h).expect("h is monic");
        let g1 = reduce_poly(&(&(&g + &(&t * &e)) + &(&q * &g)), &m2);
        let h1 = reduce_poly(&(&h + &r), &m2);
        let b = reduce_poly(&(&(&(&s * &g1) + &(&t * &h1)) - &IntPolynomial::one()), &m2);
        let (c, d) = reduce_poly(&(&s * &b), &m2).divrem(&h1).expect("h is monic");
        s = reduce_poly(&(&s - &d), &m2);
        t = reduce_poly(&(&(&t - &(&t * &b)) - &(&c * &g1)), &m2);
        g = g1;
        h = h1;
        m = m2;
    }
    (reduce_poly(&g, &pk), reduce_poly(&h, &pk))
}

fn recombine(f: &IntPolynomial, mut us: Vec<IntPolynomial>, m: &BigInt, allowed: &BTreeSet<usize>) -> Vec<IntPolynomial> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= us.len() {
        let mut found = None;
        let r = us.len();
        let mut idx: Vec<usize> = (0..s).collect();
        'subsets: loop {
            let deg: usize = idx.iter().map(|&i| us[i].deg()).sum();
            if allowed.contains(&deg) {
                let lc = f.leading();
                let mut g = IntPolynomial::constant(lc.clone());
                for &i in &idx {
                    g = reduce_poly(&(&g * &us[i]), m);
                }
                let g = symmetric(&g, m);
                let f0 = f.coeff(0) * &lc;
                let g0 = g.coeff(0);
                let plausible = g0.is_zero() || (f0 % &g0).is_zero();
                if plausible {
                    let g = g.primitive_part();
                    if let Some(q) = f.div_exact(&g) {
                        found = Some((idx.clone(), g, q));
                        break 'subsets;
                    }
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    break 'subsets;
                }
                i -= 1;
                if idx[i] != i + r - s {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        match found {
            Some((idx, g, q)) => {
                out.push(g);
                f = q;
                us = us.into_iter().enumerate().filter(|(i, _)| !idx.contains(i)).map(|(_, u)| u).collect();
            }
            None => s += 1,
        }
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn x4_minus_1() {
        let fz = factorize(&p(&[-1, 0, 0, 0, 1]));
        let fs: Vec<_> = fz.factors.iter().map(|(f, _)| f.clone()).collect();
        assert_eq!(fs, vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])]);
        assert_eq!(fz.product(), p(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn content_sign_and_multiplicity() {
        let f = (&p(&[1, 2]).pow(2) * &p(&[-2, 0, 1])).scale(&BigInt::from(-3));
        let fz = factorize(&f);
        assert_eq!(fz.content, BigInt::from(-3));
        assert_eq!(fz.factors, vec![(p(&[1, 2]), 2), (p(&[-2, 0, 1]), 1)]);
        assert_eq!(fz.product(), f);
    }

    #[test]
    fn swinnerton_dyer_like_split() {
        // (x^4 - 10x^2 + 1)(x^4 + x + 1)(x^2 - 3x + 1): first factor splits mod every prime
        let a = p(&[1, 0, -10, 0, 1]);
        let b = p(&[1, 1, 0, 0, 1]);
        let c = p(&[1, -3, 1]);
        let f = &(&a * &b) * &c;
        let fz = factorize(&f);
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.product(), f);
        assert!(fz.factors.iter().any(|(g, _)| *g == a));
    }

    #[test]
    fn non_monic_factors() {
        let f = &p(&[3, 0, 2]) * &p(&[-1, 5, 0, 7]);
        let fz = factorize(&f);
        assert_eq!(fz.factors, vec![(p(&[3, 0, 2]), 1), (p(&[-1, 5, 0, 7]), 1)]);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = p(&[1, 0, -1, -1, 0, 0, 0, 1, 0, 1, 1, 0]);
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(factorize(&lehmer).is_irreducible());
        assert_eq!(factorize(&f).product(), f);
    }
}
