//! Cyclotomic polynomials, arithmetic functions, and cyclotomic stripping.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::modp::{is_prime_u64, pow_mod, primitive_root, reduce};
use super::poly::IntPolynomial;

/// `(prime, exponent)` pairs of `n`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n).iter().fold(n, |acc, &(q, _)| acc / q * (q - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (q, e) in factor_u64(n) {
        let cur = out.clone();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            out.extend(cur.iter().map(|d| d * pw));
        }
    }
    out.sort_unstable();
    out
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static C: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_n`, by exact division of `x^n - 1` by `Φ_d` for the proper divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    (*cyclotomic_arc(n)).clone()
}

fn cyclotomic_arc(n: u64) -> Arc<IntPolynomial> {
    if let Some(p) = cache().read().ok().and_then(|m| m.get(&n).cloned()) {
        return p;
    }
    let mut num = IntPolynomial::monomial(BigInt::one(), n as usize) - IntPolynomial::one();
    for d in divisors(n) {
        if d < n {
            num = num.div_exact(&cyclotomic_arc(d)).expect("Φ_d divides x^n - 1");
        }
    }
    let p = Arc::new(num);
    if let Ok(mut m) = cache().write() {
        m.insert(n, p.clone());
    }
    p
}

/// Indices `n` with `φ(n) ≤ d`, increasing.
pub fn indices_with_phi_at_most(d: usize) -> Vec<u64> {
    static SIEVE: OnceLock<Mutex<Vec<u32>>> = OnceLock::new();
    // φ(n) ≥ √n for n > 6
    let limit = (d * d).max(7) + 1;
    let sieve = SIEVE.get_or_init(|| Mutex::new(Vec::new()));
    let mut phi = sieve.lock().unwrap_or_else(|e| e.into_inner());
    if phi.len() <= limit {
        let m = limit.max(phi.len() * 2);
        *phi = (0..=m as u32).collect();
        for i in 2..=m {
            if phi[i] == i as u32 {
                let mut j = i;
                while j <= m {
                    phi[j] -= phi[j] / i as u32;
                    j += i;
                }
            }
        }
    }
    (1..=limit).filter(|&n| (phi[n] as usize) <= d).map(|n| n as u64).collect()
}

/// A prime `q ≡ 1 (mod n)` between 2^30 and 2^32 and an element of order exactly `n` in `F_q`.
pub fn root_of_unity_mod_prime(n: u64) -> (u64, u64) {
    static C: OnceLock<RwLock<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let c = C.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = c.read().ok().and_then(|m| m.get(&n).copied()) {
        return v;
    }
    let mut k = (1u64 << 30) / n + 1;
    let q = loop {
        let q = k * n + 1;
        if is_prime_u64(q) {
            break q;
        }
        k += 1;
    };
    debug_assert!(q < 1 << 32);
    let w = pow_mod(primitive_root(q), (q - 1) / n, q);
    if let Ok(mut m) = c.write() {
        m.insert(n, (q, w));
    }
    (q, w)
}

fn vanishes_at_root_of_unity(small: &[Option<i64>], p: &IntPolynomial, n: u64) -> bool {
    let (q, w) = root_of_unity_mod_prime(n);
    let mut acc = 0u64;
    for (c, s) in p.coeffs().iter().zip(small).rev() {
        let r = match s {
            Some(v) => v.rem_euclid(q as i64) as u64,
            None => reduce(c, q),
        };
        // q < 2^32, so the product fits in a u64
        acc = (acc * w + r) % q;
    }
    acc == 0
}

/// Divides out every cyclotomic factor; returns the quotient and `(n, multiplicity)` pairs.
pub fn strip_cyclotomic(p: &IntPolynomial) -> (IntPolynomial, Vec<(u64, usize)>) {
    let mut cur = p.clone();
    let mut found = Vec::new();
    if cur.is_zero() {
        return (cur, found);
    }
    for n in indices_with_phi_at_most(cur.deg()) {
        if euler_phi(n) as usize > cur.deg() {
            continue;
        }
        let mut mult = 0;
        loop {
            let small: Vec<Option<i64>> = cur.coeffs().iter().map(|c| c.to_i64()).collect();
            if !vanishes_at_root_of_unity(&small, &cur, n) {
                break;
            }
            match cur.div_exact(&cyclotomic_arc(n)) {
                Some(q) => {
                    cur = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            found.push((n, mult));
        }
        if cur.deg() == 0 {
            break;
        }
    }
    (cur, found)
}
