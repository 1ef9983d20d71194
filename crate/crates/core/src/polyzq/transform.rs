//! The `t ↔ x = t + 1/t` transforms and the squaring transform.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::gcd::squarefree_part;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// `V_j(x)` with `V_j(t + 1/t) = t^j + t^-j`: `V_0 = 2`, `V_1 = x`, `V_{j+1} = x V_j - V_{j-1}`.
pub fn dickson(j: usize) -> IntPolynomial {
    static C: OnceLock<Mutex<Vec<IntPolynomial>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(vec![IntPolynomial::from_i64(&[2]), IntPolynomial::x()]));
    let mut v = c.lock().unwrap_or_else(|e| e.into_inner());
    while v.len() <= j {
        let n = v.len();
        let next = &(&IntPolynomial::x() * &v[n - 1]) - &v[n - 2];
        v.push(next);
    }
    v[j].clone()
}

/// Given palindromic `r` of even degree `2m`, returns `P` with `t^m P(t + 1/t) = r(t)`.
pub fn laurent_descend(r: &IntPolynomial) -> Result<IntPolynomial> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = r.deg();
    if n % 2 == 1 || !r.is_palindromic() {
        return Err(Error::NonReciprocal);
    }
    let m = n / 2;
    let c = r.coeffs();
    // peel off the top Laurent term repeatedly: coefficient of x^m first
    let mut half: Vec<BigInt> = c[m..].to_vec();
    let mut out = vec![BigInt::zero(); m + 1];
    for k in (1..=m).rev() {
        let a = half[k].clone();
        if a.is_zero() {
            continue;
        }
        out[k] = a.clone();
        // subtract a·(t + 1/t)^k restricted to nonnegative powers, halving the middle term
        let mut binom = BigInt::from(1);
        for i in 0..=k {
            let e = k as i64 - 2 * i as i64;
            if e > 0 {
                half[e as usize] -= &a * &binom;
            } else if e == 0 {
                half[0] -= &a * &binom;
            }
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
    }
    out[0] = half[0].clone();
    Ok(IntPolynomial::new(out))
}

/// `t^deg P(t + 1/t)`, the inverse of [`laurent_descend`].
pub fn laurent_ascend(p: &IntPolynomial) -> IntPolynomial {
    let d = p.deg();
    let mut acc = IntPolynomial::zero();
    // t^d · (t + 1/t)^k = t^(d-k) (t^2 + 1)^k
    let t2p1 = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut pw = IntPolynomial::one();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let mut shifted = vec![BigInt::zero(); d - k];
            shifted.extend(pw.coeffs().iter().cloned());
            acc = &acc + &IntPolynomial::new(shifted).scale(c);
        }
        pw = &pw * &t2p1;
    }
    acc
}

/// Squarefree polynomial whose roots are the squares of the roots of `p`,
/// from `q(x^2) = ±p(x)p(-x)`; primitive with positive leading coefficient.
pub fn square_transform(p: &IntPolynomial) -> IntPolynomial {
    let prod = p * &p.neg_x();
    let q = prod.deflate(2).expect("p(x)p(-x) is even");
    squarefree_part(&q)
}

/// Minimal polynomial `Ψ_n` of `2cos(2π/n)`.
pub fn real_cyclotomic(n: u64) -> IntPolynomial {
    match n {
        0 => panic!("real_cyclotomic(0)"),
        1 => IntPolynomial::from_i64(&[-2, 1]),
        2 => IntPolynomial::from_i64(&[2, 1]),
        _ => laurent_descend(&super::cyclotomic::cyclotomic_polynomial(n)).expect("Φ_n is palindromic"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn descend_examples() {
        assert_eq!(laurent_descend(&p(&[1, 0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(laurent_descend(&p(&[1, 1, 1, 1, 1])).unwrap(), p(&[-1, 1, 1]));
        assert_eq!(laurent_descend(&p(&[1, -2, 2, -3, 2, -2, 1])).unwrap(), p(&[1, -1, -2, 1]));
        assert!(matches!(laurent_descend(&p(&[1, 2, 3])), Err(Error::NonReciprocal)));
        assert!(matches!(laurent_descend(&p(&[1, 0, 0, 1])), Err(Error::NonReciprocal)));
    }

    #[test]
    fn ascend_inverts_descend() {
        for f in [p(&[-1, 1, 1]), p(&[4, 0, -16, 0, 19, 0, -8, 0, 1]), p(&[5]), p(&[0, 0, 3])] {
            assert_eq!(laurent_descend(&laurent_ascend(&f)).unwrap(), f);
        }
    }

    #[test]
    fn dickson_values() {
        assert_eq!(dickson(2), p(&[-2, 0, 1]));
        assert_eq!(dickson(3), p(&[0, -3, 0, 1]));
    }

    #[test]
    fn squares() {
        assert_eq!(square_transform(&p(&[-2, 0, 1])), p(&[-2, 1]));
        assert_eq!(square_transform(&p(&[-3, 0, 1])), p(&[-3, 1]));
        assert_eq!(square_transform(&p(&[1, 0, -5, 0, 1])), p(&[1, -5, 1]));
        // roots 1, 2 -> 1, 4
        assert_eq!(square_transform(&p(&[2, -3, 1])), p(&[4, -5, 1]));
    }

    #[test]
    fn real_cyclotomic_examples() {
        assert_eq!(real_cyclotomic(5), p(&[-1, 1, 1]));
        assert_eq!(real_cyclotomic(7), p(&[-1, -2, 1, 1]));
        assert_eq!(real_cyclotomic(4), p(&[0, 1]));
        assert_eq!(real_cyclotomic(6), p(&[-1, 1]));
    }
}
