//! Gcd, resultant, discriminant and squarefree decomposition over Z[x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;

/// Primitive gcd with positive leading coefficient (content of the inputs ignored).
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let (mut u, mut v) = if a.deg() >= b.deg() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !v.is_zero() {
        if v.is_constant() {
            return IntPolynomial::one();
        }
        let r = u.pseudo_rem(&v);
        u = v;
        v = r.primitive_part();
    }
    u.primitive_part()
}

/// Resultant by the subresultant algorithm.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.deg() < b.deg() {
        if (a.deg() * b.deg()) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_constant() {
        return s * num_traits::pow(b.leading(), a.deg());
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = num_traits::pow(ca, b.deg()) * num_traits::pow(cb, a.deg());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&div);
        if b.is_zero() {
            return BigInt::zero();
        }
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_constant() {
            break;
        }
    }
    let da = a.deg();
    let hh = num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1);
    s * t * hh
}

/// `(-1)^(n(n-1)/2) res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPolynomial) -> BigInt {
    let n = p.deg();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(p, &p.derivative()) / p.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Yun's algorithm on the primitive part; returns `(factor, multiplicity)`
/// with primitive, positive-leading, non-constant factors.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let a = p.primitive_part();
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let b = a.derivative();
    let c = gcd(&a, &b);
    let mut w = a.div_exact(&c).unwrap_or_else(|| exact_q(&a, &c));
    let mut y = b.div_exact(&c).unwrap_or_else(|| exact_q(&b, &c));
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = gcd(&w, &z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = exact_q(&w, &g);
        y = exact_q(&z, &g);
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

/// `p / squarefree-part`: product of the distinct primitive irreducible-free parts.
pub fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    let a = p.primitive_part();
    if a.is_constant() {
        return a;
    }
    let g = gcd(&a, &a.derivative());
    exact_q(&a, &g).primitive_part()
}

/// Division known to be exact over Q whose quotient lies in Z[x] up to content.
fn exact_q(a: &IntPolynomial, d: &IntPolynomial) -> IntPolynomial {
    if let Some(q) = a.div_exact(d) {
        return q;
    }
    let (q, r) = a.pseudo_divrem(d);
    debug_assert!(r.is_zero());
    let k = a.deg() + 1 - d.deg();
    let scale = num_traits::pow(d.leading(), k);
    let g = q.content().gcd(&scale);
    let q = q.div_scalar_exact(&g);
    let rest = &scale / &g;
    debug_assert!(q.coeffs().iter().all(|c| (c % &rest).is_zero()));
    let q = q.div_scalar_exact(&rest);
    if rest.is_negative() {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[-1, 0, 1]);
        let g = p(&[1, 2, 1]);
        assert_eq!(gcd(&f, &g), p(&[1, 1]));
        assert_eq!(gcd(&p(&[2, 4]), &p(&[3, 6])), p(&[1, 2]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[1, 2])), IntPolynomial::one());
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2-2, x-3) = 9 - 2
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 1])), BigInt::from(7));
        // res(x-3, x^2-2) = (-1)^2 * 7
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-2, 0, 1])), BigInt::from(7));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), BigInt::zero());
        // res(2x^2+1, 3x^3-1): product over roots of g of f
        assert_eq!(resultant(&p(&[1, 0, 2]), &p(&[-1, 0, 0, 3])), BigInt::from(17));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&p(&[7, -4, -2, 1])), BigInt::from(229));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[3, 4, -5, -5, 1, 1])), BigInt::from(36497));
    }

    #[test]
    fn yun_multiplicities() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &(&p(&[1, 0, 1]) * &p(&[2, 1]).pow(3));
        let d = squarefree_decomposition(&f.scale(&BigInt::from(-6)));
        assert_eq!(d, vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
        assert_eq!(squarefree_part(&p(&[0, 0, 1])), p(&[0, 1]));
    }
}
