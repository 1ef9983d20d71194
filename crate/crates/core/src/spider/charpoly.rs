//! Characteristic polynomials: fraction-free determinants, leg expansion, and
//! the closed forms for 3-spiders and Morrison spiders.

use super::graph::{Graph, SpiderSpec};
use crate::error::Result;
use crate::polyzq::{laurent_descend, IntPolynomial, SparsePoly};

/// `det(xI - M)` by Bareiss elimination over Z[x].
pub fn charpoly_matrix(m: &[Vec<u8>]) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut a: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -i64::from(m[i][j]);
                    if i == j {
                        IntPolynomial::from_i64(&[c, 1])
                    } else {
                        IntPolynomial::from_i64(&[c])
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone()
}

/// Characteristic polynomial of a graph by the generic determinant.
pub fn char_poly(g: &Graph) -> IntPolynomial {
    charpoly_matrix(&g.adjacency_matrix())
}

/// Characteristic polynomial of the path on `r` vertices (`p_0 = 1`).
pub fn path_charpoly(r: u32) -> IntPolynomial {
    let (mut a, mut b) = (IntPolynomial::zero(), IntPolynomial::one());
    for _ in 0..r {
        let next = &(&IntPolynomial::x() * &b) - &a;
        a = b;
        b = next;
    }
    b
}

/// Spider characteristic polynomial via `φ(G_r) = p_r φ(G) - p_{r-1} φ(G - v)`,
/// peeling one leg at a time; only base-graph determinants are computed.
pub fn spider_charpoly(spec: &SpiderSpec) -> IntPolynomial {
    let legs: Vec<(usize, u32)> = spec.attach.iter().copied().zip(spec.legs.iter().copied()).collect();
    let m = spec.base.adjacency_matrix();
    expand(&m, &legs, &mut vec![false; spec.base.n()])
}

fn expand(m: &[Vec<u8>], legs: &[(usize, u32)], removed: &mut Vec<bool>) -> IntPolynomial {
    let Some((&(v, r), rest)) = legs.split_last() else {
        let keep: Vec<usize> = (0..m.len()).filter(|&i| !removed[i]).collect();
        let sub: Vec<Vec<u8>> = keep.iter().map(|&i| keep.iter().map(|&j| m[i][j]).collect()).collect();
        return charpoly_matrix(&sub);
    };
    let with = expand(m, rest, removed);
    if r == 0 {
        return with;
    }
    if removed[v] {
        return &path_charpoly(r) * &with;
    }
    removed[v] = true;
    let without = expand(m, rest, removed);
    removed[v] = false;
    &(&path_charpoly(r) * &with) - &(&path_charpoly(r - 1) * &without)
}

/// `V(u)` for the `(a,b,c)` 3-spider: `t^(a+b+c+4)` times the Laurent identity's
/// right-hand side, written in `u = t^2`. Its root above 1 is `ρ²`.
pub fn three_spider_v(a: u32, b: u32, c: u32) -> SparsePoly {
    let (a, b, c) = (a as u64, b as u64, c as u64);
    let s = a + b + c;
    SparsePoly::new(vec![
        (s + 4, 1),
        (s + 3, -2),
        (a + b + 2, 1),
        (a + c + 2, 1),
        (b + c + 2, 1),
        (a + 2, -1),
        (b + 2, -1),
        (c + 2, -1),
        (1, 2),
        (0, -1),
    ])
}

/// `P_{a,b,c}(x)`, degree `a+b+c+1`, from
/// `t^(a+b+c+1) P(t + 1/t) (t^2 - 1)^3 = V(t^2)`. Both sides are monic, so no
/// parity sign appears.
pub fn three_spider_charpoly(a: u32, b: u32, c: u32) -> Result<IntPolynomial> {
    let w = three_spider_v(a, b, c).to_dense().inflate(2);
    let cube = IntPolynomial::from_i64(&[-1, 0, 1]).pow(3);
    let r = w.div_exact(&cube).expect("(t^2-1)^3 divides the 3-spider numerator");
    laurent_descend(&r)
}

fn morrison_terms(a: u32, b: u32) -> Vec<(i64, i64)> {
    let (a, b) = (a as i64, b as i64);
    let mut f: Vec<(i64, i64)> = [(-2, 1), (0, 2), (2, 2), (4, -2), (6, -2), (8, -2), (10, 1)]
        .iter()
        .map(|&(e, c)| (a + b + e, c))
        .collect();
    f.extend([(-6, 1), (0, -2), (6, 1)].iter().map(|&(e, c)| (a - b + e, c)));
    f
}

/// `V_M(u)`: `t^(a+b+10) (F_{a,b}(t) + F_{a,b}(1/t))` in `u = t^2`.
pub fn morrison_v(a: u32, b: u32) -> SparsePoly {
    let shift = a as i64 + b as i64 + 10;
    let mut terms = Vec::new();
    for (e, c) in morrison_terms(a, b) {
        for ex in [shift + e, shift - e] {
            debug_assert!(ex >= 0 && ex % 2 == 0);
            terms.push(((ex / 2) as u64, c));
        }
    }
    SparsePoly::new(terms)
}

/// `P_{a,b}(x)`, degree `a+b+8`, from `(t - 1/t)^2 P(t + 1/t) = F(t) + F(1/t)`.
pub fn morrison_charpoly(a: u32, b: u32) -> Result<IntPolynomial> {
    let r = morrison_v(a, b).to_dense().inflate(2);
    let sq = IntPolynomial::from_i64(&[-1, 0, 1]).pow(2);
    let q = r.div_exact(&sq).expect("(t^2-1)^2 divides the Morrison numerator");
    laurent_descend(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spider::graph::build_spider;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(char_poly(&Graph::point()), p(&[0, 1]));
        assert_eq!(char_poly(&Graph::path(2)), p(&[-1, 0, 1]));
        let star = build_spider(&SpiderSpec::star(&[1, 1, 1])).unwrap();
        assert_eq!(char_poly(&star), p(&[0, 0, -3, 0, 1]));
    }

    #[test]
    fn path_recurrence() {
        assert_eq!(path_charpoly(0), IntPolynomial::one());
        for r in 1..8 {
            assert_eq!(path_charpoly(r), char_poly(&Graph::path(r as usize)));
        }
    }

    #[test]
    fn three_spider_small_cases() {
        assert_eq!(three_spider_charpoly(1, 1, 1).unwrap(), p(&[0, 0, -3, 0, 1]));
        let p222 = three_spider_charpoly(2, 2, 2).unwrap();
        assert_eq!(p222.eval(&BigInt::from(2)), BigInt::from(0));
    }

    #[test]
    fn morrison_base_polynomials() {
        assert_eq!(morrison_charpoly(0, 0).unwrap(), p(&[4, 0, -16, 0, 19, 0, -8, 0, 1]));
        assert_eq!(morrison_charpoly(1, 1).unwrap(), p(&[0, 0, 15, 0, -38, 0, 32, 0, -10, 0, 1]));
        assert_eq!(morrison_charpoly(2, 5).unwrap(), morrison_charpoly(5, 2).unwrap());
        assert_eq!(morrison_charpoly(3, 1).unwrap().deg(), 12);
    }

    #[test]
    fn leg_expansion_matches_determinant() {
        for legs in [vec![1, 2, 3], vec![0, 4], vec![2, 2, 2, 1]] {
            let s = SpiderSpec::star(&legs);
            assert_eq!(spider_charpoly(&s), char_poly(&build_spider(&s).unwrap()));
        }
        let m = SpiderSpec::morrison(2, 3);
        assert_eq!(spider_charpoly(&m), char_poly(&build_spider(&m).unwrap()));
        assert_eq!(spider_charpoly(&m), morrison_charpoly(2, 3).unwrap());
    }

    #[test]
    fn three_spider_closed_form_matches_determinant() {
        for a in 0..=6 {
            for b in a..=6 {
                for c in b..=6 {
                    let g = build_spider(&SpiderSpec::star(&[a, b, c])).unwrap();
                    assert_eq!(three_spider_charpoly(a, b, c).unwrap(), char_poly(&g), "({a},{b},{c})");
                }
            }
        }
    }
}
