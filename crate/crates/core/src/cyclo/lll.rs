//! Integral LLL reduction (exact, fraction-free) and integer relation search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rounds `a / b` to the nearest integer (`b > 0`).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// LLL-reduces linearly independent integer rows in place with `δ = 99/100`.
pub fn lll_reduce(b: &mut [Vec<BigInt>]) {
    let n = b.len();
    if n < 2 {
        return;
    }
    let (dp, dq) = (BigInt::from(99), BigInt::from(100));
    // d[i+1] is the Gram determinant of the first i+1 rows; d[0] = 1
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are dependent");
                    d[k + 1] = u;
                }
            }
        }
        reduce(b, &mut lam, &d, k, k - 1);
        let lhs = &dq * &d[k + 1] * &d[k - 1];
        let rhs = &dp * &d[k] * &d[k] - &dq * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            swap(b, &mut lam, &mut d, k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
}

fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if (&lam[k][l] * BigInt::from(2)).abs() <= d[l + 1] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l + 1]);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let big = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&big * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = big;
}

/// Short integer vectors `c` with `Σ c_i x_i ≈ 0`, for fixed-point inputs `x_i`
/// (all with the same scale). Returns the reduced coefficient rows, shortest first.
pub fn integer_relations(x: &[BigInt], weight: &BigInt) -> Vec<Vec<BigInt>> {
    let n = x.len();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n + 1];
            r[i] = BigInt::one();
            r[n] = weight * &x[i];
            r
        })
        .collect();
    lll_reduce(&mut rows);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_textbook_basis() {
        let mut b = vec![v(&[1, 1, 1]), v(&[-1, 0, 2]), v(&[3, 5, 6])];
        lll_reduce(&mut b);
        let norms: Vec<BigInt> = b.iter().map(|r| dot(r, r)).collect();
        assert!(norms.iter().all(|n| *n <= BigInt::from(5)), "{b:?}");
    }

    #[test]
    fn finds_golden_ratio_relation() {
        // φ² - φ - 1 = 0 at 60 bits
        let s = 60u32;
        let phi = ((1.0 + 5f64.sqrt()) / 2.0 * (1u64 << 50) as f64) as i64;
        let phi = BigInt::from(phi) << (s - 50) as usize;
        let phi2 = (&phi * &phi) >> s as usize;
        let one = BigInt::one() << s as usize;
        let rows = integer_relations(&[phi2, phi, one], &BigInt::one());
        let r = &rows[0];
        let sign = if r[0].is_negative() { -1 } else { 1 };
        let r: Vec<BigInt> = r[..3].iter().map(|c| c * sign).collect();
        assert_eq!(r, v(&[1, -1, -1]));
    }
}
