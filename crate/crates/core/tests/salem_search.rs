use abelian_spiders::classify::{salem_check, salem_separation_audit, SalemCandidate, Separation};
use abelian_spiders::config::Budget;
use abelian_spiders::polyzq::IntPolynomial;

/// Every monic reciprocal polynomial of even degree 4..=10 with middle
/// coefficients in -3..=3.
fn reciprocal_polys() -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    for k in 2..=5usize {
        for code in 0..7usize.pow(k as u32) {
            let mut half = vec![1i64];
            let mut c = code;
            for _ in 0..k {
                half.push((c % 7) as i64 - 3);
                c /= 7;
            }
            let mut coeffs = half.clone();
            coeffs.extend(half.iter().rev().skip(1));
            out.push(IntPolynomial::from_i64(&coeffs));
        }
    }
    out
}

#[test]
fn next_abelian_salem_is_well_separated() {
    let budget = Budget::default();
    let mut found: Vec<SalemCandidate> = reciprocal_polys()
        .iter()
        .filter_map(|p| salem_check(p, &budget).ok())
        .filter(|s| s.is_abelian_type())
        .collect();
    found.sort_by_cached_key(|s| s.refine(40).lo);
    found.dedup_by(|a, b| a.minpoly == b.minpoly);
    assert!(found.len() >= 2, "{} abelian-type Salem numbers", found.len());
    let theta = &found[0];
    assert_eq!(theta.minpoly, IntPolynomial::from_i64(&[1, -2, 2, -3, 2, -2, 1]));
    let next = &found[1];
    assert!(theta.refine(40).hi < next.refine(40).lo);
    assert_eq!(salem_separation_audit(next, theta).unwrap(), Separation::Consistent);
    assert!(salem_separation_audit(theta, theta).is_err());
}
