use abelian_spiders::bounds::{trace_bound_criterion, BFunction, TraceFactor, TraceVerdict};
use abelian_spiders::classify::{classify_three_spiders, Scope};
use abelian_spiders::config::Budget;
use abelian_spiders::cyclo::{abelian_check, AbelianVerdict, CyclotomicExpression};
use abelian_spiders::par;
use abelian_spiders::polyzq::{factorize, isolate_real_roots, refine_interval, Dyadic, DyadicInterval, IntPolynomial};
use abelian_spiders::spider::{build_spider, char_poly, perron_frobenius, three_spider_charpoly, SpiderSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Real roots with multiplicity, largest first.
fn spectrum(p: &IntPolynomial) -> Vec<DyadicInterval> {
    let mut out = Vec::new();
    for r in isolate_real_roots(p) {
        let iv = refine_interval(&r.factor, &r.interval, 50);
        out.extend(std::iter::repeat_n(iv, r.multiplicity));
    }
    out.sort_by(|a, b| b.lo.cmp(&a.lo));
    out
}

fn star_poly(legs: &[u32]) -> IntPolynomial {
    char_poly(&build_spider(&SpiderSpec::star(legs)).unwrap())
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-4i64..=4, 1..=4).prop_map(|mut c| {
        c.push(1);
        IntPolynomial::from_i64(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_matches_determinant(a in 0u32..8, b in 0u32..8, c in 0u32..8) {
        prop_assert_eq!(three_spider_charpoly(a, b, c).unwrap(), star_poly(&[a, b, c]));
    }

    #[test]
    fn removing_a_leaf_interlaces(a in 1u32..6, b in 1u32..6, c in 1u32..6) {
        let big = spectrum(&star_poly(&[a, b, c]));
        let small = spectrum(&star_poly(&[a, b, c - 1]));
        prop_assert_eq!(big.len(), small.len() + 1);
        for (i, mu) in small.iter().enumerate() {
            prop_assert!(big[i].hi >= mu.lo);
            prop_assert!(mu.hi >= big[i + 1].lo);
        }
    }

    #[test]
    fn perron_frobenius_between_root_valence_and_valence(legs in prop::collection::vec(1u32..6, 1..=5)) {
        let k = legs.len() as i64;
        let lambda = perron_frobenius(&star_poly(&legs)).unwrap().pf.refine(40);
        prop_assert!(lambda.hi <= Dyadic::from_int(k.max(2)));
        prop_assert!(lambda.sqr(40).hi >= Dyadic::from_int(k));
    }

    #[test]
    fn factorization_round_trip(fs in prop::collection::vec(small_poly(), 1..=3), k in 1i64..4) {
        let f = fs.iter().fold(IntPolynomial::from_i64(&[k]), |acc, g| &acc * g);
        let fac = factorize(&f);
        let back = fac
            .factors
            .iter()
            .fold(IntPolynomial::constant(fac.content.clone()), |acc, (g, e)| &acc * &g.pow(*e as u32));
        prop_assert_eq!(back, f);
        prop_assert!(fac.factors.iter().all(|(g, _)| factorize(g).is_irreducible()));
    }

    #[test]
    fn abelian_round_trip(f in 5u64..30, terms in prop::collection::vec((1u64..15, -2i64..=2), 1..=3)) {
        let mut numerator = Vec::new();
        for (j, c) in terms {
            let j = j % f;
            if j != 0 && c != 0 {
                numerator.push((j, BigInt::from(c)));
                numerator.push((f - j, BigInt::from(c)));
            }
        }
        prop_assume!(!numerator.is_empty());
        let e = CyclotomicExpression { conductor: f, numerator, denominator: BigInt::from(1) };
        let m = e.minpoly();
        match abelian_check(&m, &Budget::default()).unwrap() {
            AbelianVerdict::Abelian(found) => prop_assert_eq!(found.minpoly(), m),
            other => prop_assert!(false, "{m}: {other:?}"),
        }
    }

    #[test]
    fn worker_count_does_not_change_records(triples in prop::collection::vec((1u32..5, 1u32..8, 1u32..14), 1..6)) {
        let triples: Vec<_> = triples
            .into_iter()
            .map(|(a, b, c)| {
                let mut t = [a, b, c];
                t.sort();
                (t[0], t[1], t[2])
            })
            .collect();
        let scope = Scope::Triples(triples);
        let run = |w| par::with_workers(w, || classify_three_spiders(&scope, &Budget::default(), None).unwrap());
        let seq = classify_three_spiders(&scope, &Budget::default().sequential(), None).unwrap();
        let one = run(1);
        prop_assert_eq!(&one, &run(3));
        prop_assert_eq!(&one, &seq);
    }

    #[test]
    fn b_enclosures_nest(n in 1i64..4000, k in 4i64..16) {
        let b = BFunction::standard();
        let x = DyadicInterval::from_ratio(n, 1000, 96);
        let wide = x.add(&DyadicInterval::new(Dyadic::one().shl(-k).neg(), Dyadic::one().shl(-k)), 96);
        let (Ok(point), Ok(around)) = (b.eval(&x, 96), b.eval(&wide, 96)) else {
            return Err(TestCaseError::reject("singular"));
        };
        prop_assert!(around.overlaps(&point));
        prop_assert!(around.width() >= point.width());
    }

    #[test]
    fn trace_criterion_monotone_in_degree(n in 0i64..2000, m in 1u32..4, d in 1u32..60, extra in 1u32..60) {
        let b = BFunction::standard();
        let l = DyadicInterval::from_ratio(n, 1000, 96);
        let at = |d| trace_bound_criterion(&b, &l, m, d, 96, TraceFactor::TwentyElevenths);
        let (Ok(lo), Ok(hi)) = (at(d), at(d + extra)) else {
            return Err(TestCaseError::reject("singular"));
        };
        prop_assert!(lo != TraceVerdict::BoundHolds || hi == TraceVerdict::BoundHolds);
    }
}
