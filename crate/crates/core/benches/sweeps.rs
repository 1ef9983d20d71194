use std::hint::black_box;
use std::time::Duration;

use abelian_spiders::classify::{classify_morrison, classify_three_spiders, three_spider_b_table, MorrisonScope, Scope};
use abelian_spiders::config::Budget;
use abelian_spiders::par::Mode;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn budget(mode: Mode) -> Budget {
    Budget { mode, ..Budget::default() }
}

fn three_spider_desk(c: &mut Criterion) {
    let mut g = c.benchmark_group("three_spider_desk");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 10), &mode, |b, &mode| {
            b.iter(|| classify_three_spiders(black_box(&Scope::Desk { c_max: 10 }), &budget(mode), None).unwrap())
        });
    }
    g.finish();
}

fn b_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("b_table");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 8), &mode, |b, &mode| b.iter(|| three_spider_b_table(black_box(8), mode)));
    }
    g.finish();
}

fn morrison_brute(c: &mut Criterion) {
    let mut g = c.benchmark_group("morrison_brute");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    let scope = MorrisonScope { brute_max: 8, corner: None };
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 8), &mode, |b, &mode| {
            b.iter(|| classify_morrison(black_box(&scope), &budget(mode)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, three_spider_desk, b_table, morrison_brute);
criterion_main!(benches);
