use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use projsys::bounds::{self, BoundEngine, BoundQuery, IntegralityMode};
use projsys::geometry::Incidence;
use projsys::search::{self, SearchConfig};
use projsys::FieldSpec;
use projsys_bench::{param_fixtures, SEARCH_FIXTURES};

fn field_mul(c: &mut Criterion) {
    let f = FieldSpec::new(64).unwrap();
    let elems: Vec<_> = f.elements().collect();
    c.bench_function("gf64_mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = f.elements().next().unwrap();
            for &x in &elems {
                for &y in &elems {
                    acc = f.add(acc, f.mul(x, y));
                }
            }
            black_box(acc)
        })
    });
}

fn incidence(c: &mut Criterion) {
    let mut g = c.benchmark_group("incidence_build");
    for (k, q) in [(3usize, 16u64), (4, 8), (5, 4)] {
        let f = FieldSpec::new(q).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("pg{}_{q}", k - 1)), &k, |b, &k| {
            b.iter(|| Incidence::new(&f, k).unwrap())
        });
    }
    g.finish();
}

fn params(c: &mut Criterion) {
    let mut g = c.benchmark_group("params");
    for (name, ps) in param_fixtures() {
        g.bench_function(name, |b| b.iter(|| black_box(ps.params())));
    }
    g.finish();
}

fn bound_engine(c: &mut Criterion) {
    // a fresh engine per iteration, so the memo starts cold
    c.bench_function("upper_bounds_cold_k6_q16_s3", |b| {
        b.iter(|| {
            let eng = BoundEngine::default();
            black_box(eng.upper_bounds(&BoundQuery::new(6, 16, 3)).unwrap())
        })
    });
    c.bench_function("kappa_2_8", |b| b.iter(|| bounds::kappa(2, 8).unwrap()));
    c.bench_function("integrality_full_k12_q64_s6", |b| {
        let q = BoundQuery::new(12, 64, 6);
        b.iter(|| bounds::integrality(q.full_length(), 12, 64, 6, IntegralityMode::FullLength).unwrap())
    });
}

fn exhaustive_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_length");
    g.sample_size(10);
    for &(k, q, s) in SEARCH_FIXTURES {
        let config = SearchConfig::new(k, q, s).with_threads(1);
        g.bench_function(format!("m{s}_{k}_{q}"), |b| {
            b.iter(|| search::max_length(&config).unwrap().n_max)
        });
    }
    g.finish();
}

criterion_group!(benches, field_mul, incidence, params, bound_engine, exhaustive_search);
criterion_main!(benches);
