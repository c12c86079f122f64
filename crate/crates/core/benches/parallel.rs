use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuzzy_dirac::bridge::reach_estimate_with;
use fuzzy_dirac::dirac::ld_seminorm_with;
use fuzzy_dirac::liealg::irrep;
use fuzzy_dirac::random::{random_hermitian, stream_rng};
use fuzzy_dirac::spheremodel::symbol_covariant;
use fuzzy_dirac::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn ld(c: &mut Criterion) {
    let mut g = c.benchmark_group("ld_seminorm");
    let rep = irrep(8);
    let a = random_hermitian(9, &mut stream_rng(1, 0));
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 8), |b| b.iter(|| ld_seminorm_with(&rep, &a, 1024, exec).value));
    }
    g.finish();
}

fn cont(c: &mut Criterion) {
    let mut g = c.benchmark_group("cont_seminorm");
    let f = symbol_covariant(&random_hermitian(7, &mut stream_rng(2, 0))).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 6), |b| b.iter(|| f.cont_seminorm_with(32, exec).unwrap().value));
    }
    g.finish();
}

fn reach(c: &mut Criterion) {
    let mut g = c.benchmark_group("reach_estimate");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 2), |b| b.iter(|| reach_estimate_with(2, 1, 1, exec).unwrap().gamma_a));
    }
    g.finish();
}

criterion_group!(benches, ld, cont, reach);
criterion_main!(benches);
