use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hodge_matroid::chow::{default_submodular, ChowRing};
use hodge_matroid::fan::{ample_check, bergman_fan, validate_fan, PlFunction};
use hodge_matroid::matroid::{boolean, vamos};
use hodge_matroid::moebius_algebra::topheavy_sweep;
use hodge_matroid::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn fan_validation(c: &mut Criterion) {
    let fan = bergman_fan(&boolean(5).unwrap()).unwrap();
    let mut g = c.benchmark_group("validate_fan/boolean5");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| validate_fan(&fan, exec))
        });
    }
    g.finish();
}

fn ampleness(c: &mut Criterion) {
    let m = vamos().unwrap();
    let fan = bergman_fan(&m).unwrap();
    let phi = PlFunction::from_subset_fn(&fan, default_submodular(m.ground_size()));
    let mut g = c.benchmark_group("ample_check/vamos");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ample_check(&fan, &phi, exec))
        });
    }
    g.finish();
}

fn hodge(c: &mut Criterion) {
    let m = boolean(4).unwrap();
    let a = ChowRing::full(&m).unwrap();
    let ell = a
        .ample_from_submodular(default_submodular(4), Exec::Parallel)
        .unwrap();
    let mut g = c.benchmark_group("hodge_report/boolean4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| a.hodge_report(&ell, exec).unwrap())
        });
    }
    g.finish();
}

fn topheavy(c: &mut Criterion) {
    let m = vamos().unwrap();
    let mut g = c.benchmark_group("topheavy_sweep/vamos");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| topheavy_sweep(&m, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, fan_validation, ampleness, hodge, topheavy);
criterion_main!(benches);
