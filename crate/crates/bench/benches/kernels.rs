use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hahn_core::dunkl::{build_sd2, check_sd2, identify_dual_hahn};
use hahn_core::osp::{build_tensor_from, check_coproduct_casimir};
use hahn_core::spinor::{build_spinor_model, check_o_n, AngularMomentum};
use hahn_core::{solve_cg, Basis, BigRational, CheckOptions, Gauss, C64};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn compose(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose");
    for cutoff in [4, 6, 8] {
        let exact = build_sd2::<Gauss>(&q(1, 3), &q(1, 5), cutoff, Basis::Analytic).unwrap();
        let float = build_sd2::<C64>(&q(1, 3), &q(1, 5), cutoff, Basis::Orthonormal).unwrap();
        g.bench_with_input(BenchmarkId::new("exact", cutoff), &exact, |b, r| {
            b.iter(|| r.j1.compose(&r.j2).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("float", cutoff), &float, |b, r| {
            b.iter(|| r.j1.compose(&r.j2).unwrap())
        });
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let opts = CheckOptions::default();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    let r = build_sd2::<Gauss>(&q(1, 3), &q(1, 5), 6, Basis::Analytic).unwrap();
    g.bench_function("sd2", |b| b.iter(|| check_sd2(&r, &opts).unwrap()));
    g.bench_function("dual_hahn", |b| b.iter(|| identify_dual_hahn(&r, &opts).unwrap()));
    let t = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), 1, 6, Basis::Analytic).unwrap();
    g.bench_function("coproduct_casimir", |b| {
        b.iter(|| check_coproduct_casimir(&t, &opts).unwrap())
    });
    let m = build_spinor_model::<Gauss>(2, 2, 3).unwrap();
    g.bench_function("o4_total", |b| {
        b.iter(|| check_o_n(&m, AngularMomentum::Total, &opts).unwrap())
    });
    g.finish();
}

fn cg(c: &mut Criterion) {
    let mut g = c.benchmark_group("cg");
    g.sample_size(10);
    for cutoff in [6, 10] {
        let t = build_tensor_from::<C64>(&q(1, 3), 1, &q(1, 5), 1, cutoff, Basis::Orthonormal).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(cutoff), &t, |b, t| {
            b.iter(|| solve_cg(t, 4).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, compose, verify, cg);
criterion_main!(benches);
