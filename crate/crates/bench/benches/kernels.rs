use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use ndarray::Array2;

use simplexmatch_core::graph_models::{sample_cgw, sample_goe, sample_permutation};
use simplexmatch_core::qap::EnergyContext;
use simplexmatch_core::rounding::gmwm;
use simplexmatch_core::solvers::{emd_step, project_simplex, SimplexMatrix};

fn bench_goe_sampling(c: &mut Criterion) {
    c.bench_function("sample_goe_n200", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            sample_goe(200, seed).unwrap()
        })
    });
}

fn bench_gradient(c: &mut Criterion) {
    let truth = sample_permutation(200, 7).unwrap();
    let (a, b) = sample_cgw(200, 0.3, &truth, 11).unwrap();
    let ctx = EnergyContext::new(&a, &b).unwrap();
    let x = SimplexMatrix::barycenter(200).unwrap();
    c.bench_function("gradient_n200", |bn| {
        bn.iter(|| ctx.gradient(x.as_array()).unwrap())
    });
}

fn bench_emd_step(c: &mut Criterion) {
    let truth = sample_permutation(200, 7).unwrap();
    let (a, b) = sample_cgw(200, 0.3, &truth, 11).unwrap();
    let ctx = EnergyContext::new(&a, &b).unwrap();
    let x = SimplexMatrix::barycenter(200).unwrap();
    let g = ctx.gradient(x.as_array()).unwrap();
    c.bench_function("emd_step_n200", |bn| {
        bn.iter(|| emd_step(&x, &g, 0.5).unwrap())
    });
}

fn bench_projection(c: &mut Criterion) {
    let y = Array2::from_shape_fn((200, 200), |(i, j)| ((i * 31 + j * 17) % 97) as f64 / 97.0);
    c.bench_function("project_simplex_n200", |bn| {
        bn.iter_batched(|| y.clone(), |y| project_simplex(&y).unwrap(), BatchSize::SmallInput)
    });
}

fn bench_gmwm(c: &mut Criterion) {
    let x = Array2::from_shape_fn((200, 200), |(i, j)| {
        (((i * 131 + j * 51 + 7) % 1009) as f64) / 1009.0
    });
    c.bench_function("gmwm_n200", |bn| bn.iter(|| gmwm(&x).unwrap()));
}

criterion_group!(
    benches,
    bench_goe_sampling,
    bench_gradient,
    bench_emd_step,
    bench_projection,
    bench_gmwm
);
criterion_main!(benches);
