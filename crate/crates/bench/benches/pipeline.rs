use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use seamkit_bench::{instance, with_cast};
use seamkit_core::pblend::{poisson_blend, SolverParams};
use seamkit_core::refine::{ClassicalRefiner, Refiner};
use seamkit_core::sim::{jpeg_simulate, simulate, SimConfig};
use seamkit_core::tonemap::{fit_tonemap, AmplifyParams};
use seamkit_core::Rng;

fn tonemap(c: &mut Criterion) {
    let (img, mask) = instance(256, 1);
    let pred = with_cast(&img, &mask);
    let params = AmplifyParams::default();
    c.bench_function("fit_tonemap/256", |b| {
        b.iter(|| fit_tonemap(black_box(&pred), &img, &mask, &params, &mut Rng::new(0, 0)).unwrap())
    });
}

fn jpeg(c: &mut Criterion) {
    let (img, _) = instance(256, 2);
    let mut group = c.benchmark_group("jpeg_simulate");
    for q in [30u8, 90] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| jpeg_simulate(black_box(&img), q).unwrap())
        });
    }
    group.finish();
}

fn poisson(c: &mut Criterion) {
    let mut group = c.benchmark_group("poisson_blend");
    group.sample_size(20);
    for size in [64usize, 128] {
        let (dst, mask) = instance(size, 3);
        let src = with_cast(&dst, &mask);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| poisson_blend(black_box(&src), &dst, &mask, &SolverParams::default()).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let (img, mask) = instance(256, 4);
    let cfg = SimConfig::default();
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    group.bench_function("simulate/256", |b| {
        let mut stream = 0;
        b.iter(|| {
            stream += 1;
            simulate(black_box(&img), &mask, &cfg, &mut Rng::new(0, stream)).unwrap()
        })
    });
    let edited = with_cast(&img, &mask);
    let refiner = ClassicalRefiner::default();
    group.bench_function("classical_refine/256", |b| b.iter(|| refiner.refine(black_box(&edited), &mask).unwrap()));
    group.finish();
}

criterion_group!(benches, tonemap, jpeg, poisson, pipeline);
criterion_main!(benches);
