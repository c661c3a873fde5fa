use criterion::{criterion_group, criterion_main, Criterion};
use liecv_bench::{gaussian, h1_kernel, points, schrodinger};
use liecv_core::coherent::{bergman_reproduce, disk_grid, wavelet_transform, Wavelet};
use liecv_core::quantize::{close_under_bracket, parse_gens};
use liecv_core::relconv::{assemble, assemble_hat, Quadrature};
use liecv_core::{bch_compose, compose_kernels, frame_operator, weyl_quantize, Axis, FrameSpec, Grid, GridFunction, LieAlgebra};
use num_complex::Complex64 as C64;
use std::hint::black_box;

fn bch(c: &mut Criterion) {
    let alg = LieAlgebra::heisenberg(2);
    let xs = points(1000, 5);
    let ys = points(1001, 5);
    c.bench_function("bch_1000_pairs_h2", |b| {
        b.iter(|| {
            for (x, y) in xs.iter().zip(&ys) {
                black_box(bch_compose(&alg, x, y, 2).unwrap());
            }
        })
    });
}

fn relconv(c: &mut Criterion) {
    let g = Grid::new(vec![Axis::new(128, -12.0, 12.0)]).unwrap();
    let p = frame_operator(&FrameSpec::Momentum { axis: 0, scale: 1.0 }, &g).unwrap();
    let k = gaussian(g.clone(), 1.0);
    c.bench_function("assemble_momentum_128", |b| b.iter(|| black_box(assemble(&[p.clone()], &k, &Quadrature::default()).unwrap())));

    let (_, ops) = schrodinger(128, 16.0);
    let kh = h1_kernel(12, 1.7);
    c.bench_function("assemble_h1_schrodinger_128", |b| {
        b.iter(|| black_box(assemble_hat(&ops, &kh, &Quadrature::default()).unwrap()))
    });
    let alg = LieAlgebra::heisenberg(1);
    c.bench_function("compose_kernels_h1_12", |b| b.iter(|| black_box(compose_kernels(&alg, &kh, &kh, 2).unwrap())));
}

fn weyl(c: &mut Criterion) {
    let ax = Axis::new(64, -10.0, 10.0);
    let sym = gaussian(Grid::new(vec![ax, ax]).unwrap(), 1.0);
    let space = Grid::new(vec![ax]).unwrap();
    c.bench_function("weyl_quantize_64", |b| b.iter(|| black_box(weyl_quantize(&sym, &space).unwrap())));
}

fn coherent(c: &mut Criterion) {
    let g = disk_grid(256, 256).unwrap();
    let f = GridFunction::from_fn(g, |p| C64::from_polar(p[0].powi(3), 3.0 * p[1]));
    c.bench_function("bergman_reproduce_256", |b| b.iter(|| black_box(bergman_reproduce(&f, C64::new(0.3, -0.4)).unwrap())));

    let sg = Grid::new(vec![Axis::new(256, -20.0, 20.0)]).unwrap();
    let s = gaussian(sg, 2.0);
    let ab = Grid::new(vec![Axis::new(64, -10.0, 10.0), Axis::new(32, -1.0, 3.0)]).unwrap();
    let w = Wavelet::Morlet { omega0: 5.0 };
    c.bench_function("wavelet_transform_64x32", |b| b.iter(|| black_box(wavelet_transform(&s, &w, &ab).unwrap())));
}

fn quantize(c: &mut Criterion) {
    let gens = parse_gens("q1, q2, p1, p2, q1^2, p1^2, q1*p1").unwrap();
    c.bench_function("close_under_bracket_quadratic", |b| b.iter(|| black_box(close_under_bracket(&gens, 32).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bch, relconv, weyl, coherent, quantize
}
criterion_main!(benches);
