use super::Ctx;
use crate::report::Check;
use liecv_core::bch::{bch_compose, bch_step2, group_inverse, hn_complex_law, hn_from_complex, hn_to_complex};
use liecv_core::{LieAlgebra, Result};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// h1 as strictly upper triangular 3x3 (X1 = E12, X2 = E23, X0 = E13), h2 as
// 4x4 (X1 = E12, X2 = E13, X3 = E24, X4 = E34, X0 = E14)
fn hat(x: &[f64]) -> DMatrix<f64> {
    if x.len() == 3 {
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 1)] = x[1];
        m[(1, 2)] = x[2];
        m[(0, 2)] = x[0];
        m
    } else {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 1)] = x[1];
        m[(0, 2)] = x[2];
        m[(1, 3)] = x[3];
        m[(2, 3)] = x[4];
        m[(0, 3)] = x[0];
        m
    }
}

fn unhat(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 3 {
        vec![m[(0, 2)], m[(0, 1)], m[(1, 2)]]
    } else {
        vec![m[(0, 3)], m[(0, 1)], m[(0, 2)], m[(1, 3)], m[(2, 3)]]
    }
}

// both series stop at the cube for nilpotent matrices of size <= 4
fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let a2 = a * a;
    let a3 = &a2 * a;
    DMatrix::identity(n, n) + a + a2 / 2.0 + a3 / 6.0
}

fn logm(g: &DMatrix<f64>) -> DMatrix<f64> {
    let n = g.nrows();
    let b = g - DMatrix::identity(n, n);
    let b2 = &b * &b;
    let b3 = &b2 * &b;
    &b - b2 / 2.0 + b3 / 3.0
}

pub fn matrix_oracle(x: &[f64], y: &[f64]) -> Vec<f64> {
    unhat(&logm(&(expm(&hat(x)) * expm(&hat(y)))))
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Order-2 composition against the matrix exponential on h1 and h2.
pub fn oracle(ctx: Ctx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let mut out = Vec::new();
    for n in [1, 2] {
        let alg = LieAlgebra::heisenberg(n);
        let mut worst = 0.0f64;
        for _ in 0..ctx.cfg.bch_pairs {
            let x = random_point(&mut rng, 2 * n + 1);
            let y = random_point(&mut rng, 2 * n + 1);
            let got = bch_compose(&alg, &x, &y, 2)?;
            worst = worst.max(max_diff(&got.point, &matrix_oracle(&x, &y)));
        }
        out.push(ctx.check(&format!("bch.h{n}_matrix_exponential"), "campbell-hausdorff", worst, 1e-12));
    }
    Ok(out)
}

pub fn properties(ctx: Ctx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed.wrapping_add(1));
    let (mut assoc, mut complex, mut inv, mut step2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in [1, 2, 3] {
        let alg = LieAlgebra::heisenberg(n);
        let d = 2 * n + 1;
        let c = |a: &[f64], b: &[f64]| bch_compose(&alg, a, b, 2).map(|r| r.point);
        for _ in 0..100 {
            let x = random_point(&mut rng, d);
            let y = random_point(&mut rng, d);
            let z = random_point(&mut rng, d);
            assoc = assoc.max(max_diff(&c(&c(&x, &y)?, &z)?, &c(&x, &c(&y, &z)?)?));
            let xy = c(&x, &y)?;
            let (ua, va) = hn_to_complex(&x);
            let (ub, vb) = hn_to_complex(&y);
            let (u, v) = hn_complex_law((ua, &va), (ub, &vb));
            complex = complex.max(max_diff(&xy, &hn_from_complex(u, &v)));
            inv = inv.max(c(&x, &group_inverse(&x))?.iter().fold(0.0, |m, v| m.max(v.abs())));
            let s4 = bch_compose(&alg, &x, &y, 4)?.point;
            step2 = step2.max(max_diff(&s4, &bch_step2(&alg, &x, &y)));
        }
    }
    Ok(vec![
        ctx.check("bch.associativity", "group-law", assoc, 1e-10),
        ctx.check("bch.complex_coordinates", "heisenberg-group-law", complex, 1e-12),
        ctx.check("bch.inverse", "group-law", inv, 1e-15),
        ctx.check("bch.series_terminates", "campbell-hausdorff", step2, 1e-12),
    ])
}
