use super::Ctx;
use crate::report::Check;
use liecv_core::coherent::{
    admissibility, bargmann_reproduce, bergman_reproduce, disk_grid, frequency_split, gabor_transform, hermite_functions,
    wavelet_transform, Wavelet,
};
use liecv_core::{Axis, CoherentSystem, Grid, GridFunction, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub fn bargmann_system(nq: usize, half: f64, nt: usize) -> Result<CoherentSystem> {
    let tqp = Grid::with_cap(
        vec![Axis::periodic(nt, -PI, 2.0 * PI), Axis::new(nq, -half, half), Axis::new(nq, -half, half)],
        usize::MAX,
    )?;
    CoherentSystem::bargmann(Axis::new(128, -12.0, 12.0), tqp)
}

/// `<f, T_g f0>` for the unnormalized `f = e^{-x^2/2}` against
/// `pi^{1/4} e^{-2it - |z|^2/2}`.
pub fn vacuum(ctx: Ctx) -> Result<Vec<Check>> {
    let sys = bargmann_system(16, 4.0, 8)?;
    let f = GridFunction::from_real_fn(sys.vacuum.grid.clone(), |x| (-x[0] * x[0] / 2.0).exp());
    let e = sys.embed(&f)?;
    let mut worst = 0.0f64;
    for (i, v) in e.values.iter().enumerate() {
        let g = sys.group_grid.point(i);
        let want = PI.powf(0.25) * C64::from_polar((-(g[1] * g[1] + g[2] * g[2]) / 2.0).exp(), -2.0 * g[0]);
        worst = worst.max((v - want).norm());
    }
    Ok(vec![ctx.check("coherent.vacuum", "bargmann-vacuum-autocorrelation", worst, 1e-6)])
}

/// Monomials `z^k`, `k <= 5`, through the kernel `e^{conj(w)(z - w)}` on `|w| <= 6`.
pub fn bargmann_kernel(ctx: Ctx) -> Result<Vec<Check>> {
    let ax = Axis::new(121, -6.0, 6.0);
    let g = Grid::with_cap(vec![ax, ax], usize::MAX)?;
    let zs = [C64::new(0.5, -0.3), C64::new(-1.0, 0.8), C64::new(1.5, 0.2), C64::new(0.0, -1.2)];
    let mut worst = 0.0f64;
    for k in 0..=5 {
        let f = GridFunction::from_fn(g.clone(), |w| C64::new(w[0], w[1]).powi(k));
        for z in zs {
            let want = z.powi(k);
            worst = worst.max((bargmann_reproduce(&f, z, 6.0)? - want).norm() / want.norm());
        }
    }
    Ok(vec![ctx.check("coherent.bargmann_kernel", "bargmann-reproducing-kernel", worst, 1e-4)])
}

/// Powers of the disk coordinate through `(1 - <zeta, v>)^{-2}` at ten points.
pub fn bergman(ctx: Ctx) -> Result<Vec<Check>> {
    let g = disk_grid(256, 256)?;
    let mut worst = 0.0f64;
    for k in 0..=5 {
        let f = GridFunction::from_fn(g.clone(), |p| C64::from_polar(p[0].powi(k), k as f64 * p[1]));
        for j in 0..10 {
            let zeta = C64::from_polar(0.8 * (j as f64 + 1.0) / 10.0, 0.7 * j as f64);
            let want = zeta.powi(k);
            worst = worst.max((bergman_reproduce(&f, zeta)? - want).norm() / want.norm());
        }
    }
    Ok(vec![ctx.check("coherent.bergman", "bergman-reproducing-kernel", worst, 1e-3)])
}

fn rel(sys: &CoherentSystem, a: &GridFunction, b: &GridFunction, scale: &GridFunction) -> Result<f64> {
    let d = a.axpy(C64::new(-1.0, 0.0), b)?;
    Ok((sys.norm_sqr(&d) / sys.norm_sqr(scale)).sqrt())
}

/// The reproducing projector on the Bargmann system: fixes the image,
/// is idempotent and kills an explicitly orthogonalized complement.
pub fn projector(ctx: Ctx) -> Result<Vec<Check>> {
    let (nq, half) = if ctx.cfg.light() { (20, 4.5) } else { (24, 5.0) };
    let sys = bargmann_system(nq, half, 4)?;
    let h = hermite_functions(&sys.vacuum.grid, 8);
    let f = h[0].axpy(C64::new(0.4, -0.2), &h[2])?.axpy(C64::new(0.0, 0.3), &h[5])?;
    let big_f = sys.embed(&f)?;
    let fixes = rel(&sys, &sys.reproduce(&big_f)?, &big_f, &big_f)?;

    let generic = GridFunction::from_fn(sys.group_grid.clone(), |g| {
        let r2 = g[1] * g[1] + g[2] * g[2];
        C64::from_polar((-r2 / 3.0).exp() * (1.0 + 0.5 * g[1] - 0.2 * g[2] * g[2]), -2.0 * g[0])
    });
    let p1 = sys.reproduce(&generic)?;
    let idem = rel(&sys, &sys.reproduce(&p1)?, &p1, &generic)?;

    // orthonormal image basis from the embedded Hermite functions
    let mut basis: Vec<GridFunction> = Vec::new();
    for hk in &h {
        let mut e = sys.embed(hk)?;
        for b in &basis {
            let c = sys.measure_inner(&e, b);
            e = e.axpy(-c, b)?;
        }
        let n = sys.norm_sqr(&e).sqrt();
        basis.push(e.scale(C64::new(1.0 / n, 0.0)));
    }
    let vac = sys.embed(&h[0])?;
    let mut perp = GridFunction::from_fn(sys.group_grid.clone(), |g| C64::new(g[1], 0.7 * g[2]));
    for (v, w) in perp.values.iter_mut().zip(&vac.values) {
        *v *= w;
    }
    for b in &basis {
        let c = sys.measure_inner(&perp, b);
        perp = perp.axpy(-c, b)?;
    }
    let killed = (sys.norm_sqr(&sys.reproduce(&perp)?) / sys.norm_sqr(&perp)).sqrt();
    Ok(vec![
        ctx.check("coherent.projector_fixes_image", "projector", fixes, 1e-3),
        ctx.check("coherent.projector_idempotent", "projector", idem, 1e-3),
        ctx.check("coherent.projector_annihilates", "projector", killed, 1e-3),
    ])
}

/// Wavelet norm identity against an admissibility constant computed in the
/// frequency domain.
pub fn wavelet(ctx: Ctx) -> Result<Vec<Check>> {
    let f0 = Wavelet::Morlet { omega0: 5.0 };
    let (cp, cm) = admissibility(&f0, Axis::new(4096, -60.0, 60.0))?;
    let sg = Grid::new(vec![Axis::new(512, -25.0, 25.0)])?;
    let f = GridFunction::from_fn(sg, |y| C64::new(1.0 + 0.3 * y[0], 0.2) * (-(y[0] - 0.5).powi(2) / 2.0).exp());
    let (pp, pm) = frequency_split(&f)?;
    // the smallest scale keeps omega0 / a below the Nyquist rate of f's grid
    let ab = Grid::with_cap(vec![Axis::new(241, -30.0, 30.0), Axis::new(121, -1.5, 10.5)], usize::MAX)?;
    let wt = wavelet_transform(&f, &f0, &ab)?;
    let lhs: f64 = wt.values.iter().zip(ab.weights()).map(|(v, w)| v.norm_sqr() * w).sum();
    let rhs = (cp * pp + cm * pm) / (2.0 * PI);
    Ok(vec![ctx.check("coherent.wavelet_norm", "wavelet-norm-identity", (lhs / rhs - 1.0).abs(), 1e-2)])
}

/// Gabor transform with the Gaussian window is the Bargmann embedding.
pub fn gabor(ctx: Ctx) -> Result<Vec<Check>> {
    let sys = bargmann_system(12, 4.0, 4)?;
    let h = hermite_functions(&sys.vacuum.grid, 3);
    let f = h[1].axpy(C64::new(0.2, 0.7), &h[2])?;
    let a = sys.embed(&f)?;
    let b = gabor_transform(&f, &sys.vacuum, &sys.group_grid)?;
    let d = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    Ok(vec![ctx.check("coherent.gabor_is_embedding", "gabor-transform", d, 1e-10)])
}
