//! Coherent-state systems: a group, a unitary representation on grid samples
//! and a vacuum vector. Concrete kernels for the Fock, Bergman and Szego
//! spaces, and the wavelet and Gabor transforms.

use crate::bch::{bch_compose, group_inverse};
use crate::error::{arg, Error, Result};
use crate::grid::{Axis, Grid, GridFunction};
use crate::lie::LieAlgebra;
use crate::linop::{CMat, LinOp};
use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Debug)]
pub enum GroupDescriptor {
    /// Simply connected group in exponential coordinates.
    Exponential { algebra: LieAlgebra, order: usize },
    /// Affine group in coordinates `(x1, x2)`: shift `x1`, scale `a = e^{x2}`,
    /// with `(a, b) * (a', b') = (a a', b / a' + b')`.
    AxPlusB,
}

impl GroupDescriptor {
    pub fn dim(&self) -> usize {
        match self {
            GroupDescriptor::Exponential { algebra, .. } => algebra.dim(),
            GroupDescriptor::AxPlusB => 2,
        }
    }

    pub fn compose(&self, g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
        match self {
            GroupDescriptor::Exponential { algebra, order } => Ok(bch_compose(algebra, g, h, *order)?.point),
            GroupDescriptor::AxPlusB => Ok(vec![g[0] * (-h[1]).exp() + h[0], g[1] + h[1]]),
        }
    }

    pub fn inverse(&self, g: &[f64]) -> Vec<f64> {
        match self {
            GroupDescriptor::Exponential { .. } => group_inverse(g),
            GroupDescriptor::AxPlusB => vec![-g[0] * g[1].exp(), -g[1]],
        }
    }
}

/// Invariant measure on the group grid.
#[derive(Clone, Debug, PartialEq)]
pub enum Haar {
    /// `scale * dx` over all coordinates.
    Lebesgue { scale: f64 },
    /// Integration over the slice `x_axis = 0` with `scale * dx`, for
    /// functions carrying the central character `e^{i character x_axis}`.
    CentralSlice { axis: usize, character: f64, scale: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Representation {
    /// `T_(t,q,p) f(x) = e^{i(2t - sqrt2 q x + q p)} f(x - sqrt2 p)` on a 1-D grid.
    Schrodinger,
    /// `T_(x1,x2) f(y) = e^{-x2/2} f(e^{-x2} y - x1)` on a 1-D grid.
    AxPlusB,
}

#[derive(Clone, Debug)]
pub struct CoherentSystem {
    pub group: GroupDescriptor,
    pub haar: Haar,
    pub rep: Representation,
    pub vacuum: GridFunction,
    pub group_grid: Grid,
}

/// `heisenberg_scaled(1, -1)` in coordinates `(t, q, p)`: the algebra of the
/// Schrodinger representation generators `2I, -sqrt2 Y, -sqrt2 P`.
pub fn schrodinger_algebra() -> LieAlgebra {
    let mut a = LieAlgebra::heisenberg_scaled(1, -1.0);
    a = LieAlgebra::new(vec!["t".into(), "q".into(), "p".into()], a.structure().to_vec()).expect("valid");
    a
}

/// Spectral shift `f(x - s)` of 1-D periodic samples.
fn shift(values: &[C64], h: f64, s: f64, planner: &mut FftPlanner<f64>) -> Vec<C64> {
    let n = values.len();
    if s == 0.0 {
        return values.to_vec();
    }
    let mut buf = values.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    for (m, v) in buf.iter_mut().enumerate() {
        let k = if m < n.div_ceil(2) { m as f64 } else { m as f64 - n as f64 };
        // the Nyquist mode is left in place, as in the momentum flow
        let k = if n % 2 == 0 && m == n / 2 { 0.0 } else { k };
        *v *= C64::from_polar(1.0 / n as f64, -2.0 * PI * k * s / (n as f64 * h));
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf
}

fn check_1d(f: &GridFunction) -> Result<Axis> {
    if f.grid.ndim() != 1 {
        return arg("representation space must be a 1-D grid");
    }
    Ok(f.grid.axes()[0])
}

pub fn schrodinger_apply(g: &[f64], f: &GridFunction) -> Result<GridFunction> {
    let a = check_1d(f)?;
    if g.len() != 3 {
        return arg("Schrodinger representation takes (t, q, p)");
    }
    let (t, q, p) = (g[0], g[1], g[2]);
    let mut planner = FftPlanner::new();
    let sh = shift(&f.values, a.step(), SQRT_2 * p, &mut planner);
    let values = sh
        .iter()
        .enumerate()
        .map(|(i, v)| v * C64::from_polar(1.0, 2.0 * t - SQRT_2 * q * a.point(i) + q * p))
        .collect();
    Ok(GridFunction { grid: f.grid.clone(), values })
}

/// Wavelet action by spectral interpolation of the dilated argument.
pub fn ax_plus_b_apply(g: &[f64], f: &GridFunction) -> Result<GridFunction> {
    let a = check_1d(f)?;
    if g.len() != 2 {
        return arg("affine representation takes (x1, x2)");
    }
    let n = a.count;
    let mut planner = FftPlanner::new();
    let mut c = f.values.clone();
    planner.plan_fft_forward(n).process(&mut c);
    let scale = (-g[1]).exp();
    let values = (0..n)
        .map(|i| {
            let y = a.point(i);
            let arg_x = scale * y - g[0];
            let u = (arg_x - a.lo) / a.step();
            let mut acc = ZERO;
            for (m, v) in c.iter().enumerate() {
                let k = if m < n.div_ceil(2) { m as f64 } else { m as f64 - n as f64 };
                if n % 2 == 0 && m == n / 2 {
                    acc += v * (2.0 * PI * k * u / n as f64).cos();
                } else {
                    acc += v * C64::from_polar(1.0, 2.0 * PI * k * u / n as f64);
                }
            }
            acc / n as f64 * (-0.5 * g[1]).exp()
        })
        .collect();
    Ok(GridFunction { grid: f.grid.clone(), values })
}

/// `<u, v> = sum w u conj(v)`, linear in the first slot.
pub fn inner(u: &GridFunction, v: &GridFunction) -> C64 {
    let w = u.grid.weights();
    u.values.iter().zip(&v.values).zip(&w).map(|((a, b), w)| a * b.conj() * w).sum()
}

impl CoherentSystem {
    /// Fock-space system of the Schrodinger representation with the normalized
    /// Gaussian vacuum on `space`, and a `(t, q, p)` group grid.
    pub fn bargmann(space: Axis, group_grid: Grid) -> Result<Self> {
        let grid = Grid::new(vec![space])?;
        let c = PI.powf(-0.25);
        let vacuum = GridFunction::from_real_fn(grid, |x| c * (-x[0] * x[0] / 2.0).exp());
        Self::new(
            GroupDescriptor::Exponential { algebra: schrodinger_algebra(), order: 2 },
            Haar::CentralSlice { axis: 0, character: -2.0, scale: 1.0 / PI },
            Representation::Schrodinger,
            vacuum,
            group_grid,
        )
    }

    pub fn new(
        group: GroupDescriptor,
        haar: Haar,
        rep: Representation,
        vacuum: GridFunction,
        group_grid: Grid,
    ) -> Result<Self> {
        if group_grid.ndim() != group.dim() {
            return arg("group grid dimension does not match the group");
        }
        let need = match rep {
            Representation::Schrodinger => 3,
            Representation::AxPlusB => 2,
        };
        if group.dim() != need {
            return arg("representation does not match the group dimension");
        }
        check_1d(&vacuum)?;
        let nv = inner(&vacuum, &vacuum).re.sqrt();
        if (nv - 1.0).abs() > 1e-8 {
            return Err(Error::Validation(format!("vacuum norm {nv} is not 1")));
        }
        Ok(CoherentSystem { group, haar, rep, vacuum, group_grid })
    }

    pub fn apply(&self, g: &[f64], f: &GridFunction) -> Result<GridFunction> {
        match self.rep {
            Representation::Schrodinger => schrodinger_apply(g, f),
            Representation::AxPlusB => ax_plus_b_apply(g, f),
        }
    }

    /// Dense matrix of `T_g`.
    pub fn rep_matrix(&self, g: &[f64]) -> Result<LinOp> {
        let grid = self.vacuum.grid.clone();
        let n = grid.len();
        let mut m = CMat::zeros(n, n);
        for j in 0..n {
            let mut e = GridFunction::zeros(grid.clone());
            e.values[j] = C64::new(1.0, 0.0);
            let col = self.apply(g, &e)?;
            for i in 0..n {
                m[(i, j)] = col.values[i];
            }
        }
        LinOp::new(m)
    }

    /// `<f, T_g f0>` at one group point.
    pub fn embed_at(&self, f: &GridFunction, g: &[f64]) -> Result<C64> {
        Ok(inner(f, &self.apply(g, &self.vacuum)?))
    }

    pub fn embed(&self, f: &GridFunction) -> Result<GridFunction> {
        self.embed_with(f, &self.vacuum)
    }

    fn embed_with(&self, f: &GridFunction, f0: &GridFunction) -> Result<GridFunction> {
        if f.grid != self.vacuum.grid {
            return arg("function is not on the representation grid");
        }
        let values = (0..self.group_grid.len())
            .map(|i| Ok(inner(f, &self.apply(&self.group_grid.point(i), f0)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFunction { grid: self.group_grid.clone(), values })
    }

    /// `int |F|^2 dmu` over the group grid.
    pub fn norm_sqr(&self, f: &GridFunction) -> f64 {
        self.measure_inner(f, f).re
    }

    pub fn measure_inner(&self, a: &GridFunction, b: &GridFunction) -> C64 {
        let g = &self.group_grid;
        match self.haar {
            Haar::Lebesgue { scale } => {
                let w = g.weights();
                a.values.iter().zip(&b.values).zip(&w).map(|((x, y), w)| x * y.conj() * w).sum::<C64>() * scale
            }
            Haar::CentralSlice { axis, scale, .. } => {
                // the integrand is constant along the central axis; average it
                let counts = g.counts();
                let slice: Vec<Axis> =
                    g.axes().iter().enumerate().filter(|(k, _)| *k != axis).map(|(_, a)| *a).collect();
                let sg = Grid::with_cap(slice, usize::MAX).expect("valid axes");
                let sw = sg.weights();
                let mut acc = ZERO;
                for f in 0..g.len() {
                    let idx = g.unravel(f);
                    let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != axis).map(|(_, v)| *v).collect();
                    acc += a.values[f] * b.values[f].conj() * sw[sg.ravel(&rest)];
                }
                acc * scale / counts[axis] as f64
            }
        }
    }

    /// Left convolution with the vacuum autocorrelation,
    /// `R(g) = int F(h) f0(h^{-1} g) dmu(h)`.
    pub fn reproduce(&self, big_f: &GridFunction) -> Result<GridFunction> {
        if big_f.grid != self.group_grid {
            return arg("function is not on the group grid");
        }
        let g = &self.group_grid;
        let pts = g.points();
        let mut cache: HashMap<Vec<i64>, C64> = HashMap::new();
        let key = |z: &[f64]| -> Vec<i64> { z.iter().map(|v| (v * 1e9).round() as i64).collect() };
        let mut auto = |z: &[f64]| -> Result<C64> {
            let k = key(z);
            if let Some(v) = cache.get(&k) {
                return Ok(*v);
            }
            let v = inner(&self.vacuum, &self.apply(z, &self.vacuum)?);
            cache.insert(k, v);
            Ok(v)
        };
        let mut values = vec![ZERO; g.len()];
        match self.haar {
            Haar::Lebesgue { scale } => {
                let w = g.weights();
                for (gi, gp) in pts.iter().enumerate() {
                    let mut acc = ZERO;
                    for (hi, hp) in pts.iter().enumerate() {
                        let fv = big_f.values[hi];
                        if fv == ZERO {
                            continue;
                        }
                        let z = self.group.compose(&self.group.inverse(hp), gp)?;
                        acc += fv * auto(&z)? * w[hi];
                    }
                    values[gi] = acc * scale;
                }
            }
            Haar::CentralSlice { axis, character, scale } => {
                let slice: Vec<Axis> =
                    g.axes().iter().enumerate().filter(|(k, _)| *k != axis).map(|(_, a)| *a).collect();
                let sg = Grid::with_cap(slice, usize::MAX)?;
                let sw = sg.weights();
                for (gi, gp) in pts.iter().enumerate() {
                    let idx = g.unravel(gi);
                    let mut acc = ZERO;
                    // h runs over the slice through g's central coordinate
                    for si in 0..sg.len() {
                        let sidx = sg.unravel(si);
                        let mut full = Vec::with_capacity(g.ndim());
                        let mut it = sidx.iter();
                        for k in 0..g.ndim() {
                            full.push(if k == axis { idx[axis] } else { *it.next().unwrap() });
                        }
                        let hi = g.ravel(&full);
                        let fv = big_f.values[hi];
                        if fv == ZERO {
                            continue;
                        }
                        let z = self.group.compose(&self.group.inverse(&pts[hi]), gp)?;
                        let mut z0 = z.clone();
                        let c = z0[axis];
                        z0[axis] = 0.0;
                        acc += fv * auto(&z0)? * C64::from_polar(1.0, character * c) * sw[si];
                    }
                    values[gi] = acc * scale;
                }
            }
        }
        Ok(GridFunction { grid: g.clone(), values })
    }
}

/// Orthogonal projector `sum_j |phi_j><phi_j|` onto a finite orthonormal family.
pub fn basis_projector(basis: &[GridFunction], f: &GridFunction) -> Result<GridFunction> {
    let mut out = GridFunction::zeros(f.grid.clone());
    for b in basis {
        if b.grid != f.grid {
            return arg("basis vector on a different grid");
        }
        let c = inner(f, b);
        out = out.axpy(c, b)?;
    }
    Ok(out)
}

/// `pi^{-1} int_{|w| <= radius} e^{conj(w)(z - w)} f(w) dv(w)` with `f` sampled
/// on a `(Re w, Im w)` grid.
pub fn bargmann_reproduce(f: &GridFunction, z: C64, radius: f64) -> Result<C64> {
    if f.grid.ndim() != 2 {
        return arg("Fock-space samples must be on a 2-D (Re w, Im w) grid");
    }
    let w = f.grid.weights();
    let mut acc = ZERO;
    for (i, v) in f.values.iter().enumerate() {
        let p = f.grid.point(i);
        let wz = C64::new(p[0], p[1]);
        if wz.norm() > radius {
            continue;
        }
        acc += (wz.conj() * (z - wz)).exp() * v * w[i];
    }
    Ok(acc / PI)
}

/// Polar grid on the unit disk: midpoint radii and periodic angles.
pub fn disk_grid(nr: usize, ntheta: usize) -> Result<Grid> {
    let h = 1.0 / nr as f64;
    Grid::with_cap(
        vec![Axis::new(nr, 0.5 * h, 1.0 - 0.5 * h), Axis::periodic(ntheta, 0.0, 2.0 * PI)],
        usize::MAX,
    )
}

/// `int K(zeta, u) f(u) dnu(u)`, `K = (1 - zeta conj(u))^{-2}`, `nu` the
/// normalized area measure, on a `disk_grid`.
pub fn bergman_reproduce(f: &GridFunction, zeta: C64) -> Result<C64> {
    if zeta.norm() > 0.8 {
        return Err(Error::OutOfRange(format!("|zeta| = {} exceeds 0.8", zeta.norm())));
    }
    let g = &f.grid;
    if g.ndim() != 2 {
        return arg("expected a (r, theta) grid");
    }
    let (ra, ta) = (g.axes()[0], g.axes()[1]);
    let nr = ra.count as f64;
    let nt = ta.count as f64;
    let ok_r = (ra.lo - 0.5 / nr).abs() < 1e-12 && (ra.hi - 1.0 + 0.5 / nr).abs() < 1e-12;
    let ok_t = (ta.step() * nt - 2.0 * PI).abs() < 1e-12;
    if !ok_r || !ok_t {
        return arg("samples must be on a disk_grid layout");
    }
    let dr = 1.0 / nr;
    let dt = 2.0 * PI / nt;
    let mut acc = ZERO;
    for (i, v) in f.values.iter().enumerate() {
        let p = g.point(i);
        let u = C64::from_polar(p[0], p[1]);
        let k = (C64::new(1.0, 0.0) - zeta * u.conj()).powi(-2);
        acc += k * v * p[0];
    }
    Ok(acc * dr * dt / PI)
}

pub fn bergman_kernel(zeta: C64, u: C64) -> C64 {
    (C64::new(1.0, 0.0) - zeta * u.conj()).powi(-2)
}

/// Point `(z_1..z_n, z_{n+1})` of C^{n+1}.
pub type BoundaryPoint = Vec<C64>;

fn check_boundary(z: &[C64]) -> Result<()> {
    if z.len() < 2 {
        return arg("boundary point needs n >= 1");
    }
    let n = z.len() - 1;
    let s: f64 = z[..n].iter().map(|v| v.norm_sqr()).sum();
    let r = (z[n].im - s).abs();
    if r > 1e-10 {
        return Err(Error::Validation(format!("point off the boundary (residual {r:e})")));
    }
    Ok(())
}

/// `S(z,w) = ((i/2)(conj(w_{n+1}) - z_{n+1}) - sum z_j conj(w_j))^{-n-1}`
/// for points on the boundary `Im z_{n+1} = sum |z_j|^2`.
pub fn szego_kernel(z: &[C64], w: &[C64]) -> Result<C64> {
    check_boundary(z)?;
    check_boundary(w)?;
    szego_formula(z, w)
}

/// The kernel expression without the boundary check.
pub fn szego_formula(z: &[C64], w: &[C64]) -> Result<C64> {
    if z.len() != w.len() || z.len() < 2 {
        return arg("points must share a dimension n + 1 >= 2");
    }
    let n = z.len() - 1;
    let mut b = I * 0.5 * (w[n].conj() - z[n]);
    for j in 0..n {
        b -= z[j] * w[j].conj();
    }
    if b.norm() == 0.0 {
        return Err(Error::Validation("kernel is singular at z = w".into()));
    }
    Ok(b.powi(-(n as i32) - 1))
}

/// Boundary point over `(v, u)`: `z_j = v_j`, `z_{n+1} = u + i |v|^2`.
pub fn boundary_point(v: &[C64], u: f64) -> BoundaryPoint {
    let s: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    let mut z = v.to_vec();
    z.push(C64::new(u, s));
    z
}

/// Heisenberg action on the boundary, `(zeta, t) . z`.
pub fn boundary_translate(zeta: &[C64], t: f64, z: &[C64]) -> BoundaryPoint {
    let n = z.len() - 1;
    let mut out: Vec<C64> = (0..n).map(|j| z[j] + zeta[j]).collect();
    let mut last = z[n] + t;
    for j in 0..n {
        last += I * 2.0 * z[j] * zeta[j].conj() + I * zeta[j].norm_sqr();
    }
    out.push(last);
    out
}

/// `(i z_{n+1})^{-n-1}`.
pub fn szego_vacuum(z: &[C64]) -> C64 {
    let n = z.len() - 1;
    (I * z[n]).powi(-(n as i32) - 1)
}

/// Mother wavelet for `wavelet_transform`.
#[derive(Clone, Debug)]
pub enum Wavelet {
    /// `pi^{-1/4} (e^{i w0 y} - e^{-w0^2/2}) e^{-y^2/2}`, mean zero.
    Morlet { omega0: f64 },
    /// Samples, read between nodes by linear interpolation.
    Sampled(GridFunction),
}

impl Wavelet {
    pub fn eval(&self, y: f64) -> C64 {
        match self {
            Wavelet::Morlet { omega0 } => {
                let g = PI.powf(-0.25) * (-0.5 * y * y).exp();
                (C64::from_polar(1.0, omega0 * y) - (-0.5 * omega0 * omega0).exp()) * g
            }
            Wavelet::Sampled(f) => f.sample(&[y]),
        }
    }
}

/// `(1/2pi) int conj(f(y)) e^{-x2/2} f0(e^{-x2} y - x1) dy` on the
/// `(x1, x2)` grid.
pub fn wavelet_transform(f: &GridFunction, f0: &Wavelet, ab_grid: &Grid) -> Result<GridFunction> {
    let a = check_1d(f)?;
    if ab_grid.ndim() != 2 {
        return arg("wavelet grid must be (x1, x2)");
    }
    let w = a.trapezoid();
    let ys = a.points();
    let fc: Vec<(f64, C64)> =
        f.values.iter().zip(&w).zip(&ys).filter(|((v, _), _)| **v != ZERO).map(|((v, w), y)| (*y, v.conj() * *w)).collect();
    let values = (0..ab_grid.len())
        .map(|i| {
            let p = ab_grid.point(i);
            let s = (-p[1]).exp();
            let mut acc = ZERO;
            for &(y, c) in &fc {
                acc += c * f0.eval(s * y - p[0]);
            }
            acc * ((-0.5 * p[1]).exp() / (2.0 * PI))
        })
        .collect();
    Ok(GridFunction { grid: ab_grid.clone(), values })
}

/// `(C+, C-)` with `C+- = int_0^inf |f0hat(+-s)|^2 / s ds`, from samples of the
/// mother wavelet on `axis` by FFT.
pub fn admissibility(f0: &Wavelet, axis: Axis) -> Result<(f64, f64)> {
    let g = Grid::with_cap(vec![axis], usize::MAX)?;
    let s = GridFunction::from_fn(g, |x| f0.eval(x[0]));
    let sh = crate::grid::fourier(&s, -1);
    let ds = sh.grid.axes()[0].step();
    let (mut cp, mut cm) = (0.0, 0.0);
    for (i, v) in sh.values.iter().enumerate() {
        let w = sh.grid.point(i)[0];
        if w > 0.0 {
            cp += v.norm_sqr() / w * ds;
        } else if w < 0.0 {
            cm += v.norm_sqr() / (-w) * ds;
        }
    }
    Ok((cp, cm))
}

/// `(||P+ f||^2, ||P- f||^2)`: energy at positive and negative frequencies.
pub fn frequency_split(f: &GridFunction) -> Result<(f64, f64)> {
    check_1d(f)?;
    let fh = crate::grid::fourier(f, -1);
    let ds = fh.grid.axes()[0].step();
    let (mut p, mut m) = (0.0, 0.0);
    for (i, v) in fh.values.iter().enumerate() {
        let w = fh.grid.point(i)[0];
        if w > 0.0 {
            p += v.norm_sqr() * ds;
        } else if w < 0.0 {
            m += v.norm_sqr() * ds;
        } else {
            p += 0.5 * v.norm_sqr() * ds;
            m += 0.5 * v.norm_sqr() * ds;
        }
    }
    Ok((p, m))
}

/// Embedding through the Schrodinger representation with window `f0`.
pub fn gabor_transform(f: &GridFunction, f0: &GridFunction, tqp_grid: &Grid) -> Result<GridFunction> {
    check_1d(f)?;
    if tqp_grid.ndim() != 3 {
        return arg("Gabor grid must be (t, q, p)");
    }
    let sys = CoherentSystem {
        group: GroupDescriptor::Exponential { algebra: schrodinger_algebra(), order: 2 },
        haar: Haar::CentralSlice { axis: 0, character: -2.0, scale: 1.0 / PI },
        rep: Representation::Schrodinger,
        vacuum: f0.clone(),
        group_grid: tqp_grid.clone(),
    };
    sys.embed(f)
}

/// Normalized Hermite functions `h_0 .. h_{count-1}` on a 1-D grid.
pub fn hermite_functions(grid: &Grid, count: usize) -> Vec<GridFunction> {
    let xs = grid.axes()[0].points();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    for k in 0..count {
        let v: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| match k {
                0 => PI.powf(-0.25) * (-0.5 * x * x).exp(),
                1 => SQRT_2 * x * out[0][i],
                _ => {
                    let kf = k as f64;
                    (2.0 / kf).sqrt() * x * out[k - 1][i] - ((kf - 1.0) / kf).sqrt() * out[k - 2][i]
                }
            })
            .collect();
        out.push(v);
    }
    out.into_iter()
        .map(|v| GridFunction { grid: grid.clone(), values: v.into_iter().map(|x| C64::new(x, 0.0)).collect() })
        .collect()
}
