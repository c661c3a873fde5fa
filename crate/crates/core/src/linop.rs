//! Dense operators on grid samples: frame operators and their flows.

use crate::error::{arg, Error, Result};
use crate::grid::{Grid, GridFunction};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type CMat = DMatrix<C64>;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq)]
pub struct LinOp {
    m: CMat,
}

impl LinOp {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return arg(format!("{}x{} matrix is not square", m.nrows(), m.ncols()));
        }
        Ok(LinOp { m })
    }

    pub fn identity(n: usize) -> Self {
        LinOp { m: CMat::identity(n, n) }
    }

    pub fn zeros(n: usize) -> Self {
        LinOp { m: CMat::zeros(n, n) }
    }

    pub fn diagonal(d: &[C64]) -> Self {
        LinOp { m: CMat::from_diagonal(&nalgebra::DVector::from_column_slice(d)) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        if f.values.len() != self.dim() {
            return arg(format!("operator of size {} applied to {} samples", self.dim(), f.values.len()));
        }
        let v = nalgebra::DVector::from_column_slice(&f.values);
        let out = &self.m * v;
        Ok(GridFunction { grid: f.grid.clone(), values: out.as_slice().to_vec() })
    }

    pub fn mul(&self, other: &LinOp) -> LinOp {
        LinOp { m: &self.m * &other.m }
    }

    pub fn add(&self, other: &LinOp) -> LinOp {
        LinOp { m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &LinOp) -> LinOp {
        LinOp { m: &self.m - &other.m }
    }

    pub fn scale(&self, s: C64) -> LinOp {
        LinOp { m: &self.m * s }
    }

    pub fn adjoint(&self) -> LinOp {
        LinOp { m: self.m.adjoint() }
    }

    pub fn commutator(&self, other: &LinOp) -> LinOp {
        LinOp { m: &self.m * &other.m - &other.m * &self.m }
    }

    pub fn norm_fro(&self) -> f64 {
        self.m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Max entry of |A - A^*|.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.dim();
        let mut r = 0.0f64;
        for j in 0..n {
            for i in 0..=j {
                r = r.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// Max entry of |U^* U - I|.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.m.adjoint() * &self.m;
        let n = self.dim();
        let mut r = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let want = if i == j { ONE } else { ZERO };
                r = r.max((p[(i, j)] - want).norm());
            }
        }
        r
    }

    /// ||A Q||_F for the probe matrix Q.
    pub fn probe_norm(&self, q: &CMat) -> f64 {
        (&self.m * q).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn one() -> f64 {
    1.0
}

/// One frame operator, described symbolically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrameSpec {
    /// Multiplication by the coordinate `y_axis`.
    Multiplication {
        axis: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// `(1/i) d/dy_axis`, spectral.
    Momentum {
        axis: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// Left-invariant field `index` of the Heisenberg group on a `2n+1` grid,
    /// axis 0 central.
    HeisenbergLeft {
        index: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    HeisenbergRight {
        index: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// Fock-space field for degree of freedom `index` on a `2n` grid
    /// `(v', v'')`; `primed` picks the `'` component.
    FockField {
        index: usize,
        primed: bool,
        #[serde(default = "one")]
        scale: f64,
    },
    /// Shift generators commuting with the Fock fields.
    FockShift {
        index: usize,
        primed: bool,
        #[serde(default = "one")]
        scale: f64,
    },
    Identity { scalar: f64 },
}

/// Hermitian matrix of `(1/i) d/dy` on the periodic extension of `n` samples
/// with spacing `h`; the Nyquist mode is dropped.
pub fn momentum_1d(n: usize, h: f64) -> CMat {
    // circulant: P_{jl} = c_{(j-l) mod n}, c_d = (1/n) sum_m k_m e^{2 pi i m d / n}
    let freq = |m: usize| -> f64 {
        let s = if m < n.div_ceil(2) { m as f64 } else { m as f64 - n as f64 };
        if n % 2 == 0 && m == n / 2 {
            0.0
        } else {
            2.0 * PI * s / (n as f64 * h)
        }
    };
    let c: Vec<C64> = (0..n)
        .map(|d| {
            let mut acc = ZERO;
            for m in 0..n {
                let k = freq(m);
                if k != 0.0 {
                    acc += C64::from_polar(k, 2.0 * PI * ((m * d) % n) as f64 / n as f64);
                }
            }
            acc / n as f64
        })
        .collect();
    let mut p = CMat::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            p[(j, l)] = c[(j + n - l) % n];
        }
    }
    // symmetrize away rounding
    let pa = p.adjoint();
    (p + pa) * C64::new(0.5, 0.0)
}

/// Term of a frame operator: coefficient times a product of per-axis factors.
#[derive(Clone, Copy)]
enum Factor {
    Y,
    P,
}

struct Term {
    coeff: f64,
    factors: Vec<(usize, Factor)>,
}

fn terms_of(spec: &FrameSpec, d: usize) -> Result<(Vec<Term>, f64)> {
    let t = |coeff: f64, f: &[(usize, Factor)]| Term { coeff, factors: f.to_vec() };
    use Factor::{P, Y};
    let out = match *spec {
        FrameSpec::Multiplication { axis, scale } => {
            check_axis(axis, d)?;
            (vec![t(scale, &[(axis, Y)])], 0.0)
        }
        FrameSpec::Momentum { axis, scale } => {
            check_axis(axis, d)?;
            (vec![t(scale, &[(axis, P)])], 0.0)
        }
        FrameSpec::HeisenbergLeft { index, scale } | FrameSpec::HeisenbergRight { index, scale } => {
            let right = matches!(spec, FrameSpec::HeisenbergRight { .. });
            if d % 2 == 0 {
                return arg(format!("Heisenberg fields need an odd grid dimension, got {d}"));
            }
            let n = (d - 1) / 2;
            if index > 2 * n {
                return arg(format!("Heisenberg field index {index} out of range for H^{n}"));
            }
            let s = if right { -1.0 } else { 1.0 };
            let terms = if index == 0 {
                vec![t(s * scale, &[(0, P)])]
            } else if index <= n {
                // P_{j+n} - 2 y_j P_0 (left), P_{j+n} + 2 y_j P_0 (right)
                vec![t(scale, &[(index + n, P)]), t(-2.0 * s * scale, &[(index, Y), (0, P)])]
            } else {
                let j = index - n;
                vec![t(scale, &[(j, P)]), t(2.0 * s * scale, &[(index, Y), (0, P)])]
            };
            (terms, 0.0)
        }
        FrameSpec::FockField { index, primed, scale } | FrameSpec::FockShift { index, primed, scale } => {
            let shift = matches!(spec, FrameSpec::FockShift { .. });
            if d % 2 == 1 {
                return arg(format!("Fock fields need an even grid dimension, got {d}"));
            }
            let n = d / 2;
            if index >= n {
                return arg(format!("Fock index {index} out of range for {n} degrees of freedom"));
            }
            let (a1, a2) = (index, index + n);
            let s = if shift { -1.0 } else { 1.0 };
            let terms = if primed {
                vec![t(scale, &[(a1, P)]), t(s * scale, &[(a2, Y)])]
            } else {
                vec![t(scale, &[(a2, P)]), t(-s * scale, &[(a1, Y)])]
            };
            (terms, 0.0)
        }
        FrameSpec::Identity { scalar } => (Vec::new(), scalar),
    };
    Ok(out)
}

fn check_axis(axis: usize, d: usize) -> Result<()> {
    if axis >= d {
        return arg(format!("axis {axis} out of range for a {d}-dimensional grid"));
    }
    Ok(())
}

pub fn frame_operator(spec: &FrameSpec, grid: &Grid) -> Result<LinOp> {
    let d = grid.ndim();
    let (terms, scalar) = terms_of(spec, d)?;
    let n = grid.len();
    let counts = grid.counts();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(scalar, 0.0);
    }
    let ps: Vec<Option<CMat>> = (0..d)
        .map(|a| {
            let used = terms.iter().any(|t| t.factors.iter().any(|f| f.0 == a && matches!(f.1, Factor::P)));
            used.then(|| momentum_1d(counts[a], grid.axes()[a].step()))
        })
        .collect();
    let strides: Vec<usize> = (0..d).map(|a| counts[a + 1..].iter().product()).collect();
    for term in &terms {
        let p_axes: Vec<usize> =
            term.factors.iter().filter(|f| matches!(f.1, Factor::P)).map(|f| f.0).collect();
        let y_axes: Vec<usize> =
            term.factors.iter().filter(|f| matches!(f.1, Factor::Y)).map(|f| f.0).collect();
        if p_axes.len() > 1 {
            return Err(Error::Unsupported("term with two momentum factors".into()));
        }
        for row in 0..n {
            let idx = grid.unravel(row);
            let mut c = term.coeff;
            for &a in &y_axes {
                c *= grid.axes()[a].point(idx[a]);
            }
            if c == 0.0 {
                continue;
            }
            match p_axes.first() {
                None => m[(row, row)] += C64::new(c, 0.0),
                Some(&a) => {
                    let p = ps[a].as_ref().unwrap();
                    let base = row - idx[a] * strides[a];
                    for k in 0..counts[a] {
                        let col = base + k * strides[a];
                        m[(row, col)] += p[(idx[a], k)] * c;
                    }
                }
            }
        }
    }
    // multiplication and momentum factors on distinct axes commute, but a Y_a P_b
    // product with a == b does not occur in any spec, so `m` is Hermitian
    LinOp::new(m)
}

pub fn frame_operators(specs: &[FrameSpec], grid: &Grid) -> Result<Vec<LinOp>> {
    specs.iter().map(|s| frame_operator(s, grid)).collect()
}

/// Eigen-decomposition of a Hermitian matrix; the input is symmetrized first.
pub fn hermitian_eig(h: &CMat) -> (Vec<f64>, CMat) {
    let hs = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let e = hs.symmetric_eigen();
    (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
}

/// `V diag(g(lambda)) V^*`.
pub fn spectral_apply(vals: &[f64], vecs: &CMat, g: impl Fn(f64) -> C64) -> CMat {
    let mut left = vecs.clone();
    for (j, &l) in vals.iter().enumerate() {
        let s = g(l);
        left.column_mut(j).scale_mut_c(s);
    }
    left * vecs.adjoint()
}

trait ScaleC {
    fn scale_mut_c(&mut self, s: C64);
}

impl<S: nalgebra::StorageMut<C64, nalgebra::Dyn, nalgebra::U1>> ScaleC
    for nalgebra::Matrix<C64, nalgebra::Dyn, nalgebra::U1, S>
{
    fn scale_mut_c(&mut self, s: C64) {
        for v in self.iter_mut() {
            *v *= s;
        }
    }
}

/// `exp(i H)` for Hermitian `H`.
pub fn exp_i_hermitian(h: &CMat) -> CMat {
    let (vals, vecs) = hermitian_eig(h);
    spectral_apply(&vals, &vecs, |l| C64::from_polar(1.0, l))
}

pub fn linear_combination(ops: &[LinOp], coeffs: &[f64]) -> Result<CMat> {
    if ops.len() != coeffs.len() {
        return arg(format!("{} operators and {} coefficients", ops.len(), coeffs.len()));
    }
    let n = ops.first().map(|o| o.dim()).unwrap_or(0);
    if ops.iter().any(|o| o.dim() != n) {
        return arg("operators of different sizes");
    }
    let mut h = CMat::zeros(n, n);
    for (o, &c) in ops.iter().zip(coeffs) {
        if c != 0.0 {
            h += &o.m * C64::new(c, 0.0);
        }
    }
    Ok(h)
}

/// `exp(i sum_j coeffs_j ops_j)`.
pub fn flow(ops: &[LinOp], coeffs: &[f64]) -> Result<LinOp> {
    if ops.is_empty() {
        return arg("flow of an empty frame");
    }
    let h = linear_combination(ops, coeffs)?;
    let herm = LinOp { m: h };
    let r = herm.hermitian_residual();
    if r > 1e-8 {
        return Err(Error::Validation(format!("generator is not Hermitian (residual {r:e})")));
    }
    if coeffs.iter().all(|&c| c == 0.0) {
        return Ok(LinOp::identity(herm.dim()));
    }
    Ok(LinOp { m: exp_i_hermitian(&herm.m) })
}

/// Smooth test vectors: sums of a few Gaussian bumps times low-degree
/// polynomials, centered in the middle tenth of each axis. With the default
/// width, mass outside the inner 60% of the box is far below 1e-10.
pub fn smooth_probes(grid: &Grid, count: usize, seed: u64) -> CMat {
    smooth_probes_width(grid, count, seed, 0.08)
}

/// As `smooth_probes` with Gaussian width `rel * half-width` per axis.
pub fn smooth_probes_width(grid: &Grid, count: usize, seed: u64, rel: f64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.len();
    let d = grid.ndim();
    let pts = grid.points();
    let mut q = CMat::zeros(n, count);
    for c in 0..count {
        for _ in 0..3 {
            let amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let mut centers = Vec::with_capacity(d);
            let mut widths = Vec::with_capacity(d);
            let mut poly = Vec::with_capacity(d);
            for a in grid.axes() {
                let mid = 0.5 * (a.lo + a.hi);
                let half = 0.5 * (a.hi - a.lo);
                centers.push(mid + rng.gen_range(-0.1..0.1) * half);
                widths.push(rel * half);
                poly.push([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5)]);
            }
            for (i, p) in pts.iter().enumerate() {
                let mut v = amp;
                for k in 0..d {
                    let u = (p[k] - centers[k]) / widths[k];
                    let pk = poly[k];
                    v *= (-0.5 * u * u).exp() * (pk[0] + pk[1] * u + pk[2] * u * u);
                }
                q[(i, c)] += v;
            }
        }
    }
    q
}

/// Relative error `||(A - B) Q|| / ||A Q||` on probe columns.
pub fn probe_relative(a: &CMat, b: &CMat, q: &CMat) -> f64 {
    let aq = a * q;
    let bq = b * q;
    let num = (&aq - &bq).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let den = aq.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    num / den
}

/// Largest singular value by power iteration on `A^* A`.
pub fn op_norm(a: &CMat) -> f64 {
    let n = a.ncols();
    if n == 0 {
        return 0.0;
    }
    let mut v = nalgebra::DVector::from_fn(n, |i, _| C64::new(1.0 + (i as f64 * 0.37).sin(), 0.1 * (i as f64).cos()));
    let mut s = 0.0;
    for _ in 0..200 {
        let nv = v.norm();
        if nv == 0.0 {
            return 0.0;
        }
        v /= C64::new(nv, 0.0);
        let w = a * &v;
        let z = a.adjoint() * &w;
        let ns = w.norm();
        if (ns - s).abs() <= 1e-13 * ns {
            return ns;
        }
        s = ns;
        v = z;
    }
    s
}
