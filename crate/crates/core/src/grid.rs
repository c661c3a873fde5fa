//! Uniform rectangular grids and complex samples on them.

use crate::error::{arg, Error, Result};
use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::io::{Read, Write};

pub const DEFAULT_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Axis {
    pub fn new(count: usize, lo: f64, hi: f64) -> Self {
        Axis { count, lo, hi }
    }

    /// Lattice axis `(i - count/2) * step`, which always contains 0.
    pub fn lattice(count: usize, step: f64) -> Self {
        let h = (count / 2) as f64;
        Axis { count, lo: -h * step, hi: (count as f64 - 1.0 - h) * step }
    }

    /// `count` points of a periodic sampling of [lo, lo + period).
    pub fn periodic(count: usize, lo: f64, period: f64) -> Self {
        let h = period / count as f64;
        Axis { count, lo, hi: lo + h * (count as f64 - 1.0) }
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.count as f64 - 1.0)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.lo + self.step() * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn trapezoid(&self) -> Vec<f64> {
        let h = self.step();
        let mut w = vec![h; self.count];
        w[0] *= 0.5;
        w[self.count - 1] *= 0.5;
        w
    }

    /// Period of the spectral (periodic) extension.
    pub fn period(&self) -> f64 {
        self.step() * self.count as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    axes: Vec<Axis>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        Self::with_cap(axes, DEFAULT_CAP)
    }

    pub fn with_cap(axes: Vec<Axis>, cap: usize) -> Result<Self> {
        if axes.is_empty() {
            return arg("grid needs at least one axis");
        }
        for (i, a) in axes.iter().enumerate() {
            if a.count < 2 {
                return arg(format!("axis {i} has {} points, need >= 2", a.count));
            }
            if !(a.lo < a.hi) || !a.lo.is_finite() || !a.hi.is_finite() {
                return arg(format!("axis {i} has lo={} hi={}", a.lo, a.hi));
            }
        }
        let total: usize = axes.iter().map(|a| a.count).product();
        if total > cap {
            return arg(format!("grid has {total} points, cap is {cap}"));
        }
        Ok(Grid { axes })
    }

    pub fn cube(d: usize, axis: Axis) -> Result<Self> {
        Self::new(vec![axis; d])
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn counts(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    /// Row-major multi-index of a flat index (last axis fastest).
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for d in (0..self.axes.len()).rev() {
            idx[d] = flat % self.axes[d].count;
            flat /= self.axes[d].count;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for (d, a) in self.axes.iter().enumerate() {
            f = f * a.count + idx[d];
        }
        f
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let idx = self.unravel(flat);
        idx.iter().enumerate().map(|(d, &i)| self.axes[d].point(i)).collect()
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Product trapezoid weights in flat order.
    pub fn weights(&self) -> Vec<f64> {
        let per: Vec<Vec<f64>> = self.axes.iter().map(|a| a.trapezoid()).collect();
        (0..self.len())
            .map(|f| {
                self.unravel(f).iter().enumerate().map(|(d, &i)| per[d][i]).product()
            })
            .collect()
    }

    /// Volume element of a single cell.
    pub fn cell(&self) -> f64 {
        self.axes.iter().map(|a| a.step()).product()
    }

    pub fn sub(&self, axes: &[usize]) -> Result<Grid> {
        Grid::with_cap(axes.iter().map(|&a| self.axes[a]).collect(), usize::MAX)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub grid: Grid,
    pub values: Vec<C64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return arg(format!("{} values for a grid of {} points", values.len(), grid.len()));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Validation("non-finite sample".into()));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.len();
        GridFunction { grid, values: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> C64) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.point(i))).collect();
        GridFunction { grid, values }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(&[f64]) -> f64) -> Self {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    pub fn norm(&self) -> f64 {
        let w = self.grid.weights();
        self.values.iter().zip(&w).map(|(v, w)| v.norm_sqr() * w).sum::<f64>().sqrt()
    }

    /// Plain Riemann norm sqrt(cell * sum |v|^2) used for periodic data.
    pub fn norm_riemann(&self) -> f64 {
        (self.grid.cell() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn integral(&self) -> C64 {
        let w = self.grid.weights();
        self.values.iter().zip(&w).map(|(v, w)| v * w).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        GridFunction { grid: self.grid.clone(), values: self.values.iter().map(|v| v * s).collect() }
    }

    pub fn axpy(&self, a: C64, other: &GridFunction) -> Result<Self> {
        if self.grid != other.grid {
            return arg("grid mismatch");
        }
        Ok(GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(x, y)| x + a * y).collect(),
        })
    }

    /// Max |value| over samples on the outer faces of the grid.
    pub fn boundary_max(&self) -> f64 {
        let mut m = 0.0f64;
        for f in 0..self.grid.len() {
            let idx = self.grid.unravel(f);
            let on = idx.iter().zip(self.grid.axes()).any(|(&i, a)| i == 0 || i + 1 == a.count);
            if on {
                m = m.max(self.values[f].norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Multilinear interpolation with zero extension outside the grid.
    /// Coordinates within 1e-9 cells of a node snap to it.
    pub fn sample(&self, x: &[f64]) -> C64 {
        let axes = self.grid.axes();
        let d = axes.len();
        let mut base = [0usize; 8];
        let mut frac = [0f64; 8];
        let mut lower = vec![0usize; d];
        let mut fr = vec![0f64; d];
        let (base, frac) = if d <= 8 { (&mut base[..d], &mut frac[..d]) } else { (&mut lower[..], &mut fr[..]) };
        for k in 0..d {
            let a = &axes[k];
            let t = (x[k] - a.lo) / a.step();
            let r = t.round();
            let t = if (t - r).abs() < 1e-9 { r } else { t };
            if t < 0.0 || t > (a.count - 1) as f64 {
                return C64::new(0.0, 0.0);
            }
            let mut i = t.floor() as usize;
            if i == a.count - 1 {
                i -= 1;
            }
            base[k] = i;
            frac[k] = t - i as f64;
        }
        let mut acc = C64::new(0.0, 0.0);
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            let mut flat = 0;
            for k in 0..d {
                let up = (corner >> k) & 1 == 1;
                let f = frac[k];
                w *= if up { f } else { 1.0 - f };
                flat = flat * axes[k].count + base[k] + up as usize;
            }
            if w != 0.0 {
                acc += self.values[flat] * w;
            }
        }
        acc
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::WriterBuilder::new().flexible(true).from_writer(w);
        let mut head = vec!["grid".to_string()];
        for a in self.grid.axes() {
            head.push(format!("{}:{:?}:{:?}", a.count, a.lo, a.hi));
        }
        wr.write_record(&head).map_err(csv_err)?;
        wr.write_record(["index", "re", "im"]).map_err(csv_err)?;
        for (i, v) in self.values.iter().enumerate() {
            wr.write_record([i.to_string(), format!("{:?}", v.re), format!("{:?}", v.im)])
                .map_err(csv_err)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(r);
        let mut records = rd.records();
        let head = records
            .next()
            .ok_or_else(|| Error::Parse("empty grid function file".into()))?
            .map_err(csv_err)?;
        if head.get(0) != Some("grid") {
            return Err(Error::Parse("first row must start with 'grid'".into()));
        }
        let mut axes = Vec::new();
        for f in head.iter().skip(1) {
            let parts: Vec<&str> = f.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad axis descriptor '{f}'")));
            }
            let count = parts[0].trim().parse().map_err(|_| Error::Parse(format!("bad count in '{f}'")))?;
            let lo = parts[1].trim().parse().map_err(|_| Error::Parse(format!("bad lo in '{f}'")))?;
            let hi = parts[2].trim().parse().map_err(|_| Error::Parse(format!("bad hi in '{f}'")))?;
            axes.push(Axis::new(count, lo, hi));
        }
        let grid = Grid::with_cap(axes, usize::MAX)?;
        let mut values = vec![C64::new(0.0, 0.0); grid.len()];
        let mut seen = vec![false; grid.len()];
        for (line, rec) in records.enumerate() {
            let rec = rec.map_err(csv_err)?;
            if line == 0 && rec.get(0) == Some("index") {
                continue;
            }
            let parse = |k: usize| -> Result<&str> {
                rec.get(k).ok_or_else(|| Error::Parse(format!("row {} too short", line + 2)))
            };
            let i: usize = parse(0)?.trim().parse().map_err(|_| Error::Parse(format!("bad index on row {}", line + 2)))?;
            let re: f64 = parse(1)?.trim().parse().map_err(|_| Error::Parse(format!("bad re on row {}", line + 2)))?;
            let im: f64 = parse(2)?.trim().parse().map_err(|_| Error::Parse(format!("bad im on row {}", line + 2)))?;
            if i >= values.len() {
                return Err(Error::Parse(format!("index {i} out of range on row {}", line + 2)));
            }
            values[i] = C64::new(re, im);
            seen[i] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("no sample for index {missing}")));
        }
        GridFunction::new(grid, values)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Centered frequency axis dual to `a`: spacing 2 pi / period, `count` points,
/// index `count/2` at frequency 0.
pub fn dual_axis(a: &Axis) -> Axis {
    Axis::lattice(a.count, 2.0 * PI / a.period())
}

/// Continuous Fourier transform approximated on the grid,
/// `(2 pi)^(-d/2) * integral k(y) e^{sign i y.x} dy`, evaluated on the centered
/// dual grid.
pub fn fourier(k: &GridFunction, sign: i32) -> GridFunction {
    let out: Vec<f64> = k.grid.axes().iter().map(|a| dual_axis(a).lo).collect();
    fourier_onto(k, sign, &out)
}

/// As `fourier`, with the output axis `d` starting at `out_lo[d]` instead of the
/// centered position. Spacing is always the dual spacing.
pub fn fourier_onto(k: &GridFunction, sign: i32, out_lo: &[f64]) -> GridFunction {
    let sign = if sign < 0 { -1.0 } else { 1.0 };
    let grid = &k.grid;
    let d = grid.ndim();
    let mut values = k.values.clone();
    let mut out_axes = Vec::with_capacity(d);
    let mut planner = FftPlanner::<f64>::new();
    let counts = grid.counts();
    for ax in 0..d {
        let a = grid.axes()[ax];
        let n = a.count;
        let h = a.step();
        let dxi = 2.0 * PI / (n as f64 * h);
        let olo = out_lo[ax];
        let oa = Axis::new(n, olo, olo + dxi * (n as f64 - 1.0));
        out_axes.push(oa);
        // x_j = lo + j h, xi_m = olo + m dxi
        // e^{s i x_j xi_m} = e^{s i lo xi_m} e^{s i j h olo} e^{s i 2 pi j m / n}
        let fft = if sign < 0.0 { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
        let pre: Vec<C64> = (0..n).map(|j| C64::from_polar(1.0, sign * j as f64 * h * olo)).collect();
        let post: Vec<C64> = (0..n)
            .map(|m| C64::from_polar(h / (2.0 * PI).sqrt(), sign * a.lo * (olo + m as f64 * dxi)))
            .collect();
        let stride: usize = counts[ax + 1..].iter().product();
        let outer: usize = counts[..ax].iter().product();
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for o in 0..outer {
            for s in 0..stride {
                let base = o * n * stride + s;
                for j in 0..n {
                    buf[j] = values[base + j * stride] * pre[j];
                }
                fft.process(&mut buf);
                for m in 0..n {
                    values[base + m * stride] = buf[m] * post[m];
                }
            }
        }
    }
    let grid = Grid::with_cap(out_axes, usize::MAX).expect("dual grid is valid");
    GridFunction { grid, values }
}

/// Flat-top window: one on the inner `frac` of the half-width, then a
/// smooth step (all derivatives continuous) down to zero at the ends.
pub fn taper(a: &Axis, frac: f64) -> Vec<f64> {
    let c = 0.5 * (a.lo + a.hi);
    let half = 0.5 * (a.hi - a.lo);
    let inner = frac * half;
    let g = |s: f64| if s <= 0.0 { 0.0 } else { (-1.0 / s).exp() };
    a.points()
        .iter()
        .map(|&x| {
            let r = (x - c).abs();
            if r <= inner {
                1.0
            } else {
                let s = ((r - inner) / (half - inner)).min(1.0);
                g(1.0 - s) / (g(1.0 - s) + g(s))
            }
        })
        .collect()
}
