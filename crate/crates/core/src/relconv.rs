//! Relative convolutions: `K = (2 pi)^{-N/2} int khat(x) exp(i sum x_j X_j) dx`.
//!
//! The quadrature is trapezoidal on the kernel grid. Flows are never formed on
//! the full space when the frame has structure to exploit: scalar operators
//! become phases, central operators are diagonalized jointly, and the rest is
//! split into mutually commuting blocks whose flows are contracted one block
//! at a time.

use crate::bch::{bch_step2, BchSeries};
use crate::error::{arg, Error, Result};
use crate::grid::{fourier, fourier_onto, Axis, Grid, GridFunction};
use crate::lie::{Ideal, LieAlgebra};
use crate::linop::{exp_i_hermitian, hermitian_eig, CMat, LinOp};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    /// Boundary magnitude, relative to the peak, above which the kernel is
    /// reported as truncated.
    pub decay_tol: f64,
    /// Relative tolerance for deciding that two frame operators commute.
    pub commute_tol: f64,
    /// Quadrature nodes whose weight is below this fraction of the largest
    /// weight are skipped.
    pub drop_tol: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { decay_tol: 1e-10, commute_tol: 1e-9, drop_tol: 1e-17 }
    }
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub op: LinOp,
    /// Largest kernel magnitude on the grid boundary relative to its peak.
    pub boundary_ratio: f64,
    pub truncated: bool,
}

/// Assemble from the kernel `k`; its transform supplies the flow weights.
pub fn assemble(ops: &[LinOp], k: &GridFunction, quad: &Quadrature) -> Result<Assembly> {
    let ratio = boundary_ratio(k);
    let mut a = assemble_hat(ops, &fourier(k, -1), quad)?;
    a.boundary_ratio = a.boundary_ratio.max(ratio);
    a.truncated = a.boundary_ratio > quad.decay_tol;
    Ok(a)
}

/// Assemble directly from samples of `khat` at the flow parameters.
pub fn assemble_hat(ops: &[LinOp], khat: &GridFunction, quad: &Quadrature) -> Result<Assembly> {
    let nops = ops.len();
    if nops == 0 {
        return arg("empty frame");
    }
    if khat.grid.ndim() != nops {
        return arg(format!("kernel on a {}-dimensional grid for {nops} operators", khat.grid.ndim()));
    }
    let n = ops[0].dim();
    if ops.iter().any(|o| o.dim() != n) {
        return arg("frame operators of different sizes");
    }
    let ratio = boundary_ratio(khat);
    let m = Plan::new(ops, quad)?.run(khat, quad.drop_tol);
    Ok(Assembly { op: LinOp::new(m)?, boundary_ratio: ratio, truncated: ratio > quad.decay_tol })
}

fn boundary_ratio(k: &GridFunction) -> f64 {
    let peak = k.max_abs();
    if peak == 0.0 {
        0.0
    } else {
        k.boundary_max() / peak
    }
}

/// Reference implementation: one full flow per kernel point.
pub fn assemble_direct(ops: &[LinOp], khat: &GridFunction) -> Result<LinOp> {
    if khat.grid.ndim() != ops.len() {
        return arg("kernel dimension does not match the frame");
    }
    let n = ops[0].dim();
    let w = khat.grid.weights();
    let norm = (2.0 * PI).powf(-(ops.len() as f64) / 2.0);
    let mut acc = CMat::zeros(n, n);
    for (i, v) in khat.values.iter().enumerate() {
        if *v == ZERO {
            continue;
        }
        let x = khat.grid.point(i);
        let u = crate::linop::flow(ops, &x)?;
        acc += u.matrix() * (v * w[i] * norm);
    }
    LinOp::new(acc)
}

enum Role {
    Scalar(f64),
    Central,
    Block(usize),
}

struct Plan<'a> {
    ops: &'a [LinOp],
    roles: Vec<Role>,
    nblocks: usize,
}

fn probe_vectors(n: usize) -> Vec<nalgebra::DVector<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..2)
        .map(|_| nalgebra::DVector::from_fn(n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect()
}

fn commutes(a: &CMat, b: &CMat, probes: &[nalgebra::DVector<C64>], tol: f64) -> bool {
    probes.iter().all(|v| {
        let ab = a * (b * v);
        let ba = b * (a * v);
        let scale = (a * v).norm().max(1e-300) * b.norm().max(1e-300) + ab.norm();
        (ab - ba).norm() <= tol * scale
    })
}

fn scalar_of(a: &CMat) -> Option<f64> {
    let n = a.nrows();
    let c = a[(0, 0)];
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    for j in 0..n {
        for i in 0..n {
            let want = if i == j { c } else { ZERO };
            if (a[(i, j)] - want).norm() > 1e-12 * scale {
                return None;
            }
        }
    }
    if c.im.abs() > 1e-12 * scale {
        return None;
    }
    Some(c.re)
}

impl<'a> Plan<'a> {
    fn new(ops: &'a [LinOp], quad: &Quadrature) -> Result<Self> {
        let n = ops[0].dim();
        let probes = probe_vectors(n);
        let nops = ops.len();
        let scalar: Vec<Option<f64>> = ops.iter().map(|o| scalar_of(o.matrix())).collect();
        let rest: Vec<usize> = (0..nops).filter(|&j| scalar[j].is_none()).collect();
        let mut adj = vec![vec![false; nops]; nops];
        for (a, &i) in rest.iter().enumerate() {
            for &j in &rest[a + 1..] {
                let c = !commutes(ops[i].matrix(), ops[j].matrix(), &probes, quad.commute_tol);
                adj[i][j] = c;
                adj[j][i] = c;
            }
        }
        let mut roles: Vec<Role> = Vec::with_capacity(nops);
        let mut comp = vec![usize::MAX; nops];
        let mut nblocks = 0;
        for j in 0..nops {
            if let Some(s) = scalar[j] {
                roles.push(Role::Scalar(s));
                continue;
            }
            if !rest.iter().any(|&i| adj[j][i]) {
                roles.push(Role::Central);
                continue;
            }
            if comp[j] == usize::MAX {
                let mut stack = vec![j];
                comp[j] = nblocks;
                while let Some(v) = stack.pop() {
                    for &u in &rest {
                        if adj[v][u] && comp[u] == usize::MAX {
                            comp[u] = nblocks;
                            stack.push(u);
                        }
                    }
                }
                nblocks += 1;
            }
            roles.push(Role::Block(comp[j]));
        }
        Ok(Plan { ops, roles, nblocks })
    }

    fn run(&self, khat: &GridFunction, drop_tol: f64) -> CMat {
        let n = self.ops[0].dim();
        let grid = &khat.grid;
        let nops = self.ops.len();
        let norm = (2.0 * PI).powf(-(nops as f64) / 2.0);
        let w = grid.weights();
        let mut coef: Vec<C64> = khat.values.iter().zip(&w).map(|(v, w)| v * (w * norm)).collect();
        let peak = coef.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for c in coef.iter_mut() {
            if c.norm() <= drop_tol * peak {
                *c = ZERO;
            }
        }

        let central: Vec<usize> = (0..nops).filter(|&j| matches!(self.roles[j], Role::Central)).collect();
        // block order: outer first, the block with the most kernel points last
        let counts = grid.counts();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); self.nblocks];
        for j in 0..nops {
            if let Role::Block(b) = self.roles[j] {
                blocks[b].push(j);
            }
        }
        let size = |b: &Vec<usize>| b.iter().map(|&j| counts[j]).product::<usize>();
        blocks.sort_by_key(size);

        // reduce scalar axes
        let scalars: Vec<(usize, f64)> = (0..nops)
            .filter_map(|j| if let Role::Scalar(s) = self.roles[j] { Some((j, s)) } else { None })
            .collect();
        let keep: Vec<usize> = central.iter().copied().chain(blocks.iter().flatten().copied()).collect();
        let reduced = reduce_axes(grid, &coef, &scalars, &keep);

        if central.is_empty() {
            let axes: Vec<Axis> = keep.iter().map(|&j| grid.axes()[j]).collect();
            let mats: Vec<Vec<CMat>> =
                blocks.iter().map(|b| b.iter().map(|&j| self.ops[j].matrix().clone()).collect()).collect();
            return contract(&axes, &reduced, &blocks.iter().map(|b| b.len()).collect::<Vec<_>>(), &mats, n);
        }

        let Some((vecs, lambdas)) = self.joint_diagonalize(&central) else {
            // central operators that cannot be diagonalized jointly: treat them as a block
            let mut all_blocks = blocks.clone();
            all_blocks.insert(0, central.clone());
            let keep2: Vec<usize> = all_blocks.iter().flatten().copied().collect();
            let reduced = reduce_axes(grid, &coef, &scalars, &keep2);
            let axes: Vec<Axis> = keep2.iter().map(|&j| grid.axes()[j]).collect();
            let mats: Vec<Vec<CMat>> =
                all_blocks.iter().map(|b| b.iter().map(|&j| self.ops[j].matrix().clone()).collect()).collect();
            return contract(&axes, &reduced, &all_blocks.iter().map(|b| b.len()).collect::<Vec<_>>(), &mats, n);
        };
        let clusters = cluster(&lambdas, central.len(), n);
        let nc = central.len();
        let caxes: Vec<Axis> = central.iter().map(|&j| grid.axes()[j]).collect();
        let baxes: Vec<Axis> = blocks.iter().flatten().map(|&j| grid.axes()[j]).collect();
        let inner_len: usize = baxes.iter().map(|a| a.count).product();
        let cpts: Vec<Vec<f64>> = {
            let cg = Grid::with_cap(caxes.clone(), usize::MAX).expect("valid axes");
            cg.points()
        };
        let block_sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let mut out = CMat::zeros(n, n);
        for members in &clusters {
            let p0 = members[0];
            let lam: Vec<f64> = (0..nc).map(|c| lambdas[p0 * nc + c]).collect();
            // phase-reduce the central axes
            let mut r = vec![ZERO; inner_len];
            for (ci, x) in cpts.iter().enumerate() {
                let ph: f64 = x.iter().zip(&lam).map(|(a, b)| a * b).sum();
                let e = C64::from_polar(1.0, ph);
                let base = ci * inner_len;
                for (t, v) in r.iter_mut().zip(&reduced[base..base + inner_len]) {
                    *t += v * e;
                }
            }
            let vc = CMat::from_fn(n, members.len(), |i, j| vecs[(i, members[j])]);
            let vca = vc.adjoint();
            let mats: Vec<Vec<CMat>> = blocks
                .iter()
                .map(|b| b.iter().map(|&j| &vca * (self.ops[j].matrix() * &vc)).collect())
                .collect();
            let kc = contract(&baxes, &r, &block_sizes, &mats, members.len());
            out += &vc * kc * &vca;
        }
        out
    }

    /// Eigenbasis shared by the central operators and their eigenvalues,
    /// laid out `lambdas[p * nc + c]`.
    fn joint_diagonalize(&self, central: &[usize]) -> Option<(CMat, Vec<f64>)> {
        let n = self.ops[0].dim();
        let mut h = CMat::zeros(n, n);
        for (c, &j) in central.iter().enumerate() {
            let r = 1.0 / (c as f64 + std::f64::consts::SQRT_2);
            h += self.ops[j].matrix() * C64::new(r, 0.0);
        }
        let (_, v) = hermitian_eig(&h);
        let va = v.adjoint();
        let nc = central.len();
        let mut lambdas = vec![0.0; n * nc];
        for (c, &j) in central.iter().enumerate() {
            let a = self.ops[j].matrix();
            let d = &va * (a * &v);
            let scale = d.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
            for q in 0..n {
                for p in 0..n {
                    if p != q && d[(p, q)].norm() > 1e-8 * scale {
                        return None;
                    }
                }
                lambdas[q * nc + c] = d[(q, q)].re;
            }
        }
        Some((v, lambdas))
    }
}

/// Groups eigenvector indices whose central eigenvalues all agree.
fn cluster(lambdas: &[f64], nc: usize, n: usize) -> Vec<Vec<usize>> {
    let scale = lambdas.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
    let tol = 1e-9 * scale;
    let mut order: Vec<usize> = (0..n).collect();
    let key = |p: usize| &lambdas[p * nc..(p + 1) * nc];
    order.sort_by(|&a, &b| {
        for (x, y) in key(a).iter().zip(key(b)) {
            if (x - y).abs() > tol {
                return x.partial_cmp(y).unwrap();
            }
        }
        a.cmp(&b)
    });
    let mut out: Vec<Vec<usize>> = Vec::new();
    for p in order {
        let join = out.last().is_some_and(|c| {
            key(c[0]).iter().zip(key(p)).all(|(x, y)| (x - y).abs() <= tol)
        });
        if join {
            out.last_mut().unwrap().push(p);
        } else {
            out.push(vec![p]);
        }
    }
    out
}

/// Sums out the `scalars` axes with phases `e^{i s x}` and returns the array
/// over the `keep` axes, laid out row-major in `keep` order.
fn reduce_axes(grid: &Grid, coef: &[C64], scalars: &[(usize, f64)], keep: &[usize]) -> Vec<C64> {
    let counts = grid.counts();
    let len: usize = keep.iter().map(|&j| counts[j]).product();
    let mut out = vec![ZERO; len];
    for (f, &c) in coef.iter().enumerate() {
        if c == ZERO {
            continue;
        }
        let idx = grid.unravel(f);
        let mut ph = 0.0;
        for &(j, s) in scalars {
            ph += s * grid.axes()[j].point(idx[j]);
        }
        let mut t = 0;
        for &j in keep {
            t = t * counts[j] + idx[j];
        }
        out[t] += if ph == 0.0 { c } else { c * C64::from_polar(1.0, ph) };
    }
    out
}

/// `sum_x r(x) prod_b exp(i x_b . A_b)` over a product grid whose axes are
/// grouped by block, outer block first.
fn contract(axes: &[Axis], r: &[C64], block_sizes: &[usize], mats: &[Vec<CMat>], n: usize) -> CMat {
    if block_sizes.is_empty() {
        let s: C64 = r.iter().sum();
        return CMat::identity(n, n) * s;
    }
    let mut starts = vec![0];
    for &b in block_sizes {
        starts.push(starts.last().unwrap() + b);
    }
    let nb = block_sizes.len();
    let block_grid = |b: usize| -> Grid {
        Grid::with_cap(axes[starts[b]..starts[b + 1]].to_vec(), usize::MAX).expect("valid axes")
    };
    let inner = block_grid(nb - 1);
    let inner_len = inner.len();
    let flow_at = |b: usize, x: &[f64]| -> CMat {
        let mut h = CMat::zeros(n, n);
        for (a, &c) in mats[b].iter().zip(x) {
            if c != 0.0 {
                h += a * C64::new(c, 0.0);
            }
        }
        if x.iter().all(|&c| c == 0.0) {
            CMat::identity(n, n)
        } else {
            exp_i_hermitian(&h)
        }
    };
    if nb == 1 {
        let mut acc = CMat::zeros(n, n);
        for (i, &c) in r.iter().enumerate() {
            if c != ZERO {
                acc += flow_at(0, &inner.point(i)) * c;
            }
        }
        return acc;
    }
    // inner flows are shared by every outer point; keep them if they fit
    let cached: Option<Vec<CMat>> = if inner_len * n * n <= 1 << 24 {
        Some((0..inner_len).map(|i| flow_at(nb - 1, &inner.point(i))).collect())
    } else {
        None
    };
    let outer_grids: Vec<Grid> = (0..nb - 1).map(block_grid).collect();
    fn level(
        l: usize,
        offset: usize,
        slab: usize,
        r: &[C64],
        outer: &[Grid],
        inner: &Grid,
        cached: &Option<Vec<CMat>>,
        flow_at: &dyn Fn(usize, &[f64]) -> CMat,
        n: usize,
    ) -> Option<CMat> {
        let part = &r[offset..offset + slab];
        if part.iter().all(|c| *c == ZERO) {
            return None;
        }
        if l == outer.len() {
            let mut acc = CMat::zeros(n, n);
            for (i, &c) in part.iter().enumerate() {
                if c == ZERO {
                    continue;
                }
                match cached {
                    Some(fl) => acc += &fl[i] * c,
                    None => acc += flow_at(l, &inner.point(i)) * c,
                }
            }
            return Some(acc);
        }
        let g = &outer[l];
        let sub = slab / g.len();
        let mut acc: Option<CMat> = None;
        for i in 0..g.len() {
            if let Some(m) = level(l + 1, offset + i * sub, sub, r, outer, inner, cached, flow_at, n) {
                let u = flow_at(l, &g.point(i));
                let t = u * m;
                acc = Some(match acc {
                    Some(a) => a + t,
                    None => t,
                });
            }
        }
        acc
    }
    level(0, 0, r.len(), r, &outer_grids, &inner, &cached, &flow_at, n).unwrap_or_else(|| CMat::zeros(n, n))
}

/// `(k2 * k1)(x) = (2 pi)^{-N/2} int k2(y) k1(CH[-y, x]) dy` on the grid of `k1`.
pub fn compose_kernels(alg: &LieAlgebra, k2: &GridFunction, k1: &GridFunction, order: usize) -> Result<GridFunction> {
    let n = alg.dim();
    if k1.grid.ndim() != n || k2.grid.ndim() != n {
        return arg(format!("kernels must live on {n}-dimensional grids"));
    }
    if k1.grid != k2.grid {
        return arg("kernels on different grids");
    }
    let series = BchSeries::new(order)?;
    let step2 = matches!(alg.nilpotency_step(), Some(s) if s <= 2) && order >= 2;
    let grid = &k1.grid;
    let w = grid.weights();
    let norm = (2.0 * PI).powf(-(n as f64) / 2.0);
    let pts = grid.points();
    let ys: Vec<(Vec<f64>, C64)> = k2
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() > 0.0)
        .map(|(i, v)| (pts[i].iter().map(|a| -a).collect(), v * (w[i] * norm)))
        .collect();
    let values = pts
        .iter()
        .map(|x| {
            let mut acc = ZERO;
            for (my, c) in &ys {
                let z = if step2 { bch_step2(alg, my, x) } else { series.eval(alg, my, x) };
                let v = k1.sample(&z);
                if v != ZERO {
                    acc += c * v;
                }
            }
            acc
        })
        .collect();
    Ok(GridFunction { grid: grid.clone(), values })
}

/// Checks that the ideal lies in the span of the leading coordinates and
/// returns its dimension.
fn leading_ideal_dim(alg: &LieAlgebra, ker: &Ideal) -> Result<usize> {
    let m = ker.basis().len();
    if m > alg.dim() {
        return arg("ideal larger than the algebra");
    }
    for (b, v) in ker.basis().iter().enumerate() {
        if v.len() != alg.dim() {
            return arg("ideal vector of the wrong length");
        }
        let tail = v[m..].iter().map(|x| x.abs()).fold(0.0, f64::max);
        if tail > 1e-12 {
            return arg(format!("ideal vector {b} is not supported on the leading {m} coordinates"));
        }
    }
    // the leading coordinates must be spanned, not just contained
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for (b, v) in ker.basis().iter().enumerate() {
        for k in 0..m {
            mat[(k, b)] = v[k];
        }
    }
    if m > 0 && mat.rank(1e-10) < m {
        return arg("ideal basis is degenerate");
    }
    Ok(m)
}

/// Marginal of `khat` over the leading `m` axes, times `(2 pi)^{-m/2}`.
pub fn marginal_hat(khat: &GridFunction, m: usize) -> Result<GridFunction> {
    let d = khat.grid.ndim();
    if m >= d {
        return arg(format!("cannot integrate out {m} of {d} axes"));
    }
    if m == 0 {
        return Ok(khat.clone());
    }
    let lead = Grid::with_cap(khat.grid.axes()[..m].to_vec(), usize::MAX)?;
    let rest = Grid::with_cap(khat.grid.axes()[m..].to_vec(), usize::MAX)?;
    let w = lead.weights();
    let norm = (2.0 * PI).powf(-(m as f64) / 2.0);
    let rl = rest.len();
    let mut values = vec![ZERO; rl];
    for (a, wa) in w.iter().enumerate() {
        for (t, v) in values.iter_mut().zip(&khat.values[a * rl..(a + 1) * rl]) {
            *t += v * (wa * norm);
        }
    }
    Ok(GridFunction { grid: rest, values })
}

/// Kernel on the quotient frame whose transform is the marginal of `khat`
/// over the ideal directions.
pub fn effective_decompose(alg: &LieAlgebra, ker: &Ideal, k: &GridFunction) -> Result<GridFunction> {
    if k.grid.ndim() != alg.dim() {
        return arg("kernel dimension does not match the algebra");
    }
    let m = leading_ideal_dim(alg, ker)?;
    if m == 0 {
        return Ok(k.clone());
    }
    let kh = fourier(k, -1);
    let marg = marginal_hat(&kh, m)?;
    let lo: Vec<f64> = k.grid.axes()[m..].iter().map(|a| a.lo).collect();
    Ok(fourier_onto(&marg, 1, &lo))
}

/// As `effective_decompose`, for kernels already given on the flow side.
pub fn effective_decompose_hat(alg: &LieAlgebra, ker: &Ideal, khat: &GridFunction) -> Result<GridFunction> {
    if khat.grid.ndim() != alg.dim() {
        return arg("kernel dimension does not match the algebra");
    }
    let m = leading_ideal_dim(alg, ker)?;
    marginal_hat(khat, m)
}

/// `Psi k(x) = k(psi x) |det psi|`.
///
/// A diagonal `psi` is applied exactly by relabeling the grid (axis `j`
/// scaled by `1/psi_jj`); otherwise the kernel is resampled on its own grid.
pub fn push_automorphism(alg: &LieAlgebra, psi: &DMatrix<f64>, k: &GridFunction) -> Result<GridFunction> {
    let n = alg.dim();
    if psi.nrows() != n || psi.ncols() != n || k.grid.ndim() != n {
        return arg("dimension mismatch between map, algebra and kernel");
    }
    let (res, (i, j)) = alg.automorphism_residual(psi)?;
    if res > 1e-10 {
        return Err(Error::Validation(format!(
            "map does not preserve [{}, {}] (residual {res:e})",
            alg.names()[i],
            alg.names()[j]
        )));
    }
    let jac = psi.determinant().abs();
    if jac == 0.0 {
        return Err(Error::Validation("singular map".into()));
    }
    let diagonal = (0..n).all(|a| (0..n).all(|b| a == b || psi[(a, b)] == 0.0));
    if diagonal {
        let mut axes = Vec::with_capacity(n);
        let mut flip = vec![false; n];
        for (a, ax) in k.grid.axes().iter().enumerate() {
            let s = psi[(a, a)];
            if s > 0.0 {
                axes.push(Axis::new(ax.count, ax.lo / s, ax.hi / s));
            } else {
                flip[a] = true;
                axes.push(Axis::new(ax.count, ax.hi / s, ax.lo / s));
            }
        }
        let grid = Grid::with_cap(axes, usize::MAX)?;
        let counts = grid.counts();
        let values = (0..grid.len())
            .map(|f| {
                let mut idx = grid.unravel(f);
                for a in 0..n {
                    if flip[a] {
                        idx[a] = counts[a] - 1 - idx[a];
                    }
                }
                k.values[k.grid.ravel(&idx)] * jac
            })
            .collect();
        return Ok(GridFunction { grid, values });
    }
    let values = (0..k.grid.len())
        .map(|f| {
            let x = k.grid.point(f);
            let y: Vec<f64> = (0..n).map(|a| (0..n).map(|b| psi[(a, b)] * x[b]).sum()).collect();
            k.sample(&y) * jac
        })
        .collect();
    Ok(GridFunction { grid: k.grid.clone(), values })
}

/// `diag(s^2, s, ..., s)` on `heisenberg(n)`.
pub fn heisenberg_dilation(n: usize, s: f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n + 1, 2 * n + 1);
    m[(0, 0)] = s * s;
    for j in 1..=2 * n {
        m[(j, j)] = s;
    }
    m
}
