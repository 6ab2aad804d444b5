//! Method-of-lines integrator for the mDP equation on a periodic domain.
//!
//! The equation is advanced as `u_t = (1 − ∂xx)⁻¹ ∂x F` with the flux
//! `F = −(b+1)u³/3 + u u_xx + (b−1)u_x²/2`, so the discrete mass `dx Σ u`
//! is conserved up to roundoff by both spatial schemes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, FamilyInstance};
use crate::expr::{Bindings, EvalError, Expr};

pub const MIN_POINTS: usize = 64;
/// Any `|u|` above this aborts the run.
pub const BLOWUP_LIMIT: f64 = 1e6;
/// Largest allowed deviation of the exact solution from its far-field value
/// at the domain edges, at the start and end of a run.
pub const TAIL_TOL: f64 = 1e-5;
/// Families that are smooth on the real line and decay to a constant.
pub const ADMISSIBLE: [&str; 5] = ["u1", "u3", "u6", "u20", "u21"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("grid needs a power-of-two N >= {MIN_POINTS} and L > 0, got N = {n}, L = {l}")]
    BadGrid { n: usize, l: f64 },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("dt = {dt} exceeds the stability limit {limit}")]
    Cfl { dt: f64, limit: f64 },
    #[error("blow-up at t = {t}: max |u| = {max}")]
    BlowUp { t: f64, max: f64 },
    #[error("non-finite input")]
    NonFinite,
    #[error("family {0} is not smooth and decaying on the real line")]
    NotAdmissible(String),
    #[error("exact solution deviates by {deviation} from its far field at x = {x}, t = {t}; enlarge L")]
    Tail { x: f64, t: f64, deviation: f64 },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("exact solution at x = {x}, t = {t}: {source}")]
    Evaluation { x: f64, t: f64, source: EvalError },
}

/// `N` equispaced nodes `x_j = −L/2 + j dx` on a period of length `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub n: usize,
    pub l: f64,
}

impl Grid {
    pub fn new(n: usize, l: f64) -> Result<Self, SimError> {
        if n < MIN_POINTS || !n.is_power_of_two() || !(l > 0.0 && l.is_finite()) {
            return Err(SimError::BadGrid { n, l });
        }
        Ok(Self { n, l })
    }

    pub fn dx(&self) -> f64 {
        self.l / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -self.l / 2.0 + j as f64 * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Fourier collocation.
    Spectral,
    /// Fourth-order central differences with a cyclic pentadiagonal solve.
    Fd4,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Spectral => "spectral",
            Scheme::Fd4 => "fd4",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spectral" => Ok(Scheme::Spectral),
            "fd4" => Ok(Scheme::Fd4),
            other => Err(SimError::BadConfig(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub b: f64,
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    /// Steps between snapshots.
    pub output_every: usize,
    /// Reject time steps above [`cfl_limit`] before integrating.
    pub enforce_cfl: bool,
}

impl SimConfig {
    pub fn new(b: f64, dt: f64, t_end: f64, scheme: Scheme, output_every: usize) -> Result<Self, SimError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(SimError::BadConfig(format!("dt must be positive, got {dt}")));
        }
        if !(t_end >= 0.0 && t_end.is_finite()) {
            return Err(SimError::BadConfig(format!("T must be non-negative, got {t_end}")));
        }
        if !b.is_finite() {
            return Err(SimError::BadConfig(format!("b must be finite, got {b}")));
        }
        Ok(Self {
            b,
            dt,
            t_end,
            scheme,
            output_every: output_every.max(1),
            enforce_cfl: true,
        })
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// `dt ≤ 0.5 dx / (1 + max|u₀|)²`
pub fn cfl_limit(grid: &Grid, u0: &[f64]) -> f64 {
    let m = u0.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    0.5 * grid.dx() / (1.0 + m).powi(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub u: Vec<f64>,
}

impl SimState {
    /// `dx Σ u_j`, the trapezoid rule on a periodic grid.
    pub fn mass(&self, grid: &Grid) -> f64 {
        grid.dx() * self.u.iter().sum::<f64>()
    }
}

/// Banded LU without pivoting for a pentadiagonal matrix; entry `(r, c)`
/// lives at `rows[r][c + 2 − r]`.
#[derive(Clone, Debug)]
struct BandLu {
    rows: Vec<[f64; 5]>,
}

impl BandLu {
    fn factor(mut rows: Vec<[f64; 5]>) -> Self {
        let n = rows.len();
        for i in 0..n {
            let pivot = rows[i][2];
            for r in i + 1..(i + 3).min(n) {
                let l = rows[r][i + 2 - r] / pivot;
                rows[r][i + 2 - r] = l;
                for c in i + 1..(i + 3).min(n) {
                    rows[r][c + 2 - r] -= l * rows[i][c + 2 - i];
                }
            }
        }
        Self { rows }
    }

    fn solve(&self, f: &[f64]) -> Vec<f64> {
        let n = self.rows.len();
        let mut y = f.to_vec();
        for i in 0..n {
            for r in i + 1..(i + 3).min(n) {
                y[r] -= self.rows[r][i + 2 - r] * y[i];
            }
        }
        for i in (0..n).rev() {
            let s = (i + 1..(i + 3).min(n)).fold(y[i], |s, c| s - self.rows[i][c + 2 - i] * y[c]);
            y[i] = s / self.rows[i][2];
        }
        y
    }
}

/// Solver for a symmetric circulant pentadiagonal matrix with stencil
/// `(s2, s1, s0, s1, s2)`: banded LU of the non-cyclic part plus a rank-4
/// Woodbury correction for the corners.
#[derive(Clone, Debug)]
pub struct CyclicPentadiagonal {
    n: usize,
    s1: f64,
    s2: f64,
    band: BandLu,
    /// `B⁻¹ U`, one column per corner index.
    z: [Vec<f64>; 4],
    /// `(I + Vᵀ B⁻¹ U)⁻¹`
    capacitance_inv: [[f64; 4]; 4],
}

impl CyclicPentadiagonal {
    pub fn new(n: usize, s0: f64, s1: f64, s2: f64) -> Self {
        assert!(n >= 5, "cyclic pentadiagonal solve needs n >= 5");
        let rows = (0..n)
            .map(|r| {
                let mut row = [s2, s1, s0, s1, s2];
                for (k, v) in row.iter_mut().enumerate() {
                    let c = r as isize + k as isize - 2;
                    if c < 0 || c >= n as isize {
                        *v = 0.0;
                    }
                }
                row
            })
            .collect();
        let band = BandLu::factor(rows);
        let idx = Self::corner_indices(n);
        let z = idx.map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            band.solve(&e)
        });
        let mut cap = [[0.0; 4]; 4];
        for (p, row) in cap.iter_mut().enumerate() {
            for (q, v) in row.iter_mut().enumerate() {
                *v = Self::corner_row_dot(n, s1, s2, idx[p], &z[q]) + if p == q { 1.0 } else { 0.0 };
            }
        }
        Self {
            n,
            s1,
            s2,
            band,
            z,
            capacitance_inv: invert4(cap),
        }
    }

    fn corner_indices(n: usize) -> [usize; 4] {
        [0, 1, n - 2, n - 1]
    }

    /// Row `r` of the corner matrix (the wrap-around entries) dotted with `v`.
    fn corner_row_dot(n: usize, s1: f64, s2: f64, r: usize, v: &[f64]) -> f64 {
        match r {
            0 => s2 * v[n - 2] + s1 * v[n - 1],
            1 => s2 * v[n - 1],
            _ if r == n - 2 => s2 * v[0],
            _ if r == n - 1 => s1 * v[0] + s2 * v[1],
            _ => 0.0,
        }
    }

    pub fn solve(&self, f: &[f64]) -> Vec<f64> {
        let mut y = self.band.solve(f);
        let idx = Self::corner_indices(self.n);
        let vy = idx.map(|r| Self::corner_row_dot(self.n, self.s1, self.s2, r, &y));
        let w: [f64; 4] = std::array::from_fn(|p| (0..4).map(|q| self.capacitance_inv[p][q] * vy[q]).sum());
        for (zq, wq) in self.z.iter().zip(w) {
            for (yi, zi) in y.iter_mut().zip(zq) {
                *yi -= zi * wq;
            }
        }
        y
    }
}

fn invert4(m: [[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut a = m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for k in 0..4 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for r in 0..4 {
            if r != col {
                let f = a[r][col];
                for k in 0..4 {
                    a[r][k] -= f * a[col][k];
                    inv[r][k] -= f * inv[col][k];
                }
            }
        }
    }
    inv
}

enum Operators {
    Spectral {
        forward: Arc<dyn Fft<f64>>,
        inverse: Arc<dyn Fft<f64>>,
        k: Vec<f64>,
    },
    Fd4 {
        helmholtz: Box<CyclicPentadiagonal>,
    },
}

/// Spatial operators for one grid and scheme.
pub struct Solver {
    pub grid: Grid,
    pub scheme: Scheme,
    ops: Operators,
}

impl fmt::Debug for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solver")
            .field("grid", &self.grid)
            .field("scheme", &self.scheme)
            .finish()
    }
}

impl Solver {
    pub fn new(grid: Grid, scheme: Scheme) -> Self {
        let n = grid.n;
        let ops = match scheme {
            Scheme::Spectral => {
                let mut planner = FftPlanner::new();
                let k0 = 2.0 * PI / grid.l;
                let k = (0..n)
                    .map(|j| {
                        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                        k0 * m
                    })
                    .collect();
                Operators::Spectral {
                    forward: planner.plan_fft_forward(n),
                    inverse: planner.plan_fft_inverse(n),
                    k,
                }
            }
            Scheme::Fd4 => {
                let h2 = 12.0 * grid.dx() * grid.dx();
                // 1 − D2 with D2 = (−1, 16, −30, 16, −1)/(12 dx²)
                Operators::Fd4 {
                    helmholtz: Box::new(CyclicPentadiagonal::new(n, 1.0 + 30.0 / h2, -16.0 / h2, 1.0 / h2)),
                }
            }
        };
        Self { grid, scheme, ops }
    }

    fn spectral_apply(&self, u: &[f64], symbol: impl Fn(usize, f64) -> Complex<f64>) -> Vec<f64> {
        let Operators::Spectral { forward, inverse, k } = &self.ops else {
            unreachable!("spectral operator on a finite-difference solver");
        };
        let n = u.len();
        let mut buf: Vec<Complex<f64>> = u.iter().map(|&v| Complex::new(v, 0.0)).collect();
        forward.process(&mut buf);
        for (j, c) in buf.iter_mut().enumerate() {
            *c *= symbol(j, k[j]);
        }
        inverse.process(&mut buf);
        buf.iter().map(|c| c.re / n as f64).collect()
    }

    /// `m`-th derivative.
    pub fn derivative(&self, u: &[f64], m: u32) -> Vec<f64> {
        match &self.ops {
            Operators::Spectral { .. } => {
                let nyquist = self.grid.n / 2;
                self.spectral_apply(u, |j, k| {
                    if m % 2 == 1 && j == nyquist {
                        Complex::new(0.0, 0.0)
                    } else {
                        Complex::new(0.0, k).powu(m)
                    }
                })
            }
            Operators::Fd4 { .. } => self.derivative_fd4(u, m),
        }
    }

    fn derivative_fd4(&self, u: &[f64], m: u32) -> Vec<f64> {
        let dx = self.grid.dx();
        let mut out = u.to_vec();
        let mut left = m;
        while left >= 2 {
            out = fd4_second(&out, dx);
            left -= 2;
        }
        if left == 1 {
            out = fd4_first(&out, dx);
        }
        out
    }

    /// `w` with `(1 − ∂xx) w = f` in the scheme's discrete sense.
    pub fn helmholtz_solve(&self, f: &[f64]) -> Vec<f64> {
        match &self.ops {
            Operators::Spectral { .. } => self.spectral_apply(f, |_, k| Complex::new(1.0 / (1.0 + k * k), 0.0)),
            Operators::Fd4 { helmholtz } => helmholtz.solve(f),
        }
    }

    /// `∂x(−(b+1)u³/3 + u u_xx + (b−1)u_x²/2)`, the right-hand side before
    /// the Helmholtz inversion.
    pub fn flux_divergence(&self, u: &[f64], b: f64) -> Vec<f64> {
        let ux = self.derivative(u, 1);
        let uxx = self.derivative(u, 2);
        let flux: Vec<f64> = u
            .iter()
            .zip(&ux)
            .zip(&uxx)
            .map(|((&u, &ux), &uxx)| -(b + 1.0) * u * u * u / 3.0 + u * uxx + (b - 1.0) * ux * ux / 2.0)
            .collect();
        self.derivative(&flux, 1)
    }

    /// `u_t` for the mDP equation.
    pub fn rhs(&self, u: &[f64], b: f64) -> Result<Vec<f64>, SimError> {
        if u.iter().any(|v| !v.is_finite()) {
            return Err(SimError::NonFinite);
        }
        Ok(self.helmholtz_solve(&self.flux_divergence(u, b)))
    }

    /// One classical Runge–Kutta step of size `dt` (negative steps run
    /// backwards).
    pub fn step_rk4(&self, state: &SimState, b: f64, dt: f64) -> Result<SimState, SimError> {
        let u = &state.u;
        let axpy = |a: f64, k: &[f64]| -> Vec<f64> { u.iter().zip(k).map(|(u, k)| u + a * k).collect() };
        let k1 = self.rhs(u, b)?;
        let k2 = self.rhs(&axpy(dt / 2.0, &k1), b)?;
        let k3 = self.rhs(&axpy(dt / 2.0, &k2), b)?;
        let k4 = self.rhs(&axpy(dt, &k3), b)?;
        let next: Vec<f64> = (0..u.len())
            .map(|j| u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
            .collect();
        let t = state.t + dt;
        let max = next.iter().fold(0.0_f64, |m, v| if v.is_finite() { m.max(v.abs()) } else { f64::INFINITY });
        if max > BLOWUP_LIMIT {
            return Err(SimError::BlowUp { t, max });
        }
        Ok(SimState { t, u: next })
    }

    /// Take `steps` steps of size `dt`.
    pub fn integrate(&self, state: &SimState, b: f64, dt: f64, steps: usize) -> Result<SimState, SimError> {
        (0..steps).try_fold(state.clone(), |s, _| self.step_rk4(&s, b, dt))
    }
}

fn fd4_first(u: &[f64], dx: f64) -> Vec<f64> {
    let n = u.len();
    (0..n)
        .map(|j| {
            let at = |o: isize| u[(j as isize + o).rem_euclid(n as isize) as usize];
            (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * dx)
        })
        .collect()
}

fn fd4_second(u: &[f64], dx: f64) -> Vec<f64> {
    let n = u.len();
    (0..n)
        .map(|j| {
            let at = |o: isize| u[(j as isize + o).rem_euclid(n as isize) as usize];
            (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * dx * dx)
        })
        .collect()
}

/// Numerical and exact solution at one output time.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
    pub exact: Vec<f64>,
}

/// Summary of a manufactured-solution run. Speeds are signed in the
/// `ξ = x + λt` convention, so a wave moving right has negative speed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub family: String,
    pub b: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub dt: f64,
    #[serde(rename = "T")]
    pub t_end: f64,
    pub scheme: Scheme,
    pub steps: usize,
    pub linf_error: f64,
    pub mass_drift: f64,
    pub measured_speed: f64,
    pub expected_speed: f64,
}

/// Exact solution sampled on the grid at time `t`.
pub fn exact_on_grid(u: &Expr, grid: &Grid, t: f64) -> Result<Vec<f64>, SimError> {
    grid.nodes()
        .into_iter()
        .map(|x| {
            u.eval(&Bindings::from_pairs([("x", x), ("t", t)]))
                .map_err(|source| SimError::Evaluation { x, t, source })
        })
        .collect()
}

fn check_tails(u: &Expr, grid: &Grid, t: f64) -> Result<(), SimError> {
    let far = grid.l;
    for (edge, beyond) in [(-grid.l / 2.0, -grid.l / 2.0 - far), (grid.l / 2.0, grid.l / 2.0 + far)] {
        let at = |x: f64| {
            u.eval(&Bindings::from_pairs([("x", x), ("t", t)]))
                .map_err(|source| SimError::Evaluation { x, t, source })
        };
        let deviation = (at(edge)? - at(beyond)?).abs();
        if deviation > TAIL_TOL {
            return Err(SimError::Tail { x: edge, t, deviation });
        }
    }
    Ok(())
}

/// Location of the extremum of `|u − background|`, refined by a 3-point
/// quadratic fit.
pub fn extremum_location(u: &[f64], grid: &Grid, background: f64) -> f64 {
    let n = u.len();
    let j = (0..n)
        .max_by(|&a, &b| (u[a] - background).abs().total_cmp(&(u[b] - background).abs()))
        .unwrap_or(0);
    let (l, m, r) = (u[(j + n - 1) % n], u[j], u[(j + 1) % n]);
    let denom = l - 2.0 * m + r;
    let offset = if denom.abs() > 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
    grid.x(j) + offset.clamp(-1.0, 1.0) * grid.dx()
}

/// Least-squares slope of the unwrapped extremum track, negated into the
/// `ξ = x + λt` speed convention.
pub fn measured_speed(track: &[(f64, f64)], period: f64) -> f64 {
    if track.len() < 2 {
        return 0.0;
    }
    let mut unwrapped = Vec::with_capacity(track.len());
    let mut prev = track[0].1;
    let mut shift = 0.0;
    for &(t, x) in track {
        let mut y = x + shift;
        while y - prev > period / 2.0 {
            y -= period;
            shift -= period;
        }
        while prev - y > period / 2.0 {
            y += period;
            shift += period;
        }
        unwrapped.push((t, y));
        prev = y;
    }
    let n = unwrapped.len() as f64;
    let (st, sx) = unwrapped.iter().fold((0.0, 0.0), |(a, b), (t, x)| (a + t, b + x));
    let (mt, mx) = (st / n, sx / n);
    let (num, den) = unwrapped
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, x)| (a + (t - mt) * (x - mx), b + (t - mt).powi(2)));
    -num / den
}

/// Integrate a catalog solution and compare with the exact one.
pub fn run(inst: &FamilyInstance, cfg: &SimConfig, grid: &Grid) -> Result<(SimReport, Vec<Snapshot>), SimError> {
    if !ADMISSIBLE.contains(&inst.id.as_str()) {
        return Err(SimError::NotAdmissible(inst.id.clone()));
    }
    let exact = catalog::build(inst)?;
    let expected_speed = catalog::wave_speed(inst)?;
    let reach = grid.l + expected_speed.abs() * cfg.t_end;
    if !catalog::singular_points(inst, (-reach, reach))?.is_empty() {
        return Err(SimError::NotAdmissible(inst.id.clone()));
    }
    check_tails(&exact, grid, 0.0)?;
    check_tails(&exact, grid, cfg.t_end)?;

    let u0 = exact_on_grid(&exact, grid, 0.0)?;
    let limit = cfl_limit(grid, &u0);
    if cfg.enforce_cfl && cfg.dt > limit {
        return Err(SimError::Cfl { dt: cfg.dt, limit });
    }
    let background = exact
        .eval(&Bindings::from_pairs([("x", 2.0 * grid.l), ("t", 0.0)]))
        .map_err(|source| SimError::Evaluation { x: 2.0 * grid.l, t: 0.0, source })?;

    let solver = Solver::new(*grid, cfg.scheme);
    let steps = cfg.steps();
    let mut state = SimState { t: 0.0, u: u0.clone() };
    let mut snapshots = vec![Snapshot {
        t: 0.0,
        u: u0.clone(),
        exact: u0.clone(),
    }];
    let mut track = vec![(0.0, extremum_location(&u0, grid, background))];
    for step in 1..=steps {
        state = solver.step_rk4(&state, cfg.b, cfg.dt)?;
        state.t = step as f64 * cfg.dt;
        if step % cfg.output_every == 0 || step == steps {
            track.push((state.t, extremum_location(&state.u, grid, background)));
            snapshots.push(Snapshot {
                t: state.t,
                u: state.u.clone(),
                exact: exact_on_grid(&exact, grid, state.t)?,
            });
        }
    }

    let last = snapshots.last().expect("initial snapshot present");
    let linf_error = last.u.iter().zip(&last.exact).fold(0.0_f64, |m, (a, e)| m.max((a - e).abs()));
    let m0 = SimState { t: 0.0, u: u0.clone() }.mass(grid);
    let scale = grid.dx() * u0.iter().map(|v| v.abs()).sum::<f64>();
    let mass_drift = (state.mass(grid) - m0).abs() / scale.max(f64::MIN_POSITIVE);

    let report = SimReport {
        family: inst.id.clone(),
        b: cfg.b,
        n: grid.n,
        l: grid.l,
        dt: cfg.dt,
        t_end: cfg.t_end,
        scheme: cfg.scheme,
        steps,
        linf_error,
        mass_drift,
        measured_speed: measured_speed(&track, grid.l),
        expected_speed,
    };
    Ok((report, snapshots))
}

/// `log2(e_coarse / e_fine)` for a grid refinement by two.
pub fn observed_order(e_coarse: f64, e_fine: f64) -> f64 {
    (e_coarse / e_fine).log2()
}

/// Snapshots as CSV with header `t,x,u_numeric,u_exact,error`.
pub fn snapshots_csv(snapshots: &[Snapshot], grid: &Grid) -> String {
    let mut out = String::from("t,x,u_numeric,u_exact,error\n");
    for s in snapshots {
        for (j, (u, e)) in s.u.iter().zip(&s.exact).enumerate() {
            out.push_str(&format!("{:?},{:?},{:?},{:?},{:?}\n", s.t, grid.x(j), u, e, u - e));
        }
    }
    out
}
