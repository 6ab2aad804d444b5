//! Residual operators of the mDP/DP family and grid scans over them.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Bindings, EvalError, Expr};

/// Default relative tolerance for residual scans.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default distance kept from singular points, in ξ units.
pub const EXCLUSION_RADIUS: f64 = 0.1;

/// Convection term of the equation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    /// `(b+1) u^2 u_x`
    Mdp,
    /// `(b+1) u u_x`
    Dp,
}

impl Equation {
    fn convection_power(self) -> i64 {
        match self {
            Equation::Mdp => 2,
            Equation::Dp => 1,
        }
    }
}

/// An equation of the family together with its parameter `b`, which may be
/// a number or a symbol bound at evaluation time.
#[derive(Clone, Debug)]
pub struct EquationVariant {
    pub equation: Equation,
    pub b: Expr,
}

impl EquationVariant {
    pub fn mdp(b: impl Into<Expr>) -> Self {
        Self {
            equation: Equation::Mdp,
            b: b.into(),
        }
    }

    pub fn dp(b: impl Into<Expr>) -> Self {
        Self {
            equation: Equation::Dp,
            b: b.into(),
        }
    }
}

/// A residual kept as its individual signed terms, so scans can normalize by
/// the largest term.
#[derive(Clone, Debug)]
pub struct Residual {
    pub terms: Vec<(&'static str, Expr)>,
}

impl Residual {
    pub fn total(&self) -> Expr {
        Expr::sum(self.terms.iter().map(|(_, t)| t.clone()))
    }

    /// Residual value and the largest single-term magnitude at a point.
    pub fn eval(&self, env: &Bindings) -> Result<(f64, f64), EvalError> {
        let mut sum = 0.0;
        let mut largest: f64 = 0.0;
        for (_, t) in &self.terms {
            let v = t.eval(env)?;
            sum += v;
            largest = largest.max(v.abs());
        }
        Ok((sum, largest))
    }

    pub fn substitute(&self, symbol: &str, replacement: &Expr) -> Residual {
        Residual {
            terms: self
                .terms
                .iter()
                .map(|(n, t)| (*n, t.substitute(symbol, replacement)))
                .collect(),
        }
    }

    pub fn simplify(&self) -> Residual {
        Residual {
            terms: self.terms.iter().map(|(n, t)| (*n, t.simplify())).collect(),
        }
    }
}

/// `u_t - u_xxt + (b+1) u^p u_x - b u_x u_xx - u u_xxx` for `u(x, t)`, with
/// `p = 2` (mDP) or `p = 1` (DP).
pub fn pde_residual(u: &Expr, variant: &EquationVariant) -> Residual {
    let b = &variant.b;
    let ux = u.diff("x");
    let uxx = ux.diff("x");
    let uxxx = uxx.diff("x");
    let ut = u.diff("t");
    let uxxt = uxx.diff("t");
    let p = variant.equation.convection_power();
    Residual {
        terms: vec![
            ("u_t", ut),
            ("-u_xxt", -uxxt),
            ("(b+1)u^p u_x", (b + Expr::one()) * u.powi(p) * &ux),
            ("-b u_x u_xx", -(b * &ux * &uxx)),
            ("-u u_xxx", -(u * &uxxx)),
        ],
    }
}

/// Traveling-wave reduction for `u = U(ξ)`, `ξ = x + λt`:
/// `(b+1) U' U^p - U''' U - λ U''' + λ U' - b U' U''`.
pub fn ode_residual(profile: &Expr, lambda: &Expr, variant: &EquationVariant) -> Residual {
    let b = &variant.b;
    let d1 = profile.diff("xi");
    let d2 = d1.diff("xi");
    let d3 = d2.diff("xi");
    let p = variant.equation.convection_power();
    Residual {
        terms: vec![
            ("(b+1)U' U^p", (b + Expr::one()) * &d1 * profile.powi(p)),
            ("-U''' U", -(&d3 * profile)),
            ("-λU'''", -(lambda * &d3)),
            ("λU'", lambda * &d1),
            ("-b U' U''", -(b * &d1 * &d2)),
        ],
    }
}

/// Outcome of a residual scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_abs_residual: f64,
    pub points_evaluated: usize,
    pub points_excluded: usize,
    pub tolerance: f64,
    /// Largest single-term magnitude seen on the grid.
    pub scale: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(max_abs: f64, evaluated: usize, excluded: usize, tolerance: f64, scale: f64) -> Self {
        Self {
            max_abs_residual: max_abs,
            points_evaluated: evaluated,
            points_excluded: excluded,
            tolerance,
            scale,
            pass: max_abs <= tolerance * (1.0 + scale),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResidualError {
    #[error("scan needs at least 16 points and a finite window")]
    BadGrid,
    #[error("every grid point lies within the exclusion radius of a singular point")]
    AllExcluded,
    #[error("residual evaluation failed at {at}: {source}")]
    Evaluation { at: f64, source: EvalError },
}

/// Uniform grid over a scan variable with singular-point exclusion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanGrid {
    pub window: (f64, f64),
    pub n: usize,
    pub exclusions: Vec<f64>,
    pub exclusion_radius: f64,
}

impl ScanGrid {
    pub fn new(window: (f64, f64), n: usize) -> Self {
        Self {
            window,
            n,
            exclusions: Vec::new(),
            exclusion_radius: EXCLUSION_RADIUS,
        }
    }

    pub fn excluding(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.exclusions.extend(points);
        self
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let (a, b) = self.window;
        let step = (b - a) / (self.n - 1) as f64;
        (0..self.n).map(move |i| a + step * i as f64)
    }

    fn excluded(&self, s: f64) -> bool {
        self.exclusions
            .iter()
            .any(|p| (s - p).abs() < self.exclusion_radius)
    }
}

/// Evaluate `residual` over `grid`. `point` maps a grid coordinate to the
/// full set of bindings.
pub fn scan_with(
    residual: &Residual,
    grid: &ScanGrid,
    tol: f64,
    point: impl Fn(f64) -> Bindings,
) -> Result<ResidualReport, ResidualError> {
    let (a, b) = grid.window;
    if grid.n < 16 || !a.is_finite() || !b.is_finite() || a >= b {
        return Err(ResidualError::BadGrid);
    }
    let mut max_abs: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let mut evaluated = 0;
    let mut excluded = 0;
    for s in grid.points() {
        if grid.excluded(s) {
            excluded += 1;
            continue;
        }
        let (r, largest) = residual
            .eval(&point(s))
            .map_err(|source| ResidualError::Evaluation { at: s, source })?;
        max_abs = max_abs.max(r.abs());
        scale = scale.max(largest);
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(ResidualError::AllExcluded);
    }
    Ok(ResidualReport::new(max_abs, evaluated, excluded, tol, scale))
}

/// Scan with `var` set to each grid coordinate on top of `env`.
pub fn scan(
    residual: &Residual,
    env: &Bindings,
    var: &str,
    grid: &ScanGrid,
    tol: f64,
) -> Result<ResidualReport, ResidualError> {
    scan_with(residual, grid, tol, |s| env.clone().with(var, s))
}

/// Scan a PDE residual in `(x, t)` along the traveling coordinate: at each
/// grid value `ξ` the residual is evaluated at `t = t_sample`,
/// `x = ξ - λ t_sample`.
pub fn scan_traveling(
    residual: &Residual,
    env: &Bindings,
    speed: f64,
    t_sample: f64,
    grid: &ScanGrid,
    tol: f64,
) -> Result<ResidualReport, ResidualError> {
    scan_with(residual, grid, tol, |xi| {
        env.clone()
            .with("t", t_sample)
            .with("x", xi - speed * t_sample)
    })
}
