//! Registry of the 23 closed-form solution families `u1`–`u23`.
//!
//! Every profile is stored in the traveling coordinate `xi` together with its
//! wave speed, so that `u(x, t) = U(x + λt + δ)`. The method-specific
//! parameters each family was constructed from are kept alongside, which
//! lets the ansatz module substitute them into the regenerated systems.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{parse, Bindings, EvalError, Expr};
use crate::residual::{
    pde_residual, scan_traveling, Equation, EquationVariant, Residual, ResidualError,
    ResidualReport, ScanGrid,
};
use crate::zeros::zeros_in;

/// Values of `b` used when sampling instances.
pub const SAMPLE_B: [f64; 4] = [0.0, 0.5, 1.0, 3.0];
/// Margin by which sampled parameters satisfy every constraint.
pub const SAMPLE_MARGIN: f64 = 1e-2;
/// Margin for strict constraints on user-supplied parameters.
pub const STRICT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} needs parameter `{name}`")]
    MissingParameter { family: String, name: String },
    #[error("family {family} has no parameter `{name}`")]
    UnknownParameter { family: String, name: String },
    #[error("family {family}: constraint `{constraint}` violated (value {value})")]
    Validity {
        family: String,
        constraint: String,
        value: f64,
    },
    #[error("family {family}: could not evaluate `{what}`: {source}")]
    Evaluation {
        family: String,
        what: String,
        source: EvalError,
    },
    #[error("family {0}: no valid parameters found by sampling")]
    SamplingFailed(String),
    #[error(transparent)]
    Residual(#[from] ResidualError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ColeHopf,
    RationalHyperbolic,
    TanhCoth,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ColeHopf => "ColeHopf",
            Method::RationalHyperbolic => "RationalHyperbolic",
            Method::TanhCoth => "TanhCoth",
        }
    }
}

/// Where sampled parameter values come from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ParamDomain {
    Interval { lo: f64, hi: f64 },
    Choice { values: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstraintKind {
    NonNegative,
    Positive,
    NonZero,
}

impl ConstraintKind {
    fn symbol(self) -> &'static str {
        match self {
            ConstraintKind::NonNegative => ">= 0",
            ConstraintKind::Positive => "> 0",
            ConstraintKind::NonZero => "!= 0",
        }
    }

    /// Strict kinds need `margin` of clearance; `>= 0` needs it only when
    /// sampling.
    fn holds(self, v: f64, margin: f64, strict_only: bool) -> bool {
        match self {
            ConstraintKind::NonNegative => v >= if strict_only { 0.0 } else { margin },
            ConstraintKind::Positive => v > margin,
            ConstraintKind::NonZero => v.abs() > margin,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub expr: Expr,
    pub kind: ConstraintKind,
}

impl Constraint {
    pub fn describe(&self) -> String {
        format!("{} {}", self.expr, self.kind.symbol())
    }
}

/// The constants each construction method solved for, as expressions in the
/// family parameters.
#[derive(Clone, Debug)]
pub enum AnsatzMap {
    /// `u = A μ² ζ/(1+ζ)² + B`, `ζ = exp(μx + λt)`.
    ColeHopf {
        amplitude: Expr,
        offset: Expr,
        mu: Expr,
        lambda: Expr,
    },
    /// `u = (a0 + a1 sinh ξ + a2 cosh ξ)/(1 + c1 sinh ξ + c2 cosh ξ)`.
    RationalHyperbolic { coefficients: BTreeMap<&'static str, Expr> },
    /// `u = a0 + a1 φ + c1/φ + a2 φ² + c2/φ²` with `φ' = α + βφ + γφ²`;
    /// the map holds `lambda, a0, a1, a2, c1, c2, alpha, beta, gamma`.
    TanhCoth { coefficients: BTreeMap<&'static str, Expr> },
}

impl AnsatzMap {
    /// Every entry as `(name, expression)`.
    pub fn entries(&self) -> Vec<(&'static str, Expr)> {
        match self {
            AnsatzMap::ColeHopf {
                amplitude,
                offset,
                mu,
                lambda,
            } => vec![
                ("A", amplitude.clone()),
                ("B", offset.clone()),
                ("mu", mu.clone()),
                ("lambda", lambda.clone()),
            ],
            AnsatzMap::RationalHyperbolic { coefficients } | AnsatzMap::TanhCoth { coefficients } => {
                coefficients.iter().map(|(k, v)| (*k, v.clone())).collect()
            }
        }
    }

    /// Numeric values at an instance's parameters.
    pub fn evaluate(&self, params: &Bindings) -> Result<Bindings, EvalError> {
        self.entries()
            .into_iter()
            .map(|(k, e)| Ok((k.to_string(), e.eval(params)?)))
            .collect()
    }
}

/// One closed-form family.
#[derive(Debug)]
pub struct SolutionFamily {
    pub id: &'static str,
    pub method: Method,
    /// Parameters including `b`.
    pub params: Vec<ParamSpec>,
    /// `U(ξ)` in the symbol `xi`.
    pub profile: Expr,
    /// `λ` with `u(x, t) = U(x + λt)`.
    pub speed: Expr,
    pub constraints: Vec<Constraint>,
    pub ansatz: AnsatzMap,
    /// The closed form exactly as printed, when it differs from `profile`.
    pub printed: Option<Expr>,
    mdp_residual: OnceLock<Residual>,
    dp_residual: OnceLock<Residual>,
}

/// A family with concrete parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInstance {
    pub id: String,
    /// Parameter values, `b` included.
    pub params: Bindings,
    /// Phase shift `δ` in `ξ = x + λt + δ`.
    pub shift: f64,
}

impl FamilyInstance {
    pub fn new(id: &str, params: Bindings) -> Self {
        Self {
            id: id.to_string(),
            params,
            shift: 0.0,
        }
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    pub fn family(&self) -> Result<&'static SolutionFamily, CatalogError> {
        family(&self.id)
    }

    pub fn b(&self) -> Option<f64> {
        self.params.get("b")
    }
}

impl SolutionFamily {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    /// `u(x, t)` with parameters left symbolic and the shift in `delta`.
    pub fn build_symbolic(&self) -> Expr {
        let arg = Expr::sym("x") + &self.speed * Expr::sym("t") + Expr::sym("delta");
        self.profile.substitute("xi", &arg)
    }

    /// Residual of the symbolic build, derived once and cached.
    pub fn residual(&self, equation: Equation) -> &Residual {
        let cell = match equation {
            Equation::Mdp => &self.mdp_residual,
            Equation::Dp => &self.dp_residual,
        };
        cell.get_or_init(|| {
            let variant = EquationVariant {
                equation,
                b: Expr::sym("b"),
            };
            pde_residual(&self.build_symbolic(), &variant)
        })
    }

    fn err_eval(&self, what: &str, source: EvalError) -> CatalogError {
        CatalogError::Evaluation {
            family: self.id.to_string(),
            what: what.to_string(),
            source,
        }
    }

    fn check_names(&self, params: &Bindings) -> Result<(), CatalogError> {
        for p in &self.params {
            if !params.contains(p.name) {
                return Err(CatalogError::MissingParameter {
                    family: self.id.to_string(),
                    name: p.name.to_string(),
                });
            }
        }
        for (k, _) in params.iter() {
            if !self.params.iter().any(|p| p.name == k) {
                return Err(CatalogError::UnknownParameter {
                    family: self.id.to_string(),
                    name: k.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Check parameter names and every constraint.
    pub fn validate(&self, params: &Bindings) -> Result<(), CatalogError> {
        self.check_names(params)?;
        self.check_constraints(params, STRICT_MARGIN, true)
    }

    fn check_constraints(&self, params: &Bindings, margin: f64, strict_only: bool) -> Result<(), CatalogError> {
        for c in &self.constraints {
            let v = c
                .expr
                .eval(params)
                .map_err(|e| self.err_eval(&c.describe(), e))?;
            if !c.kind.holds(v, margin, strict_only) {
                return Err(CatalogError::Validity {
                    family: self.id.to_string(),
                    constraint: c.describe(),
                    value: v,
                });
            }
        }
        Ok(())
    }

    /// Draw a valid instance. `b` is drawn from [`SAMPLE_B`] unless given.
    pub fn sample(&self, b: Option<f64>, rng: &mut impl Rng) -> Result<FamilyInstance, CatalogError> {
        for _ in 0..20_000 {
            let mut env = Bindings::new();
            for p in &self.params {
                let v = match (&p.domain, b) {
                    (_, Some(b)) if p.name == "b" => b,
                    (ParamDomain::Interval { lo, hi }, _) => rng.random_range(*lo..=*hi),
                    (ParamDomain::Choice { values }, _) => values[rng.random_range(0..values.len())],
                };
                env.set(p.name, v);
            }
            if self.check_constraints(&env, SAMPLE_MARGIN, false).is_ok() {
                return Ok(FamilyInstance::new(self.id, env));
            }
        }
        Err(CatalogError::SamplingFailed(self.id.to_string()))
    }
}

fn check_instance(inst: &FamilyInstance) -> Result<&'static SolutionFamily, CatalogError> {
    let fam = inst.family()?;
    fam.validate(&inst.params)?;
    Ok(fam)
}

/// `u(x, t)` with the instance's parameters substituted.
pub fn build(inst: &FamilyInstance) -> Result<Expr, CatalogError> {
    let fam = check_instance(inst)?;
    let env = inst.params.clone().with("delta", inst.shift);
    Ok(fam.build_symbolic().bind(&env))
}

/// `U(ξ)` with the instance's parameters substituted (no shift).
pub fn profile(inst: &FamilyInstance) -> Result<Expr, CatalogError> {
    let fam = check_instance(inst)?;
    Ok(fam.profile.bind(&inst.params))
}

pub fn wave_speed(inst: &FamilyInstance) -> Result<f64, CatalogError> {
    let fam = check_instance(inst)?;
    fam.speed
        .eval(&inst.params)
        .map_err(|e| fam.err_eval("wave speed", e))
}

/// Zeros of the profile's singular factors in `window`, in the profile
/// coordinate `x + λt + δ`.
pub fn singular_points(inst: &FamilyInstance, window: (f64, f64)) -> Result<Vec<f64>, CatalogError> {
    let fam = check_instance(inst)?;
    let bound = fam.profile.bind(&inst.params);
    let mut out: Vec<f64> = bound
        .singular_factors()
        .into_iter()
        .filter(|f| f.depends_on("xi"))
        .flat_map(|f| zeros_in(|s| f.eval(&Bindings::from_pairs([("xi", s)])).ok(), window))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-8);
    Ok(out)
}

/// Settings of a residual scan over an instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanOptions {
    pub window: (f64, f64),
    pub n: usize,
    pub tol: f64,
    pub t_sample: f64,
    pub equation: Equation,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            window: (-8.0, 8.0),
            n: 257,
            tol: crate::residual::DEFAULT_TOL,
            t_sample: 0.5,
            equation: Equation::Mdp,
        }
    }
}

/// Scan the instance's PDE residual along `ξ = x + λt` at a fixed time,
/// skipping points near singularities.
pub fn verify_instance(inst: &FamilyInstance, opts: &ScanOptions) -> Result<ResidualReport, CatalogError> {
    let fam = check_instance(inst)?;
    let speed = wave_speed(inst)?;
    let (a, b) = opts.window;
    let poles = singular_points(inst, (a + inst.shift, b + inst.shift))?;
    let grid = ScanGrid::new(opts.window, opts.n).excluding(poles.iter().map(|p| p - inst.shift));
    let env = inst.params.clone().with("delta", inst.shift);
    Ok(scan_traveling(
        fam.residual(opts.equation),
        &env,
        speed,
        opts.t_sample,
        &grid,
        opts.tol,
    )?)
}

/// Catalog entry as exported to `catalog.json`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyRecord {
    pub id: &'static str,
    pub method: Method,
    pub speed: String,
    pub profile: String,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<String>,
    pub ansatz: BTreeMap<&'static str, String>,
}

pub fn record(fam: &SolutionFamily) -> FamilyRecord {
    FamilyRecord {
        id: fam.id,
        method: fam.method,
        speed: fam.speed.to_string(),
        profile: fam.profile.to_string(),
        params: fam.params.clone(),
        constraints: fam.constraints.iter().map(Constraint::describe).collect(),
        ansatz: fam
            .ansatz
            .entries()
            .into_iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect(),
    }
}

pub fn export_json() -> serde_json::Value {
    serde_json::to_value(list().iter().map(record).collect::<Vec<_>>()).expect("serializable")
}

pub fn list() -> &'static [SolutionFamily] {
    static REGISTRY: OnceLock<Vec<SolutionFamily>> = OnceLock::new();
    REGISTRY.get_or_init(registry)
}

pub fn family(id: &str) -> Result<&'static SolutionFamily, CatalogError> {
    list()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
}

// ---------------------------------------------------------------------------
// Table

const MACROS: [(&str, &str); 9] = [
    ("{RD}", "sqrt(1-b*(b+2)*({D}^2-1))"),
    ("{D}", "(beta^2-4*alpha*gamma)"),
    ("{K}", "(6*(b+2)/(b+1))"),
    ("{RMU}", "sqrt(1-b*(b+2)*(mu^4-1))"),
    ("{RBETA}", "sqrt(1-b*(b+2)*(beta^4-1))"),
    ("{R256}", "sqrt(b*(b+2)*(1-256*alpha^2*gamma^2)+1)"),
    ("{R16}", "sqrt(b*(b+2)*(1-16*alpha^2*gamma^2)+1)"),
    ("{Q}", "sqrt((b+1)^2*a2^2-1)"),
    ("{P}", "sqrt(c2^2-1)"),
];

fn p(text: &str) -> Expr {
    let mut s = text.to_string();
    for (k, v) in MACROS {
        s = s.replace(k, v);
    }
    match parse(&s) {
        Ok(e) => e.simplify(),
        Err(e) => panic!("catalog formula `{s}`: {e}"),
    }
}

fn param(name: &'static str, lo: f64, hi: f64) -> ParamSpec {
    ParamSpec {
        name,
        domain: ParamDomain::Interval { lo, hi },
    }
}

fn b_param() -> ParamSpec {
    ParamSpec {
        name: "b",
        domain: ParamDomain::Choice {
            values: SAMPLE_B.to_vec(),
        },
    }
}

fn constraints(extra: &[(&str, ConstraintKind)]) -> Vec<Constraint> {
    let base = [("b+1", ConstraintKind::NonZero), ("b+2", ConstraintKind::NonZero)];
    base.iter()
        .chain(extra)
        .map(|(e, kind)| Constraint {
            expr: p(e),
            kind: *kind,
        })
        .collect()
}

fn coefficient_map(pairs: &[(&'static str, &str)]) -> BTreeMap<&'static str, Expr> {
    pairs.iter().map(|(k, v)| (*k, p(v))).collect()
}

struct Def<'a> {
    id: &'static str,
    method: Method,
    params: Vec<ParamSpec>,
    profile: &'a str,
    speed: &'a str,
    constraints: &'a [(&'a str, ConstraintKind)],
    ansatz: AnsatzMap,
    printed: Option<&'a str>,
}

fn make(d: Def<'_>) -> SolutionFamily {
    let mut params = vec![b_param()];
    params.extend(d.params);
    SolutionFamily {
        id: d.id,
        method: d.method,
        params,
        profile: p(d.profile),
        speed: p(d.speed),
        constraints: constraints(d.constraints),
        ansatz: d.ansatz,
        printed: d.printed.map(p),
        mdp_residual: OnceLock::new(),
        dp_residual: OnceLock::new(),
    }
}

fn cole_hopf(offset: &str, speed: &str) -> AnsatzMap {
    AnsatzMap::ColeHopf {
        amplitude: p("-6*(b+2)/(b+1)"),
        offset: p(offset),
        mu: p("mu"),
        lambda: p(&format!("mu*({speed})")),
    }
}

fn hyperbolic(lambda: &str, a0: &str, a1: &str, a2: &str, c1: &str, c2: &str) -> AnsatzMap {
    AnsatzMap::RationalHyperbolic {
        coefficients: coefficient_map(&[
            ("lambda", lambda),
            ("a0", a0),
            ("a1", a1),
            ("a2", a2),
            ("c1", c1),
            ("c2", c2),
        ]),
    }
}

#[allow(clippy::too_many_arguments)]
fn tanh_coth(
    lambda: &str,
    a0: &str,
    a1: &str,
    a2: &str,
    c1: &str,
    c2: &str,
    riccati: [&str; 3],
) -> AnsatzMap {
    let names = ["alpha", "beta", "gamma"];
    let elim: BTreeMap<String, Expr> = names
        .iter()
        .zip(riccati)
        .map(|(n, r)| (n.to_string(), p(r)))
        .collect();
    let mut coefficients: BTreeMap<&'static str, Expr> =
        coefficient_map(&[("lambda", lambda), ("a0", a0), ("a1", a1), ("a2", a2), ("c1", c1), ("c2", c2)])
            .into_iter()
            .map(|(k, v)| (k, v.substitute_all(&elim).simplify()))
            .collect();
    for n in names {
        coefficients.insert(n, elim[n].clone());
    }
    AnsatzMap::TanhCoth { coefficients }
}

fn registry() -> Vec<SolutionFamily> {
    use ConstraintKind::*;
    use Method::*;

    let mu_radicand: &[(&str, ConstraintKind)] = &[("mu", NonZero), ("1-b*(b+2)*(mu^4-1)", NonNegative)];
    let a2_radicand: &[(&str, ConstraintKind)] = &[("(b+1)^2*a2^2-1", NonNegative)];
    let c2_radicand: &[(&str, ConstraintKind)] = &[("c2^2-1", NonNegative)];
    let beta_radicand: &[(&str, ConstraintKind)] =
        &[("beta", NonZero), ("1-b*(b+2)*(beta^4-1)", NonNegative)];
    let r256: &[(&str, ConstraintKind)] = &[
        ("alpha*gamma", Positive),
        ("b*(b+2)*(1-256*alpha^2*gamma^2)+1", NonNegative),
    ];
    let r16: &[(&str, ConstraintKind)] = &[
        ("alpha*gamma", Positive),
        ("b*(b+2)*(1-16*alpha^2*gamma^2)+1", NonNegative),
    ];
    let delta: &[(&str, ConstraintKind)] = &[
        ("beta^2-4*alpha*gamma", Positive),
        ("1-b*(b+2)*((beta^2-4*alpha*gamma)^2-1)", NonNegative),
    ];

    let mu = || vec![param("mu", 0.5, 1.5)];
    let a2 = || vec![param("a2", -2.0, 2.0)];
    let c2 = || vec![param("c2", -3.0, 3.0)];
    let beta_gamma = || vec![param("beta", -1.2, 1.2), param("gamma", -1.0, 1.0)];
    let alpha_gamma = || vec![param("alpha", -0.5, 0.5), param("gamma", -0.5, 0.5)];
    let abg = || {
        vec![
            param("alpha", -0.3, 0.3),
            param("beta", 0.5, 1.2),
            param("gamma", -0.3, 0.3),
        ]
    };
    let ch_tail = "6*(b+2)*mu^2/(2*(b+1)*(1+cosh(mu*xi)))";
    let a0_u12 = "-(-b*beta^2-2*beta^2+b+{RBETA}+1)/(2*(b+1))";
    let a0_u13 = "(2*beta^2+b*(beta^2-1)+{RBETA}-1)/(2*(b+1))";
    let a0_minus_256 = "-(-8*alpha*gamma*b+b-16*alpha*gamma+{R256}+1)/(2*(b+1))";
    let a0_plus_256 = "(8*alpha*gamma*b-b+16*alpha*gamma+{R256}-1)/(2*(b+1))";
    let a0_minus_16 = "-(-8*alpha*gamma*b+b-16*alpha*gamma+{R16}+1)/(2*(b+1))";
    let a0_plus_16 = "(8*alpha*gamma*b-b+16*alpha*gamma+{R16}-1)/(2*(b+1))";
    let a0_minus_d = "(24*alpha*gamma+2*{D}+b*(12*alpha*gamma+{D}-1)-{RD}-1)/(2*(b+1))";
    let a0_plus_d = "(24*alpha*gamma+2*{D}+b*(12*alpha*gamma+{D}-1)+{RD}-1)/(2*(b+1))";
    let ag = ["alpha", "0", "gamma"];
    let abg_names = ["alpha", "beta", "gamma"];
    let u22_tail = "12*(b+2)*alpha*gamma*(beta^2+sqrt({D})*tanh(sqrt({D})*xi/2)*beta-2*alpha*gamma)\
                    /((b+1)*(beta+sqrt({D})*tanh(sqrt({D})*xi/2))^2)";

    let u1_profile = format!("(2*mu^2-1+b*(mu^2-1)+{{RMU}})/(2*(b+1)) - {ch_tail}");
    let u2_profile = format!("(b*mu^2+2*mu^2-1-b-{{RMU}})/(2*(b+1)) - {ch_tail}");
    let u22_profile = format!("(({{D}}+12*alpha*gamma)*(b+2)-(b+1)+{{RD}})/(2*(b+1)) - {u22_tail}");
    let u23_profile = format!("(({{D}}+12*alpha*gamma)*(b+2)-(b+1)-{{RD}})/(2*(b+1)) - {u22_tail}");

    let defs = vec![
        Def {
            id: "u1",
            method: ColeHopf,
            params: mu(),
            profile: &u1_profile,
            speed: "-(b+1-{RMU})/2",
            constraints: mu_radicand,
            ansatz: cole_hopf("(2*mu^2-1+b*(mu^2-1)+{RMU})/(2*(b+1))", "-(b+1-{RMU})/2"),
            printed: None,
        },
        Def {
            id: "u2",
            method: ColeHopf,
            params: mu(),
            profile: &u2_profile,
            speed: "-(b+1+{RMU})/2",
            constraints: mu_radicand,
            ansatz: cole_hopf("(b*mu^2+2*mu^2-1-b-{RMU})/(2*(b+1))", "-(b+1+{RMU})/2"),
            printed: None,
        },
        Def {
            id: "u3",
            method: RationalHyperbolic,
            params: vec![],
            profile: "-(3*b+5-cosh(xi))/((b+1)*(1+cosh(xi)))",
            speed: "-b/2",
            constraints: &[],
            ansatz: hyperbolic("-b/2", "-(3*b+5)/(b+1)", "0", "1/(b+1)", "0", "1"),
            printed: None,
        },
        Def {
            id: "u4",
            method: RationalHyperbolic,
            params: vec![],
            profile: "-(3*b+5+cosh(xi))/((b+1)*(1-cosh(xi)))",
            speed: "-b/2",
            constraints: &[],
            ansatz: hyperbolic("-b/2", "-(3*b+5)/(b+1)", "0", "-1/(b+1)", "0", "-1"),
            printed: None,
        },
        Def {
            id: "u5",
            method: RationalHyperbolic,
            params: vec![],
            profile: "-3*(b+2)/((b+1)*(1-cosh(xi)))",
            speed: "-b/2-1",
            constraints: &[],
            ansatz: hyperbolic("-b/2-1", "-3*(b+2)/(b+1)", "0", "0", "0", "-1"),
            printed: None,
        },
        Def {
            id: "u6",
            method: RationalHyperbolic,
            params: vec![],
            profile: "-3*(b+2)/((b+1)*(1+cosh(xi)))",
            speed: "-b/2-1",
            constraints: &[],
            ansatz: hyperbolic("-b/2-1", "-3*(b+2)/(b+1)", "0", "0", "0", "1"),
            printed: None,
        },
        Def {
            id: "u7",
            method: RationalHyperbolic,
            params: a2(),
            profile: "(-3*b-5+(b+1)*cosh(xi)*a2-{Q}*sinh(xi))/((b+1)*(1-{Q}*sinh(xi)+(b+1)*a2*cosh(xi)))",
            speed: "-b/2",
            constraints: a2_radicand,
            ansatz: hyperbolic("-b/2", "-(3*b+5)/(b+1)", "-{Q}/(b+1)", "a2", "-{Q}", "a2*(b+1)"),
            printed: None,
        },
        Def {
            id: "u8",
            method: RationalHyperbolic,
            params: a2(),
            profile: "(-3*b-5+(b+1)*cosh(xi)*a2+{Q}*sinh(xi))/((b+1)*(1+{Q}*sinh(xi)+(b+1)*a2*cosh(xi)))",
            speed: "-b/2",
            constraints: a2_radicand,
            ansatz: hyperbolic("-b/2", "-(3*b+5)/(b+1)", "{Q}/(b+1)", "a2", "{Q}", "a2*(b+1)"),
            printed: None,
        },
        Def {
            id: "u9",
            method: RationalHyperbolic,
            params: c2(),
            profile: "-3*(b+2)/((b+1)*(1+{P}*sinh(xi)+c2*cosh(xi)))",
            speed: "-b/2-1",
            constraints: c2_radicand,
            ansatz: hyperbolic("-b/2-1", "-3*(b+2)/(b+1)", "0", "0", "{P}", "c2"),
            printed: None,
        },
        Def {
            id: "u10",
            method: RationalHyperbolic,
            params: c2(),
            profile: "-3*(b+2)/((b+1)*(1-{P}*sinh(xi)+c2*cosh(xi)))",
            speed: "-b/2-1",
            constraints: c2_radicand,
            ansatz: hyperbolic("-b/2-1", "-3*(b+2)/(b+1)", "0", "0", "-{P}", "c2"),
            printed: Some("3*(b+2)/((b+1)*(1+{P}*sinh(xi)-c2*cosh(xi)))"),
        },
        Def {
            id: "u11",
            method: TanhCoth,
            params: vec![param("beta", -2.0, 2.0)],
            profile: "6*(b+2)*beta^2/((b+1)*(beta*xi+2)^2)-1",
            speed: "-b-1",
            constraints: &[("beta", NonZero)],
            ansatz: tanh_coth(
                "-b-1",
                "3*(b+2)*beta^2/(2*(b+1))-1",
                "0",
                "0",
                "{K}*alpha*beta",
                "{K}*alpha^2",
                ["beta/2", "beta", "beta/2"],
            ),
            printed: None,
        },
        Def {
            id: "u12",
            method: TanhCoth,
            params: beta_gamma(),
            profile: "((b+2)*beta^2-b-1-{RBETA})/(2*(b+1)) + 6*(b+2)*gamma*beta^2/(b+1)\
                      *(1/(exp(-beta*xi)*beta-gamma)+gamma/(exp(-beta*xi)*beta-gamma)^2)",
            speed: "(-b-{RBETA}-1)/2",
            constraints: beta_radicand,
            ansatz: tanh_coth(
                "(-b-{RBETA}-1)/2",
                a0_u12,
                "{K}*beta*gamma",
                "{K}*gamma^2",
                "0",
                "0",
                ["0", "beta", "gamma"],
            ),
            printed: None,
        },
        Def {
            id: "u13",
            method: TanhCoth,
            params: beta_gamma(),
            profile: "((b+2)*beta^2-b-1+{RBETA})/(2*(b+1)) + 6*(b+2)*gamma*beta^2/(b+1)\
                      *(1/(exp(-beta*xi)*beta-gamma)+gamma/(exp(-beta*xi)*beta-gamma)^2)",
            speed: "(-b+{RBETA}-1)/2",
            constraints: beta_radicand,
            ansatz: tanh_coth(
                "(-b+{RBETA}-1)/2",
                a0_u13,
                "{K}*beta*gamma",
                "{K}*gamma^2",
                "0",
                "0",
                ["0", "beta", "gamma"],
            ),
            printed: None,
        },
        Def {
            id: "u14",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)-16*alpha*gamma*(b+2)-{R256}+48*alpha*gamma*(b+2)\
                      *csc(2*sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b-{R256}-1)/2",
            constraints: r256,
            ansatz: tanh_coth("(-b-{R256}-1)/2", a0_minus_256, "0", "{K}*gamma^2", "0", "{K}*alpha^2", ag),
            printed: None,
        },
        Def {
            id: "u15",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)-16*alpha*gamma*(b+2)+{R256}+48*alpha*gamma*(b+2)\
                      *csc(2*sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b+{R256}-1)/2",
            constraints: r256,
            ansatz: tanh_coth("(-b+{R256}-1)/2", a0_plus_256, "0", "{K}*gamma^2", "0", "{K}*alpha^2", ag),
            printed: None,
        },
        Def {
            id: "u16",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)+8*alpha*gamma*(b+2)-{R16}+12*alpha*gamma*(b+2)\
                      *cot(sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b-{R16}-1)/2",
            constraints: r16,
            ansatz: tanh_coth("(-b-{R16}-1)/2", a0_minus_16, "0", "0", "0", "{K}*alpha^2", ag),
            printed: None,
        },
        Def {
            id: "u17",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)+8*alpha*gamma*(b+2)-{R16}+12*alpha*gamma*(b+2)\
                      *tan(sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b-{R16}-1)/2",
            constraints: r16,
            ansatz: tanh_coth("(-b-{R16}-1)/2", a0_minus_16, "0", "{K}*gamma^2", "0", "0", ag),
            printed: None,
        },
        Def {
            id: "u18",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)+8*alpha*gamma*(b+2)+{R16}+12*alpha*gamma*(b+2)\
                      *cot(sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b+{R16}-1)/2",
            constraints: r16,
            ansatz: tanh_coth("(-b+{R16}-1)/2", a0_plus_16, "0", "0", "0", "{K}*alpha^2", ag),
            printed: None,
        },
        Def {
            id: "u19",
            method: TanhCoth,
            params: alpha_gamma(),
            profile: "(-(b+1)+8*alpha*gamma*(b+2)+{R16}+12*alpha*gamma*(b+2)\
                      *tan(sqrt(alpha*gamma)*xi)^2)/(2*(b+1))",
            speed: "(-b+{R16}-1)/2",
            constraints: r16,
            ansatz: tanh_coth("(-b+{R16}-1)/2", a0_plus_16, "0", "{K}*gamma^2", "0", "0", ag),
            printed: None,
        },
        Def {
            id: "u20",
            method: TanhCoth,
            params: abg(),
            profile: "-(2*{D}*(b+2)+b+1+{RD})/(2*(b+1))+3*(b+2)*{D}/(2*(b+1))*tanh(sqrt({D})*xi/2)^2",
            speed: "(-b-{RD}-1)/2",
            constraints: delta,
            ansatz: tanh_coth(
                "(-b-{RD}-1)/2",
                a0_minus_d,
                "{K}*beta*gamma",
                "{K}*gamma^2",
                "0",
                "0",
                abg_names,
            ),
            printed: None,
        },
        Def {
            id: "u21",
            method: TanhCoth,
            params: abg(),
            profile: "-(2*{D}*(b+2)+b+1-{RD})/(2*(b+1))+3*(b+2)*{D}/(2*(b+1))*tanh(sqrt({D})*xi/2)^2",
            speed: "(-b+{RD}-1)/2",
            constraints: delta,
            ansatz: tanh_coth(
                "(-b+{RD}-1)/2",
                a0_plus_d,
                "{K}*beta*gamma",
                "{K}*gamma^2",
                "0",
                "0",
                abg_names,
            ),
            printed: None,
        },
        Def {
            id: "u22",
            method: TanhCoth,
            params: abg(),
            profile: &u22_profile,
            speed: "(-b+{RD}-1)/2",
            constraints: delta,
            ansatz: tanh_coth(
                "(-b+{RD}-1)/2",
                a0_plus_d,
                "0",
                "0",
                "{K}*alpha*beta",
                "{K}*alpha^2",
                abg_names,
            ),
            printed: None,
        },
        Def {
            id: "u23",
            method: TanhCoth,
            params: abg(),
            profile: &u23_profile,
            speed: "(-b-{RD}-1)/2",
            constraints: delta,
            ansatz: tanh_coth(
                "(-b-{RD}-1)/2",
                a0_minus_d,
                "0",
                "0",
                "{K}*alpha*beta",
                "{K}*alpha^2",
                abg_names,
            ),
            printed: None,
        },
    ];
    defs.into_iter().map(make).collect()
}
