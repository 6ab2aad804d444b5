//! The three construction methods as exact coefficient computations.
//!
//! Each method turns the equation into a Laurent polynomial in one variable
//! (`ζ = exp(μx + λt)`, `ζ = exp(ξ)`, or the Riccati function `φ`) whose
//! coefficients are polynomials in the unknown constants. Clearing
//! denominators and equating coefficients to zero gives the method's
//! [`AlgebraicSystem`]; the catalog families are verified against it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, Method};
use crate::expr::oracle::{proportionality, SampleBox};
use crate::expr::{parse, Bindings, EvalError, Expr, Number, Polynomial};
use crate::riccati::RiccatiSpec;

/// Per-coefficient tolerance of the numeric zero oracle, relative to the
/// sum of absolute term values (floored at 1).
pub const SYSTEM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnsatzError {
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("family {id} is not built by the {method} method")]
    WrongMethod { id: String, method: &'static str },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("could not evaluate {what}: {source}")]
    Evaluation { what: String, source: EvalError },
    #[error("unknown coefficient `{0}`")]
    UnknownCoefficient(String),
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// `Σ c_k v^k` over integer `k` with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Polynomial>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Polynomial) -> Self {
        Self::term(0, c)
    }

    pub fn term(k: i32, c: Polynomial) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            out.terms.insert(k, c);
        }
        out
    }

    /// `c v^k` for a rational `c`.
    pub fn monomial(k: i32, c: Number) -> Self {
        Self::term(k, Polynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: i32) -> Polynomial {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Polynomial)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i32, c: Polynomial) {
        let sum = self.coefficient(k).add(&c);
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_number(&Number::int(-1))
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        let mut out = Self::zero();
        for (k, a) in &self.terms {
            out.add_term(*k, a.mul(c));
        }
        out
    }

    pub fn scale_number(&self, c: &Number) -> Self {
        let mut out = Self::zero();
        for (k, a) in &self.terms {
            out.add_term(*k, a.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, a) in &self.terms {
            for (k2, c) in &other.terms {
                out.add_term(k1 + k2, a.mul(c));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Polynomial::constant(Number::one())), |acc, _| acc.mul(self))
    }

    /// Multiply by `v^s`.
    pub fn shift(&self, s: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + s, c.clone())).collect(),
        }
    }

    /// Formal `d/dv`.
    pub fn formal_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k - 1, c.scale(&Number::int(i64::from(*k))));
        }
        out
    }

    pub fn eval(&self, v: f64, env: &Bindings) -> Result<f64, EvalError> {
        self.terms
            .iter()
            .try_fold(0.0, |acc, (k, c)| Ok(acc + c.eval(env)? * v.powi(*k)))
    }

    pub fn to_expr(&self, var: &Expr) -> Expr {
        Expr::sum(self.terms.iter().map(|(k, c)| c.to_expr() * var.powi(i64::from(*k))))
    }

    pub fn substitute_all(&self, map: &BTreeMap<String, Expr>) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.substitute_all(map));
        }
        out
    }
}

/// A derivation `D` on Laurent polynomials in `v`, fixed by `D(v) = g(v)`:
/// `D(P) = P'(v) g(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub image_of_var: LaurentPoly,
}

impl Derivation {
    /// `D(φ) = α + βφ + γφ²`.
    pub fn riccati(alpha: Polynomial, beta: Polynomial, gamma: Polynomial) -> Self {
        Self {
            image_of_var: LaurentPoly::constant(alpha)
                .add(&LaurentPoly::term(1, beta))
                .add(&LaurentPoly::term(2, gamma)),
        }
    }

    /// `D(ζ) = s ζ`, the chain rule for `ζ = exp(s·x)`.
    pub fn exponential(s: Polynomial) -> Self {
        Self {
            image_of_var: LaurentPoly::term(1, s),
        }
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        p.formal_derivative().mul(&self.image_of_var)
    }
}

/// `P / Q^k` over a fixed denominator `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub num: LaurentPoly,
    pub den_power: u32,
}

/// Arithmetic on fractions sharing the denominator `q`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub q: LaurentPoly,
}

impl QuotientRing {
    fn lift(&self, f: &Fraction, power: u32) -> LaurentPoly {
        f.num.mul(&self.q.pow(power - f.den_power))
    }

    pub fn add(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let k = a.den_power.max(b.den_power);
        Fraction {
            num: self.lift(a, k).add(&self.lift(b, k)),
            den_power: k,
        }
    }

    pub fn mul(&self, a: &Fraction, b: &Fraction) -> Fraction {
        Fraction {
            num: a.num.mul(&b.num),
            den_power: a.den_power + b.den_power,
        }
    }

    pub fn scale(&self, a: &Fraction, c: &Polynomial) -> Fraction {
        Fraction {
            num: a.num.scale(c),
            den_power: a.den_power,
        }
    }

    /// `D(P/Q^k) = (D(P) Q − k P D(Q)) / Q^(k+1)`.
    pub fn derive(&self, d: &Derivation, f: &Fraction) -> Fraction {
        let k = Number::int(i64::from(f.den_power));
        Fraction {
            num: d
                .apply(&f.num)
                .mul(&self.q)
                .sub(&f.num.mul(&d.apply(&self.q)).scale_number(&k)),
            den_power: f.den_power + 1,
        }
    }

    /// Numerator over `Q^power`; `power` must be at least the fraction's.
    pub fn numerator_over(&self, f: &Fraction, power: u32) -> LaurentPoly {
        self.lift(f, power)
    }
}

fn sym(name: &str) -> Polynomial {
    Polynomial::symbol(name)
}

fn int(n: i64) -> Polynomial {
    Polynomial::constant(Number::int(n))
}

fn half() -> Number {
    Number::ratio(1, 2)
}

// ---------------------------------------------------------------------------
// Algebraic systems

#[derive(Clone, Debug, PartialEq)]
pub struct SystemEquation {
    /// Power of the collection variable this coefficient multiplies.
    pub power: i32,
    pub coefficient: Polynomial,
}

/// Coefficients of a cleared residual, each required to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSystem {
    pub method: Method,
    /// Name of the collection variable.
    pub variable: &'static str,
    /// The factor the residual was multiplied by before collecting.
    pub clearing: String,
    pub unknowns: Vec<&'static str>,
    pub equations: Vec<SystemEquation>,
}

/// One equation in the JSON dump.
#[derive(Clone, Debug, Serialize)]
pub struct DumpEntry {
    pub power: i32,
    pub coefficient_formatted: String,
}

/// Outcome of substituting values into a system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemCheck {
    pub equations: usize,
    /// Largest `|coefficient|`.
    pub max_abs: f64,
    /// Largest `|coefficient| / max(1, Σ|terms|)`.
    pub max_relative: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl AlgebraicSystem {
    fn from_laurent(
        method: Method,
        variable: &'static str,
        clearing: String,
        unknowns: Vec<&'static str>,
        p: &LaurentPoly,
    ) -> Self {
        Self {
            method,
            variable,
            clearing,
            unknowns,
            equations: p
                .terms()
                .map(|(power, c)| SystemEquation {
                    power,
                    coefficient: c.clone(),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn powers(&self) -> Vec<i32> {
        self.equations.iter().map(|e| e.power).collect()
    }

    pub fn equation(&self, power: i32) -> Option<&Polynomial> {
        self.equations
            .iter()
            .find(|e| e.power == power)
            .map(|e| &e.coefficient)
    }

    pub fn substitute_all(&self, map: &BTreeMap<String, Expr>) -> Self {
        let mut out = self.clone();
        for e in &mut out.equations {
            e.coefficient = e.coefficient.substitute_all(map);
        }
        out.equations.retain(|e| !e.coefficient.is_zero());
        out
    }

    /// Each coefficient with its largest monomial factor divided out.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.equations {
            let content = e.coefficient.monomial_content();
            e.coefficient = e.coefficient.mul_monomial(&content.inverse());
        }
        out
    }

    pub fn dump(&self) -> Vec<DumpEntry> {
        self.equations
            .iter()
            .map(|e| DumpEntry {
                power: e.power,
                coefficient_formatted: e.coefficient.to_string(),
            })
            .collect()
    }

    /// Evaluate every coefficient at `values`.
    pub fn check(&self, values: &Bindings) -> Result<SystemCheck, AnsatzError> {
        let (mut max_abs, mut max_rel): (f64, f64) = (0.0, 0.0);
        for e in &self.equations {
            let what = || format!("coefficient of {}^{}", self.variable, e.power);
            let v = e
                .coefficient
                .eval(values)
                .map_err(|source| AnsatzError::Evaluation { what: what(), source })?;
            let scale = e
                .coefficient
                .eval_abs_scale(values)
                .map_err(|source| AnsatzError::Evaluation { what: what(), source })?;
            max_abs = max_abs.max(v.abs());
            max_rel = max_rel.max(v.abs() / scale.max(1.0));
        }
        Ok(SystemCheck {
            equations: self.equations.len(),
            max_abs,
            max_relative: max_rel,
            tolerance: SYSTEM_TOL,
            pass: max_rel <= SYSTEM_TOL,
        })
    }

    /// Exact check: every coefficient becomes the zero polynomial once the
    /// rational `values` are substituted. `None` if some unknown is missing.
    pub fn vanishes_exactly(&self, values: &BTreeMap<String, Number>) -> Option<bool> {
        let map: BTreeMap<String, Expr> = values
            .iter()
            .map(|(k, v)| (k.clone(), Expr::num(v.clone())))
            .collect();
        let mut all_zero = true;
        for e in &self.equations {
            let p = e.coefficient.substitute_all(&map);
            if !p.terms().all(|(m, _)| m.is_one()) {
                return None;
            }
            all_zero &= p.is_zero();
        }
        Some(all_zero)
    }

    /// Indices of equations that are not constant multiples of an earlier
    /// one, judged by the proportionality oracle on random unknowns.
    pub fn distinct(&self, domain: &SampleBox, seed: u64) -> Vec<usize> {
        let mut kept: Vec<usize> = Vec::new();
        for (i, e) in self.equations.iter().enumerate() {
            let ei = e.coefficient.to_expr();
            let dup = kept.iter().any(|&j| {
                let ej = self.equations[j].coefficient.to_expr();
                proportionality(&ei, &ej, domain, &Bindings::new(), 20, seed, 1e-9).is_some()
            });
            if !dup {
                kept.push(i);
            }
        }
        kept
    }
}

/// `R = u_t − u_xxt + (b+1)u²u_x − b u_x u_xx − u u_xxx` for `u = P/Q^k`,
/// returned as a numerator over `Q^n` with `n` the largest power reached.
fn pde_numerator(
    ring: &QuotientRing,
    u: &Fraction,
    dx: &Derivation,
    dt: &Derivation,
    b: &Polynomial,
) -> (LaurentPoly, u32) {
    let ux = ring.derive(dx, u);
    let uxx = ring.derive(dx, &ux);
    let uxxx = ring.derive(dx, &uxx);
    let ut = ring.derive(dt, u);
    let uxxt = ring.derive(dt, &uxx);
    let b1 = b.add(&int(1));
    let terms = [
        ut,
        ring.scale(&uxxt, &int(-1)),
        ring.scale(&ring.mul(&ring.mul(u, u), &ux), &b1),
        ring.scale(&ring.mul(&ux, &uxx), &b.neg()),
        ring.scale(&ring.mul(u, &uxxx), &int(-1)),
    ];
    let n = terms.iter().map(|t| t.den_power).max().unwrap_or(0);
    let num = terms
        .iter()
        .fold(LaurentPoly::zero(), |acc, t| acc.add(&ring.numerator_over(t, n)));
    (num, n)
}

fn normalize_low(p: &LaurentPoly) -> (LaurentPoly, i32) {
    let low = p.min_exponent().unwrap_or(0).min(0);
    (p.shift(-low), -low)
}

// ---------------------------------------------------------------------------
// Cole–Hopf

/// The two equivalent forms of the Cole–Hopf solution.
#[derive(Clone, Debug)]
pub struct ColeHopfForms {
    /// `A ∂²/∂x² log(1 + exp(μx + λt + δ)) + B`
    pub log_form: Expr,
    /// `A μ² / (2 (1 + cosh(μx + λt + δ))) + B`
    pub cosh_form: Expr,
}

pub fn cole_hopf_build(a: &Expr, b_offset: &Expr, mu: &Expr, lambda: &Expr, delta: &Expr) -> Result<ColeHopfForms, AnsatzError> {
    for (name, e) in [("A", a), ("mu", mu), ("lambda", lambda)] {
        if e.is_zero() {
            return Err(AnsatzError::ZeroParameter(name));
        }
    }
    let arg = mu * Expr::sym("x") + lambda * Expr::sym("t") + delta;
    let log_form = a * (Expr::one() + arg.exp()).log().diff_n("x", 2) + b_offset;
    let cosh_form = a * mu.powi(2) / (Expr::int(2) * (Expr::one() + arg.cosh())) + b_offset;
    Ok(ColeHopfForms { log_form, cosh_form })
}

fn cole_hopf_system_symbolic() -> &'static AlgebraicSystem {
    static SYSTEM: OnceLock<AlgebraicSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        // u = (A μ² ζ + B (1+ζ)²) / (1+ζ)²
        let q = LaurentPoly::monomial(0, Number::one()).add(&LaurentPoly::monomial(1, Number::one()));
        let ring = QuotientRing { q: q.clone() };
        let amu2 = sym("A").mul(&sym("mu").pow(2));
        let u = Fraction {
            num: LaurentPoly::term(1, amu2).add(&q.pow(2).scale(&sym("B"))),
            den_power: 2,
        };
        let dx = Derivation::exponential(sym("mu"));
        let dt = Derivation::exponential(sym("lambda"));
        let (num, n) = pde_numerator(&ring, &u, &dx, &dt, &sym("b"));
        let (num, s) = normalize_low(&num);
        let clearing = if s == 0 {
            format!("(1+zeta)^{n}")
        } else {
            format!("(1+zeta)^{n}*zeta^{s}")
        };
        AlgebraicSystem::from_laurent(
            Method::ColeHopf,
            "zeta",
            clearing,
            vec!["A", "B", "mu", "lambda"],
            &num,
        )
    })
}

/// Coefficients of powers of `ζ = exp(μx + λt + δ)` in the cleared residual
/// of `u = Aμ²ζ/(1+ζ)² + B`. `b` may be a symbol or a number.
pub fn cole_hopf_system(b: &Expr) -> AlgebraicSystem {
    with_b(cole_hopf_system_symbolic(), b)
}

fn with_b(sys: &AlgebraicSystem, b: &Expr) -> AlgebraicSystem {
    if b.as_symbol() == Some("b") {
        return sys.clone();
    }
    sys.substitute_all(&BTreeMap::from([("b".to_string(), b.clone())]))
}

/// The algebraic system for the Cole–Hopf method as printed, one entry per
/// bullet.
pub const PRINTED_COLE_HOPF: [&str; 6] = [
    "B*mu^3+lambda*mu^2-(b*B^2+B^2)*mu-lambda",
    "B*mu^3+lambda*mu^2+(b*B^2+B^2)*mu+lambda",
    "(b*A+A)*mu^5-(2*A*B+2*A*b*B+9*B)*mu^3-9*lambda*mu^2-(3*b*B^2+3*B^2)*mu-3*lambda",
    "(b*A+A)*mu^5+(2*A*B+2*A*b*B+9*B)*mu^3+9*lambda*mu^2+(3*b*B^2+3*B^2)*mu+3*lambda",
    "(b*A^2+A^2+5*b*A+11*A)*mu^5+(2*A*B+2*A*b*B+10*B)*mu^3+10*lambda*mu^2+(2*b*B^2+2*B^2)*mu+2*lambda",
    "(b*A^2+A^2+5*b*A+11*A)*mu^5+(2*A*B+2*A*b*B+10*B)*mu^3+10*lambda*mu^2+(2*b*B^2+2*B^2)*mu+2*lambda",
];

/// Match of a printed equation against the regenerated system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BulletMatch {
    /// 1-based position in the printed list.
    pub bullet: usize,
    /// Power of `ζ` whose reduced coefficient is proportional to it.
    pub power: Option<i32>,
    /// `regenerated = factor × printed`.
    pub factor: Option<f64>,
}

fn cole_hopf_domain() -> SampleBox {
    SampleBox::new()
        .with("A", -3.0, 3.0)
        .with("B", -2.0, 2.0)
        .with("mu", 0.3, 2.0)
        .with("lambda", -2.0, 2.0)
        .with("b", -0.5, 3.0)
}

/// Compare each printed bullet with the reduced regenerated coefficients.
pub fn match_printed_cole_hopf(seed: u64) -> Vec<BulletMatch> {
    let sys = cole_hopf_system_symbolic().reduced();
    let dom = cole_hopf_domain();
    PRINTED_COLE_HOPF
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let printed = parse(text).expect("printed bullet parses");
            let hit = sys.equations.iter().find_map(|e| {
                proportionality(&e.coefficient.to_expr(), &printed, &dom, &Bindings::new(), 20, seed, 1e-9)
                    .map(|k| (e.power, k))
            });
            BulletMatch {
                bullet: i + 1,
                power: hit.map(|h| h.0),
                factor: hit.map(|h| h.1),
            }
        })
        .collect()
}

/// Number of Cole–Hopf equations that are not constant multiples of one
/// another.
pub fn cole_hopf_distinct(seed: u64) -> usize {
    cole_hopf_system_symbolic()
        .reduced()
        .distinct(&cole_hopf_domain(), seed)
        .len()
}

// ---------------------------------------------------------------------------
// Rational hyperbolic

pub const HYPERBOLIC_UNKNOWNS: [&str; 6] = ["lambda", "a0", "a1", "a2", "c1", "c2"];

/// `u(x, t) = (a0 + a1 sinh ξ + a2 cosh ξ)/(1 + c1 sinh ξ + c2 cosh ξ)`,
/// `ξ = x + λt`.
pub fn rational_hyperbolic_build(a0: &Expr, a1: &Expr, a2: &Expr, c1: &Expr, c2: &Expr, lambda: &Expr) -> Expr {
    let xi = Expr::sym("x") + lambda * Expr::sym("t");
    (a0 + a1 * xi.sinh() + a2 * xi.cosh()) / (Expr::one() + c1 * xi.sinh() + c2 * xi.cosh())
}

/// `p + s sinh ξ + c cosh ξ` as a Laurent polynomial in `ζ = exp(ξ)`.
fn hyperbolic_laurent(p: Polynomial, s: &Polynomial, c: &Polynomial) -> LaurentPoly {
    LaurentPoly::constant(p)
        .add(&LaurentPoly::term(1, s.add(c).scale(&half())))
        .add(&LaurentPoly::term(-1, c.sub(s).scale(&half())))
}

fn hyperbolic_system_symbolic() -> &'static AlgebraicSystem {
    static SYSTEM: OnceLock<AlgebraicSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let q = hyperbolic_laurent(int(1), &sym("c1"), &sym("c2"));
        let ring = QuotientRing { q };
        let u = Fraction {
            num: hyperbolic_laurent(sym("a0"), &sym("a1"), &sym("a2")),
            den_power: 1,
        };
        let dx = Derivation::exponential(int(1));
        let dt = Derivation::exponential(sym("lambda"));
        let (num, n) = pde_numerator(&ring, &u, &dx, &dt, &sym("b"));
        let (num, s) = normalize_low(&num);
        AlgebraicSystem::from_laurent(
            Method::RationalHyperbolic,
            "zeta",
            format!("Q^{n}*zeta^{s}"),
            HYPERBOLIC_UNKNOWNS.to_vec(),
            &num,
        )
    })
}

/// Coefficients of powers of `ζ = exp(ξ)` in the residual of the rational
/// hyperbolic ansatz, cleared by `Q^5 ζ^k` with `Q` its denominator.
pub fn rational_hyperbolic_system(b: &Expr) -> AlgebraicSystem {
    with_b(hyperbolic_system_symbolic(), b)
}

// ---------------------------------------------------------------------------
// Tanh-coth

pub const TANH_COTH_UNKNOWNS: [&str; 9] = ["lambda", "a0", "a1", "a2", "c1", "c2", "alpha", "beta", "gamma"];

/// Two degrees `k m + c`, each written `(k, c)`, set equal.
pub type BalanceEquation = ((i32, i32), (i32, i32));

/// Degrees the balance rule equates, as printed: pairs `(p, q)` meaning
/// `p_m + p_c = q_m + q_c` with the value written as `(coefficient of m,
/// constant)`.
pub const PRINTED_BALANCE: [BalanceEquation; 3] = [((3, 1), (2, 1)), ((3, 1), (1, 1)), ((2, 1), (1, 3))];

fn solve_balance(eqs: &[BalanceEquation]) -> BTreeSet<i32> {
    eqs.iter()
        .filter_map(|((a, b), (c, d))| {
            let (k, r) = (a - c, d - b);
            (k != 0 && r % k == 0).then_some(r / k)
        })
        .filter(|m| *m >= 0)
        .collect()
}

/// Candidate expansion orders from the printed balance equations.
pub fn balance_m() -> BTreeSet<i32> {
    solve_balance(&PRINTED_BALANCE)
}

/// The expansion order actually used: the largest nontrivial candidate.
pub fn working_m() -> i32 {
    balance_m().into_iter().max().unwrap_or(0)
}

/// Balance from the leading degrees of the individual ODE terms: `U'U²`
/// has degree `3m+1` and `U U'''` has `2m+3`.
pub fn balance_from_terms() -> BTreeSet<i32> {
    solve_balance(&[((3, 1), (2, 3))])
}

/// `u = a0 + a1 φ + c1/φ + a2 φ² + c2/φ²` as a Laurent polynomial.
fn tanh_coth_u(c: [&Polynomial; 5]) -> LaurentPoly {
    let [a0, a1, a2, c1, c2] = c;
    LaurentPoly::constant(a0.clone())
        .add(&LaurentPoly::term(1, a1.clone()))
        .add(&LaurentPoly::term(-1, c1.clone()))
        .add(&LaurentPoly::term(2, a2.clone()))
        .add(&LaurentPoly::term(-2, c2.clone()))
}

/// ODE residual `(b+1)U'U² − U'''U − λU''' + λU' − bU'U''` of the Laurent
/// ansatz with `φ' = α + βφ + γφ²`, before clearing.
pub fn tanh_coth_residual(
    u: &LaurentPoly,
    d: &Derivation,
    lambda: &Polynomial,
    b: &Polynomial,
) -> LaurentPoly {
    let d1 = d.apply(u);
    let d2 = d.apply(&d1);
    let d3 = d.apply(&d2);
    d1.mul(&u.mul(u))
        .scale(&b.add(&int(1)))
        .sub(&d3.mul(u))
        .sub(&d3.scale(lambda))
        .add(&d1.scale(lambda))
        .sub(&d1.mul(&d2).scale(b))
}

/// Power of `φ` that clears the negative exponents of the m = 2 residual.
pub const TANH_COTH_CLEARING: i32 = 7;

/// Substitute concrete or symbolic coefficients into the m = 2 ansatz and
/// return the residual multiplied by `φ^7`.
pub fn tanh_coth_substitute(
    coefficients: [&Expr; 5],
    spec: &RiccatiSpec,
    lambda: &Expr,
    b: &Expr,
) -> LaurentPoly {
    let c = coefficients.map(Polynomial::from_expr);
    let d = Derivation::riccati(
        Polynomial::constant(spec.alpha.clone()),
        Polynomial::constant(spec.beta.clone()),
        Polynomial::constant(spec.gamma.clone()),
    );
    let u = tanh_coth_u([&c[0], &c[1], &c[2], &c[3], &c[4]]);
    tanh_coth_residual(&u, &d, &Polynomial::from_expr(lambda), &Polynomial::from_expr(b))
        .shift(TANH_COTH_CLEARING)
}

fn tanh_coth_system_symbolic() -> &'static AlgebraicSystem {
    static SYSTEM: OnceLock<AlgebraicSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let names = ["a0", "a1", "a2", "c1", "c2"].map(sym);
        let u = tanh_coth_u([&names[0], &names[1], &names[2], &names[3], &names[4]]);
        let d = Derivation::riccati(sym("alpha"), sym("beta"), sym("gamma"));
        let r = tanh_coth_residual(&u, &d, &sym("lambda"), &sym("b")).shift(TANH_COTH_CLEARING);
        AlgebraicSystem::from_laurent(
            Method::TanhCoth,
            "phi",
            format!("phi^{TANH_COTH_CLEARING}"),
            TANH_COTH_UNKNOWNS.to_vec(),
            &r,
        )
    })
}

/// Coefficients of powers of `φ` in `φ^7` times the m = 2 residual, with the
/// Riccati coefficients left as unknowns.
pub fn tanh_coth_system(b: &Expr) -> AlgebraicSystem {
    with_b(tanh_coth_system_symbolic(), b)
}

// ---------------------------------------------------------------------------
// Catalog ties

/// The symbolic system a method produces.
pub fn system_for(method: Method) -> &'static AlgebraicSystem {
    match method {
        Method::ColeHopf => cole_hopf_system_symbolic(),
        Method::RationalHyperbolic => hyperbolic_system_symbolic(),
        Method::TanhCoth => tanh_coth_system_symbolic(),
    }
}

/// The ansatz-level values (plus `b`) a family instance produces.
pub fn family_values(inst: &catalog::FamilyInstance) -> Result<Bindings, AnsatzError> {
    let fam = inst.family()?;
    fam.validate(&inst.params)?;
    let values = fam
        .ansatz
        .evaluate(&inst.params)
        .map_err(|source| AnsatzError::Evaluation {
            what: format!("{} coefficients", fam.id),
            source,
        })?;
    Ok(values.with("b", inst.params.get("b").unwrap_or_default()))
}

/// Add `delta` to one named coefficient.
pub fn perturb(values: &Bindings, name: &str, delta: f64) -> Result<Bindings, AnsatzError> {
    let v = values
        .get(name)
        .ok_or_else(|| AnsatzError::UnknownCoefficient(name.to_string()))?;
    Ok(values.clone().with(name, v + delta))
}

/// Substitute a family instance's coefficients into its method's system.
pub fn verify_family_against_system(inst: &catalog::FamilyInstance) -> Result<SystemCheck, AnsatzError> {
    let fam = inst.family()?;
    system_for(fam.method).check(&family_values(inst)?)
}

/// Exact version for rational parameters: every coefficient map entry must
/// simplify to a rational number. `None` when one does not.
pub fn verify_family_exact(id: &str, params: &BTreeMap<String, Number>) -> Result<Option<bool>, AnsatzError> {
    let fam = catalog::family(id)?;
    let map: BTreeMap<String, Expr> = params
        .iter()
        .map(|(k, v)| (k.clone(), Expr::num(v.clone())))
        .collect();
    let mut values = BTreeMap::new();
    for (name, e) in fam.ansatz.entries() {
        match e.substitute_all(&map).simplify().as_number() {
            Some(n) if n.is_exact() => values.insert(name.to_string(), n.clone()),
            _ => return Ok(None),
        };
    }
    let Some(b) = params.get("b") else {
        return Ok(None);
    };
    values.insert("b".to_string(), b.clone());
    Ok(system_for(fam.method).vanishes_exactly(&values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polynomial {
        Polynomial::from_expr(&parse(s).unwrap())
    }

    #[test]
    fn derivation_of_riccati_powers() {
        let d = Derivation::riccati(poly("a"), poly("b"), poly("g"));
        let phi2 = LaurentPoly::monomial(2, Number::one());
        let got = d.apply(&phi2);
        assert_eq!(got.coefficient(1), poly("2*a"));
        assert_eq!(got.coefficient(2), poly("2*b"));
        assert_eq!(got.coefficient(3), poly("2*g"));
        let inv = LaurentPoly::monomial(-1, Number::one());
        let got = d.apply(&inv);
        assert_eq!(got.coefficient(-2), poly("-a"));
        assert_eq!(got.coefficient(0), poly("-g"));
    }

    #[test]
    fn quotient_derivative_matches_direct_differentiation() {
        // d/dx of ζ/(1+ζ)² with ζ = e^x, compared against the expression engine.
        let q = LaurentPoly::monomial(0, Number::one()).add(&LaurentPoly::monomial(1, Number::one()));
        let ring = QuotientRing { q: q.clone() };
        let f = Fraction {
            num: LaurentPoly::monomial(1, Number::one()),
            den_power: 2,
        };
        let df = ring.derive(&Derivation::exponential(int(1)), &f);
        let zeta = Expr::sym("x").exp();
        let as_expr = df.num.to_expr(&zeta) / q.to_expr(&zeta).powi(i64::from(df.den_power));
        let direct = (&zeta / (Expr::one() + &zeta).powi(2)).diff("x");
        for x in [-1.3, 0.0, 0.4, 2.2] {
            let env = Bindings::from_pairs([("x", x)]);
            let (a, b) = (as_expr.eval(&env).unwrap(), direct.eval(&env).unwrap());
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn cole_hopf_forms() {
        let forms = cole_hopf_build(&Expr::sym("A"), &Expr::zero(), &Expr::one(), &Expr::one(), &Expr::zero()).unwrap();
        let env = Bindings::from_pairs([("A", 1.0), ("x", 0.0), ("t", 0.0)]);
        assert!((forms.log_form.eval(&env).unwrap() - 0.25).abs() < 1e-15);
        assert!((forms.cosh_form.eval(&env).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(
            cole_hopf_build(&Expr::zero(), &Expr::zero(), &Expr::one(), &Expr::one(), &Expr::zero()).unwrap_err(),
            AnsatzError::ZeroParameter("A")
        );
    }

    #[test]
    fn cole_hopf_system_shape() {
        let sys = cole_hopf_system(&Expr::sym("b"));
        assert_eq!(sys.powers(), [1, 2, 3, 4, 5, 6]);
        assert_eq!(sys.clearing, "(1+zeta)^7");
        let reduced = sys.reduced();
        let low = reduced.equation(1).unwrap().to_expr();
        let bullet1 = parse(PRINTED_COLE_HOPF[0]).unwrap();
        let dom = cole_hopf_domain();
        let k = proportionality(&low, &bullet1, &dom, &Bindings::new(), 20, 1, 1e-9).unwrap();
        assert!((k.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn balance() {
        assert_eq!(balance_m(), BTreeSet::from([0, 2]));
        assert_eq!(working_m(), 2);
        assert_eq!(balance_from_terms(), BTreeSet::from([2]));
    }

    #[test]
    fn constant_ansatz_has_zero_residual() {
        let spec = RiccatiSpec::new(1, 0, -1).unwrap();
        let zero = Expr::zero();
        let r = tanh_coth_substitute([&Expr::sym("a0"), &zero, &zero, &zero, &zero], &spec, &Expr::sym("lambda"), &Expr::sym("b"));
        assert!(r.is_zero());
    }

    #[test]
    fn tanh_coth_leading_exponent() {
        let sys = tanh_coth_system(&Expr::sym("b"));
        assert_eq!(sys.powers().first(), Some(&0));
        assert_eq!(sys.powers().last(), Some(&14));
        assert_eq!(14 - TANH_COTH_CLEARING, 3 * working_m() + 1);
    }
}
