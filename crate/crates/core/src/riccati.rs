//! Closed-form solutions of the Riccati equation `φ' = α + βφ + γφ²`.
//!
//! Each branch keeps the form as it is usually printed next to the form
//! actually used. Where the printed form fails the equation, the used form is
//! selected from sign-reflected and real-radical candidates by the residual
//! oracle, so every [`RiccatiBranch::phi`] is checked before it is handed out.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Bindings, EvalError, Expr, Number};
use crate::residual::ResidualReport;
use crate::zeros::zeros_in;

/// Default tolerance for "equals zero" tests on floating-point parameters.
pub const DEFAULT_EPS: f64 = 1e-12;
/// Relative tolerance of the branch verifier.
pub const VERIFY_TOL: f64 = 1e-9;
/// Sampling window of the branch verifier.
pub const VERIFY_WINDOW: (f64, f64) = (-5.0, 5.0);
/// Minimum distance of verifier samples from a pole.
pub const POLE_DISTANCE: f64 = 0.1;

const SELECTION_POINTS: usize = 64;
const SELECTION_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiccatiError {
    #[error("α, β and γ are all zero")]
    AllZero,
    #[error("parameters do not satisfy case {case}: {requirement}")]
    CaseMismatch {
        case: &'static str,
        requirement: &'static str,
    },
    #[error("need at least 10 sample points, got {0}")]
    TooFewPoints(usize),
    #[error("no admissible sample points away from poles")]
    NoAdmissiblePoints,
    #[error("evaluation failed at ξ = {at}: {source}")]
    Evaluation { at: f64, source: EvalError },
    #[error("no candidate form of case {0} satisfies the equation")]
    NoVerifiedForm(&'static str),
}

/// Riccati coefficients. The discriminant is always recomputed.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiSpec {
    pub alpha: Number,
    pub beta: Number,
    pub gamma: Number,
}

impl RiccatiSpec {
    pub fn new(
        alpha: impl Into<Number>,
        beta: impl Into<Number>,
        gamma: impl Into<Number>,
    ) -> Result<Self, RiccatiError> {
        let spec = Self {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
        };
        if spec.alpha.is_zero() && spec.beta.is_zero() && spec.gamma.is_zero() {
            return Err(RiccatiError::AllZero);
        }
        Ok(spec)
    }

    /// `β² − 4αγ`
    pub fn discriminant(&self) -> Number {
        let four_ag = Number::int(4).mul(&self.alpha).mul(&self.gamma);
        self.beta.mul(&self.beta).add(&four_ag.neg())
    }

    fn exprs(&self) -> (Expr, Expr, Expr) {
        (
            Expr::num(self.alpha.clone()),
            Expr::num(self.beta.clone()),
            Expr::num(self.gamma.clone()),
        )
    }

    /// `α + βφ + γφ²` at a numeric `φ`.
    pub fn rhs(&self, phi: f64) -> f64 {
        self.alpha.to_f64() + self.beta.to_f64() * phi + self.gamma.to_f64() * phi * phi
    }
}

/// Sign pattern of `(α, γ)` in the `β = 0` branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quadrant {
    /// α > 0, γ > 0
    PosPos,
    /// α > 0, γ < 0
    PosNeg,
    /// α < 0, γ > 0
    NegPos,
    /// α < 0, γ < 0
    NegNeg,
}

/// Which closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RiccatiCase {
    /// α = 0, β ≠ 0
    Case1,
    /// α = β = 0, γ ≠ 0
    Case2,
    /// γ = 0, β ≠ 0
    Case3,
    /// β = 0, αγ ≠ 0
    Case4(Quadrant),
    /// β ≠ 0, Δ = 0
    Case5,
    /// Δ < 0
    Case6,
    /// Δ > 0, γ ≠ 0
    Case7,
    /// α ≠ 0, β = γ = 0, so φ = αξ. Not one of the seven printed cases.
    Linear,
}

impl RiccatiCase {
    pub fn label(self) -> &'static str {
        match self {
            RiccatiCase::Case1 => "1",
            RiccatiCase::Case2 => "2",
            RiccatiCase::Case3 => "3",
            RiccatiCase::Case4(Quadrant::PosPos) => "4a",
            RiccatiCase::Case4(Quadrant::PosNeg) => "4b",
            RiccatiCase::Case4(Quadrant::NegPos) => "4c",
            RiccatiCase::Case4(Quadrant::NegNeg) => "4d",
            RiccatiCase::Case5 => "5",
            RiccatiCase::Case6 => "6",
            RiccatiCase::Case7 => "7",
            RiccatiCase::Linear => "linear",
        }
    }
}

fn sign(n: &Number, eps: f64) -> i8 {
    match n {
        Number::Rational(_) => {
            if n.is_zero() {
                0
            } else if n.is_negative() {
                -1
            } else {
                1
            }
        }
        Number::Float(v) => {
            if v.abs() <= eps {
                0
            } else if *v < 0.0 {
                -1
            } else {
                1
            }
        }
    }
}

/// Pick the branch by the fixed priority order 2, 1, 3, 5, 4, 6/7. `eps`
/// is the zero tolerance for float parameters; rationals compare exactly.
pub fn classify_case(spec: &RiccatiSpec, eps: f64) -> Result<RiccatiCase, RiccatiError> {
    let (a, b, g) = (sign(&spec.alpha, eps), sign(&spec.beta, eps), sign(&spec.gamma, eps));
    let d = sign(&spec.discriminant(), eps);
    Ok(match (a, b, g) {
        (0, 0, 0) => return Err(RiccatiError::AllZero),
        (0, 0, _) => RiccatiCase::Case2,
        (0, _, _) => RiccatiCase::Case1,
        (_, b, 0) if b != 0 => RiccatiCase::Case3,
        (_, b, _) if b != 0 && d == 0 => RiccatiCase::Case5,
        (a, 0, g) if g != 0 => RiccatiCase::Case4(match (a > 0, g > 0) {
            (true, true) => Quadrant::PosPos,
            (true, false) => Quadrant::PosNeg,
            (false, true) => Quadrant::NegPos,
            (false, false) => Quadrant::NegNeg,
        }),
        (_, 0, 0) => RiccatiCase::Linear,
        _ if d < 0 => RiccatiCase::Case6,
        _ => RiccatiCase::Case7,
    })
}

fn check_case(spec: &RiccatiSpec, case: RiccatiCase, eps: f64) -> Result<(), RiccatiError> {
    let (a, b, g) = (sign(&spec.alpha, eps), sign(&spec.beta, eps), sign(&spec.gamma, eps));
    let d = sign(&spec.discriminant(), eps);
    let (ok, requirement) = match case {
        RiccatiCase::Case1 => (a == 0 && b != 0, "α = 0, β ≠ 0"),
        RiccatiCase::Case2 => (a == 0 && b == 0 && g != 0, "α = β = 0, γ ≠ 0"),
        RiccatiCase::Case3 => (g == 0 && b != 0, "γ = 0, β ≠ 0"),
        RiccatiCase::Case4(q) => {
            let want = match q {
                Quadrant::PosPos => (1, 1),
                Quadrant::PosNeg => (1, -1),
                Quadrant::NegPos => (-1, 1),
                Quadrant::NegNeg => (-1, -1),
            };
            (b == 0 && (a, g) == want, "β = 0 and the stated signs of α, γ")
        }
        RiccatiCase::Case5 => (b != 0 && d == 0, "β ≠ 0, β² = 4αγ"),
        RiccatiCase::Case6 => (d < 0, "β² < 4αγ"),
        RiccatiCase::Case7 => (d > 0 && g != 0, "β² > 4αγ, γ ≠ 0"),
        RiccatiCase::Linear => (a != 0 && b == 0 && g == 0, "α ≠ 0, β = γ = 0"),
    };
    if ok {
        Ok(())
    } else {
        Err(RiccatiError::CaseMismatch {
            case: case.label(),
            requirement,
        })
    }
}

fn xi() -> Expr {
    Expr::sym("xi")
}

/// The form as printed in the usual case list, verbatim.
fn printed_form(spec: &RiccatiSpec, case: RiccatiCase) -> Option<Expr> {
    let (a, b, g) = spec.exprs();
    let two = Expr::int(2);
    let x = xi();
    let ag = (&a * &g).sqrt();
    let neg_ag = (-(&a * &g)).sqrt();
    Some(match case {
        RiccatiCase::Case1 => &b / (-&g + &b * (-(&b * &x)).exp()),
        RiccatiCase::Case2 => -(&g * &x).recip(),
        RiccatiCase::Case3 => (-&a + &b * (&b * &x).exp()) / &b,
        RiccatiCase::Case4(Quadrant::PosPos) => &ag / &g * (&ag * &x).tan(),
        RiccatiCase::Case4(Quadrant::PosNeg) => &ag / &g * (&ag * &x).tanh(),
        RiccatiCase::Case4(Quadrant::NegPos) => &neg_ag / &g * (-(&neg_ag * &x)).tanh(),
        RiccatiCase::Case4(Quadrant::NegNeg) => &ag / &g * (-(&ag * &x)).tan(),
        RiccatiCase::Case5 => {
            -(&two * &a * (&b * &x + &two)) / (b.powi(2) * &x)
        }
        RiccatiCase::Case6 => {
            let th = (Expr::int(4) * &a * &g - b.powi(2)).sqrt();
            (&th * (&th * &x / &two).tan() - &b) / (&two * &g)
        }
        RiccatiCase::Case7 => {
            let th = (b.powi(2) - Expr::int(4) * &a * &g).sqrt();
            (&th * (&th * &x / &two).tanh() - &b) / (&two * &g)
        }
        RiccatiCase::Linear => return None,
    })
}

fn reflect(e: &Expr) -> Expr {
    e.substitute("xi", &-xi())
}

/// Ordered candidates: the printed form first, then its reflection ξ → −ξ,
/// then real-radical rewrites where the printed radical is imaginary.
fn candidates(spec: &RiccatiSpec, case: RiccatiCase) -> Vec<Expr> {
    let Some(printed) = printed_form(spec, case) else {
        let (a, _, _) = spec.exprs();
        return vec![a * xi()];
    };
    let mut out = vec![printed.clone(), reflect(&printed)];
    if case == RiccatiCase::Case4(Quadrant::PosNeg) {
        let (a, _, g) = spec.exprs();
        let r = (-(&a * &g)).sqrt();
        let real = &r / -&g * (&r * xi()).tanh();
        out.push(reflect(&real));
        out.insert(2, real);
    }
    out
}

/// A classified branch with its verified closed form.
#[derive(Clone, Debug)]
pub struct RiccatiBranch {
    pub spec: RiccatiSpec,
    pub case: RiccatiCase,
    /// Whether the printed form itself satisfies the equation.
    pub as_printed: bool,
    phi: Expr,
    printed: Option<Expr>,
}

impl RiccatiBranch {
    /// Build the branch for an explicitly chosen case.
    pub fn new(spec: RiccatiSpec, case: RiccatiCase, eps: f64) -> Result<Self, RiccatiError> {
        check_case(&spec, case, eps)?;
        let printed = printed_form(&spec, case);
        let mut chosen = None;
        for (i, cand) in candidates(&spec, case).into_iter().enumerate() {
            let passes = verify_phi(&cand, &spec, SELECTION_POINTS, SELECTION_SEED)
                .map(|r| r.pass)
                .unwrap_or(false);
            if passes {
                chosen = Some((i, cand));
                break;
            }
        }
        let Some((index, phi)) = chosen else {
            return Err(RiccatiError::NoVerifiedForm(case.label()));
        };
        Ok(Self {
            as_printed: printed.is_some() && index == 0,
            spec,
            case,
            phi,
            printed,
        })
    }

    /// The verified closed form φ(ξ), in the symbol `xi`.
    pub fn phi(&self) -> &Expr {
        &self.phi
    }

    /// The printed form, when this case has one.
    pub fn printed(&self) -> Option<&Expr> {
        self.printed.as_ref()
    }
}

/// Classify and build the verified branch.
pub fn classify(spec: &RiccatiSpec, eps: f64) -> Result<RiccatiBranch, RiccatiError> {
    let case = classify_case(spec, eps)?;
    RiccatiBranch::new(spec.clone(), case, eps)
}

pub fn phi_expr(branch: &RiccatiBranch) -> Expr {
    branch.phi().clone()
}

/// Poles of `phi` on `window`: zeros of its singular factors.
pub fn poles(phi: &Expr, window: (f64, f64)) -> Vec<f64> {
    let mut out: Vec<f64> = phi
        .singular_factors()
        .iter()
        .flat_map(|f| zeros_in(|x| f.eval(&Bindings::from_pairs([("xi", x)])).ok(), window))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-8);
    out
}

/// Check `|φ' − (α + βφ + γφ²)|` at `n_points` seeded ξ in [−5, 5] kept
/// at least 0.1 from every pole. Passes iff the maximum is at most
/// `1e-9 · (1 + max |φ'|)`.
pub fn verify_phi(
    phi: &Expr,
    spec: &RiccatiSpec,
    n_points: usize,
    seed: u64,
) -> Result<ResidualReport, RiccatiError> {
    if n_points < 10 {
        return Err(RiccatiError::TooFewPoints(n_points));
    }
    let dphi = phi.diff("xi");
    let pole_list = poles(phi, VERIFY_WINDOW);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut max_res, mut scale): (f64, f64) = (0.0, 0.0);
    let (mut evaluated, mut excluded) = (0, 0);
    let attempts = 100 * n_points;
    for _ in 0..attempts {
        if evaluated == n_points {
            break;
        }
        let x = rng.random_range(VERIFY_WINDOW.0..=VERIFY_WINDOW.1);
        if pole_list.iter().any(|p| (x - p).abs() < POLE_DISTANCE) {
            excluded += 1;
            continue;
        }
        let env = Bindings::from_pairs([("xi", x)]);
        let at = |source| RiccatiError::Evaluation { at: x, source };
        let v = phi.eval(&env).map_err(at)?;
        let dv = dphi.eval(&env).map_err(at)?;
        max_res = max_res.max((dv - spec.rhs(v)).abs());
        scale = scale.max(dv.abs());
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(RiccatiError::NoAdmissiblePoints);
    }
    Ok(ResidualReport::new(max_res, evaluated, excluded, VERIFY_TOL, scale))
}

pub fn verify_branch(
    branch: &RiccatiBranch,
    n_points: usize,
    seed: u64,
) -> Result<ResidualReport, RiccatiError> {
    verify_phi(branch.phi(), &branch.spec, n_points, seed)
}

/// One row of the printed-versus-used comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub case: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub printed_passes: bool,
    /// `None` when the printed form is not real-valued on the window.
    pub max_residual_printed: Option<f64>,
    pub max_residual_corrected: f64,
    pub corrected_passes: bool,
    pub printed_error: Option<String>,
    pub printed: String,
    pub corrected: String,
}

/// Representative exact coefficients for every printed case.
pub fn audit_specs() -> Vec<(RiccatiCase, RiccatiSpec)> {
    let mk = |a: i64, b: i64, g: i64| RiccatiSpec::new(a, b, g).expect("nonzero spec");
    vec![
        (RiccatiCase::Case1, mk(0, 1, 1)),
        (RiccatiCase::Case2, mk(0, 0, 2)),
        (RiccatiCase::Case3, mk(1, 1, 0)),
        (RiccatiCase::Case4(Quadrant::PosPos), mk(1, 0, 1)),
        (RiccatiCase::Case4(Quadrant::PosNeg), mk(1, 0, -1)),
        (RiccatiCase::Case4(Quadrant::NegPos), mk(-1, 0, 1)),
        (RiccatiCase::Case4(Quadrant::NegNeg), mk(-1, 0, -1)),
        (RiccatiCase::Case5, mk(1, 2, 1)),
        (RiccatiCase::Case6, mk(1, 1, 1)),
        (RiccatiCase::Case7, mk(1, 3, 1)),
    ]
}

/// Verify every printed form verbatim and every used form.
pub fn audit_printed_forms(n_points: usize, seed: u64) -> Result<Vec<AuditRow>, RiccatiError> {
    let mut rows = Vec::new();
    for (case, spec) in audit_specs() {
        let branch = RiccatiBranch::new(spec.clone(), case, DEFAULT_EPS)?;
        let printed = branch.printed().expect("printed cases only").clone();
        let (printed_passes, max_printed, printed_error) =
            match verify_phi(&printed, &spec, n_points, seed) {
                Ok(r) => (r.pass, Some(r.max_abs_residual), None),
                Err(e) => (false, None, Some(e.to_string())),
            };
        let used = verify_branch(&branch, n_points, seed)?;
        rows.push(AuditRow {
            case: case.label().to_string(),
            alpha: spec.alpha.to_f64(),
            beta: spec.beta.to_f64(),
            gamma: spec.gamma.to_f64(),
            printed_passes,
            max_residual_printed: max_printed,
            max_residual_corrected: used.max_abs_residual,
            corrected_passes: used.pass,
            printed_error,
            printed: printed.to_string(),
            corrected: branch.phi().to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: i64, b: i64, g: i64) -> RiccatiSpec {
        RiccatiSpec::new(a, b, g).unwrap()
    }

    fn at(e: &Expr, x: f64) -> f64 {
        e.eval(&Bindings::from_pairs([("xi", x)])).unwrap()
    }

    #[test]
    fn all_zero_is_rejected() {
        assert_eq!(RiccatiSpec::new(0, 0, 0), Err(RiccatiError::AllZero));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_case(&spec(0, 2, -1), DEFAULT_EPS), Ok(RiccatiCase::Case1));
        assert_eq!(classify_case(&spec(0, 0, 5), DEFAULT_EPS), Ok(RiccatiCase::Case2));
        assert_eq!(classify_case(&spec(1, 2, 1), DEFAULT_EPS), Ok(RiccatiCase::Case5));
        assert_eq!(classify_case(&spec(3, 0, 0), DEFAULT_EPS), Ok(RiccatiCase::Linear));
        let near = RiccatiSpec::new(1.0, 2.0 + 1e-14, 1.0).unwrap();
        assert_eq!(classify_case(&near, DEFAULT_EPS), Ok(RiccatiCase::Case5));
    }

    #[test]
    fn case1_form_and_accuracy() {
        let br = classify(&spec(0, 2, -1), DEFAULT_EPS).unwrap();
        assert!(br.as_printed);
        let x: f64 = 0.4;
        let expected = 2.0 / (1.0 + 2.0 * (-2.0 * x).exp());
        assert!((at(br.phi(), x) - expected).abs() < 1e-15);
        let br = classify(&spec(0, 1, 1), DEFAULT_EPS).unwrap();
        let rep = verify_branch(&br, 200, 7).unwrap();
        assert!(rep.pass && rep.max_abs_residual <= 1e-12, "{rep:?}");
    }

    #[test]
    fn tan_and_exponential_examples() {
        let br = classify(&spec(1, 0, 1), DEFAULT_EPS).unwrap();
        assert!((at(br.phi(), 0.3) - 0.3f64.tan()).abs() < 1e-15);
        let br = classify(&spec(1, 1, 0), DEFAULT_EPS).unwrap();
        assert_eq!(at(br.phi(), 0.0), 0.0);
        assert!((at(br.phi(), 1.0) - (1f64.exp() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn case7_sign_is_selected_by_the_oracle() {
        let br = RiccatiBranch::new(spec(1, 0, -1), RiccatiCase::Case7, DEFAULT_EPS).unwrap();
        assert!(!br.as_printed);
        for x in [-2.0, -0.3, 0.5, 3.0] {
            assert!((at(br.phi(), x) - f64::tanh(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn imaginary_radical_branch_gets_real_form() {
        let br = classify(&spec(1, 0, -1), DEFAULT_EPS).unwrap();
        assert_eq!(br.case, RiccatiCase::Case4(Quadrant::PosNeg));
        assert!(!br.as_printed);
        assert!(verify_branch(&br, 100, 1).unwrap().pass);
        assert!(matches!(
            verify_phi(br.printed().unwrap(), &br.spec, 100, 1),
            Err(RiccatiError::Evaluation { .. })
        ));
    }

    #[test]
    fn negated_case6_fails() {
        let br = classify(&spec(1, 1, 1), DEFAULT_EPS).unwrap();
        assert_eq!(br.case, RiccatiCase::Case6);
        assert!(br.as_printed);
        let flipped = -br.phi().clone();
        assert!(!verify_phi(&flipped, &br.spec, 100, 3).unwrap().pass);
    }

    #[test]
    fn case5_matches_its_partial_fraction_form() {
        let br = classify(&spec(1, 2, 1), DEFAULT_EPS).unwrap();
        for x in [-3.0, -0.7, 0.2, 1.9] {
            let expected = -1.0 - 1.0 / x;
            assert!((at(br.phi(), x) - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn explicit_case_must_match() {
        assert!(matches!(
            RiccatiBranch::new(spec(1, 1, 1), RiccatiCase::Case7, DEFAULT_EPS),
            Err(RiccatiError::CaseMismatch { case: "7", .. })
        ));
    }

    #[test]
    fn pole_exclusion_and_point_count() {
        let br = classify(&spec(0, 0, 1), DEFAULT_EPS).unwrap();
        let p = poles(br.phi(), VERIFY_WINDOW);
        assert_eq!(p.len(), 1);
        assert!(p[0].abs() < 1e-9);
        assert_eq!(verify_branch(&br, 5, 0), Err(RiccatiError::TooFewPoints(5)));
    }

    #[test]
    fn audit_table() {
        let rows = audit_printed_forms(100, 11).unwrap();
        let failing: Vec<&str> = rows
            .iter()
            .filter(|r| !r.printed_passes)
            .map(|r| r.case.as_str())
            .collect();
        assert_eq!(failing, ["4b", "4d", "7"]);
        assert!(rows.iter().all(|r| r.corrected_passes));
    }
}
