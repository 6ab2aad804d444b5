use mdpv::expr::{format, parse, Bindings, Expr};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Random expressions in `x` and `y` that are defined on the whole real
/// line: logs, roots and quotients only see arguments bounded away from 0.
pub fn arb_expr() -> impl Strategy<Value = Expr> {
    (arb_tree(), arb_tree()).prop_map(|(a, b)| a * Expr::sym("x") + b)
}

fn arb_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
        (-5i64..=5).prop_map(Expr::int),
        (-4i64..=4, 1i64..=4).prop_map(|(p, q)| Expr::ratio(p, q)),
    ];
    leaf.prop_recursive(6, 96, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / (Expr::int(2) + b.sin())),
            (inner.clone(), 0i64..=3).prop_map(|(a, n)| a.powi(n)),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.clone().prop_map(|a| a.tanh()),
            inner.clone().prop_map(|a| a.sin().exp()),
            inner.clone().prop_map(|a| a.tanh().cosh()),
            inner.clone().prop_map(|a| a.tanh().sinh()),
            inner.clone().prop_map(|a| (Expr::one() + a.powi(2)).log()),
            inner.clone().prop_map(|a| (Expr::one() + a.powi(2)).sqrt()),
        ]
    })
}

/// An expression with an evaluation point.
pub fn arb_case() -> impl Strategy<Value = (Expr, f64, f64)> {
    (arb_expr(), -1.5f64..1.5, -1.5f64..1.5)
}

fn at(x: f64, y: f64) -> Bindings {
    Bindings::from_pairs([("x", x), ("y", y)])
}

/// Symbolic `∂/∂x` against a fourth-order central difference.
pub fn check_derivative(e: &Expr, x: f64, y: f64) -> Result<(), TestCaseError> {
    let d = e.diff("x");
    let f = |x: f64| e.eval(&at(x, y));
    let (Ok(f0), Ok(dv)) = (f(x), d.eval(&at(x, y))) else {
        return Err(TestCaseError::reject("undefined"));
    };
    if !(f0.abs() < 1e6 && dv.abs() < 1e6) {
        return Err(TestCaseError::reject("too large"));
    }
    let h = 1e-3;
    let g = |x: f64| f(x).map_err(|err| TestCaseError::reject(err.to_string()));
    let fd = (8.0 * (g(x + h)? - g(x - h)?) - (g(x + 2.0 * h)? - g(x - 2.0 * h)?)) / (12.0 * h);
    let scale = 1.0_f64.max(dv.abs()).max(f0.abs());
    if (dv - fd).abs() <= 1e-6 * scale {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{e}: d = {dv}, fd = {fd}")))
    }
}

/// Formatting then parsing gives an expression with the same value.
pub fn check_roundtrip(e: &Expr, x: f64, y: f64) -> Result<(), TestCaseError> {
    let text = format(e);
    let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
    let (Ok(a), Ok(b)) = (e.eval(&at(x, y)), back.eval(&at(x, y))) else {
        return Err(TestCaseError::reject("undefined"));
    };
    if (a - b).abs() <= 1e-12 * 1.0_f64.max(a.abs()) {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{text}: {a} vs {b}")))
    }
}
