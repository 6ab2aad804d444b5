use std::collections::BTreeMap;

use mdpv::ansatz;
use mdpv::catalog::{self, FamilyInstance, ScanOptions};
use mdpv::expr::{self, Bindings};
use mdpv::riccati;
use mdpv::sim::{self, Grid, Scheme, SimConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn bindings(params: Option<BTreeMap<String, f64>>) -> Bindings {
    params.unwrap_or_default().into_iter().collect()
}

/// The solution catalog as a list of dicts.
#[pyfunction]
fn families(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &catalog::export_json())
}

/// Residual scan of one catalog instance; `params` must include `b`.
#[pyfunction]
#[pyo3(signature = (family, params, n = 257, tol = 1e-9))]
fn verify<'py>(py: Python<'py>, family: &str, params: BTreeMap<String, f64>, n: usize, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let inst = FamilyInstance::new(family, bindings(Some(params)));
    let opts = ScanOptions {
        n,
        tol,
        ..ScanOptions::default()
    };
    let report = catalog::verify_instance(&inst, &opts).map_err(err)?;
    to_py(py, &report)
}

/// Printed-versus-corrected Riccati table.
#[pyfunction]
#[pyo3(signature = (n = 64, seed = 42))]
fn riccati_audit(py: Python<'_>, n: usize, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let rows = riccati::audit_printed_forms(n, seed).map_err(err)?;
    to_py(py, &rows)
}

/// Substitute seeded draws of a family into its method's algebraic system.
#[pyfunction]
#[pyo3(signature = (family, draws = 20, seed = 42))]
fn system_verify<'py>(py: Python<'py>, family: &str, draws: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let fam = catalog::family(family).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for _ in 0..draws {
        let inst = fam.sample(None, &mut rng).map_err(err)?;
        checks.push(ansatz::verify_family_against_system(&inst).map_err(err)?);
    }
    to_py(py, &checks)
}

/// Candidate expansion orders from the balance rule.
#[pyfunction]
fn balance_m() -> Vec<i32> {
    ansatz::balance_m().into_iter().collect()
}

/// Integrate a catalog solution and compare with the exact one.
#[pyfunction]
#[pyo3(signature = (family = "u6", params = None, n = 512, l = 40.0, dt = 5e-4, t_end = 2.0, scheme = "spectral"))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    family: &str,
    params: Option<BTreeMap<String, f64>>,
    n: usize,
    l: f64,
    dt: f64,
    t_end: f64,
    scheme: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let params = params.unwrap_or_else(|| BTreeMap::from([("b".to_string(), 3.0)]));
    let b = *params.get("b").ok_or_else(|| err("params must include b"))?;
    let inst = FamilyInstance::new(family, bindings(Some(params)));
    let scheme: Scheme = scheme.parse().map_err(err)?;
    let cfg = SimConfig::new(b, dt, t_end, scheme, usize::MAX).map_err(err)?;
    let grid = Grid::new(n, l).map_err(err)?;
    let (report, _) = sim::run(&inst, &cfg, &grid).map_err(err)?;
    to_py(py, &report)
}

/// Symbolic derivative of an expression, formatted.
#[pyfunction]
fn diff(text: &str, var: &str) -> PyResult<String> {
    let e = expr::parse(text).map_err(err)?;
    Ok(expr::format(&e.diff(var)))
}

/// Numeric value of an expression.
#[pyfunction]
fn evaluate(text: &str, env: BTreeMap<String, f64>) -> PyResult<f64> {
    let e = expr::parse(text).map_err(err)?;
    e.eval(&bindings(Some(env))).map_err(err)
}

#[pymodule]
fn pymdpv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(riccati_audit, m)?)?;
    m.add_function(wrap_pyfunction!(system_verify, m)?)?;
    m.add_function(wrap_pyfunction!(balance_m, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(diff, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    Ok(())
}
