mod common;

use std::process::ExitCode;

use mdpv::ansatz::{self, balance_m, match_printed_cole_hopf, verify_family_against_system, working_m};
use mdpv::catalog::{self, verify_instance, FamilyInstance, Method, ScanOptions, SAMPLE_B};
use mdpv::cli::{self, EXIT_OK};
use mdpv::expr::Bindings;
use mdpv::riccati::audit_printed_forms;
use mdpv::sim::{observed_order, run, Grid, Scheme, SimConfig};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn catalog_residuals() -> Outcome {
    let opts = ScanOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for fam in catalog::list() {
        let draws = if fam.param_names().len() > 1 { 5 } else { 1 };
        for b in SAMPLE_B {
            for _ in 0..draws {
                let inst = fam.sample(Some(b), &mut rng).map_err(|e| e.to_string())?;
                let rep = verify_instance(&inst, &opts).map_err(|e| format!("{}: {e}", fam.id))?;
                ensure(rep.pass, format!("{} {:?}: max |R| = {:.3e}", fam.id, inst.params, rep.max_abs_residual))?;
                worst = worst.max(rep.max_abs_residual / (1.0 + rep.scale));
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances of 23 families, worst scaled residual {worst:.2e}"))
}

fn riccati_audit() -> Outcome {
    let rows = audit_printed_forms(64, SEED).map_err(|e| e.to_string())?;
    ensure(rows.iter().all(|r| r.corrected_passes), "a corrected form fails")?;
    let row = |case: &str| rows.iter().find(|r| r.case == case).ok_or(format!("case {case} missing"));
    let complex = row("4b")?;
    ensure(
        !complex.printed_passes && complex.max_residual_printed.is_none(),
        "printed 4b is not classified as a complex radical",
    )?;
    let sign = row("7")?;
    ensure(!sign.printed_passes, "printed case 7 passes the oracle")?;
    let failing: Vec<&str> = rows.iter().filter(|r| !r.printed_passes).map(|r| r.case.as_str()).collect();
    Ok(format!("{} corrected forms pass; printed failures: {}", rows.len(), failing.join(", ")))
}

fn system_regeneration() -> Outcome {
    let first = &match_printed_cole_hopf(SEED)[0];
    ensure(first.power.is_some(), "first printed Cole-Hopf equation not reproduced")?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for fam in catalog::list() {
        let draws = if fam.method == Method::ColeHopf { 20 } else { 4 };
        for _ in 0..draws {
            let inst = fam.sample(None, &mut rng).map_err(|e| e.to_string())?;
            let check = verify_family_against_system(&inst).map_err(|e| e.to_string())?;
            ensure(check.pass, format!("{} {:?}: {:.3e}", fam.id, inst.params, check.max_relative))?;
            worst = worst.max(check.max_relative);
            checked += 1;
        }
    }
    Ok(format!(
        "printed equation 1 = coefficient of zeta^{}; {checked} substitutions, worst relative coefficient {worst:.2e}",
        first.power.unwrap_or_default()
    ))
}

fn identity_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for b in SAMPLE_B {
        let u1 = catalog::build(&FamilyInstance::new("u1", Bindings::from_pairs([("b", b), ("mu", 1.0)])))
            .map_err(|e| e.to_string())?;
        let u3 = catalog::build(&FamilyInstance::new("u3", Bindings::from_pairs([("b", b)]))).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let env = Bindings::from_pairs([("x", rng.random_range(-8.0..8.0)), ("t", rng.random_range(-2.0..2.0))]);
            let (a, c) = (u1.eval(&env).map_err(|e| e.to_string())?, u3.eval(&env).map_err(|e| e.to_string())?);
            let dev = (a - c).abs() / 1.0_f64.max(a.abs());
            ensure(dev <= 1e-12, format!("b = {b}: {a} vs {c}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("400 points, worst deviation {worst:.2e}"))
}

fn balance() -> Outcome {
    let m = balance_m();
    ensure(m.iter().copied().eq([0, 2]), format!("balance_m = {m:?}"))?;
    ensure(working_m() == 2, format!("working degree {}", working_m()))?;
    Ok("candidates {0, 2}, working degree 2".into())
}

fn simulator() -> Outcome {
    let inst = FamilyInstance::new("u6", Bindings::from_pairs([("b", 3.0)]));
    let run_at = |scheme, n| -> Result<mdpv::sim::SimReport, String> {
        let cfg = SimConfig::new(3.0, 5e-4, 2.0, scheme, 200).map_err(|e| e.to_string())?;
        let grid = Grid::new(n, 40.0).map_err(|e| e.to_string())?;
        Ok(run(&inst, &cfg, &grid).map_err(|e| e.to_string())?.0)
    };
    let rep = run_at(Scheme::Spectral, 512)?;
    ensure(rep.linf_error <= 1e-3, format!("L∞ error {:.3e}", rep.linf_error))?;
    ensure(rep.mass_drift <= 1e-8, format!("mass drift {:.3e}", rep.mass_drift))?;
    let rel = (rep.measured_speed / -2.5 - 1.0).abs();
    ensure(rel <= 0.01, format!("speed {}", rep.measured_speed))?;
    let coarse = run_at(Scheme::Fd4, 256)?;
    let fine = run_at(Scheme::Fd4, 512)?;
    let order = observed_order(coarse.linf_error, fine.linf_error);
    ensure(order >= 3.5, format!("fd4 order {order:.3}"))?;
    Ok(format!(
        "spectral L∞ {:.2e}, drift {:.1e}, speed {:.6}; fd4 order {order:.2}",
        rep.linf_error, rep.mass_drift, rep.measured_speed
    ))
}

fn negative_controls() -> Outcome {
    let cases: [&[&str]; 3] = [
        &["mdpv", "verify", "--expr", "x", "--b", "3"],
        &["mdpv", "verify", "--family", "u3", "--b", "3", "--equation", "dp"],
        &["mdpv", "system-verify", "--method", "tanhcoth", "--family", "u20", "--perturb", "a0=1e-3"],
    ];
    let mut codes = Vec::new();
    for args in cases {
        let code = cli::run(args.iter().copied(), &mut std::io::sink());
        ensure(code != EXIT_OK, format!("`{}` exited 0", args[1..].join(" ")))?;
        codes.push(code.to_string());
    }
    let values = ansatz::family_values(&catalog::family("u6").map_err(|e| e.to_string())?.sample(Some(3.0), &mut ChaCha8Rng::seed_from_u64(SEED)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let bumped = ansatz::perturb(&values, "a0", 1e-3).map_err(|e| e.to_string())?;
    let check = ansatz::system_for(Method::RationalHyperbolic).check(&bumped).map_err(|e| e.to_string())?;
    ensure(!check.pass, "perturbed u6 passes its system")?;
    Ok(format!("exit codes {}", codes.join(", ")))
}

fn expression_engine() -> Outcome {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&common::arb_case(), |(e, x, y)| common::check_derivative(&e, x, y))
        .map_err(|e| format!("derivative: {e}"))?;
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&common::arb_case(), |(e, x, y)| common::check_roundtrip(&e, x, y))
        .map_err(|e| format!("round trip: {e}"))?;
    Ok("1000 random trees: derivatives within 1e-6, round trip within 1e-12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("catalog residual suite", catalog_residuals),
        ("riccati audit", riccati_audit),
        ("system regeneration", system_regeneration),
        ("u1 at mu = 1 equals u3", identity_check),
        ("balance", balance),
        ("simulator manufactured solution", simulator),
        ("negative controls", negative_controls),
        ("expression engine", expression_engine),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
