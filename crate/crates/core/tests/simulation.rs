use mdpv::catalog::{self, FamilyInstance};
use mdpv::expr::Bindings;
use mdpv::sim::{self, exact_on_grid, observed_order, run, Grid, Scheme, SimConfig, SimError, SimState, Solver};

fn u6() -> FamilyInstance {
    FamilyInstance::new("u6", Bindings::from_pairs([("b", 3.0)]))
}

fn u6_run(scheme: Scheme, n: usize) -> sim::SimReport {
    let cfg = SimConfig::new(3.0, 5e-4, 2.0, scheme, 200).unwrap();
    run(&u6(), &cfg, &Grid::new(n, 40.0).unwrap()).unwrap().0
}

#[test]
fn spectral_u6_tracks_the_exact_solution() {
    let rep = u6_run(Scheme::Spectral, 512);
    eprintln!("{rep:?}");
    assert!(rep.linf_error <= 1e-3, "{rep:?}");
    assert!(rep.mass_drift <= 1e-8, "{rep:?}");
    assert!((rep.measured_speed / -2.5 - 1.0).abs() <= 0.01, "{rep:?}");
    assert_eq!(rep.expected_speed, -2.5);
}

#[test]
fn fd4_converges_at_fourth_order() {
    let coarse = u6_run(Scheme::Fd4, 256);
    let fine = u6_run(Scheme::Fd4, 512);
    let order = observed_order(coarse.linf_error, fine.linf_error);
    eprintln!("fd4: {} -> {} (order {order:.3})", coarse.linf_error, fine.linf_error);
    assert!(order >= 3.5, "order {order}");
    assert!(fine.mass_drift <= 1e-8);
}

#[test]
fn rhs_matches_the_traveling_wave_identity() {
    // u = U(x + λt) gives u_t = λ u_x.
    let grid = Grid::new(512, 40.0).unwrap();
    let exact = catalog::build(&u6()).unwrap();
    let u = exact_on_grid(&exact, &grid, 0.0).unwrap();
    let solver = Solver::new(grid, Scheme::Spectral);
    let ut = solver.rhs(&u, 3.0).unwrap();
    let ux = solver.derivative(&u, 1);
    let dev = ut.iter().zip(&ux).fold(0.0_f64, |m, (a, b)| m.max((a - (-2.5) * b).abs()));
    assert!(dev < 1e-6, "{dev}");
}

#[test]
fn flux_form_has_zero_discrete_integral() {
    let grid = Grid::new(256, 40.0).unwrap();
    let u: Vec<f64> = grid.nodes().iter().map(|x| (x * 0.3).sin() + 0.5 * (-x * x).exp()).collect();
    for scheme in [Scheme::Spectral, Scheme::Fd4] {
        let pre = Solver::new(grid, scheme).flux_divergence(&u, 1.7);
        let scale: f64 = pre.iter().map(|v| v.abs()).sum();
        let total: f64 = pre.iter().sum();
        assert!(total.abs() <= 1e-12 * scale, "{scheme}: {total}");
    }
}

#[test]
fn one_step_matches_the_exact_solution() {
    let grid = Grid::new(512, 40.0).unwrap();
    let exact = catalog::build(&u6()).unwrap();
    let u0 = exact_on_grid(&exact, &grid, 0.0).unwrap();
    let solver = Solver::new(grid, Scheme::Spectral);
    let next = solver.step_rk4(&SimState { t: 0.0, u: u0 }, 3.0, 1e-3).unwrap();
    let want = exact_on_grid(&exact, &grid, 1e-3).unwrap();
    let dev = next.u.iter().zip(&want).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(dev <= 1e-6, "{dev}");
}

#[test]
fn integration_is_reversible() {
    let grid = Grid::new(256, 40.0).unwrap();
    let exact = catalog::build(&u6()).unwrap();
    let u0 = exact_on_grid(&exact, &grid, 0.0).unwrap();
    let solver = Solver::new(grid, Scheme::Spectral);
    let start = SimState { t: 0.0, u: u0.clone() };
    let forward = solver.integrate(&start, 3.0, 1e-3, 500).unwrap();
    let want = exact_on_grid(&exact, &grid, forward.t).unwrap();
    let fwd_err = forward.u.iter().zip(&want).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    let back = solver.integrate(&forward, 3.0, -1e-3, 500).unwrap();
    let back_err = back.u.iter().zip(&u0).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(back_err <= 10.0 * fwd_err.max(1e-12), "{back_err} vs {fwd_err}");
}

#[test]
fn other_admissible_families_run() {
    let grid = Grid::new(256, 40.0).unwrap();
    let cases = [
        FamilyInstance::new("u3", Bindings::from_pairs([("b", 1.0)])),
        FamilyInstance::new("u1", Bindings::from_pairs([("b", 1.0), ("mu", 0.9)])),
        FamilyInstance::new("u20", Bindings::from_pairs([("b", 1.0), ("alpha", 0.5), ("beta", 1.0), ("gamma", 0.2)])),
    ];
    for inst in cases {
        let cfg = SimConfig::new(1.0, 5e-4, 0.5, Scheme::Spectral, 100).unwrap();
        let rep = run(&inst, &cfg, &grid).unwrap().0;
        eprintln!("{rep:?}");
        assert!(rep.linf_error <= 1e-3, "{rep:?}");
    }
}

#[test]
fn singular_families_are_rejected() {
    let cfg = SimConfig::new(3.0, 5e-4, 2.0, Scheme::Spectral, 100).unwrap();
    let inst = FamilyInstance::new("u5", Bindings::from_pairs([("b", 3.0)]));
    assert!(matches!(run(&inst, &cfg, &Grid::new(512, 40.0).unwrap()), Err(SimError::NotAdmissible(_))));
}

#[test]
fn short_domains_are_rejected() {
    let cfg = SimConfig::new(3.0, 5e-4, 2.0, Scheme::Spectral, 100).unwrap();
    assert!(matches!(run(&u6(), &cfg, &Grid::new(64, 10.0).unwrap()), Err(SimError::Tail { .. })));
}
