use mdpv::catalog::{self, verify_instance, FamilyInstance, ScanOptions, SAMPLE_B};
use mdpv::expr::oracle::{pointwise_equal, SampleBox};
use mdpv::expr::{Bindings, Expr};
use mdpv::residual::Equation;
use mdpv::riccati::{classify, RiccatiSpec, DEFAULT_EPS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instances(id: &str, seed: u64) -> Vec<FamilyInstance> {
    let fam = catalog::family(id).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SAMPLE_B
        .iter()
        .map(|&b| fam.sample(Some(b), &mut rng).unwrap())
        .collect()
}

#[test]
fn every_family_solves_the_mdp_equation() {
    let opts = ScanOptions::default();
    for fam in catalog::list() {
        for inst in instances(fam.id, 42) {
            let rep = verify_instance(&inst, &opts).unwrap();
            assert!(rep.pass, "{} {:?}: {rep:?}", fam.id, inst.params);
        }
    }
}

#[test]
fn u10_as_printed_is_not_a_solution() {
    let fam = catalog::family("u10").unwrap();
    let printed = fam.printed.as_ref().unwrap();
    let u = printed.substitute("xi", &(Expr::sym("x") + &fam.speed * Expr::sym("t")));
    let r = mdpv::residual::pde_residual(&u, &mdpv::residual::EquationVariant::mdp(Expr::sym("b")));
    let env = Bindings::from_pairs([("b", 1.0), ("c2", 2.0)]);
    let grid = mdpv::residual::ScanGrid::new((-8.0, 8.0), 257);
    let poles = catalog::singular_points(&FamilyInstance::new("u10", env.clone()), (-8.0, 8.0)).unwrap();
    let rep = mdpv::residual::scan_traveling(&r, &env, -1.5, 0.5, &grid.excluding(poles), 1e-9).unwrap();
    assert!(!rep.pass, "{rep:?}");
}

#[test]
fn mdp_solutions_fail_the_dp_equation() {
    let opts = ScanOptions {
        equation: Equation::Dp,
        ..ScanOptions::default()
    };
    let inst = FamilyInstance::new("u3", Bindings::from_pairs([("b", 3.0)]));
    assert!(!verify_instance(&inst, &opts).unwrap().pass);
}

#[test]
fn u1_at_unit_mu_is_u3() {
    for b in SAMPLE_B {
        let u1 = catalog::build(&FamilyInstance::new("u1", Bindings::from_pairs([("b", b), ("mu", 1.0)]))).unwrap();
        let u3 = catalog::build(&FamilyInstance::new("u3", Bindings::from_pairs([("b", b)]))).unwrap();
        let dom = SampleBox::new().with("x", -6.0, 6.0).with("t", -2.0, 2.0);
        assert!(pointwise_equal(&u1, &u3, &dom, &Bindings::new(), 9), "b = {b}");
    }
}

#[test]
fn u20_and_u21_are_symmetric_about_the_crest() {
    for id in ["u20", "u21"] {
        for inst in instances(id, 5) {
            let u = catalog::build(&inst).unwrap();
            let lam = catalog::wave_speed(&inst).unwrap();
            for (s, t) in [(0.3, 0.2), (1.7, -1.0), (4.2, 2.5)] {
                let at = |x: f64| u.eval(&Bindings::from_pairs([("x", x), ("t", t)])).unwrap();
                let c = -lam * t;
                assert!((at(c + s) - at(c - s)).abs() <= 1e-10, "{id}");
            }
        }
    }
}

#[test]
fn translation_along_the_wave_speed() {
    for fam in catalog::list() {
        for inst in instances(fam.id, 17) {
            let u = catalog::build(&inst).unwrap();
            let lam = catalog::wave_speed(&inst).unwrap();
            let poles = catalog::singular_points(&inst, (-30.0, 30.0)).unwrap();
            for (x, t, d) in [(0.37, 0.21, 0.6), (-2.4, 1.1, -0.35)] {
                let xi = x + lam * t;
                if poles.iter().any(|p| (xi - p).abs() < 0.1) {
                    continue;
                }
                let a = u.eval(&Bindings::from_pairs([("x", x), ("t", t)])).unwrap();
                let b = u.eval(&Bindings::from_pairs([("x", x + lam * d), ("t", t - d)])).unwrap();
                assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{}: {a} vs {b}", fam.id);
            }
        }
    }
}

/// Rebuild each tanh-coth profile from its coefficients and the Riccati
/// solution, and compare with the closed form.
#[test]
fn tanh_coth_profiles_match_their_coefficients() {
    for fam in catalog::list().iter().filter(|f| f.method == catalog::Method::TanhCoth) {
        for inst in instances(fam.id, 23) {
            let c = fam.ansatz.evaluate(&inst.params).unwrap();
            let spec = RiccatiSpec::new(c.get("alpha").unwrap(), c.get("beta").unwrap(), c.get("gamma").unwrap())
                .unwrap();
            let phi = classify(&spec, DEFAULT_EPS).unwrap().phi().clone();
            let k = |n: &str| Expr::float(c.get(n).unwrap());
            let rebuilt = k("a0") + k("a1") * &phi + k("c1") / &phi + k("a2") * phi.powi(2) + k("c2") / phi.powi(2);
            let closed = catalog::profile(&inst).unwrap();
            let dom = SampleBox::new().with("xi", -4.0, 4.0);
            let cmp = mdpv::expr::oracle::compare(&rebuilt, &closed, &dom, &Bindings::new(), 50, 3, 1e-8);
            assert!(cmp.equal, "{} {:?}: {cmp:?}", fam.id, inst.params);
        }
    }
}

#[test]
fn hyperbolic_profiles_match_their_coefficients() {
    for fam in catalog::list().iter().filter(|f| f.method == catalog::Method::RationalHyperbolic) {
        for inst in instances(fam.id, 29) {
            let c = fam.ansatz.evaluate(&inst.params).unwrap();
            let k = |n: &str| Expr::float(c.get(n).unwrap());
            let xi = Expr::sym("xi");
            let rebuilt = (k("a0") + k("a1") * xi.sinh() + k("a2") * xi.cosh())
                / (Expr::one() + k("c1") * xi.sinh() + k("c2") * xi.cosh());
            let closed = catalog::profile(&inst).unwrap();
            let dom = SampleBox::new().with("xi", -4.0, 4.0);
            let cmp = mdpv::expr::oracle::compare(&rebuilt, &closed, &dom, &Bindings::new(), 50, 3, 1e-9);
            assert!(cmp.equal, "{} {:?}: {cmp:?}", fam.id, inst.params);
        }
    }
}
