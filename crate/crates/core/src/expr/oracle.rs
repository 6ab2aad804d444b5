//! Sampling oracles for expression equality.
//!
//! Two expressions count as equal when their difference is at most
//! `tol * (1 + max |value|)` at every seeded random point of a declared box.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bindings, Expr};

/// Default relative tolerance of the pointwise-equality oracle.
pub const POINTWISE_TOL: f64 = 1e-10;
/// Default number of sample points.
pub const POINTWISE_POINTS: usize = 50;

/// A box over which symbols are sampled uniformly.
#[derive(Clone, Debug, Default)]
pub struct SampleBox {
    ranges: Vec<(String, f64, f64)>,
}

impl SampleBox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ranges.push((name.to_string(), lo, hi));
        self
    }

    pub fn draw(&self, rng: &mut impl Rng, base: &Bindings) -> Bindings {
        let mut env = base.clone();
        for (name, lo, hi) in &self.ranges {
            env.set(name, rng.random_range(*lo..=*hi));
        }
        env
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub max_abs_diff: f64,
    pub max_abs_value: f64,
    pub points: usize,
    pub equal: bool,
}

/// Compare `a` and `b` at `n_points` seeded points. Points where either side
/// fails to evaluate are redrawn, up to `20 * n_points` attempts.
pub fn compare(
    a: &Expr,
    b: &Expr,
    domain: &SampleBox,
    fixed: &Bindings,
    n_points: usize,
    seed: u64,
    tol: f64,
) -> Comparison {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_diff: f64 = 0.0;
    let mut max_val: f64 = 0.0;
    let mut points = 0;
    let mut attempts = 0;
    while points < n_points && attempts < 20 * n_points {
        attempts += 1;
        let env = domain.draw(&mut rng, fixed);
        let (Ok(va), Ok(vb)) = (a.eval(&env), b.eval(&env)) else {
            continue;
        };
        max_diff = max_diff.max((va - vb).abs());
        max_val = max_val.max(va.abs()).max(vb.abs());
        points += 1;
    }
    Comparison {
        max_abs_diff: max_diff,
        max_abs_value: max_val,
        points,
        equal: points == n_points && max_diff <= tol * (1.0 + max_val),
    }
}

/// `compare` with the project-wide defaults.
pub fn pointwise_equal(a: &Expr, b: &Expr, domain: &SampleBox, fixed: &Bindings, seed: u64) -> bool {
    compare(a, b, domain, fixed, POINTWISE_POINTS, seed, POINTWISE_TOL).equal
}

/// If `a = k * b` pointwise for a nonzero constant `k`, return `k`.
pub fn proportionality(
    a: &Expr,
    b: &Expr,
    domain: &SampleBox,
    fixed: &Bindings,
    n_points: usize,
    seed: u64,
    tol: f64,
) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratio: Option<f64> = None;
    let mut points = 0;
    let mut attempts = 0;
    while points < n_points && attempts < 20 * n_points {
        attempts += 1;
        let env = domain.draw(&mut rng, fixed);
        let (Ok(va), Ok(vb)) = (a.eval(&env), b.eval(&env)) else {
            continue;
        };
        let scale = va.abs().max(vb.abs());
        if vb.abs() <= 1e-8 * (1.0 + scale) {
            // Both must vanish together.
            if va.abs() > tol * (1.0 + scale) {
                return None;
            }
            continue;
        }
        let r = va / vb;
        match ratio {
            None => ratio = Some(r),
            Some(k) => {
                if (r - k).abs() > tol * (1.0 + k.abs()) {
                    return None;
                }
            }
        }
        points += 1;
    }
    ratio.filter(|k| points == n_points && *k != 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn identity_detected_and_rejected() {
        let a = parse("cosh(x)^2 - sinh(x)^2").unwrap();
        let one = Expr::one();
        let dom = SampleBox::new().with("x", -3.0, 3.0);
        assert!(pointwise_equal(&a, &one, &dom, &Bindings::new(), 1));
        let b = parse("cosh(x)^2").unwrap();
        assert!(!pointwise_equal(&b, &one, &dom, &Bindings::new(), 1));
    }

    #[test]
    fn proportional_up_to_sign() {
        let a = parse("x^2 - y").unwrap();
        let b = parse("2*y - 2*x^2").unwrap();
        let dom = SampleBox::new().with("x", -1.0, 1.0).with("y", -1.0, 1.0);
        let k = proportionality(&a, &b, &dom, &Bindings::new(), 20, 3, 1e-10).unwrap();
        assert!((k + 0.5).abs() < 1e-12);
        let c = parse("x^2 + y").unwrap();
        assert!(proportionality(&a, &c, &dom, &Bindings::new(), 20, 3, 1e-10).is_none());
    }
}
