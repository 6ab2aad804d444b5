//! Zero location for real functions on a window.

/// Grid density used when the caller has no better estimate.
pub const SAMPLES_PER_UNIT: f64 = 250.0;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-10;

/// All zeros of `f` in `window`: sign changes refined by bisection, plus
/// touching zeros (local minima of `|f|` that reach zero). Points where `f`
/// is undefined return `None` and are skipped. Sign changes across poles are
/// discarded because `|f|` stays large there.
pub fn locate_zeros(f: impl Fn(f64) -> Option<f64>, window: (f64, f64), samples: usize) -> Vec<f64> {
    let (a, b) = window;
    let n = samples.max(3);
    let step = (b - a) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| a + step * i as f64).collect();
    let vs: Vec<Option<f64>> = xs.iter().map(|&x| f(x).filter(|v| v.is_finite())).collect();
    let mut roots = Vec::new();

    for i in 0..n {
        if vs[i] == Some(0.0) {
            roots.push(xs[i]);
        }
    }
    for i in 0..n - 1 {
        let (Some(v0), Some(v1)) = (vs[i], vs[i + 1]) else {
            continue;
        };
        if v0 * v1 < 0.0 {
            if let Some(r) = bisect(&f, xs[i], xs[i + 1], v0) {
                let local = v0.abs().max(v1.abs());
                if f(r).is_some_and(|fr| fr.abs() <= 1e-6 * (1.0 + local)) {
                    roots.push(r);
                }
            }
        }
    }
    for i in 1..n - 1 {
        let (Some(l), Some(m), Some(r)) = (vs[i - 1], vs[i], vs[i + 1]) else {
            continue;
        };
        let same_sign = l * m > 0.0 && m * r > 0.0;
        if same_sign && m.abs() <= l.abs() && m.abs() <= r.abs() {
            let x = golden_min(|x| f(x).map_or(f64::INFINITY, f64::abs), xs[i - 1], xs[i + 1]);
            let local = l.abs().max(r.abs());
            if f(x).is_some_and(|v| v.abs() <= 1e-9 * (1.0 + local)) {
                roots.push(x);
            }
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-8);
    roots
}

/// `locate_zeros` with a grid of `SAMPLES_PER_UNIT` points per unit length.
pub fn zeros_in(f: impl Fn(f64) -> Option<f64>, window: (f64, f64)) -> Vec<f64> {
    let n = ((window.1 - window.0) * SAMPLES_PER_UNIT).ceil() as usize + 1;
    locate_zeros(f, window, n.max(64))
}

fn bisect(f: &impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64, f_lo: f64) -> Option<f64> {
    let lo_sign = f_lo.signum();
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let v = f(mid)?;
        if v == 0.0 {
            return Some(mid);
        }
        if v.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn golden_min(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while b - a > ROOT_TOL {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    0.5 * (a + b)
}
