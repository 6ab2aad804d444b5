use super::{Expr, Func, Node};

pub(super) fn diff(e: &Expr, s: &str) -> Expr {
    if !e.depends_on(s) {
        return Expr::zero();
    }
    match e.node() {
        Node::Num(_) => Expr::zero(),
        Node::Sym(name) => {
            if &**name == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Add(terms) => Expr::sum(terms.iter().map(|t| diff(t, s))),
        Node::Mul(factors) => {
            let mut terms = Vec::with_capacity(factors.len());
            for (i, f) in factors.iter().enumerate() {
                let df = diff(f, s);
                if df.is_zero() {
                    continue;
                }
                let others = factors
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone());
                terms.push(Expr::product(others.chain(std::iter::once(df))));
            }
            Expr::sum(terms)
        }
        Node::Pow(b, x) => {
            if !x.depends_on(s) {
                let reduced = b.pow(&(x - Expr::one()));
                return Expr::product([x.clone(), reduced, diff(b, s)]);
            }
            if !b.depends_on(s) {
                return Expr::product([e.clone(), b.log(), diff(x, s)]);
            }
            let inner = diff(x, s) * b.log() + x * diff(b, s) / b;
            e * inner
        }
        Node::Apply(f, a) => {
            let da = diff(a, s);
            let outer = match f {
                Func::Exp => e.clone(),
                Func::Log => a.recip(),
                Func::Sqrt => Expr::ratio(1, 2) * e.recip(),
                Func::Sin => a.cos(),
                Func::Cos => -a.sin(),
                Func::Tan => Expr::one() + e.powi(2),
                Func::Cot => -(Expr::one() + e.powi(2)),
                Func::Csc => -(e * a.cot()),
                Func::Sinh => a.cosh(),
                Func::Cosh => a.sinh(),
                Func::Tanh => Expr::one() - e.powi(2),
            };
            outer * da
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Bindings, Expr};

    fn at(e: &Expr, x: f64) -> f64 {
        e.eval(&Bindings::from_pairs([("x", x)])).unwrap()
    }

    #[test]
    fn tanh_slope_at_origin() {
        let d = parse("tanh(x)").unwrap().diff("x");
        assert_eq!(at(&d, 0.0), 1.0);
    }

    #[test]
    fn second_derivative_of_softplus() {
        // d²/dx² log(1+e^x) = e^x/(1+e^x)^2, which is 1/4 at 0.
        let d2 = parse("log(1+exp(x))").unwrap().diff_n("x", 2);
        assert!((at(&d2, 0.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn constants_differentiate_to_literal_zero() {
        assert_eq!(parse("c").unwrap().diff("x"), Expr::zero());
        assert_eq!(parse("sin(c)^2*b").unwrap().diff("x"), Expr::zero());
    }

    #[test]
    fn every_function_matches_central_difference() {
        let h = 1e-6;
        for text in [
            "exp(x)", "log(x)", "sqrt(x)", "sin(x)", "cos(x)", "tan(x)", "cot(x)", "csc(x)",
            "sinh(x)", "cosh(x)", "tanh(x)", "x^x", "2^x", "x^(3/2)",
        ] {
            let e = parse(text).unwrap();
            let d = e.diff("x");
            let x0 = 0.7;
            let fd = (at(&e, x0 + h) - at(&e, x0 - h)) / (2.0 * h);
            assert!((at(&d, x0) - fd).abs() < 1e-8 * (1.0 + fd.abs()), "{text}");
        }
    }
}
