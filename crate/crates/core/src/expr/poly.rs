//! Multivariate Laurent polynomials over expression atoms.
//!
//! An atom is any subexpression that is not a sum, product, number or integer
//! power: symbols, function applications, non-integer powers, and inverses of
//! sums. Expanding into this form distributes products over sums and collects
//! like monomials, which makes polynomial identities reduce to an empty
//! polynomial when the coefficients are exact.

use std::collections::BTreeMap;
use std::fmt;

use super::{Bindings, EvalError, Expr, Node, Number};

/// Product of atoms raised to nonzero integer powers, sorted by atom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<(Expr, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(e: Expr, power: i32) -> Self {
        if power == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(e, power)])
        }
    }

    pub fn factors(&self) -> &[(Expr, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, atom: &Expr) -> i32 {
        self.0
            .iter()
            .find(|(a, _)| a == atom)
            .map_or(0, |(_, k)| *k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Expr, i32> = self.0.iter().cloned().collect();
        for (a, k) in &other.0 {
            *out.entry(a.clone()).or_insert(0) += k;
        }
        Monomial(out.into_iter().filter(|(_, k)| *k != 0).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(a, k)| (a.clone(), -k)).collect())
    }

    pub fn to_expr(&self) -> Expr {
        Expr::product(self.0.iter().map(|(a, k)| a.powi(i64::from(*k))))
    }

    pub fn eval(&self, env: &Bindings) -> Result<f64, EvalError> {
        self.0
            .iter()
            .try_fold(1.0, |acc, (a, k)| Ok(acc * a.eval(env)?.powi(*k)))
    }
}

/// Sum of `coefficient * monomial` terms; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Number>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(n: Number) -> Self {
        Self::term(n, Monomial::one())
    }

    pub fn term(n: Number, m: Monomial) -> Self {
        let mut p = Self::zero();
        if !n.is_zero() {
            p.terms.insert(m, n);
        }
        p
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Number::one(), Monomial::atom(Expr::sym(name), 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Number)> {
        self.terms.iter()
    }

    /// Every coefficient is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Number::is_exact)
    }

    fn add_term(&mut self, m: Monomial, n: Number) {
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !n.is_zero() {
                    v.insert(n);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&n);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, n) in &other.terms {
            out.add_term(m.clone(), n.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Number::int(-1))
    }

    pub fn scale(&self, c: &Number) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, n) in &self.terms {
            out.add_term(m.clone(), n.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, n1) in &self.terms {
            for (m2, n2) in &other.terms {
                out.add_term(m1.mul(m2), n1.mul(n2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::constant(Number::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, n) in &self.terms {
            out.add_term(m1.mul(m), n.clone());
        }
        out
    }

    /// Largest monomial dividing every term with a non-negative power.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::one();
        };
        let mut content: BTreeMap<Expr, i32> = first
            .factors()
            .iter()
            .filter(|(_, k)| *k > 0)
            .cloned()
            .collect();
        for m in iter {
            content = content
                .into_iter()
                .filter_map(|(a, k)| {
                    let d = m.degree_in(&a).min(k);
                    (d > 0).then_some((a, d))
                })
                .collect();
        }
        Monomial(content.into_iter().collect())
    }

    pub fn from_expr(e: &Expr) -> Polynomial {
        match e.node() {
            Node::Num(n) => Polynomial::constant(n.clone()),
            Node::Sym(_) => Polynomial::term(Number::one(), Monomial::atom(e.clone(), 1)),
            Node::Add(c) => c
                .iter()
                .fold(Polynomial::zero(), |acc, t| acc.add(&Polynomial::from_expr(t))),
            Node::Mul(c) => c.iter().fold(Polynomial::constant(Number::one()), |acc, t| {
                acc.mul(&Polynomial::from_expr(t))
            }),
            Node::Pow(b, x) => {
                let n = x.as_number().and_then(Number::as_integer);
                match n.and_then(|n| i32::try_from(n).ok()) {
                    Some(n) if n >= 0 => Polynomial::from_expr(b).pow(n as u32),
                    Some(n) => {
                        let pb = Polynomial::from_expr(b);
                        if pb.terms.len() == 1 {
                            let (m, c) = pb.terms.iter().next().unwrap();
                            if let Some(inv) = c.recip() {
                                return Polynomial::term(inv, m.inverse())
                                    .pow(n.unsigned_abs());
                            }
                        }
                        let atom = pb.to_expr();
                        Polynomial::term(Number::one(), Monomial::atom(atom, n))
                    }
                    None => {
                        let atom = Polynomial::from_expr(b)
                            .to_expr()
                            .pow(&Polynomial::from_expr(x).to_expr());
                        Polynomial::from_atom(atom)
                    }
                }
            }
            Node::Apply(f, a) => {
                Polynomial::from_atom(Expr::apply(*f, &Polynomial::from_expr(a).to_expr()))
            }
        }
    }

    // The expanded pieces may fold into a number or simpler form.
    fn from_atom(atom: Expr) -> Polynomial {
        match atom.node() {
            Node::Num(n) => Polynomial::constant(n.clone()),
            Node::Pow(..) | Node::Apply(..) | Node::Sym(_) => {
                Polynomial::term(Number::one(), Monomial::atom(atom, 1))
            }
            _ => Polynomial::from_expr(&atom),
        }
    }

    pub fn to_expr(&self) -> Expr {
        Expr::sum(
            self.terms
                .iter()
                .map(|(m, n)| Expr::product([Expr::num(n.clone()), m.to_expr()])),
        )
    }

    pub fn eval(&self, env: &Bindings) -> Result<f64, EvalError> {
        self.terms
            .iter()
            .try_fold(0.0, |acc, (m, n)| Ok(acc + n.to_f64() * m.eval(env)?))
    }

    /// Sum of absolute term values; the natural scale for judging whether a
    /// numerically evaluated polynomial vanishes.
    pub fn eval_abs_scale(&self, env: &Bindings) -> Result<f64, EvalError> {
        self.terms
            .iter()
            .try_fold(0.0, |acc, (m, n)| Ok(acc + (n.to_f64() * m.eval(env)?).abs()))
    }

    pub fn substitute_all(&self, map: &BTreeMap<String, Expr>) -> Polynomial {
        Polynomial::from_expr(&self.to_expr().substitute_all(map))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn poly(s: &str) -> Polynomial {
        Polynomial::from_expr(&parse(s).unwrap())
    }

    #[test]
    fn binomial_identity_vanishes() {
        let p = poly("(a+b)^2 - a^2 - 2*a*b - b^2");
        assert!(p.is_zero());
    }

    #[test]
    fn laurent_monomials_cancel() {
        let p = poly("x^2 * (1/x) - x");
        assert!(p.is_zero());
        let q = poly("(2*x*y)^(-1) * 4*y");
        assert_eq!(q.to_expr().to_string(), "2/x");
    }

    #[test]
    fn atoms_are_normalized_inside() {
        let p = poly("sin(x + x) - sin(2*x)");
        assert!(p.is_zero());
    }

    #[test]
    fn content_extraction() {
        let p = poly("a*m^2*(b*m + 3*m^3)");
        let c = p.monomial_content();
        assert_eq!(c.to_expr().to_string(), "a*m^3");
        let reduced = p.mul_monomial(&c.inverse());
        assert_eq!(reduced, poly("b + 3*m^2"));
    }

    #[test]
    fn evaluation_matches_expression() {
        let e = parse("(x+2)^3*(y-1) + sqrt(y)*x").unwrap();
        let env = Bindings::from_pairs([("x", 0.3), ("y", 2.5)]);
        let p = Polynomial::from_expr(&e);
        assert!((p.eval(&env).unwrap() - e.eval(&env).unwrap()).abs() < 1e-13);
    }
}
