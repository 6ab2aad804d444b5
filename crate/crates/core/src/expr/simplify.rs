//! Local rewrite rules. Each constructor assumes its inputs are already
//! simplified and only rewrites the node it builds, so applying them
//! bottom-up is a full simplification pass and is idempotent.

use std::collections::BTreeMap;

use super::{Expr, Func, Node, Number};

pub(super) fn simplify(e: &Expr) -> Expr {
    match e.node() {
        Node::Num(_) | Node::Sym(_) => e.clone(),
        Node::Add(c) => sum(c.iter().map(simplify).collect()),
        Node::Mul(c) => product(c.iter().map(simplify).collect()),
        Node::Pow(b, x) => power(simplify(b), simplify(x)),
        Node::Apply(f, a) => apply(*f, simplify(a)),
    }
}

/// Split a term into numeric coefficient and the remaining factor.
fn split_coefficient(term: &Expr) -> (Number, Option<Expr>) {
    match term.node() {
        Node::Num(n) => (n.clone(), None),
        Node::Mul(c) => match c.first().map(Expr::node) {
            Some(Node::Num(n)) => {
                let rest = &c[1..];
                let rest = if rest.len() == 1 {
                    rest[0].clone()
                } else {
                    Expr::mul_raw(rest.to_vec())
                };
                (n.clone(), Some(rest))
            }
            _ => (Number::one(), Some(term.clone())),
        },
        _ => (Number::one(), Some(term.clone())),
    }
}

pub(super) fn sum(terms: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(terms.len());
    for t in terms {
        match t.node() {
            Node::Add(c) => flat.extend(c.iter().cloned()),
            _ => flat.push(t),
        }
    }

    let mut constant = Number::zero();
    let mut like: BTreeMap<Expr, Number> = BTreeMap::new();
    for t in &flat {
        let (c, rest) = split_coefficient(t);
        match rest {
            None => constant = constant.add(&c),
            Some(r) => {
                let slot = like.entry(r).or_insert_with(Number::zero);
                *slot = slot.add(&c);
            }
        }
    }

    let mut out: Vec<Expr> = Vec::with_capacity(like.len() + 1);
    for (rest, c) in like {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            out.push(rest);
        } else {
            out.push(scaled(c, rest));
        }
    }
    if !constant.is_zero() {
        out.push(Expr::num(constant));
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::add_raw(out),
    }
}

/// `c * rest` with `c` placed first and `rest` flattened if it is a product.
fn scaled(c: Number, rest: Expr) -> Expr {
    let mut v = vec![Expr::num(c)];
    match rest.node() {
        Node::Mul(inner) => v.extend(inner.iter().cloned()),
        _ => v.push(rest),
    }
    Expr::mul_raw(v)
}

/// Split a factor into base and numeric exponent, when the exponent is a
/// number; otherwise the whole factor is its own base with exponent one.
fn split_power(f: &Expr) -> (Expr, Number) {
    match f.node() {
        Node::Pow(b, x) => match x.node() {
            Node::Num(n) => (b.clone(), n.clone()),
            _ => (f.clone(), Number::one()),
        },
        _ => (f.clone(), Number::one()),
    }
}

pub(super) fn product(factors: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(factors.len());
    for f in factors {
        match f.node() {
            Node::Mul(c) => flat.extend(c.iter().cloned()),
            _ => flat.push(f),
        }
    }

    let mut coeff = Number::one();
    let mut powers: BTreeMap<Expr, Number> = BTreeMap::new();
    for f in &flat {
        if let Node::Num(n) = f.node() {
            coeff = coeff.mul(n);
            continue;
        }
        let (base, e) = split_power(f);
        let slot = powers.entry(base).or_insert_with(Number::zero);
        *slot = slot.add(&e);
    }
    if coeff.is_zero() {
        return Expr::num(coeff);
    }

    let mut out: Vec<Expr> = Vec::with_capacity(powers.len());
    for (base, e) in powers {
        let f = power(base, Expr::num(e));
        match f.node() {
            Node::Num(n) => coeff = coeff.mul(n),
            Node::Mul(inner) => {
                // (a*b)^n distributed by `power`; fold any numeric factor.
                for g in inner {
                    match g.node() {
                        Node::Num(n) => coeff = coeff.mul(n),
                        _ => out.push(g.clone()),
                    }
                }
            }
            _ => out.push(f),
        }
    }
    if coeff.is_zero() {
        return Expr::num(coeff);
    }
    out.sort();
    if !coeff.is_one() {
        out.insert(0, Expr::num(coeff));
    }
    match out.len() {
        0 => Expr::one(),
        1 => out.pop().unwrap(),
        _ => Expr::mul_raw(out),
    }
}

pub(super) fn power(base: Expr, exponent: Expr) -> Expr {
    if let Node::Num(e) = exponent.node() {
        if e.is_zero() {
            return Expr::one();
        }
        if e.is_one() {
            return base;
        }
        if let Some(n) = e.as_integer() {
            match base.node() {
                Node::Num(b) => {
                    if let Some(v) = b.powi(n) {
                        return Expr::num(v);
                    }
                }
                Node::Pow(inner_base, inner_exp) => {
                    if let Node::Num(ie) = inner_exp.node() {
                        let combined = ie.mul(e);
                        return power(inner_base.clone(), Expr::num(combined));
                    }
                }
                Node::Mul(factors) => {
                    let parts = factors
                        .iter()
                        .map(|f| power(f.clone(), exponent.clone()))
                        .collect();
                    return product(parts);
                }
                _ => {}
            }
        } else if let (Node::Num(b), Number::Float(x)) = (base.node(), e) {
            let v = b.to_f64().powf(*x);
            if v.is_finite() {
                return Expr::float(v);
            }
        } else if let (Node::Num(Number::Float(b)), _) = (base.node(), e) {
            let v = b.powf(e.to_f64());
            if v.is_finite() {
                return Expr::float(v);
            }
        }
    }
    if let Node::Num(b) = base.node() {
        if b.is_one() && b.is_exact() {
            return Expr::one();
        }
    }
    Expr::pow_raw(base, exponent)
}

pub(super) fn apply(f: Func, arg: Expr) -> Expr {
    match arg.node() {
        Node::Num(Number::Float(v)) => {
            let r = f.apply_f64(*v);
            if r.is_finite() {
                return Expr::float(r);
            }
        }
        Node::Num(n) => {
            if n.is_zero() {
                match f {
                    Func::Exp | Func::Cos | Func::Cosh => return Expr::one(),
                    Func::Sin | Func::Tan | Func::Sinh | Func::Tanh | Func::Sqrt => {
                        return Expr::zero()
                    }
                    _ => {}
                }
            }
            if f == Func::Log && n.is_one() {
                return Expr::zero();
            }
            if f == Func::Sqrt {
                if let Some(r) = n.exact_sqrt() {
                    return Expr::num(r);
                }
            }
        }
        _ => {}
    }
    Expr::apply_raw(f, arg)
}
