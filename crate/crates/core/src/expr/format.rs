//! Infix printing in the same grammar the parser accepts.

use std::fmt::{self, Write};

use super::{Expr, Node, Number};

// Binding strength of the printed form of a node.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn number_prec(n: &Number) -> u8 {
    match n {
        _ if n.is_negative() => PREC_NEG,
        Number::Rational(r) if !r.is_integer() => PREC_MUL,
        _ => PREC_ATOM,
    }
}

/// Whether a term prints with a leading minus sign that an enclosing sum
/// can absorb into " - ".
fn negated(term: &Expr) -> Option<Expr> {
    match term.node() {
        Node::Num(n) if n.is_negative() => Some(Expr::num(n.neg())),
        Node::Mul(c) => match c[0].node() {
            Node::Num(n) if n.is_negative() => {
                let mut rest = c.clone();
                rest[0] = Expr::num(n.neg());
                Some(if rest[0].is_one() {
                    if rest.len() == 2 {
                        rest[1].clone()
                    } else {
                        Expr::mul_raw(rest[1..].to_vec())
                    }
                } else {
                    Expr::mul_raw(rest)
                })
            }
            _ => None,
        },
        _ => None,
    }
}

fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Num(n) => number_prec(n),
        Node::Sym(_) | Node::Apply(..) => PREC_ATOM,
        Node::Add(_) => PREC_ADD,
        Node::Mul(_) => {
            if negated(e).is_some() {
                PREC_NEG
            } else {
                PREC_MUL
            }
        }
        Node::Pow(_, x) => match x.node() {
            // printed as a quotient
            Node::Num(n) if n.is_negative() => PREC_MUL,
            _ => PREC_POW,
        },
    }
}

fn write_wrapped(out: &mut String, e: &Expr, min_prec: u8) {
    if prec(e) < min_prec {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e.node() {
        Node::Num(n) => {
            let _ = write!(out, "{n}");
        }
        Node::Sym(s) => out.push_str(s),
        Node::Apply(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(out, a);
            out.push(')');
        }
        Node::Add(terms) => {
            for (i, t) in terms.iter().enumerate() {
                match (i, negated(t)) {
                    (0, _) => write_wrapped(out, t, PREC_ADD),
                    (_, Some(pos)) => {
                        out.push_str(" - ");
                        write_wrapped(out, &pos, PREC_MUL);
                    }
                    (_, None) => {
                        out.push_str(" + ");
                        write_wrapped(out, t, PREC_MUL);
                    }
                }
            }
        }
        Node::Mul(factors) => {
            if let Some(pos) = negated(e) {
                out.push('-');
                write_wrapped(out, &pos, PREC_MUL);
                return;
            }
            write_product(out, factors);
        }
        Node::Pow(b, x) => {
            if let Node::Num(n) = x.node() {
                if n.is_negative() {
                    out.push_str("1/");
                    write_denominator(out, &[(b.clone(), n.neg())]);
                    return;
                }
            }
            write_wrapped(out, b, PREC_ATOM);
            out.push('^');
            write_wrapped(out, x, PREC_ATOM);
        }
    }
}

fn write_product(out: &mut String, factors: &[Expr]) {
    let mut numer: Vec<&Expr> = Vec::new();
    let mut denom: Vec<(Expr, Number)> = Vec::new();
    for f in factors {
        match f.node() {
            Node::Pow(b, x) => match x.node() {
                Node::Num(n) if n.is_negative() => denom.push((b.clone(), n.neg())),
                _ => numer.push(f),
            },
            _ => numer.push(f),
        }
    }
    if numer.is_empty() {
        out.push('1');
    }
    for (i, f) in numer.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        // Non-integer rationals are parenthesized so "(3/4)*x" reads clearly.
        let min = if i == 0 && numer.len() == 1 { PREC_MUL } else { PREC_POW };
        write_wrapped(out, f, min);
    }
    if !denom.is_empty() {
        out.push('/');
        write_denominator(out, &denom);
    }
}

fn write_denominator(out: &mut String, denom: &[(Expr, Number)]) {
    let parts: Vec<Expr> = denom
        .iter()
        .map(|(b, n)| {
            if n.is_one() {
                b.clone()
            } else {
                Expr::pow_raw(b.clone(), Expr::num(n.clone()))
            }
        })
        .collect();
    if parts.len() == 1 {
        write_wrapped(out, &parts[0], PREC_POW);
    } else {
        out.push('(');
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            write_wrapped(out, p, PREC_POW);
        }
        out.push(')');
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(&mut s, self);
        f.write_str(&s)
    }
}

/// Infix text of `e`; `parse(&format(e))` evaluates like `e`.
pub fn format(e: &Expr) -> String {
    e.to_string()
}
