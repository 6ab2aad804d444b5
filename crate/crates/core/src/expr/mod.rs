//! A small computer-algebra core over the reals.
//!
//! [`Expr`] is an immutable, reference-counted expression tree. Values built
//! through the arithmetic operators and the named constructors are kept in a
//! locally simplified form (flattened sums and products, folded constants,
//! collected like terms). Trees produced by [`parse`] are kept verbatim until
//! [`Expr::simplify`] is called, so the parser output mirrors its input.
//!
//! Constants are exact rationals whenever they come from integers or
//! rationals; floats only enter through decimal literals or evaluation.

mod diff;
mod eval;
mod format;
pub use format::format;
mod number;
mod parse;
mod poly;
mod simplify;

pub mod oracle;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use eval::{Bindings, EvalError};
pub use number::Number;
pub use parse::{parse, ParseError};
pub use poly::{Monomial, Polynomial};

/// Unary functions understood by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Cot,
    Csc,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Csc,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Csc => "csc",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn apply_f64(self, v: f64) -> f64 {
        match self {
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Cot => 1.0 / v.tan(),
            Func::Csc => 1.0 / v.sin(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
        }
    }
}

/// Node kinds of an expression tree.
#[derive(Debug)]
pub enum Node {
    Num(Number),
    Sym(Arc<str>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, Expr),
    Apply(Func, Expr),
}

/// Immutable expression tree with cheap clones.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn num(n: impl Into<Number>) -> Expr {
        Expr(Arc::new(Node::Num(n.into())))
    }

    pub fn int(v: i64) -> Expr {
        Expr::num(Number::int(v))
    }

    pub fn ratio(p: i64, q: i64) -> Expr {
        Expr::num(Number::ratio(p, q))
    }

    pub fn float(v: f64) -> Expr {
        Expr::num(Number::Float(v))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn sym(name: &str) -> Expr {
        Expr(Arc::new(Node::Sym(Arc::from(name))))
    }

    /// Unsimplified sum node (used by the parser).
    pub fn add_raw(children: Vec<Expr>) -> Expr {
        Expr(Arc::new(Node::Add(children)))
    }

    /// Unsimplified product node (used by the parser).
    pub fn mul_raw(children: Vec<Expr>) -> Expr {
        Expr(Arc::new(Node::Mul(children)))
    }

    pub fn pow_raw(base: Expr, exponent: Expr) -> Expr {
        Expr(Arc::new(Node::Pow(base, exponent)))
    }

    pub fn apply_raw(f: Func, arg: Expr) -> Expr {
        Expr(Arc::new(Node::Apply(f, arg)))
    }

    /// Simplified sum of already simplified terms.
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        simplify::sum(terms.into_iter().collect())
    }

    /// Simplified product of already simplified factors.
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        simplify::product(factors.into_iter().collect())
    }

    pub fn pow(&self, exponent: &Expr) -> Expr {
        simplify::power(self.clone(), exponent.clone())
    }

    pub fn powi(&self, n: i64) -> Expr {
        self.pow(&Expr::int(n))
    }

    pub fn apply(f: Func, arg: &Expr) -> Expr {
        simplify::apply(f, arg.clone())
    }

    pub fn exp(&self) -> Expr {
        Expr::apply(Func::Exp, self)
    }
    pub fn log(&self) -> Expr {
        Expr::apply(Func::Log, self)
    }
    pub fn sqrt(&self) -> Expr {
        Expr::apply(Func::Sqrt, self)
    }
    pub fn sin(&self) -> Expr {
        Expr::apply(Func::Sin, self)
    }
    pub fn cos(&self) -> Expr {
        Expr::apply(Func::Cos, self)
    }
    pub fn tan(&self) -> Expr {
        Expr::apply(Func::Tan, self)
    }
    pub fn cot(&self) -> Expr {
        Expr::apply(Func::Cot, self)
    }
    pub fn csc(&self) -> Expr {
        Expr::apply(Func::Csc, self)
    }
    pub fn sinh(&self) -> Expr {
        Expr::apply(Func::Sinh, self)
    }
    pub fn cosh(&self) -> Expr {
        Expr::apply(Func::Cosh, self)
    }
    pub fn tanh(&self) -> Expr {
        Expr::apply(Func::Tanh, self)
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn as_number(&self) -> Option<&Number> {
        match self.node() {
            Node::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_number().is_some_and(Number::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_number().is_some_and(Number::is_one)
    }

    /// Child expressions in order.
    pub fn children(&self) -> Vec<&Expr> {
        match self.node() {
            Node::Num(_) | Node::Sym(_) => Vec::new(),
            Node::Add(c) | Node::Mul(c) => c.iter().collect(),
            Node::Pow(b, e) => vec![b, e],
            Node::Apply(_, a) => vec![a],
        }
    }

    /// Number of nodes in the tree (shared subtrees counted each time).
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        if let Node::Sym(s) = self.node() {
            out.insert(s.to_string());
        }
        for c in self.children() {
            c.collect_symbols(out);
        }
    }

    pub fn depends_on(&self, symbol: &str) -> bool {
        match self.node() {
            Node::Sym(s) => &**s == symbol,
            _ => self.children().iter().any(|c| c.depends_on(symbol)),
        }
    }

    /// Replace every occurrence of `symbol` with `replacement`.
    pub fn substitute(&self, symbol: &str, replacement: &Expr) -> Expr {
        let mut map = BTreeMap::new();
        map.insert(symbol.to_string(), replacement.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous substitution; the result is locally simplified.
    pub fn substitute_all(&self, map: &BTreeMap<String, Expr>) -> Expr {
        if map.is_empty() {
            return self.clone();
        }
        match self.node() {
            Node::Num(_) => self.clone(),
            Node::Sym(s) => map.get(&**s).cloned().unwrap_or_else(|| self.clone()),
            Node::Add(c) => Expr::sum(c.iter().map(|e| e.substitute_all(map))),
            Node::Mul(c) => Expr::product(c.iter().map(|e| e.substitute_all(map))),
            Node::Pow(b, e) => b.substitute_all(map).pow(&e.substitute_all(map)),
            Node::Apply(f, a) => Expr::apply(*f, &a.substitute_all(map)),
        }
    }

    /// Substitute numeric values for symbols.
    pub fn bind(&self, env: &Bindings) -> Expr {
        let map = env
            .iter()
            .map(|(k, v)| (k.to_string(), Expr::float(v)))
            .collect();
        self.substitute_all(&map)
    }

    pub fn simplify(&self) -> Expr {
        simplify::simplify(self)
    }

    /// Polynomial normal form: products of sums are distributed and like
    /// monomials collected. Non-polynomial subterms are treated as atoms.
    pub fn expand(&self) -> Expr {
        Polynomial::from_expr(self).to_expr()
    }

    pub fn diff(&self, symbol: &str) -> Expr {
        diff::diff(self, symbol)
    }

    pub fn diff_n(&self, symbol: &str, order: usize) -> Expr {
        (0..order).fold(self.clone(), |e, _| e.diff(symbol))
    }

    pub fn eval(&self, env: &Bindings) -> Result<f64, EvalError> {
        eval::eval(self, env)
    }

    /// Subexpressions whose zeros make `self` blow up: bases raised to
    /// negative powers, `cos(a)` for `tan(a)`, and `sin(a)` for `cot(a)` and
    /// `csc(a)`. Deduplicated, in traversal order.
    pub fn singular_factors(&self) -> Vec<Expr> {
        fn walk(e: &Expr, out: &mut Vec<Expr>) {
            let found = match e.node() {
                Node::Pow(b, x) if x.as_number().is_some_and(Number::is_negative) => {
                    Some(b.clone())
                }
                Node::Apply(Func::Tan, a) => Some(a.cos()),
                Node::Apply(Func::Cot | Func::Csc, a) => Some(a.sin()),
                _ => None,
            };
            for c in e.children() {
                walk(c, out);
            }
            if let Some(f) = found {
                if f.as_number().is_none() && !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn kind_rank(&self) -> u8 {
        match self.node() {
            Node::Num(_) => 0,
            Node::Sym(_) => 1,
            Node::Pow(..) => 2,
            Node::Mul(_) => 3,
            Node::Add(_) => 4,
            Node::Apply(..) => 5,
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Expr {}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match (self.node(), other.node()) {
            (Node::Num(a), Node::Num(b)) => a.cmp(b),
            (Node::Sym(a), Node::Sym(b)) => a.cmp(b),
            (Node::Add(a), Node::Add(b)) | (Node::Mul(a), Node::Mul(b)) => a.cmp(b),
            (Node::Pow(a, x), Node::Pow(b, y)) => a.cmp(b).then_with(|| x.cmp(y)),
            (Node::Apply(f, a), Node::Apply(g, b)) => f.cmp(g).then_with(|| a.cmp(b)),
            _ => self.kind_rank().cmp(&other.kind_rank()),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Self {
        Expr::int(v)
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Expr::float(v)
    }
}

impl From<&str> for Expr {
    fn from(s: &str) -> Self {
        Expr::sym(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs.clone())
            }
        }
        impl std::ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs)
            }
        }
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::sum([a, b]));
binop!(Sub, sub, |a, b| Expr::sum([a, Expr::product([Expr::int(-1), b])]));
binop!(Mul, mul, |a, b| Expr::product([a, b]));
binop!(Div, div, |a, b| Expr::product([a, b.recip()]));

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self])
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}
