use std::collections::BTreeMap;

use thiserror::Error;

use super::{Expr, Func, Node};

/// Symbol name to value map used for numeric evaluation.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        Bindings(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn set(&mut self, name: &str, value: f64) -> &mut Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn remove(&mut self, name: &str) -> Option<f64> {
        self.0.remove(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union where entries of `other` win.
    pub fn merged(&self, other: &Bindings) -> Bindings {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.set(k, v);
        }
        out
    }

    pub fn as_map(&self) -> &BTreeMap<String, f64> {
        &self.0
    }
}

impl FromIterator<(String, f64)> for Bindings {
    fn from_iter<T: IntoIterator<Item = (String, f64)>>(iter: T) -> Self {
        Bindings(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("domain error in `{expr}`: argument {argument}")]
    Domain { expr: String, argument: f64 },
    #[error("non-finite value {value} from `{expr}`")]
    NonFinite { expr: String, value: f64 },
}

pub(super) fn eval(e: &Expr, env: &Bindings) -> Result<f64, EvalError> {
    let v = eval_node(e, env)?;
    if !v.is_finite() {
        return Err(EvalError::NonFinite {
            expr: e.to_string(),
            value: v,
        });
    }
    Ok(v)
}

fn eval_node(e: &Expr, env: &Bindings) -> Result<f64, EvalError> {
    match e.node() {
        Node::Num(n) => Ok(n.to_f64()),
        Node::Sym(s) => env.get(s).ok_or_else(|| EvalError::Unbound(s.to_string())),
        Node::Add(c) => c.iter().try_fold(0.0, |acc, t| Ok(acc + eval_node(t, env)?)),
        Node::Mul(c) => c.iter().try_fold(1.0, |acc, t| Ok(acc * eval_node(t, env)?)),
        Node::Pow(b, x) => {
            let base = eval_node(b, env)?;
            if let Some(n) = x.as_number().and_then(|n| n.as_integer()) {
                if let Ok(n) = i32::try_from(n) {
                    return Ok(base.powi(n));
                }
            }
            let exponent = eval_node(x, env)?;
            if base < 0.0 && exponent.fract() != 0.0 {
                return Err(EvalError::Domain {
                    expr: e.to_string(),
                    argument: base,
                });
            }
            Ok(base.powf(exponent))
        }
        Node::Apply(f, a) => {
            let arg = eval_node(a, env)?;
            let bad = match f {
                Func::Log => arg <= 0.0,
                Func::Sqrt => arg < 0.0,
                _ => false,
            };
            if bad {
                return Err(EvalError::Domain {
                    expr: e.to_string(),
                    argument: arg,
                });
            }
            Ok(f.apply_f64(arg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn domain_errors_name_the_subexpression() {
        let e = parse("1 + sqrt(x)").unwrap();
        match e.eval(&Bindings::from_pairs([("x", -1.0)])) {
            Err(EvalError::Domain { expr, argument }) => {
                assert_eq!(expr, "sqrt(x)");
                assert_eq!(argument, -1.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("log(x)").unwrap().eval(&Bindings::from_pairs([("x", 0.0)])),
            Err(EvalError::Domain { .. })
        ));
    }

    #[test]
    fn unbound_and_non_finite() {
        let e = parse("x + y").unwrap();
        assert_eq!(
            e.eval(&Bindings::from_pairs([("x", 1.0)])),
            Err(EvalError::Unbound("y".into()))
        );
        let inv = parse("1/x").unwrap();
        assert!(matches!(
            inv.eval(&Bindings::from_pairs([("x", 0.0)])),
            Err(EvalError::NonFinite { .. })
        ));
    }

    #[test]
    fn printed_closed_forms() {
        // u6 and u3 at x = t = 0, b = 3.
        let u6 = parse("-3*(b+2)/((b+1)*(1+cosh(x-(1+b/2)*t)))").unwrap();
        let u3 = parse("-(3*b+5-cosh(x-b*t/2))/((b+1)*(1+cosh(x-b*t/2)))").unwrap();
        let env = Bindings::from_pairs([("x", 0.0), ("t", 0.0), ("b", 3.0)]);
        assert_eq!(u6.eval(&env).unwrap(), -1.875);
        assert_eq!(u3.eval(&env).unwrap(), -1.625);
    }
}
