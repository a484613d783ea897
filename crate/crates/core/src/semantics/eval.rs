use thiserror::Error;

use super::structure::{Assignment, Element, Structure};
use super::truth::TruthValue;
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("function `{name}/{arity}` is not interpreted")]
    UninterpretedFunction { name: String, arity: usize },
    #[error("predicate `{name}/{arity}` is not interpreted")]
    UninterpretedPredicate { name: String, arity: usize },
}

/// Truth functions for the connectives. Quantifiers fold the binary
/// tables over the instance values in domain order: `and` for the
/// universal quantifier and `or` for the existential one.
pub trait Connectives {
    fn neg(&self, a: TruthValue) -> TruthValue;
    fn and(&self, a: TruthValue, b: TruthValue) -> TruthValue;
    fn or(&self, a: TruthValue, b: TruthValue) -> TruthValue;
    fn imp(&self, a: TruthValue, b: TruthValue) -> TruthValue;
}

/// The connectives of LP with implication and falsum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Lp;

impl Connectives for Lp {
    fn neg(&self, a: TruthValue) -> TruthValue {
        a.neg()
    }

    fn and(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        a.and(b)
    }

    fn or(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        a.or(b)
    }

    fn imp(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        a.implies(b)
    }
}

struct Env<'a> {
    base: &'a Assignment,
    bound: Vec<(&'a str, Element)>,
}

impl Env<'_> {
    fn lookup(&self, x: &str) -> Result<Element, EvalError> {
        self.bound
            .iter()
            .rev()
            .find(|(y, _)| *y == x)
            .map(|(_, e)| *e)
            .or_else(|| self.base.get(x))
            .ok_or_else(|| EvalError::Unassigned(x.to_string()))
    }
}

pub fn eval_term(t: &Term, s: &Structure, a: &Assignment) -> Result<Element, EvalError> {
    term_value(
        t,
        s,
        &Env {
            base: a,
            bound: Vec::new(),
        },
    )
}

fn term_value(t: &Term, s: &Structure, env: &Env<'_>) -> Result<Element, EvalError> {
    match t {
        Term::Var(x) => env.lookup(x),
        Term::App(f, args) => {
            let table = s
                .function(f)
                .filter(|t| t.arity() == args.len())
                .ok_or_else(|| EvalError::UninterpretedFunction {
                    name: f.clone(),
                    arity: args.len(),
                })?;
            let vals = args
                .iter()
                .map(|a| term_value(a, s, env))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(table.get(s.size(), &vals))
        }
    }
}

/// The value of `f` under the LP connectives.
pub fn eval_formula(f: &Formula, s: &Structure, a: &Assignment) -> Result<TruthValue, EvalError> {
    eval_with(&Lp, f, s, a)
}

/// The value of `f` with the connectives interpreted by `c`.
pub fn eval_with<C: Connectives + ?Sized>(
    c: &C,
    f: &Formula,
    s: &Structure,
    a: &Assignment,
) -> Result<TruthValue, EvalError> {
    let mut env = Env {
        base: a,
        bound: Vec::new(),
    };
    value(c, f, s, &mut env)
}

fn value<'f, C: Connectives + ?Sized>(
    c: &C,
    f: &'f Formula,
    s: &Structure,
    env: &mut Env<'f>,
) -> Result<TruthValue, EvalError> {
    Ok(match f {
        Formula::Falsum => TruthValue::False,
        Formula::Pred(p, args) => {
            let table = s
                .predicate(p)
                .filter(|t| t.arity() == args.len())
                .ok_or_else(|| EvalError::UninterpretedPredicate {
                    name: p.clone(),
                    arity: args.len(),
                })?;
            let vals = args
                .iter()
                .map(|a| term_value(a, s, env))
                .collect::<Result<Vec<_>, _>>()?;
            table.get(s.size(), &vals)
        }
        Formula::Eq(l, r) => s.equality(term_value(l, s, env)?, term_value(r, s, env)?),
        Formula::Not(a) => c.neg(value(c, a, s, env)?),
        Formula::And(a, b) => c.and(value(c, a, s, env)?, value(c, b, s, env)?),
        Formula::Or(a, b) => c.or(value(c, a, s, env)?, value(c, b, s, env)?),
        Formula::Imp(a, b) => c.imp(value(c, a, s, env)?, value(c, b, s, env)?),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut acc: Option<TruthValue> = None;
            for d in s.elements() {
                env.bound.push((x.as_str(), d));
                let v = value(c, body, s, env);
                env.bound.pop();
                let v = v?;
                acc = Some(match acc {
                    None => v,
                    Some(prev) if universal => c.and(prev, v),
                    Some(prev) => c.or(prev, v),
                });
            }
            acc.expect("domains are non-empty")
        }
    })
}

/// `f` holds when its value is designated.
pub fn holds(f: &Formula, s: &Structure, a: &Assignment) -> Result<bool, EvalError> {
    Ok(eval_formula(f, s, a)?.is_designated())
}
