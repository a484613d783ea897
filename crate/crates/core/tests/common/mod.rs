#![allow(dead_code)]

use lpf::semantics::{Connectives, TruthValue};
use lpf::syntax::{Formula, Term};
use TruthValue::{Both as B, False as F, True as T};
use proptest::prelude::*;

/// Formulas over `p`, `q`, `P/1`, `R/2`, `c/0` and `g/1` with variables
/// `x` and `y`.
pub fn formula_strategy() -> impl Strategy<Value = Formula> {
    let var = prop_oneof![Just("x"), Just("y")];
    let term = prop_oneof![
        var.clone().prop_map(Term::var),
        Just(Term::constant("c")),
        var.clone().prop_map(|x| Term::app("g", vec![Term::var(x)])),
    ];
    let atom = prop_oneof![
        Just(Formula::prop("p")),
        Just(Formula::prop("q")),
        Just(Formula::Falsum),
        term.clone().prop_map(|t| Formula::pred("P", vec![t])),
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::pred("R", vec![a, b])),
        (term.clone(), term).prop_map(|(a, b)| Formula::eq(a, b)),
    ];
    atom.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (var.clone(), inner.clone()).prop_map(|(x, a)| Formula::forall(x, a)),
            (var.clone(), inner).prop_map(|(x, a)| Formula::exists(x, a)),
        ]
    })
}

/// The interpretation clauses read literally, one condition per case.
pub struct Clauses;

impl Connectives for Clauses {
    fn neg(&self, a: TruthValue) -> TruthValue {
        if a == F {
            T
        } else if a == T {
            F
        } else {
            B
        }
    }

    fn and(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        if a == T && b == T {
            T
        } else if a == F || b == F {
            F
        } else {
            B
        }
    }

    fn or(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        if a == T || b == T {
            T
        } else if a == F && b == F {
            F
        } else {
            B
        }
    }

    fn imp(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        if a == F || b == T {
            T
        } else if a != F && b == F {
            F
        } else {
            B
        }
    }
}

pub fn forall_clause(instances: &[TruthValue]) -> TruthValue {
    if instances.iter().all(|v| *v == T) {
        T
    } else if instances.contains(&F) {
        F
    } else {
        B
    }
}

pub fn exists_clause(instances: &[TruthValue]) -> TruthValue {
    if instances.contains(&T) {
        T
    } else if instances.iter().all(|v| *v == F) {
        F
    } else {
        B
    }
}
