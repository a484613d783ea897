//! Internalization of consistency and logical equivalence.
//!
//! A formula `A` is consistent exactly when `(A -> F) \/ (~A -> F)` is
//! valid, and `A1`, `A2` are logically equivalent exactly when
//! `(A1 <-> A2) /\ (~A1 <-> ~A2)` is valid.

use std::collections::BTreeSet;

use super::family::Family;
use crate::semantics::{
    check_consequence, check_consistency, check_equivalence, EvalError, ModelSpace, SearchConfig,
    SearchError, Vocabulary,
};
use crate::syntax::Formula;

/// Both sides of an internalization property for one input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// The internalizing formula is valid.
    pub formula_side: bool,
    /// The semantic property holds.
    pub semantic_side: bool,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.formula_side == self.semantic_side
    }
}

/// `(A -> F) \/ (~A -> F)`.
pub fn consistency_formula(a: &Formula) -> Formula {
    Formula::or(
        Formula::imp(a.clone(), Formula::Falsum),
        Formula::imp(Formula::not(a.clone()), Formula::Falsum),
    )
}

/// `(A1 <-> A2) /\ (~A1 <-> ~A2)`.
pub fn equivalence_formula(a1: &Formula, a2: &Formula) -> Formula {
    Formula::and(
        Formula::iff(a1.clone(), a2.clone()),
        Formula::iff(Formula::not(a1.clone()), Formula::not(a2.clone())),
    )
}

fn valid(f: &Formula, config: &SearchConfig) -> Result<bool, SearchError> {
    Ok(!check_consequence(&[], f, config)?.is_refuted())
}

/// Compare validity of [`consistency_formula`] with consistency of `a`.
pub fn check_internalization_consistency(
    a: &Formula,
    config: &SearchConfig,
) -> Result<Agreement, SearchError> {
    Ok(Agreement {
        formula_side: valid(&consistency_formula(a), config)?,
        semantic_side: !check_consistency(a, config)?.is_refuted(),
    })
}

/// Compare validity of [`equivalence_formula`] with equivalence of `a1`, `a2`.
pub fn check_internalization_equivalence(
    a1: &Formula,
    a2: &Formula,
    config: &SearchConfig,
) -> Result<Agreement, SearchError> {
    Ok(Agreement {
        formula_side: valid(&equivalence_formula(a1, a2), config)?,
        semantic_side: !check_equivalence(a1, a2, config)?.is_refuted(),
    })
}

/// Outcome of [`internalization_sweep`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InternalizationSummary {
    pub formulas: usize,
    pub consistency_checked: usize,
    pub consistent: usize,
    pub equivalence_checked: usize,
    pub equivalent: usize,
    /// Inputs whose two sides differ.
    pub disagreements: Vec<String>,
}

impl InternalizationSummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Check both properties over every semantic class of propositional
/// formulas over `p`, `q` and `F` up to `depth`: consistency for each
/// representative, equivalence for every ordered pair of representatives
/// and for each representative against its double negation, its
/// conjunction with itself and its disjunction with itself.
pub fn internalization_sweep(depth: usize) -> Result<InternalizationSummary, EvalError> {
    let atoms = [Formula::prop("p"), Formula::prop("q"), Formula::Falsum];
    let vocab = Vocabulary::of_formulas(&atoms).expect("fixed symbols");
    let space = ModelSpace::enumerate(&vocab, &BTreeSet::new(), &SearchConfig::with_max_domain(1));
    let family = Family::build(&space, &atoms, &[], depth)?.all();
    let profiles: Vec<_> = family
        .iter()
        .map(|f| space.values(f))
        .collect::<Result<_, _>>()?;
    let is_valid =
        |f: &Formula| -> Result<bool, EvalError> { Ok(space.values(f)?.iter().all(|v| v.is_designated())) };
    let mut out = InternalizationSummary {
        formulas: family.len(),
        ..Default::default()
    };
    for (a, prof) in family.iter().zip(&profiles) {
        let agreement = Agreement {
            formula_side: is_valid(&consistency_formula(a))?,
            semantic_side: prof.iter().all(|v| v.is_classical()),
        };
        out.consistency_checked += 1;
        out.consistent += agreement.semantic_side as usize;
        if !agreement.agrees() {
            out.disagreements.push(format!("consistency of {a}"));
        }
    }
    let mut pair = |a1: &Formula, a2: &Formula, equal: bool| -> Result<(), EvalError> {
        let agreement = Agreement {
            formula_side: is_valid(&equivalence_formula(a1, a2))?,
            semantic_side: equal,
        };
        out.equivalence_checked += 1;
        out.equivalent += equal as usize;
        if !agreement.agrees() {
            out.disagreements.push(format!("equivalence of {a1} and {a2}"));
        }
        Ok(())
    };
    for (a1, p1) in family.iter().zip(&profiles) {
        for (a2, p2) in family.iter().zip(&profiles) {
            pair(a1, a2, p1 == p2)?;
        }
        for variant in [
            Formula::not(Formula::not(a1.clone())),
            Formula::and(a1.clone(), a1.clone()),
            Formula::or(a1.clone(), a1.clone()),
        ] {
            let equal = space.values(&variant)? == *p1;
            pair(a1, &variant, equal)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula_declaring, Signature};

    fn parse(text: &str) -> Formula {
        parse_formula_declaring(text, &mut Signature::new()).unwrap()
    }

    fn both(formula_side: bool, semantic_side: bool) -> Agreement {
        Agreement {
            formula_side,
            semantic_side,
        }
    }

    #[test]
    fn consistency_examples() {
        let cfg = SearchConfig::default();
        let c = |t: &str| check_internalization_consistency(&parse(t), &cfg).unwrap();
        assert_eq!(c("p"), both(false, false));
        assert_eq!(c("F"), both(true, true));
        assert_eq!(c("p \\/ ~p"), both(false, false));
        assert_eq!(c("p -> F"), both(true, true));
    }

    #[test]
    fn equivalence_examples() {
        let cfg = SearchConfig::default();
        let e = |a: &str, b: &str| check_internalization_equivalence(&parse(a), &parse(b), &cfg).unwrap();
        assert_eq!(e("p", "~~p"), both(true, true));
        assert_eq!(e("p", "q"), both(false, false));
        assert_eq!(e("p /\\ p", "p"), both(true, true));
        // Same designation but different values.
        assert_eq!(e("p", "p \\/ ~p -> p"), both(true, true));
        assert_eq!(e("p", "p /\\ (p -> p)"), both(true, true));
        assert_eq!(e("p -> q", "~p \\/ q"), both(false, false));
    }

    #[test]
    fn small_sweep_agrees() {
        let s = internalization_sweep(1).unwrap();
        assert_eq!(s.formulas, 14);
        assert_eq!(s.equivalence_checked, 14 * 14 + 14 * 3);
        assert!(s.all_agree(), "{:?}", s.disagreements);
    }
}
