//! Translation of sequents into classical first-order logic.
//!
//! Each predicate symbol `P` becomes a function symbol `P__hat` into a
//! domain of truth-value tokens `__tt`, `__ff` and `__bb`. The predicates
//! `__Univ` and `__Bool` separate individuals from tokens and the binary
//! function `__eqF` gives the truth value of an equation. A formula `A` has
//! three translations stating that `A` is true, false, or both.
//!
//! [`star_structure`] turns a three-valued structure into a classical one
//! over the translated signature in which the translations hold exactly
//! when the original formula has the corresponding value.

use std::collections::BTreeSet;
use std::fmt;

use crate::proofsys::Sequent;
use crate::semantics::{
    eval_formula, holds, tuple_at, Element, EvalError, ModelSpace, Structure, TruthValue, Witness,
};
use crate::syntax::{free_vars_of, Formula, Signature, SymbolKind, Term};

pub const TT: &str = "__tt";
pub const FF: &str = "__ff";
pub const BB: &str = "__bb";
pub const BOOL: &str = "__Bool";
pub const UNIV: &str = "__Univ";
pub const EQF: &str = "__eqF";

/// The function symbol standing for predicate `name`.
pub fn hat(name: &str) -> String {
    format!("{name}__hat")
}

/// Bound variable `i` (1-based) of the axioms.
fn ax_var(i: usize) -> String {
    format!("__x{i}")
}

/// Which of the three translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    True,
    False,
    Both,
}

impl TranslationKind {
    pub const ALL: [TranslationKind; 3] = [
        TranslationKind::True,
        TranslationKind::False,
        TranslationKind::Both,
    ];

    /// The truth value the translation asserts.
    pub fn value(self) -> TruthValue {
        match self {
            TranslationKind::True => TruthValue::True,
            TranslationKind::False => TruthValue::False,
            TranslationKind::Both => TruthValue::Both,
        }
    }
}

/// The translated signature: functions kept, predicates hatted, plus the
/// reserved symbols.
pub fn hat_signature(sig: &Signature) -> Signature {
    let mut out = Signature::new();
    // Mangled and reserved names are outside the user namespace and
    // cannot clash with each other or with user symbols.
    for (f, n) in sig.functions() {
        let _ = out.insert(f, SymbolKind::Function, n);
    }
    for (p, n) in sig.predicates() {
        let _ = out.insert(&hat(p), SymbolKind::Function, n);
    }
    for c in [TT, FF, BB] {
        let _ = out.insert(c, SymbolKind::Function, 0);
    }
    let _ = out.insert(BOOL, SymbolKind::Predicate, 1);
    let _ = out.insert(UNIV, SymbolKind::Predicate, 1);
    let _ = out.insert(EQF, SymbolKind::Function, 2);
    out
}

/// Terms are unchanged: function symbols translate to themselves.
pub fn translate_term(t: &Term) -> Term {
    t.clone()
}

fn token(name: &str) -> Term {
    Term::constant(name)
}

fn univ(t: Term) -> Formula {
    Formula::pred(UNIV, vec![t])
}

fn bool_(t: Term) -> Formula {
    Formula::pred(BOOL, vec![t])
}

pub fn translate_formula(a: &Formula, kind: TranslationKind) -> Formula {
    use TranslationKind::*;
    let t = |f: &Formula| translate_formula(f, True);
    let f = |g: &Formula| translate_formula(g, False);
    match (kind, a) {
        (Both, _) => Formula::not(Formula::or(t(a), f(a))),
        (True, Formula::Falsum) => Formula::Falsum,
        (False, Formula::Falsum) => Formula::top(),
        (_, Formula::Pred(p, args)) => Formula::eq(
            Term::app(hat(p), args.iter().map(translate_term).collect()),
            token(if kind == True { TT } else { FF }),
        ),
        (_, Formula::Eq(l, r)) => Formula::eq(
            Term::app(EQF, vec![translate_term(l), translate_term(r)]),
            token(if kind == True { TT } else { FF }),
        ),
        (True, Formula::Not(b)) => f(b),
        (False, Formula::Not(b)) => t(b),
        (True, Formula::And(l, r)) => Formula::and(t(l), t(r)),
        (False, Formula::And(l, r)) => Formula::or(f(l), f(r)),
        (True, Formula::Or(l, r)) => Formula::or(t(l), t(r)),
        (False, Formula::Or(l, r)) => Formula::and(f(l), f(r)),
        (True, Formula::Imp(l, r)) => Formula::or(f(l), t(r)),
        (False, Formula::Imp(l, r)) => Formula::and(Formula::not(f(l)), f(r)),
        (True, Formula::Forall(x, b)) => {
            Formula::forall(x.clone(), Formula::imp(univ(Term::var(x)), t(b)))
        }
        (False, Formula::Forall(x, b)) => {
            Formula::exists(x.clone(), Formula::and(univ(Term::var(x)), f(b)))
        }
        (True, Formula::Exists(x, b)) => {
            Formula::exists(x.clone(), Formula::and(univ(Term::var(x)), t(b)))
        }
        (False, Formula::Exists(x, b)) => {
            Formula::forall(x.clone(), Formula::imp(univ(Term::var(x)), f(b)))
        }
    }
}

/// `⟦A⟧t ∨ ⟦A⟧b`: `A` holds.
pub fn translate_holds(a: &Formula) -> Formula {
    Formula::or(
        translate_formula(a, TranslationKind::True),
        translate_formula(a, TranslationKind::Both),
    )
}

fn conj(parts: Vec<Formula>) -> Formula {
    parts
        .into_iter()
        .reduce(Formula::and)
        .expect("at least one conjunct")
}

/// `forall __x1..__xn. Univ(__x1) /\ ... /\ Univ(__xn) -> conclusion(vars)`.
fn guarded(arity: usize, conclusion: impl FnOnce(Vec<Term>) -> Formula) -> Formula {
    let names: Vec<String> = (1..=arity).map(ax_var).collect();
    let vars: Vec<Term> = names.iter().map(Term::var).collect();
    let guard = conj(vars.iter().cloned().map(univ).collect());
    Formula::forall_many(names, Formula::imp(guard, conclusion(vars)))
}

/// The axioms for the symbols of `sig` and the free variables of `formulas`,
/// grouped in a fixed order: the three distinct tokens, the tokens are
/// exactly the truth values, individuals exist, individuals and truth values
/// partition the domain, closure of constants and functions, truth-valued
/// predicates and equality, reflexive equality is designated, and free
/// variables are individuals.
pub fn ax_set<'a>(sig: &Signature, formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<Formula> {
    let x1 = || Term::var(ax_var(1));
    let mut ax = vec![
        conj(vec![
            Formula::neq(token(TT), token(FF)),
            Formula::neq(token(TT), token(BB)),
            Formula::neq(token(FF), token(BB)),
        ]),
        Formula::forall(
            ax_var(1),
            Formula::iff(
                bool_(x1()),
                Formula::or(
                    Formula::or(Formula::eq(x1(), token(TT)), Formula::eq(x1(), token(FF))),
                    Formula::eq(x1(), token(BB)),
                ),
            ),
        ),
        Formula::exists(ax_var(1), univ(x1())),
        Formula::forall(ax_var(1), Formula::not(Formula::iff(univ(x1()), bool_(x1())))),
    ];
    for (c, _) in sig.functions().filter(|(_, n)| *n == 0) {
        ax.push(univ(Term::constant(c)));
    }
    for (f, n) in sig.functions().filter(|(_, n)| *n > 0) {
        ax.push(guarded(n, |vars| univ(Term::app(f, vars))));
    }
    for (p, _) in sig.predicates().filter(|(_, n)| *n == 0) {
        ax.push(bool_(Term::constant(hat(p))));
    }
    for (p, n) in sig.predicates().filter(|(_, n)| *n > 0) {
        ax.push(guarded(n, |vars| bool_(Term::app(hat(p), vars))));
    }
    ax.push(guarded(2, |vars| bool_(Term::app(EQF, vars))));
    let refl = || Term::app(EQF, vec![x1(), x1()]);
    ax.push(Formula::forall(
        ax_var(1),
        Formula::or(Formula::eq(refl(), token(TT)), Formula::eq(refl(), token(BB))),
    ));
    let free: BTreeSet<String> = free_vars_of(formulas);
    for x in free {
        ax.push(univ(Term::var(x)));
    }
    ax
}

/// The classical sequent for `Γ ⊢ A` over the symbols occurring in it:
/// the axioms, then `⟦A'⟧t ∨ ⟦A'⟧b` for each hypothesis, concluding
/// `⟦A⟧t ∨ ⟦A⟧b`.
pub fn translate_sequent(s: &Sequent) -> Sequent {
    let all: Vec<&Formula> = s.hypotheses().iter().chain([s.conclusion()]).collect();
    let sig = Signature::of_formulas(all.iter().copied()).unwrap_or_default();
    translate_sequent_with(s, &sig)
}

/// As [`translate_sequent`] with the axioms taken over `sig`.
pub fn translate_sequent_with(s: &Sequent, sig: &Signature) -> Sequent {
    let all = s.hypotheses().iter().chain([s.conclusion()]);
    let mut hyps = ax_set(sig, all);
    hyps.extend(s.hypotheses().iter().map(translate_holds));
    Sequent::new(hyps, translate_holds(s.conclusion()))
}

/// The classical structure encoding `s`: the domain of `s` followed by the
/// three truth-value tokens. Hatted predicates and `__eqF` return the token
/// of the original value, and `__tt` on arguments involving tokens.
/// Functions of `s` return the first element on such arguments.
pub fn star_structure(s: &Structure) -> Structure {
    let n = s.size();
    let mut names: Vec<String> = s.domain().to_vec();
    for t in [TT, FF, BB] {
        let mut name = t.to_string();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let mut star = Structure::new(names).expect("distinct non-empty domain");
    let m = n + 3;
    let tok = |v: TruthValue| {
        Element(
            n + match v {
                TruthValue::True => 0,
                TruthValue::False => 1,
                TruthValue::Both => 2,
            },
        )
    };
    // Maps a tuple over the star domain to the original tuple, if any.
    let original = |arity: usize, idx: usize| -> Option<Vec<Element>> {
        let args = tuple_at(m, arity, idx);
        args.iter().all(|e| e.0 < n).then_some(args)
    };
    for (f, table) in s.functions() {
        let k = table.arity();
        let cells = (0..m.pow(k as u32))
            .map(|i| original(k, i).map_or(Element(0), |args| table.get(n, &args)))
            .collect();
        star.set_function(f, k, cells).expect("sized table");
    }
    for (p, table) in s.predicates() {
        let k = table.arity();
        let cells = (0..m.pow(k as u32))
            .map(|i| original(k, i).map_or(tok(TruthValue::True), |args| tok(table.get(n, &args))))
            .collect();
        star.set_function(&hat(p), k, cells).expect("sized table");
    }
    let eqf = (0..m * m)
        .map(|i| original(2, i).map_or(tok(TruthValue::True), |a| tok(s.equality(a[0], a[1]))))
        .collect();
    star.set_function(EQF, 2, eqf).expect("sized table");
    for (c, v) in [(TT, TruthValue::True), (FF, TruthValue::False), (BB, TruthValue::Both)] {
        star.set_constant(c, tok(v)).expect("in range");
    }
    let univ = (0..m).map(|i| TruthValue::from_bool(i < n)).collect();
    star.set_predicate(UNIV, 1, univ).expect("sized table");
    let boolean = (0..m).map(|i| TruthValue::from_bool(i >= n)).collect();
    star.set_predicate(BOOL, 1, boolean).expect("sized table");
    star
}

/// A point where the embedding disagrees with the three-valued semantics.
#[derive(Clone, Debug)]
pub enum Mismatch {
    /// `⟦formula⟧kind` holds in the star structure iff the value is `kind`
    /// fails.
    Translation {
        formula: Formula,
        kind: TranslationKind,
        value: TruthValue,
        witness: Box<Witness>,
    },
    /// An axiom fails in the star structure.
    Axiom { axiom: Formula, witness: Box<Witness> },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Translation {
                formula,
                kind,
                value,
                witness,
            } => write!(
                f,
                "{formula} has value {value} but its {kind:?} translation disagrees at {}",
                witness.valuation()
            ),
            Mismatch::Axiom { axiom, witness } => {
                write!(f, "axiom {axiom} fails in the star of {}", witness.valuation())
            }
        }
    }
}

/// Outcome of [`check_correspondence`].
#[derive(Clone, Debug, Default)]
pub struct Correspondence {
    pub formulas: usize,
    pub points: usize,
    pub checks: usize,
    pub axioms: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check at every point of `space` that each translation of each formula
/// holds in the star structure exactly when the formula takes that value,
/// and that every axiom over `sig` and the formulas holds there.
/// Stops collecting after `max_mismatches`.
pub fn check_correspondence(
    space: &ModelSpace,
    sig: &Signature,
    formulas: &[Formula],
    max_mismatches: usize,
) -> Result<Correspondence, EvalError> {
    let stars: Vec<Structure> = space.structures().iter().map(star_structure).collect();
    let translations: Vec<[Formula; 3]> = formulas
        .iter()
        .map(|a| TranslationKind::ALL.map(|k| translate_formula(a, k)))
        .collect();
    let axioms = ax_set(sig, formulas);
    let mut report = Correspondence {
        formulas: formulas.len(),
        points: space.len(),
        axioms: axioms.len(),
        ..Correspondence::default()
    };
    let witness = |i: usize| Box::new(space.witness(i));
    for i in 0..space.len() {
        let (s, a) = space.point(i);
        let star = &stars[space.structure_index(i)];
        for ax in &axioms {
            report.checks += 1;
            if !holds(ax, star, a)? && report.mismatches.len() < max_mismatches {
                report.mismatches.push(Mismatch::Axiom {
                    axiom: ax.clone(),
                    witness: witness(i),
                });
            }
        }
        for (f, ts) in formulas.iter().zip(&translations) {
            let value = eval_formula(f, s, a)?;
            for (kind, t) in TranslationKind::ALL.into_iter().zip(ts) {
                report.checks += 1;
                let translated = holds(t, star, a)?;
                if translated != (value == kind.value()) && report.mismatches.len() < max_mismatches {
                    report.mismatches.push(Mismatch::Translation {
                        formula: f.clone(),
                        kind,
                        value,
                        witness: witness(i),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{eval_formula, holds, Assignment};
    use crate::syntax::parse_formula_declaring;
    use TranslationKind::*;

    fn parse(text: &str) -> Formula {
        parse_formula_declaring(text, &mut Signature::new()).unwrap()
    }

    #[test]
    fn table_rows() {
        assert_eq!(translate_formula(&Formula::Falsum, False), Formula::top());
        assert_eq!(translate_formula(&Formula::Falsum, True), Formula::Falsum);
        assert_eq!(translate_formula(&parse("~p"), True).to_string(), "p__hat = __ff");
        assert_eq!(
            translate_formula(&parse("p"), Both).to_string(),
            "~(p__hat = __tt \\/ p__hat = __ff)"
        );
        assert_eq!(
            translate_formula(&parse("p -> q"), False).to_string(),
            "p__hat != __ff /\\ q__hat = __ff"
        );
        assert_eq!(
            translate_formula(&parse("forall x. P(x)"), True).to_string(),
            "forall x. __Univ(x) -> P__hat(x) = __tt"
        );
        assert_eq!(
            translate_formula(&parse("forall x. P(x)"), False).to_string(),
            "exists x. __Univ(x) /\\ P__hat(x) = __ff"
        );
        assert_eq!(
            translate_formula(&parse("x = c"), True).to_string(),
            "__eqF(x, c) = __tt"
        );
        let t = parse("f(c, x) = x");
        let Formula::Eq(l, _) = &t else { unreachable!() };
        assert_eq!(&translate_term(l), l);
    }

    #[test]
    fn falsum_sequent() {
        let s = translate_sequent(&Sequent::new([], Formula::Falsum));
        assert_eq!(s.conclusion().to_string(), "F \\/ ~(F \\/ ~F)");
        assert_eq!(s.hypotheses().len(), 6);
    }

    #[test]
    fn identity_sequent_hypothesis() {
        let s = translate_sequent(&Sequent::new([parse("p")], parse("p")));
        assert!(s
            .hypotheses()
            .iter()
            .any(|h| h.to_string() == "p__hat = __tt \\/ ~(p__hat = __tt \\/ p__hat = __ff)"));
    }

    #[test]
    fn ax_groups() {
        let mut sig = Signature::parse("fun c/0").unwrap();
        let a = parse_formula_declaring("forall y. R(f(y), c) -> p /\\ Q(x)", &mut sig).unwrap();
        let ax: Vec<String> = ax_set(&sig, [&a]).iter().map(|f| f.to_string()).collect();
        assert_eq!(
            ax,
            [
                "__tt != __ff /\\ __tt != __bb /\\ __ff != __bb",
                "forall __x1. (__Bool(__x1) -> __x1 = __tt \\/ __x1 = __ff \\/ __x1 = __bb) /\\ (__x1 = __tt \\/ __x1 = __ff \\/ __x1 = __bb -> __Bool(__x1))",
                "exists __x1. __Univ(__x1)",
                "forall __x1. ~((__Univ(__x1) -> __Bool(__x1)) /\\ (__Bool(__x1) -> __Univ(__x1)))",
                "__Univ(c)",
                "forall __x1. __Univ(__x1) -> __Univ(f(__x1))",
                "__Bool(p__hat)",
                "forall __x1. __Univ(__x1) -> __Bool(Q__hat(__x1))",
                "forall __x1. forall __x2. __Univ(__x1) /\\ __Univ(__x2) -> __Bool(R__hat(__x1, __x2))",
                "forall __x1. forall __x2. __Univ(__x1) /\\ __Univ(__x2) -> __Bool(__eqF(__x1, __x2))",
                "forall __x1. __eqF(__x1, __x1) = __tt \\/ __eqF(__x1, __x1) = __bb",
                "__Univ(x)",
            ]
        );
    }

    #[test]
    fn star_of_both_proposition() {
        let mut s = Structure::with_size(1).unwrap();
        s.set_proposition("p", TruthValue::Both).unwrap();
        let star = star_structure(&s);
        assert!(star.is_classical());
        assert_eq!(star.size(), 4);
        let p_hat = star.function("p__hat").unwrap().cells()[0];
        assert_eq!(star.name(p_hat), BB);
        let a = Assignment::new();
        assert!(holds(&translate_formula(&parse("p"), Both), &star, &a).unwrap());
        assert!(!holds(&translate_formula(&parse("p"), True), &star, &a).unwrap());
        for ax in ax_set(&s.signature(), [&parse("p")]) {
            assert_eq!(eval_formula(&ax, &star, &a), Ok(TruthValue::True), "{ax}");
        }
    }
}
