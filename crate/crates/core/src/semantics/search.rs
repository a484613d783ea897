//! Bounded search over finite structures.
//!
//! Structures are enumerated over the domains `d1..dk` for `k = 1..=max`,
//! tables in lexicographic order of their cells (functions, then
//! predicates, then equality), values in the order `t, f, b`. Only the
//! symbols occurring in the query are interpreted. Equality is enumerated
//! only when `=` occurs; otherwise it is the identity table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::eval::{eval_formula, EvalError};
use super::structure::{tuple_at, Assignment, Element, Structure};
use super::truth::TruthValue;
use crate::syntax::{free_vars_of, Formula, Signature, SignatureError};

/// The symbols a search has to interpret.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    pub functions: Vec<(String, usize)>,
    pub predicates: Vec<(String, usize)>,
    pub equality: bool,
}

impl Vocabulary {
    pub fn of_formulas<'a>(
        formulas: impl IntoIterator<Item = &'a Formula> + Clone,
    ) -> Result<Vocabulary, SignatureError> {
        let sig = Signature::of_formulas(formulas.clone())?;
        let equality = formulas.into_iter().any(Formula::uses_equality);
        Ok(Vocabulary::of_signature(&sig, equality))
    }

    pub fn of_signature(sig: &Signature, equality: bool) -> Vocabulary {
        Vocabulary {
            functions: sig.functions().map(|(n, a)| (n.to_string(), a)).collect(),
            predicates: sig.predicates().map(|(n, a)| (n.to_string(), a)).collect(),
            equality,
        }
    }

    fn is_propositional(&self) -> bool {
        self.functions.is_empty() && !self.equality && self.predicates.iter().all(|(_, a)| *a == 0)
    }
}

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest domain size tried.
    pub max_domain: usize,
    /// Maximal number of (structure, assignment) pairs examined.
    pub budget: u64,
    /// Only structures without the value `b` in any predicate or equality cell.
    pub classical_only: bool,
    /// Only structures where designated-equal elements are interchangeable
    /// (see [`Structure::has_substitutive_equality`]). Without it the
    /// replacement rule for equality is not valid.
    pub substitutive_equality: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_domain: 3,
            budget: 20_000_000,
            classical_only: false,
            substitutive_equality: true,
        }
    }
}

impl SearchConfig {
    pub fn with_max_domain(max_domain: usize) -> Self {
        SearchConfig {
            max_domain,
            ..Self::default()
        }
    }

    pub fn classical(mut self) -> Self {
        self.classical_only = true;
        self
    }
}

/// Iterates all structures of one domain size over a vocabulary.
pub struct StructureEnumerator {
    size: usize,
    vocab: Vocabulary,
    config: SearchConfig,
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

impl StructureEnumerator {
    pub fn new(vocab: Vocabulary, size: usize, config: SearchConfig) -> StructureEnumerator {
        assert!(size > 0, "domains are non-empty");
        let pred_values = if config.classical_only { 2 } else { 3 };
        let mut radices = Vec::new();
        for (_, arity) in &vocab.functions {
            radices.extend(std::iter::repeat_n(size, size.pow(*arity as u32)));
        }
        for (_, arity) in &vocab.predicates {
            radices.extend(std::iter::repeat_n(pred_values, size.pow(*arity as u32)));
        }
        if vocab.equality {
            for i in 0..size * size {
                let diagonal = i / size == i % size;
                radices.push(match (diagonal, config.classical_only) {
                    (true, true) => 1,
                    (true, false) => 2,
                    (false, _) => pred_values,
                });
            }
        }
        StructureEnumerator {
            size,
            digits: vec![0; radices.len()],
            radices,
            vocab,
            config,
            done: false,
        }
    }

    /// Number of tables before filtering.
    pub fn raw_count(&self) -> u128 {
        self.radices.iter().map(|r| *r as u128).product()
    }

    fn build(&self) -> Structure {
        let n = self.size;
        let mut s = Structure::with_size(n).expect("positive size");
        let mut at = 0;
        for (name, arity) in &self.vocab.functions {
            let k = n.pow(*arity as u32);
            let cells = self.digits[at..at + k].iter().map(|d| Element(*d)).collect();
            s.set_function(name, *arity, cells).expect("well-sized table");
            at += k;
        }
        for (name, arity) in &self.vocab.predicates {
            let k = n.pow(*arity as u32);
            let cells = self.digits[at..at + k]
                .iter()
                .map(|d| TruthValue::from_index(*d))
                .collect();
            s.set_predicate(name, *arity, cells).expect("well-sized table");
            at += k;
        }
        if self.vocab.equality {
            let cells = self.digits[at..]
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    if i / n == i % n {
                        TruthValue::DESIGNATED[*d]
                    } else {
                        TruthValue::from_index(*d)
                    }
                })
                .collect();
            s.set_equality(cells).expect("designated diagonal");
        }
        s
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for StructureEnumerator {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        while !self.done {
            let s = self.build();
            self.advance();
            if !self.config.substitutive_equality || s.has_substitutive_equality() {
                return Some(s);
            }
        }
        None
    }
}

/// Every assignment of `vars` into a domain of `size` elements, in
/// lexicographic order.
pub fn assignments(vars: &[String], size: usize) -> impl Iterator<Item = Assignment> + '_ {
    let total = size.pow(vars.len() as u32);
    (0..total).map(move |idx| {
        let tuple = tuple_at(size, vars.len(), idx);
        let mut a = Assignment::new();
        for (x, e) in vars.iter().zip(tuple) {
            a.set(x.clone(), e);
        }
        a
    })
}

/// A structure with an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub structure: Structure,
    pub assignment: Assignment,
}

impl Witness {
    /// `p=b q=f` for the propositions of the structure, followed by the
    /// assignment.
    pub fn valuation(&self) -> String {
        let s = &self.structure;
        let mut parts: Vec<String> = s
            .predicates()
            .filter(|(_, t)| t.arity() == 0)
            .map(|(p, t)| format!("{p}={}", t.cells()[0]))
            .collect();
        if !self.assignment.is_empty() {
            parts.push(self.assignment.describe(s));
        }
        parts.join(" ")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure)?;
        if !self.assignment.is_empty() {
            writeln!(f, "assignment {}", self.assignment.describe(&self.structure))?;
        }
        Ok(())
    }
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The first structure and assignment, in canonical order, that
    /// refutes the query.
    CounterModel(Box<Witness>),
    /// Nothing refutes the query on domains up to this size.
    NoCounterModelUpTo(usize),
}

impl Verdict {
    pub fn counter_model(&self) -> Option<&Witness> {
        match self {
            Verdict::CounterModel(w) => Some(w),
            Verdict::NoCounterModelUpTo(_) => None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.counter_model().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the domain bound must be at least 1")]
    InvalidBound,
    #[error("inconclusive: budget of {budget} checks exhausted at domain size {domain_size}")]
    BudgetExceeded { budget: u64, domain_size: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Run `refutes` over the canonical search space of `formulas`.
pub fn search<F>(
    formulas: &[&Formula],
    config: &SearchConfig,
    mut refutes: F,
) -> Result<Verdict, SearchError>
where
    F: FnMut(&Structure, &Assignment) -> Result<bool, EvalError>,
{
    if config.max_domain == 0 {
        return Err(SearchError::InvalidBound);
    }
    let vocab = Vocabulary::of_formulas(formulas.iter().copied())?;
    let vars: Vec<String> = free_vars_of(formulas.iter().copied()).into_iter().collect();
    // Without terms or quantifiers every domain size yields the same valuations.
    let propositional = vars.is_empty()
        && vocab.is_propositional()
        && formulas.iter().all(|f| f.is_propositional());
    let sizes = if propositional { 1 } else { config.max_domain };
    let mut checked: u64 = 0;
    for size in 1..=sizes {
        for s in StructureEnumerator::new(vocab.clone(), size, *config) {
            for a in assignments(&vars, size) {
                if checked >= config.budget {
                    return Err(SearchError::BudgetExceeded {
                        budget: config.budget,
                        domain_size: size,
                    });
                }
                checked += 1;
                if refutes(&s, &a)? {
                    return Ok(Verdict::CounterModel(Box::new(Witness {
                        structure: s,
                        assignment: a,
                    })));
                }
            }
        }
    }
    Ok(Verdict::NoCounterModelUpTo(config.max_domain))
}

/// Look for a structure and assignment where every premise holds and the
/// conclusion does not.
pub fn check_consequence(
    premises: &[Formula],
    conclusion: &Formula,
    config: &SearchConfig,
) -> Result<Verdict, SearchError> {
    let mut all: Vec<&Formula> = premises.iter().collect();
    all.push(conclusion);
    search(&all, config, |s, a| {
        for p in premises {
            if !eval_formula(p, s, a)?.is_designated() {
                return Ok(false);
            }
        }
        Ok(!eval_formula(conclusion, s, a)?.is_designated())
    })
}

/// Look for a structure and assignment giving the two formulas different values.
pub fn check_equivalence(
    a1: &Formula,
    a2: &Formula,
    config: &SearchConfig,
) -> Result<Verdict, SearchError> {
    search(&[a1, a2], config, |s, a| {
        Ok(eval_formula(a1, s, a)? != eval_formula(a2, s, a)?)
    })
}

/// Look for a structure and assignment where the formula has the value `b`.
pub fn check_consistency(f: &Formula, config: &SearchConfig) -> Result<Verdict, SearchError> {
    search(&[f], config, |s, a| Ok(eval_formula(f, s, a)? == TruthValue::Both))
}

/// Designation of a formula at every point of a [`ModelSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    values: Vec<TruthValue>,
}

impl Profile {
    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn designated(&self, point: usize) -> bool {
        self.values[point].is_designated()
    }
}

/// A materialised search space: a fixed list of (structure, assignment)
/// points with memoised formula values. Used where many formulas are
/// checked against the same space.
pub struct ModelSpace {
    structures: Vec<Structure>,
    points: Vec<(usize, Assignment)>,
    cache: HashMap<Formula, Profile>,
}

impl ModelSpace {
    /// All structures over `vocab` with domains `1..=config.max_domain`,
    /// each paired with every assignment of `vars`.
    pub fn enumerate(vocab: &Vocabulary, vars: &BTreeSet<String>, config: &SearchConfig) -> Self {
        let vars: Vec<String> = vars.iter().cloned().collect();
        let mut structures = Vec::new();
        let mut points = Vec::new();
        for size in 1..=config.max_domain {
            for s in StructureEnumerator::new(vocab.clone(), size, *config) {
                let idx = structures.len();
                points.extend(assignments(&vars, size).map(|a| (idx, a)));
                structures.push(s);
            }
        }
        ModelSpace {
            structures,
            points,
            cache: HashMap::new(),
        }
    }

    /// Keep only the points whose structure satisfies `keep`.
    pub fn restrict(mut self, keep: impl Fn(&Structure) -> bool) -> Self {
        let structures = &self.structures;
        self.points.retain(|(s, _)| keep(&structures[*s]));
        self.cache.clear();
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn structures(&self) -> &[Structure] {
        &self.structures
    }

    pub fn point(&self, i: usize) -> (&Structure, &Assignment) {
        let (s, a) = &self.points[i];
        (&self.structures[*s], a)
    }

    /// Position in [`ModelSpace::structures`] of the structure of point `i`.
    pub fn structure_index(&self, i: usize) -> usize {
        self.points[i].0
    }

    pub fn witness(&self, i: usize) -> Witness {
        let (s, a) = self.point(i);
        Witness {
            structure: s.clone(),
            assignment: a.clone(),
        }
    }

    /// The value of `f` at every point, without memoising.
    pub fn values(&self, f: &Formula) -> Result<Vec<TruthValue>, EvalError> {
        self.points
            .iter()
            .map(|(s, a)| eval_formula(f, &self.structures[*s], a))
            .collect()
    }

    /// The value of `f` at every point.
    pub fn profile(&mut self, f: &Formula) -> Result<&Profile, EvalError> {
        if !self.cache.contains_key(f) {
            let values = self.values(f)?;
            self.cache.insert(f.clone(), Profile { values });
        }
        Ok(&self.cache[f])
    }

    /// The first point where all `premises` hold and `conclusion` does not.
    pub fn counter_point(
        &mut self,
        premises: &[Formula],
        conclusion: &Formula,
    ) -> Result<Option<usize>, EvalError> {
        let mut candidates: Vec<bool> = self
            .profile(conclusion)?
            .values
            .iter()
            .map(|v| !v.is_designated())
            .collect();
        for p in premises {
            let prof = self.profile(p)?;
            for (c, v) in candidates.iter_mut().zip(&prof.values) {
                *c &= v.is_designated();
            }
        }
        Ok(candidates.iter().position(|c| *c))
    }

    /// Drop memoised values, keeping the points.
    pub fn clear_cache(&mut self) {
        self.cache.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula_declaring;
    use TruthValue::*;

    fn parse(text: &str) -> Formula {
        parse_formula_declaring(text, &mut Signature::new()).unwrap()
    }

    #[test]
    fn paraconsistency_counter_model() {
        let v = check_consequence(
            &[parse("p"), parse("~p")],
            &parse("q"),
            &SearchConfig::default(),
        )
        .unwrap();
        let w = v.counter_model().expect("counter-model");
        assert_eq!(w.structure.size(), 1);
        assert_eq!(w.valuation(), "p=b q=f");
    }

    #[test]
    fn excluded_middle_and_falsum_have_no_counter_models() {
        let cfg = SearchConfig::default();
        assert_eq!(
            check_consequence(&[], &parse("p \\/ ~p"), &cfg).unwrap(),
            Verdict::NoCounterModelUpTo(3)
        );
        assert_eq!(
            check_consequence(&[Formula::Falsum], &parse("q"), &cfg).unwrap(),
            Verdict::NoCounterModelUpTo(3)
        );
        assert_eq!(
            check_consequence(&[], &parse("forall x. P(x) \\/ ~P(x)"), &cfg).unwrap(),
            Verdict::NoCounterModelUpTo(3)
        );
    }

    #[test]
    fn equivalence_examples() {
        let cfg = SearchConfig::default();
        assert!(!check_equivalence(&parse("p /\\ p"), &parse("p"), &cfg).unwrap().is_refuted());
        assert!(!check_equivalence(&parse("p"), &parse("~~p"), &cfg).unwrap().is_refuted());
        let v = check_equivalence(&parse("p"), &parse("p \\/ q"), &cfg).unwrap();
        assert_eq!(v.counter_model().unwrap().valuation(), "p=f q=t");
    }

    #[test]
    fn consistency_examples() {
        let cfg = SearchConfig::default();
        let w = check_consistency(&parse("p"), &cfg).unwrap();
        assert_eq!(w.counter_model().unwrap().valuation(), "p=b");
        assert!(!check_consistency(&Formula::Falsum, &cfg).unwrap().is_refuted());
        assert!(!check_consistency(&parse("p -> F"), &cfg).unwrap().is_refuted());
    }

    #[test]
    fn first_order_counter_model_is_canonical() {
        // exists x. P(x) does not give forall x. P(x); the first refuting
        // structure has two elements.
        let v = check_consequence(
            &[parse("exists x. P(x)")],
            &parse("forall x. P(x)"),
            &SearchConfig::default(),
        )
        .unwrap();
        let w = v.counter_model().unwrap();
        assert_eq!(w.structure.size(), 2);
        assert_eq!(w.structure.predicate("P").unwrap().cells(), &[True, False]);
    }

    #[test]
    fn budget_and_bound_errors() {
        let cfg = SearchConfig {
            budget: 5,
            ..SearchConfig::default()
        };
        assert!(matches!(
            check_consequence(&[], &parse("forall x. exists y. R(x, y) \\/ ~R(x, y)"), &cfg),
            Err(SearchError::BudgetExceeded { budget: 5, .. })
        ));
        let cfg = SearchConfig::with_max_domain(0);
        assert_eq!(
            check_consequence(&[], &parse("p"), &cfg),
            Err(SearchError::InvalidBound)
        );
    }

    #[test]
    fn enumeration_counts() {
        let vocab = Vocabulary::of_formulas([&parse("P(x) /\\ p")]).unwrap();
        let cfg = SearchConfig::default();
        assert_eq!(StructureEnumerator::new(vocab.clone(), 2, cfg).count(), 27);
        assert_eq!(StructureEnumerator::new(vocab, 2, cfg.classical()).count(), 8);

        // With equality but no substitutivity filter: 2 diagonal choices
        // per element and 3 values per off-diagonal cell.
        let vocab = Vocabulary::of_formulas([&parse("x = y")]).unwrap();
        let literal = SearchConfig {
            substitutive_equality: false,
            ..cfg
        };
        assert_eq!(StructureEnumerator::new(vocab.clone(), 2, literal).count(), 36);
        let all: Vec<_> = StructureEnumerator::new(vocab, 2, cfg).collect();
        assert!(all.iter().all(Structure::has_substitutive_equality));
        // Off-diagonal false (4 diagonals) or both off-diagonal cells
        // equal to a common diagonal value (2).
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn model_space_counter_points() {
        let premises = [parse("p"), parse("~p")];
        let vocab = Vocabulary::of_formulas(premises.iter().chain([&parse("q")])).unwrap();
        let mut space = ModelSpace::enumerate(&vocab, &BTreeSet::new(), &SearchConfig::with_max_domain(1));
        assert_eq!(space.len(), 9);
        let i = space.counter_point(&premises, &parse("q")).unwrap().unwrap();
        assert_eq!(space.witness(i).valuation(), "p=b q=f");
        assert_eq!(space.counter_point(&premises, &parse("p")).unwrap(), None);
    }
}
