use std::collections::BTreeSet;

/// A term: a variable or a function symbol applied to arguments.
///
/// Constants are applications with no arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

/// A formula of the object language.
///
/// Truth (`T`), non-equality and bi-implication are abbreviations and
/// have no constructor of their own; see [`Formula::top`],
/// [`Formula::neq`] and [`Formula::iff`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Falsum,
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// Which quantifier a binder node carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    /// Replace every occurrence of the variable `x` by `t`.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    /// `t1 != t2`, i.e. `~(t1 = t2)`.
    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Formula::not(Formula::Eq(lhs, rhs))
    }

    /// Truth, i.e. `~F`.
    pub fn top() -> Self {
        Formula::not(Formula::Falsum)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `a <-> b`, i.e. `(a -> b) /\ (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(x: impl Into<String>, a: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(a))
    }

    pub fn exists(x: impl Into<String>, a: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(a))
    }

    /// Nested universal quantification, outermost binder first.
    pub fn forall_many<S: Into<String>>(xs: impl IntoIterator<Item = S>, a: Formula) -> Self {
        let xs: Vec<String> = xs.into_iter().map(Into::into).collect();
        xs.into_iter().rev().fold(a, |body, x| Formula::forall(x, body))
    }

    pub fn quantified(q: Quantifier, x: impl Into<String>, a: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(x, a),
            Quantifier::Exists => Formula::exists(x, a),
        }
    }

    /// The binder, if this is a quantified formula.
    pub fn as_quantified(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(x, a) => Some((Quantifier::Forall, x, a)),
            Formula::Exists(x, a) => Some((Quantifier::Exists, x, a)),
            _ => None,
        }
    }

    /// Built only from falsum, propositions and the four connectives.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Falsum => true,
            Formula::Pred(_, args) => args.is_empty(),
            Formula::Eq(..) | Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Not(a) => a.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
        }
    }

    /// Nesting depth of connectives and quantifiers; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Pred(..) | Formula::Eq(..) => 0,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn uses_equality(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Falsum | Formula::Pred(..) => false,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.uses_equality(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.uses_equality() || b.uses_equality()
            }
        }
    }
}
