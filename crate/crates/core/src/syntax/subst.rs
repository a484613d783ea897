//! Free variables, capture-avoiding substitution and alpha-equivalence.

use std::collections::BTreeSet;

use super::ast::{Formula, Term};

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<&str>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(&v.as_str())));
        };
        match self {
            Formula::Falsum => {}
            Formula::Pred(_, args) => args.iter().for_each(|t| term(t, bound)),
            Formula::Eq(l, r) => {
                term(l, bound);
                term(r, bound);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Falsum => false,
            Formula::Pred(_, args) => args.iter().any(|t| t.contains_var(x)),
            Formula::Eq(l, r) => l.contains_var(x) || r.contains_var(x),
            Formula::Not(a) => a.has_free(x),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_free(x) || b.has_free(x)
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && a.has_free(x),
        }
    }

    /// `self[x := t]`, renaming bound variables where a free variable of
    /// `t` would otherwise be captured.
    ///
    /// A clashing binder `y` becomes the first of `y'`, `y''`, ... that is
    /// neither free in `t` nor free in the quantifier body.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        if !self.has_free(x) {
            return self.clone();
        }
        match self {
            Formula::Falsum => Formula::Falsum,
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
            Formula::Eq(l, r) => Formula::Eq(l.substitute(x, t), r.substitute(x, t)),
            Formula::Not(a) => Formula::not(a.substitute(x, t)),
            Formula::And(a, b) => Formula::and(a.substitute(x, t), b.substitute(x, t)),
            Formula::Or(a, b) => Formula::or(a.substitute(x, t), b.substitute(x, t)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(x, t), b.substitute(x, t)),
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, y, body) = self.as_quantified().expect("quantifier");
                if t.contains_var(y) {
                    let mut avoid = t.free_vars();
                    avoid.extend(body.free_vars());
                    let fresh = fresh_variant(y, &avoid);
                    let renamed = body.substitute(y, &Term::Var(fresh.clone()));
                    Formula::quantified(q, fresh, renamed.substitute(x, t))
                } else {
                    Formula::quantified(q, y, body.substitute(x, t))
                }
            }
        }
    }

    /// Equality up to the names of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new())
    }
}

/// The first of `y'`, `y''`, ... not contained in `avoid`.
pub fn fresh_variant(y: &str, avoid: &BTreeSet<String>) -> String {
    let mut candidate = format!("{y}'");
    while avoid.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Union of the free variables of a collection of formulas.
pub fn free_vars_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    formulas.into_iter().flat_map(Formula::free_vars).collect()
}

pub fn alpha_equal(a: &Formula, b: &Formula) -> bool {
    a.alpha_eq(b)
}

// Pairs of binders, innermost last.
type Binders<'a> = Vec<(&'a str, &'a str)>;

fn alpha<'a>(a: &'a Formula, b: &'a Formula, env: &mut Binders<'a>) -> bool {
    match (a, b) {
        (Formula::Falsum, Formula::Falsum) => true,
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| alpha_term(s, t, env))
        }
        (Formula::Eq(l1, r1), Formula::Eq(l2, r2)) => {
            alpha_term(l1, l2, env) && alpha_term(r1, r2, env)
        }
        (Formula::Not(x), Formula::Not(y)) => alpha(x, y, env),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            alpha(a1, b1, env) && alpha(a2, b2, env)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1))
        | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            env.push((x, y));
            let ok = alpha(a1, b1, env);
            env.pop();
            ok
        }
        _ => false,
    }
}

fn alpha_term(s: &Term, t: &Term, env: &Binders<'_>) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            let left = env.iter().rposition(|(l, _)| *l == x);
            let right = env.iter().rposition(|(_, r)| *r == y);
            match (left, right) {
                (None, None) => x == y,
                (l, r) => l == r,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| alpha_term(a, b, env))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(args: &[&str]) -> Formula {
        Formula::pred("P", args.iter().map(|a| Term::var(*a)).collect())
    }

    #[test]
    fn free_vars_drop_bound_occurrences() {
        let f = Formula::forall("x", p(&["x", "y"]));
        assert_eq!(f.free_vars(), BTreeSet::from(["y".to_string()]));
        let e = Formula::eq(Term::var("x"), Term::constant("c"));
        assert_eq!(e.free_vars(), BTreeSet::from(["x".to_string()]));
        assert!(Formula::prop("p").free_vars().is_empty());
    }

    #[test]
    fn substitution_renames_clashing_binder() {
        let f = Formula::forall("y", p(&["x", "y"]));
        let g = f.substitute("x", &Term::var("y"));
        assert_eq!(g, Formula::forall("y'", p(&["y", "y'"])));
    }

    #[test]
    fn fresh_name_skips_taken_primes() {
        // y' is free in the body, so the binder must become y''.
        let f = Formula::forall("y", Formula::and(p(&["x", "y"]), p(&["y'"])));
        let g = f.substitute("x", &Term::var("y"));
        assert_eq!(
            g,
            Formula::forall("y''", Formula::and(p(&["y", "y''"]), p(&["y'"])))
        );
    }

    #[test]
    fn substitution_into_constants_and_absent_variables() {
        let f = p(&["x", "x"]);
        let c = Term::constant("c");
        assert_eq!(
            f.substitute("x", &c),
            Formula::pred("P", vec![c.clone(), c.clone()])
        );
        let g = Formula::forall("x", p(&["x"]));
        assert_eq!(g.substitute("x", &c), g);
        assert_eq!(p(&["y"]).substitute("x", &c), p(&["y"]));
    }

    #[test]
    fn alpha_equivalence_examples() {
        assert!(Formula::forall("x", p(&["x"])).alpha_eq(&Formula::forall("y", p(&["y"]))));
        assert!(!Formula::forall("x", p(&["x"])).alpha_eq(&Formula::exists("x", p(&["x"]))));
        assert!(!p(&["x"]).alpha_eq(&p(&["y"])));
        // Bound y on one side against free y on the other.
        assert!(!Formula::forall("x", p(&["x", "y"])).alpha_eq(&Formula::forall("y", p(&["y", "y"]))));
        // Shadowing.
        let a = Formula::forall("x", Formula::forall("x", p(&["x"])));
        let b = Formula::forall("y", Formula::forall("z", p(&["z"])));
        assert!(a.alpha_eq(&b));
        let c = Formula::forall("y", Formula::forall("z", p(&["y"])));
        assert!(!a.alpha_eq(&c));
    }
}
