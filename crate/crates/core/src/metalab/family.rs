//! Exhaustive formula families up to semantic equivalence.

use std::collections::{BTreeSet, HashSet};

use crate::semantics::{EvalError, ModelSpace, TruthValue};
use crate::syntax::Formula;

/// One representative formula for each distinct behaviour on a model
/// space, by depth. Two formulas behave alike when they take the same value
/// at every point and have the same free variables.
#[derive(Clone, Debug, Default)]
pub struct Family {
    levels: Vec<Vec<Formula>>,
}

impl Family {
    /// Build the family of depth at most `depth` from `atoms`, closing
    /// under the connectives and, for each of `binders`, both quantifiers.
    /// The first formula met in each class is kept: negations, then
    /// conjunctions, disjunctions and implications, then quantifiers.
    pub fn build(
        space: &ModelSpace,
        atoms: &[Formula],
        binders: &[&str],
        depth: usize,
    ) -> Result<Family, EvalError> {
        let mut seen: HashSet<(Vec<TruthValue>, BTreeSet<String>)> = HashSet::new();
        let mut levels: Vec<Vec<Member>> = Vec::new();
        let mut level0 = Vec::new();
        for a in atoms {
            let values = space.values(a)?;
            admit(&mut seen, &mut level0, a.clone(), values);
        }
        levels.push(level0);
        for _ in 0..depth {
            let newest = levels.last().expect("level 0 exists");
            let older: Vec<&Member> = levels[..levels.len() - 1].iter().flatten().collect();
            let mut next = Vec::new();
            for a in newest {
                let values = a.values.iter().map(|v| v.neg()).collect();
                admit(&mut seen, &mut next, Formula::not(a.formula.clone()), values);
            }
            type Op = (fn(Formula, Formula) -> Formula, fn(TruthValue, TruthValue) -> TruthValue);
            let ops: [Op; 3] = [
                (Formula::and, TruthValue::and),
                (Formula::or, TruthValue::or),
                (Formula::imp, TruthValue::implies),
            ];
            let pool: Vec<&Member> = older.iter().copied().chain(newest).collect();
            let first_new = older.len();
            for (build, op) in ops {
                for (i, a) in pool.iter().enumerate() {
                    for (j, b) in pool.iter().enumerate() {
                        if i < first_new && j < first_new {
                            continue;
                        }
                        let values = a.values.iter().zip(&b.values).map(|(x, y)| op(*x, *y)).collect();
                        admit(
                            &mut seen,
                            &mut next,
                            build(a.formula.clone(), b.formula.clone()),
                            values,
                        );
                    }
                }
            }
            for &x in binders {
                for a in newest {
                    for q in [Formula::forall, Formula::exists] {
                        let f = q(x, a.formula.clone());
                        let values = space.values(&f)?;
                        admit(&mut seen, &mut next, f, values);
                    }
                }
            }
            levels.push(next);
        }
        Ok(Family {
            levels: levels
                .into_iter()
                .map(|l| l.into_iter().map(|m| m.formula).collect())
                .collect(),
        })
    }

    /// Representatives first built at depth `d`.
    pub fn level(&self, d: usize) -> &[Formula] {
        &self.levels[d]
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Representatives of depth at most `d`.
    pub fn up_to(&self, d: usize) -> Vec<Formula> {
        self.levels[..=d].concat()
    }

    pub fn all(&self) -> Vec<Formula> {
        self.levels.concat()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Member {
    formula: Formula,
    values: Vec<TruthValue>,
}

fn admit(
    seen: &mut HashSet<(Vec<TruthValue>, BTreeSet<String>)>,
    level: &mut Vec<Member>,
    formula: Formula,
    values: Vec<TruthValue>,
) {
    if seen.insert((values.clone(), formula.free_vars())) {
        level.push(Member { formula, values });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{SearchConfig, Vocabulary};

    #[test]
    fn propositional_class_counts() {
        let atoms = [Formula::prop("p"), Formula::prop("q"), Formula::Falsum];
        let vocab = Vocabulary::of_formulas(&atoms).unwrap();
        let space = ModelSpace::enumerate(&vocab, &BTreeSet::new(), &SearchConfig::with_max_domain(1));
        let fam = Family::build(&space, &atoms, &[], 3).unwrap();
        let counts: Vec<usize> = (0..=3).map(|d| fam.up_to(d).len()).collect();
        assert_eq!(counts, [3, 14, 97, 872]);
    }
}
