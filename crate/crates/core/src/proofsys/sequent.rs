use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{free_vars_of, parse_formula_declaring, Formula, ParseError, ParseErrorKind, Signature};

/// `Γ ⊢ A` with `Γ` a finite set of formulas taken up to alpha-equivalence.
#[derive(Clone, Debug)]
pub struct Sequent {
    hypotheses: Vec<Formula>,
    conclusion: Formula,
}

impl Sequent {
    /// Alpha-equivalent duplicates among `hypotheses` are dropped; the
    /// first occurrence is kept.
    pub fn new(hypotheses: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Sequent {
        let mut hyps: Vec<Formula> = Vec::new();
        for h in hypotheses {
            if !hyps.iter().any(|g| g.alpha_eq(&h)) {
                hyps.push(h);
            }
        }
        Sequent {
            hypotheses: hyps,
            conclusion,
        }
    }

    pub fn hypotheses(&self) -> &[Formula] {
        &self.hypotheses
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn has_hypothesis(&self, a: &Formula) -> bool {
        self.hypotheses.iter().any(|h| h.alpha_eq(a))
    }

    /// Set equality of hypotheses up to alpha.
    pub fn same_context(&self, other: &Sequent) -> bool {
        same_set(&self.hypotheses, &other.hypotheses)
    }

    /// This sequent's hypotheses equal `gamma ∪ extra` as a set.
    pub fn context_is(&self, gamma: &[Formula], extra: &[&Formula]) -> bool {
        let mut wanted: Vec<Formula> = gamma.to_vec();
        wanted.extend(extra.iter().map(|f| (*f).clone()));
        same_set(&self.hypotheses, &wanted)
    }

    /// `Γ ∪ {a} ⊢ conclusion`.
    pub fn with_hypothesis(&self, a: Formula) -> Sequent {
        Sequent::new(self.hypotheses.iter().cloned().chain([a]), self.conclusion.clone())
    }

    pub fn hypothesis_free_vars(&self) -> BTreeSet<String> {
        free_vars_of(&self.hypotheses)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        free_vars_of(self.hypotheses.iter().chain([&self.conclusion]))
    }

    /// Parse `A1; A2; ... |- A`, declaring unknown symbols in `sig`.
    /// Reported positions are byte offsets into `text`.
    pub fn parse(text: &str, sig: &mut Signature) -> Result<Sequent, ParseError> {
        let Some(turnstile) = text.find("|-") else {
            return Err(ParseError {
                pos: text.len(),
                kind: ParseErrorKind::Unexpected {
                    expected: "`|-`".into(),
                    found: "end of input".into(),
                },
            });
        };
        let mut hyps = Vec::new();
        let mut offset = 0;
        let left = &text[..turnstile];
        for part in left.split(';') {
            if !part.trim().is_empty() {
                hyps.push(parse_at(part, offset, sig)?);
            }
            offset += part.len() + 1;
        }
        let conclusion = parse_at(&text[turnstile + 2..], turnstile + 2, sig)?;
        Ok(Sequent::new(hyps, conclusion))
    }
}

fn parse_at(text: &str, offset: usize, sig: &mut Signature) -> Result<Formula, ParseError> {
    parse_formula_declaring(text, sig).map_err(|e| ParseError {
        pos: e.pos + offset,
        kind: e.kind,
    })
}

fn same_set(a: &[Formula], b: &[Formula]) -> bool {
    a.iter().all(|f| b.iter().any(|g| g.alpha_eq(f))) && b.iter().all(|g| a.iter().any(|f| f.alpha_eq(g)))
}

impl PartialEq for Sequent {
    fn eq(&self, other: &Sequent) -> bool {
        self.conclusion.alpha_eq(&other.conclusion) && self.same_context(other)
    }
}

impl Eq for Sequent {}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{h}")?;
        }
        if self.hypotheses.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}
