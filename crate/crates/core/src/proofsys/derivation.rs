use thiserror::Error;

use super::rules::{check_step, CheckError, Mode, RuleApplication};
use super::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The line is one of the hypothesis sequents of the derivation.
    Hypothesis,
    Rule(RuleApplication),
}

/// A sequence of justified sequents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub lines: Vec<(Sequent, Justification)>,
}

impl Derivation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: Sequent, j: Justification) -> &mut Self {
        self.lines.push((s, j));
        self
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn last(&self) -> Option<&Sequent> {
        self.lines.last().map(|(s, _)| s)
    }

    /// The first `n` lines.
    pub fn prefix(&self, n: usize) -> Derivation {
        Derivation {
            lines: self.lines[..n].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("the derivation is empty")]
    Empty,
    #[error("line {line}: {error}")]
    Step { line: usize, error: CheckError },
    #[error("line {line}: not among the hypothesis sequents")]
    NotAHypothesis { line: usize },
    #[error("last line `{found}` is not the target `{target}`")]
    TargetMismatch { found: String, target: String },
}

impl DerivationError {
    pub fn line(&self) -> Option<usize> {
        match self {
            DerivationError::Step { line, .. } | DerivationError::NotAHypothesis { line } => {
                Some(*line)
            }
            _ => None,
        }
    }
}

/// Check every line against the lines before it, independently of
/// whether those lines check.
pub fn check_lines(
    d: &Derivation,
    hypotheses: &[Sequent],
    mode: Mode,
) -> Vec<Result<(), DerivationError>> {
    let earlier: Vec<Sequent> = d.lines.iter().map(|(s, _)| s.clone()).collect();
    d.lines
        .iter()
        .enumerate()
        .map(|(i, (s, j))| match j {
            Justification::Hypothesis => {
                if hypotheses.iter().any(|h| h == s) {
                    Ok(())
                } else {
                    Err(DerivationError::NotAHypothesis { line: i + 1 })
                }
            }
            Justification::Rule(app) => check_step(s, app, &earlier[..i], mode)
                .map_err(|error| DerivationError::Step { line: i + 1, error }),
        })
        .collect()
}

/// Check that `d` derives `target` from the sequents `hypotheses`.
/// With no hypotheses this checks a proof.
pub fn check_derivation(
    d: &Derivation,
    hypotheses: &[Sequent],
    target: &Sequent,
    mode: Mode,
) -> Result<(), DerivationError> {
    let last = d.last().ok_or(DerivationError::Empty)?;
    if let Some(err) = check_lines(d, hypotheses, mode).into_iter().find_map(Result::err) {
        return Err(err);
    }
    if last != target {
        return Err(DerivationError::TargetMismatch {
            found: last.to_string(),
            target: target.to_string(),
        });
    }
    Ok(())
}
