use std::fmt;
use std::str::FromStr;

/// One of the three truth values, ordered `False < Both < True`.
///
/// `True` and `Both` are designated: a formula holds when its value is
/// designated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    False,
    Both,
    True,
}

use TruthValue::{Both, False, True};

impl TruthValue {
    /// Canonical enumeration order used by every table and search.
    pub const ALL: [TruthValue; 3] = [True, False, Both];
    pub const CLASSICAL: [TruthValue; 2] = [True, False];
    pub const DESIGNATED: [TruthValue; 2] = [True, Both];

    pub fn is_designated(self) -> bool {
        self != False
    }

    pub fn is_classical(self) -> bool {
        self != Both
    }

    /// Position in [`TruthValue::ALL`].
    pub fn index(self) -> usize {
        match self {
            True => 0,
            False => 1,
            Both => 2,
        }
    }

    pub fn from_index(i: usize) -> TruthValue {
        Self::ALL[i]
    }

    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            True
        } else {
            False
        }
    }

    pub fn symbol(self) -> char {
        match self {
            True => 't',
            False => 'f',
            Both => 'b',
        }
    }

    /// Swaps true and false, fixes both.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> TruthValue {
        match self {
            True => False,
            False => True,
            Both => Both,
        }
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    /// The consequent's value when the antecedent is designated, else true.
    pub fn implies(self, other: TruthValue) -> TruthValue {
        if self.is_designated() {
            other
        } else {
            True
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a truth value (expected t, f or b)")]
pub struct BadTruthValue(pub String);

impl FromStr for TruthValue {
    type Err = BadTruthValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "t" | "T" => Ok(True),
            "f" | "F" => Ok(False),
            "b" | "B" => Ok(Both),
            other => Err(BadTruthValue(other.to_string())),
        }
    }
}
