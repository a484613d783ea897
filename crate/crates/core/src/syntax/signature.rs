use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::ast::{Formula, Term};

/// Words of the concrete syntax that can never name a symbol.
pub const RESERVED_WORDS: [&str; 4] = ["F", "T", "forall", "exists"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Function,
    Predicate,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Function => "fun",
            SymbolKind::Predicate => "pred",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("`{0}` is not a valid symbol name")]
    InvalidName(String),
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("symbol `{name}` already declared as {kind}/{arity}")]
    Duplicate {
        name: String,
        kind: SymbolKind,
        arity: usize,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A finite set of function and predicate symbols with arities.
///
/// Names are unique across both kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<String, (SymbolKind, usize)>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.declare(name, SymbolKind::Function, arity)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.declare(name, SymbolKind::Predicate, arity)
    }

    /// Declare a user symbol. Names containing `__` are kept free for
    /// the symbols introduced by the classical translation, and primes
    /// are kept free for renamed variables.
    pub fn declare(
        &mut self,
        name: &str,
        kind: SymbolKind,
        arity: usize,
    ) -> Result<(), SignatureError> {
        if !is_identifier(name) || name.contains('\'') {
            return Err(SignatureError::InvalidName(name.to_string()));
        }
        if name.contains("__") || RESERVED_WORDS.contains(&name) {
            return Err(SignatureError::Reserved(name.to_string()));
        }
        self.insert(name, kind, arity)
    }

    pub(crate) fn insert(
        &mut self,
        name: &str,
        kind: SymbolKind,
        arity: usize,
    ) -> Result<(), SignatureError> {
        match self.symbols.get(name) {
            Some(&(k, a)) if k == kind && a == arity => Ok(()),
            Some(&(k, a)) => Err(SignatureError::Duplicate {
                name: name.to_string(),
                kind: k,
                arity: a,
            }),
            None => {
                self.symbols.insert(name.to_string(), (kind, arity));
                Ok(())
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<(SymbolKind, usize)> {
        self.symbols.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some((SymbolKind::Function, n)) => Some(n),
            _ => None,
        }
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some((SymbolKind::Predicate, n)) => Some(n),
            _ => None,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    /// Function symbols with arities, in name order.
    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.of_kind(SymbolKind::Function)
    }

    /// Predicate symbols with arities, in name order.
    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.of_kind(SymbolKind::Predicate)
    }

    fn of_kind(&self, kind: SymbolKind) -> impl Iterator<Item = (&str, usize)> {
        self.symbols
            .iter()
            .filter(move |(_, (k, _))| *k == kind)
            .map(|(n, (_, a))| (n.as_str(), *a))
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Add every symbol of `other`.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (name, &(kind, arity)) in &other.symbols {
            self.insert(name, kind, arity)?;
        }
        Ok(())
    }

    /// The symbols occurring in `formulas`, with arities taken from use.
    pub fn of_formulas<'a>(
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Result<Signature, SignatureError> {
        let mut sig = Signature::new();
        for f in formulas {
            sig.collect_formula(f)?;
        }
        Ok(sig)
    }

    fn collect_formula(&mut self, f: &Formula) -> Result<(), SignatureError> {
        match f {
            Formula::Falsum => Ok(()),
            Formula::Pred(p, args) => {
                self.insert(p, SymbolKind::Predicate, args.len())?;
                args.iter().try_for_each(|t| self.collect_term(t))
            }
            Formula::Eq(l, r) => {
                self.collect_term(l)?;
                self.collect_term(r)
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                self.collect_formula(a)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                self.collect_formula(a)?;
                self.collect_formula(b)
            }
        }
    }

    fn collect_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                self.insert(f, SymbolKind::Function, args.len())?;
                args.iter().try_for_each(|a| self.collect_term(a))
            }
        }
    }

    /// Parse declarations of the form `fun name/arity` and
    /// `pred name/arity`, one per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Signature, SignatureError> {
        let mut sig = Signature::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            sig.parse_declaration(line)
                .map_err(|message| SignatureError::Syntax {
                    line: i + 1,
                    message,
                })?;
        }
        Ok(sig)
    }

    /// Parse a single `fun`/`pred` declaration line into `self`.
    pub fn parse_declaration(&mut self, line: &str) -> Result<(), String> {
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| format!("expected `fun name/arity` or `pred name/arity`, got `{line}`"))?;
        let kind = match kw {
            "fun" => SymbolKind::Function,
            "pred" => SymbolKind::Predicate,
            other => return Err(format!("unknown declaration keyword `{other}`")),
        };
        let (name, arity) = rest
            .trim()
            .split_once('/')
            .ok_or_else(|| format!("missing `/arity` in `{line}`"))?;
        let arity: usize = arity
            .trim()
            .parse()
            .map_err(|_| format!("bad arity `{}`", arity.trim()))?;
        self.declare(name.trim(), kind, arity)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, (kind, arity)) in &self.symbols {
            writeln!(f, "{kind} {name}/{arity}")?;
        }
        Ok(())
    }
}
