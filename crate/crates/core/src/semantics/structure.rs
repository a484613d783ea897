use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::truth::TruthValue;
use crate::syntax::{Signature, SymbolKind};

/// An individual of a structure, as an index into its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub usize);

/// A total table over `domain^arity`, indexed in row-major order of the
/// argument tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table<V> {
    arity: usize,
    cells: Vec<V>,
}

impl<V: Copy> Table<V> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[V] {
        &self.cells
    }

    pub fn get(&self, size: usize, args: &[Element]) -> V {
        self.cells[tuple_index(size, args)]
    }
}

pub(crate) fn tuple_index(size: usize, args: &[Element]) -> usize {
    args.iter().fold(0, |acc, e| acc * size + e.0)
}

/// The argument tuple stored at `index` of a table of the given arity.
pub(crate) fn tuple_at(size: usize, arity: usize, mut index: usize) -> Vec<Element> {
    let mut out = vec![Element(0); arity];
    for slot in out.iter_mut().rev() {
        *slot = Element(index % size);
        index /= size;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the domain must not be empty")]
    EmptyDomain,
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("table for `{name}` needs {expected} cells, got {found}")]
    TableSize {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("element index {0} is outside the domain")]
    OutOfRange(usize),
    #[error("equality on `{0}` must be t or b")]
    IrreflexiveEquality(String),
    #[error("`{name}` is used with arity {found} but was declared with arity {expected}")]
    ArityClash {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("no value given for `{name}` at ({args})")]
    MissingCell { name: String, args: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A finite three-valued structure.
///
/// Equality is an arbitrary table into the truth values whose diagonal is
/// designated. A new structure starts with the identity table (true on the
/// diagonal, false elsewhere) and no symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    domain: Vec<String>,
    functions: BTreeMap<String, Table<Element>>,
    predicates: BTreeMap<String, Table<TruthValue>>,
    equality: Vec<TruthValue>,
}

impl Structure {
    pub fn new<S: Into<String>>(
        domain: impl IntoIterator<Item = S>,
    ) -> Result<Structure, StructureError> {
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if domain.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        for (i, d) in domain.iter().enumerate() {
            if domain[..i].contains(d) {
                return Err(StructureError::DuplicateElement(d.clone()));
            }
        }
        let n = domain.len();
        let equality = (0..n * n)
            .map(|i| TruthValue::from_bool(i / n == i % n))
            .collect();
        Ok(Structure {
            domain,
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
            equality,
        })
    }

    /// A structure over `d1, ..., dk`.
    pub fn with_size(k: usize) -> Result<Structure, StructureError> {
        Structure::new((1..=k).map(|i| format!("d{i}")))
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.domain.len()).map(Element)
    }

    pub fn name(&self, e: Element) -> &str {
        &self.domain[e.0]
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.domain.iter().position(|d| d == name).map(Element)
    }

    fn cell_count(&self, arity: usize) -> usize {
        self.size().pow(arity as u32)
    }

    pub fn set_function(
        &mut self,
        name: &str,
        arity: usize,
        cells: Vec<Element>,
    ) -> Result<(), StructureError> {
        self.check_size(name, arity, cells.len())?;
        if let Some(e) = cells.iter().find(|e| e.0 >= self.size()) {
            return Err(StructureError::OutOfRange(e.0));
        }
        self.functions
            .insert(name.to_string(), Table { arity, cells });
        Ok(())
    }

    pub fn set_constant(&mut self, name: &str, value: Element) -> Result<(), StructureError> {
        self.set_function(name, 0, vec![value])
    }

    pub fn set_predicate(
        &mut self,
        name: &str,
        arity: usize,
        cells: Vec<TruthValue>,
    ) -> Result<(), StructureError> {
        self.check_size(name, arity, cells.len())?;
        self.predicates
            .insert(name.to_string(), Table { arity, cells });
        Ok(())
    }

    pub fn set_proposition(&mut self, name: &str, value: TruthValue) -> Result<(), StructureError> {
        self.set_predicate(name, 0, vec![value])
    }

    /// Replace the equality table (row-major over pairs).
    pub fn set_equality(&mut self, cells: Vec<TruthValue>) -> Result<(), StructureError> {
        self.check_size("=", 2, cells.len())?;
        let n = self.size();
        for i in 0..n {
            if !cells[i * n + i].is_designated() {
                return Err(StructureError::IrreflexiveEquality(self.domain[i].clone()));
            }
        }
        self.equality = cells;
        Ok(())
    }

    fn check_size(&self, name: &str, arity: usize, found: usize) -> Result<(), StructureError> {
        let expected = self.cell_count(arity);
        if expected == found {
            Ok(())
        } else {
            Err(StructureError::TableSize {
                name: name.to_string(),
                expected,
                found,
            })
        }
    }

    pub fn function(&self, name: &str) -> Option<&Table<Element>> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&Table<TruthValue>> {
        self.predicates.get(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, &Table<Element>)> {
        self.functions.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &Table<TruthValue>)> {
        self.predicates.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn equality(&self, a: Element, b: Element) -> TruthValue {
        self.equality[a.0 * self.size() + b.0]
    }

    pub fn equality_table(&self) -> &[TruthValue] {
        &self.equality
    }

    /// The signature this structure interprets.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, t) in &self.functions {
            // Names were validated when the structure was read or built.
            let _ = sig.insert(name, SymbolKind::Function, t.arity);
        }
        for (name, t) in &self.predicates {
            let _ = sig.insert(name, SymbolKind::Predicate, t.arity);
        }
        sig
    }

    /// No predicate or equality cell has the value `b`.
    pub fn is_classical(&self) -> bool {
        self.predicates
            .values()
            .all(|t| t.cells.iter().all(|v| v.is_classical()))
            && self.equality.iter().all(|v| v.is_classical())
    }

    /// Whether designated equality behaves as a congruence whose classes
    /// cannot be told apart: it is symmetric and transitive, preserved by
    /// every function, and every predicate and equality cell keeps its
    /// exact value when an argument is swapped for a designated-equal one.
    ///
    /// This is exactly what makes replacement of designated-equal terms
    /// preserve the value of every formula.
    pub fn has_substitutive_equality(&self) -> bool {
        let n = self.size();
        let related = |a: usize, b: usize| self.equality[a * n + b].is_designated();
        for a in 0..n {
            for b in 0..n {
                if !related(a, b) {
                    continue;
                }
                if !related(b, a) || (0..n).any(|c| related(b, c) && !related(a, c)) {
                    return false;
                }
                // Equality values are invariant in each argument.
                if (0..n).any(|c| {
                    self.equality[a * n + c] != self.equality[b * n + c]
                        || self.equality[c * n + a] != self.equality[c * n + b]
                }) {
                    return false;
                }
            }
        }
        let swaps_preserve = |arity: usize, mut same: Box<dyn FnMut(usize, usize) -> bool + '_>| {
            for idx in 0..n.pow(arity as u32) {
                let args = tuple_at(n, arity, idx);
                for pos in 0..arity {
                    for b in 0..n {
                        if b == args[pos].0 || !related(args[pos].0, b) {
                            continue;
                        }
                        let mut other = args.clone();
                        other[pos] = Element(b);
                        if !same(idx, tuple_index(n, &other)) {
                            return false;
                        }
                    }
                }
            }
            true
        };
        for t in self.functions.values() {
            if !swaps_preserve(t.arity, Box::new(|i, j| related(t.cells[i].0, t.cells[j].0))) {
                return false;
            }
        }
        for t in self.predicates.values() {
            if !swaps_preserve(t.arity, Box::new(|i, j| t.cells[i] == t.cells[j])) {
                return false;
            }
        }
        true
    }

    /// Read the line-oriented structure format:
    ///
    /// ```text
    /// domain d1 d2
    /// fun c: () -> d1
    /// fun f: (d1) -> d2
    /// pred P: (d2) -> b
    /// eq: (d1,d2) -> f
    /// ```
    ///
    /// Every function and predicate table must be complete. Equality cells
    /// that are not listed default to the identity table.
    pub fn parse(text: &str) -> Result<Structure, StructureError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line: usize, message: String| StructureError::Syntax { line, message };
        let (first, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "missing `domain` line".into()))?;
        let names = header
            .strip_prefix("domain")
            .ok_or_else(|| syntax(first, "the first line must be `domain ...`".into()))?;
        let mut s = Structure::new(names.split_whitespace())?;
        let n = s.size();

        let mut funcs: BTreeMap<String, (usize, Vec<Option<Element>>)> = BTreeMap::new();
        let mut preds: BTreeMap<String, (usize, Vec<Option<TruthValue>>)> = BTreeMap::new();
        let mut eq = s.equality.clone();

        for (line, row) in lines {
            let (head, rest) = row
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("expected `kind name: (args) -> value`, got `{row}`")))?;
            let (args, value) = rest
                .split_once("->")
                .ok_or_else(|| syntax(line, "missing `->`".into()))?;
            let args = parse_tuple(&s, args).map_err(|m| syntax(line, m))?;
            let value = value.trim();
            let mut words = head.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("fun"), Some(name), None) => {
                    let v = s
                        .element(value)
                        .ok_or_else(|| StructureError::UnknownElement(value.to_string()))?;
                    let slot = table_slot(&mut funcs, name, args.len(), n, line)?;
                    slot[tuple_index(n, &args)] = Some(v);
                }
                (Some("pred"), Some(name), None) => {
                    let v: TruthValue = value.parse().map_err(|e: super::truth::BadTruthValue| {
                        syntax(line, e.to_string())
                    })?;
                    let slot = table_slot(&mut preds, name, args.len(), n, line)?;
                    slot[tuple_index(n, &args)] = Some(v);
                }
                (Some("eq"), None, None) => {
                    if args.len() != 2 {
                        return Err(syntax(line, "equality rows take two arguments".into()));
                    }
                    eq[tuple_index(n, &args)] = value
                        .parse()
                        .map_err(|e: super::truth::BadTruthValue| syntax(line, e.to_string()))?;
                }
                _ => return Err(syntax(line, format!("unrecognised row `{row}`"))),
            }
        }

        let mut sig = Signature::new();
        for (name, (arity, cells)) in funcs {
            sig.declare(&name, SymbolKind::Function, arity)
                .map_err(|e| syntax(0, e.to_string()))?;
            let cells = complete(&s, &name, arity, cells)?;
            s.set_function(&name, arity, cells)?;
        }
        for (name, (arity, cells)) in preds {
            sig.declare(&name, SymbolKind::Predicate, arity)
                .map_err(|e| syntax(0, e.to_string()))?;
            let cells = complete(&s, &name, arity, cells)?;
            s.set_predicate(&name, arity, cells)?;
        }
        s.set_equality(eq)?;
        Ok(s)
    }
}

fn parse_tuple(s: &Structure, text: &str) -> Result<Vec<Element>, String> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("argument tuple `{}` must be parenthesised", text.trim()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|d| {
            let d = d.trim();
            s.element(d).ok_or_else(|| format!("unknown domain element `{d}`"))
        })
        .collect()
}

fn table_slot<'m, V>(
    tables: &'m mut BTreeMap<String, (usize, Vec<Option<V>>)>,
    name: &str,
    arity: usize,
    n: usize,
    line: usize,
) -> Result<&'m mut Vec<Option<V>>, StructureError>
where
    V: Clone,
{
    let entry = tables
        .entry(name.to_string())
        .or_insert_with(|| (arity, vec![None; n.pow(arity as u32)]));
    if entry.0 != arity {
        return Err(StructureError::Syntax {
            line,
            message: format!("`{name}` used with arity {arity}, earlier with {}", entry.0),
        });
    }
    Ok(&mut entry.1)
}

fn complete<V: Copy>(
    s: &Structure,
    name: &str,
    arity: usize,
    cells: Vec<Option<V>>,
) -> Result<Vec<V>, StructureError> {
    cells
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| StructureError::MissingCell {
                name: name.to_string(),
                args: tuple_at(s.size(), arity, i)
                    .iter()
                    .map(|e| s.name(*e))
                    .collect::<Vec<_>>()
                    .join(","),
            })
        })
        .collect()
}

impl fmt::Display for Structure {
    /// Writes the format read by [`Structure::parse`]; equality rows are
    /// only written where they differ from the identity table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        writeln!(f, "domain {}", self.domain.join(" "))?;
        let tuple = |idx: usize, arity: usize| {
            tuple_at(n, arity, idx)
                .iter()
                .map(|e| self.name(*e))
                .collect::<Vec<_>>()
                .join(",")
        };
        for (name, t) in &self.functions {
            for (i, v) in t.cells.iter().enumerate() {
                writeln!(f, "fun {name}: ({}) -> {}", tuple(i, t.arity), self.name(*v))?;
            }
        }
        for (name, t) in &self.predicates {
            for (i, v) in t.cells.iter().enumerate() {
                writeln!(f, "pred {name}: ({}) -> {v}", tuple(i, t.arity))?;
            }
        }
        for (i, v) in self.equality.iter().enumerate() {
            if *v != TruthValue::from_bool(i / n == i % n) {
                writeln!(f, "eq: ({}) -> {v}", tuple(i, 2))?;
            }
        }
        Ok(())
    }
}

/// A map from variables to domain elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: BTreeMap<String, Element>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> Option<Element> {
        self.values.get(x).copied()
    }

    pub fn set(&mut self, x: impl Into<String>, e: Element) {
        self.values.insert(x.into(), e);
    }

    pub fn with(mut self, x: impl Into<String>, e: Element) -> Self {
        self.set(x, e);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Element)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every assigned element lies in the domain of `s`.
    pub fn fits(&self, s: &Structure) -> bool {
        self.values.values().all(|e| e.0 < s.size())
    }

    /// `x=d1 y=d2`, using the element names of `s`.
    pub fn describe(&self, s: &Structure) -> String {
        self.values
            .iter()
            .map(|(x, e)| format!("{x}={}", s.name(*e)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse `x=d1, y=d2` (commas or whitespace) against `s`.
    pub fn parse(text: &str, s: &Structure) -> Result<Assignment, StructureError> {
        let mut a = Assignment::new();
        for item in text.split([',', ' ']).map(str::trim).filter(|i| !i.is_empty()) {
            let (x, d) = item.split_once('=').ok_or_else(|| StructureError::Syntax {
                line: 1,
                message: format!("expected `variable=element`, got `{item}`"),
            })?;
            let e = s
                .element(d.trim())
                .ok_or_else(|| StructureError::UnknownElement(d.trim().to_string()))?;
            a.set(x.trim(), e);
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TruthValue::*;

    #[test]
    fn rejects_bad_structures() {
        assert_eq!(Structure::new(Vec::<String>::new()), Err(StructureError::EmptyDomain));
        assert!(matches!(
            Structure::new(["a", "a"]),
            Err(StructureError::DuplicateElement(_))
        ));
        let mut s = Structure::with_size(2).unwrap();
        assert!(matches!(
            s.set_predicate("P", 1, vec![True]),
            Err(StructureError::TableSize { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            s.set_equality(vec![False, False, False, True]),
            Err(StructureError::IrreflexiveEquality(_))
        ));
        assert!(matches!(
            s.set_function("f", 1, vec![Element(0), Element(2)]),
            Err(StructureError::OutOfRange(2))
        ));
    }

    #[test]
    fn file_format_round_trips() {
        let text = "domain d1 d2\n\
                    fun c: () -> d2\n\
                    fun f: (d1) -> d2\n\
                    fun f: (d2) -> d1\n\
                    pred P: (d1) -> t\n\
                    pred P: (d2) -> b\n\
                    pred p: () -> f\n\
                    eq: (d1,d2) -> b\n";
        let s = Structure::parse(text).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.predicate("P").unwrap().get(2, &[Element(1)]), Both);
        assert_eq!(s.function("f").unwrap().get(2, &[Element(0)]), Element(1));
        assert_eq!(s.equality(Element(0), Element(1)), Both);
        assert_eq!(s.equality(Element(1), Element(0)), False);
        assert!(!s.is_classical());
        assert_eq!(Structure::parse(&s.to_string()).unwrap(), s);
        assert_eq!(s.to_string(), text);
    }

    #[test]
    fn file_format_errors() {
        assert!(matches!(
            Structure::parse("domain a\npred P: (a,a) -> t\npred P: (a) -> t\n"),
            Err(StructureError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            Structure::parse("domain a b\npred P: (a) -> t\n"),
            Err(StructureError::MissingCell { .. })
        ));
        assert!(matches!(
            Structure::parse("domain a\neq: (a,a) -> f\n"),
            Err(StructureError::IrreflexiveEquality(_))
        ));
        assert!(matches!(
            Structure::parse("domain a\npred p: () -> x\n"),
            Err(StructureError::Syntax { line: 2, .. })
        ));
        assert!(Structure::parse("pred p: () -> t\n").is_err());
    }

    #[test]
    fn classical_and_substitutive_checks() {
        let mut s = Structure::with_size(2).unwrap();
        s.set_predicate("P", 1, vec![True, False]).unwrap();
        assert!(s.is_classical());
        assert!(s.has_substitutive_equality());
        // d1 = d2 designated while P tells them apart.
        s.set_equality(vec![True, True, True, True]).unwrap();
        assert!(!s.has_substitutive_equality());
        s.set_predicate("P", 1, vec![Both, Both]).unwrap();
        assert!(s.has_substitutive_equality());
        // Asymmetric designated equality.
        s.set_equality(vec![True, Both, False, True]).unwrap();
        assert!(!s.has_substitutive_equality());
    }

    #[test]
    fn assignments_parse_and_describe() {
        let s = Structure::new(["a", "b"]).unwrap();
        let a = Assignment::parse("x=b, y=a", &s).unwrap();
        assert_eq!(a.get("x"), Some(Element(1)));
        assert_eq!(a.describe(&s), "x=b y=a");
        assert!(Assignment::parse("x=c", &s).is_err());
    }
}
