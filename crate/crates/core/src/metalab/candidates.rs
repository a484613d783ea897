//! Three-valued interpretations of the connectives and the law census.
//!
//! A candidate agrees with the classical tables on `{t, f}`, gives a
//! conjunction, disjunction or implication a designated value exactly when
//! the classical designation pattern says so, and gives `~b` a designated
//! value. Non-designated cells are therefore `f`, and every other
//! non-classical cell is free to be `t` or `b`.

use std::fmt;

use crate::semantics::{
    eval_with, Assignment, Connectives, Structure, StructureEnumerator, SearchConfig, TruthValue,
    Vocabulary,
};
use crate::syntax::Formula;

use TruthValue::{Both, False, True};

/// The binary connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binary {
    And,
    Or,
    Imp,
}

impl Binary {
    pub const ALL: [Binary; 3] = [Binary::And, Binary::Or, Binary::Imp];

    pub fn symbol(self) -> &'static str {
        match self {
            Binary::And => "/\\",
            Binary::Or => "\\/",
            Binary::Imp => "->",
        }
    }

    fn classical(self, a: bool, b: bool) -> bool {
        match self {
            Binary::And => a && b,
            Binary::Or => a || b,
            Binary::Imp => !a || b,
        }
    }
}

/// A cell whose value is not fixed by the constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Neg(TruthValue),
    Bin(Binary, TruthValue, TruthValue),
}

/// Tables for `~`, `/\`, `\/` and `->`, indexed by [`TruthValue::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConnectiveTable {
    pub neg: [TruthValue; 3],
    pub and: [[TruthValue; 3]; 3],
    pub or: [[TruthValue; 3]; 3],
    pub imp: [[TruthValue; 3]; 3],
}

impl ConnectiveTable {
    /// The tables of the shipped evaluator.
    pub fn lp() -> ConnectiveTable {
        let bin = |f: fn(TruthValue, TruthValue) -> TruthValue| {
            TruthValue::ALL.map(|a| TruthValue::ALL.map(|b| f(a, b)))
        };
        ConnectiveTable {
            neg: TruthValue::ALL.map(TruthValue::neg),
            and: bin(TruthValue::and),
            or: bin(TruthValue::or),
            imp: bin(TruthValue::implies),
        }
    }

    pub fn binary(&self, op: Binary) -> &[[TruthValue; 3]; 3] {
        match op {
            Binary::And => &self.and,
            Binary::Or => &self.or,
            Binary::Imp => &self.imp,
        }
    }

    fn binary_mut(&mut self, op: Binary) -> &mut [[TruthValue; 3]; 3] {
        match op {
            Binary::And => &mut self.and,
            Binary::Or => &mut self.or,
            Binary::Imp => &mut self.imp,
        }
    }

    pub fn get(&self, cell: Cell) -> TruthValue {
        match cell {
            Cell::Neg(a) => self.neg[a.index()],
            Cell::Bin(op, a, b) => self.binary(op)[a.index()][b.index()],
        }
    }

    fn set(&mut self, cell: Cell, v: TruthValue) {
        match cell {
            Cell::Neg(a) => self.neg[a.index()] = v,
            Cell::Bin(op, a, b) => self.binary_mut(op)[a.index()][b.index()] = v,
        }
    }

    /// Whether the table meets the candidate constraints.
    pub fn is_candidate(&self) -> bool {
        let d = TruthValue::is_designated;
        let neg_ok = self.neg[True.index()] == False
            && self.neg[False.index()] == True
            && d(self.neg[Both.index()]);
        neg_ok
            && Binary::ALL.iter().all(|&op| {
                TruthValue::ALL.iter().all(|&a| {
                    TruthValue::ALL.iter().all(|&b| {
                        let v = self.binary(op)[a.index()][b.index()];
                        let pattern = op.classical(d(a), d(b));
                        let classical_ok = !(a.is_classical() && b.is_classical())
                            || v == TruthValue::from_bool(op.classical(a == True, b == True));
                        classical_ok && d(v) == pattern
                    })
                })
            })
    }
}

impl Connectives for ConnectiveTable {
    fn neg(&self, a: TruthValue) -> TruthValue {
        self.neg[a.index()]
    }

    fn and(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        self.and[a.index()][b.index()]
    }

    fn or(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        self.or[a.index()][b.index()]
    }

    fn imp(&self, a: TruthValue, b: TruthValue) -> TruthValue {
        self.imp[a.index()][b.index()]
    }
}

impl fmt::Display for ConnectiveTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~  |")?;
        for a in TruthValue::ALL {
            write!(f, " {a}")?;
        }
        writeln!(f)?;
        write!(f, "   |")?;
        for a in TruthValue::ALL {
            write!(f, " {}", self.neg[a.index()])?;
        }
        writeln!(f)?;
        for op in Binary::ALL {
            writeln!(f)?;
            write!(f, "{:<3}|", op.symbol())?;
            for b in TruthValue::ALL {
                write!(f, " {b}")?;
            }
            writeln!(f)?;
            for a in TruthValue::ALL {
                write!(f, "{a}  |")?;
                for b in TruthValue::ALL {
                    write!(f, " {}", self.binary(op)[a.index()][b.index()])?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// The free cells, in the canonical order of enumeration: `~b`, then the
/// conjunction, disjunction and implication cells in row-major order.
/// Derived from the constraints rather than listed.
pub fn free_cells() -> Vec<Cell> {
    let d = TruthValue::is_designated;
    let mut cells = vec![];
    // Negation: the classical cells are fixed and ~b must be designated.
    for a in TruthValue::ALL {
        if !a.is_classical() {
            cells.push(Cell::Neg(a));
        }
    }
    for op in Binary::ALL {
        for a in TruthValue::ALL {
            for b in TruthValue::ALL {
                if !(a.is_classical() && b.is_classical()) && op.classical(d(a), d(b)) {
                    cells.push(Cell::Bin(op, a, b));
                }
            }
        }
    }
    cells
}

/// The fixed part: classical cells and the non-designated `f` cells; each
/// free cell starts at `t`.
fn base_table() -> ConnectiveTable {
    let d = TruthValue::is_designated;
    let mut t = ConnectiveTable::lp();
    t.neg = TruthValue::ALL.map(|a| match a {
        True => False,
        False => True,
        Both => True,
    });
    for op in Binary::ALL {
        for a in TruthValue::ALL {
            for b in TruthValue::ALL {
                let v = if a.is_classical() && b.is_classical() {
                    TruthValue::from_bool(op.classical(a == True, b == True))
                } else if op.classical(d(a), d(b)) {
                    True
                } else {
                    False
                };
                t.binary_mut(op)[a.index()][b.index()] = v;
            }
        }
    }
    t
}

/// Number of candidates.
pub fn candidate_count() -> usize {
    1 << free_cells().len()
}

/// Candidate number `index`: bit `k` (most significant first) of the index
/// picks `b` over `t` for free cell `k`.
pub fn candidate(index: usize) -> ConnectiveTable {
    let cells = free_cells();
    let mut t = base_table();
    let n = cells.len();
    for (k, cell) in cells.into_iter().enumerate() {
        if index >> (n - 1 - k) & 1 == 1 {
            t.set(cell, Both);
        }
    }
    t
}

/// Every candidate, in canonical order.
pub fn enumerate_candidates() -> impl Iterator<Item = ConnectiveTable> {
    let cells = free_cells();
    let base = base_table();
    let n = cells.len();
    (0..1usize << n).map(move |index| {
        let mut t = base;
        for (k, cell) in cells.iter().enumerate() {
            if index >> (n - 1 - k) & 1 == 1 {
                t.set(*cell, Both);
            }
        }
        t
    })
}

/// One of the thirteen distinguishing laws of logical equivalence.
#[derive(Clone, Debug)]
pub struct Law {
    pub id: u8,
    pub lhs: Formula,
    pub rhs: Formula,
    /// Valuations (structures with an empty assignment) the law is
    /// checked on.
    structures: Vec<Structure>,
}

impl Law {
    pub fn holds_in(&self, c: &ConnectiveTable) -> bool {
        let a = Assignment::new();
        self.structures.iter().all(|s| {
            eval_with(c, &self.lhs, s, &a).expect("law symbols interpreted")
                == eval_with(c, &self.rhs, s, &a).expect("law symbols interpreted")
        })
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {} == {}", self.id, self.lhs, self.rhs)
    }
}

/// Largest domain for the quantifier laws.
pub const LAW_MAX_DOMAIN: usize = 3;

/// The laws, with metavariables as propositions `A`, `A1`, `A2`. Laws 9
/// and 10 quantify a variable that does not occur in `A` and are checked
/// on domains of size 1 to [`LAW_MAX_DOMAIN`].
pub fn laws() -> Vec<Law> {
    let a = || Formula::prop("A");
    let a1 = || Formula::prop("A1");
    let a2 = || Formula::prop("A2");
    let f = || Formula::Falsum;
    let top = Formula::top;
    let table = [
        (1, Formula::and(a(), f()), f()),
        (2, Formula::or(a(), top()), top()),
        (3, Formula::and(a(), top()), a()),
        (4, Formula::or(a(), f()), a()),
        (5, Formula::and(a(), a()), a()),
        (6, Formula::or(a(), a()), a()),
        (7, Formula::and(a1(), a2()), Formula::and(a2(), a1())),
        (8, Formula::or(a1(), a2()), Formula::or(a2(), a1())),
        (9, Formula::forall("x", a()), a()),
        (10, Formula::exists("x", a()), a()),
        (11, Formula::not(Formula::not(a())), a()),
        (12, Formula::imp(f(), a()), top()),
        (
            13,
            Formula::imp(Formula::or(a1(), Formula::not(a1())), a2()),
            a2(),
        ),
    ];
    table
        .into_iter()
        .map(|(id, lhs, rhs)| {
            let vocab = Vocabulary::of_formulas([&lhs, &rhs]).expect("fixed symbols");
            let sizes = if id == 9 || id == 10 { LAW_MAX_DOMAIN } else { 1 };
            let structures = (1..=sizes)
                .flat_map(|k| StructureEnumerator::new(vocab.clone(), k, SearchConfig::default()))
                .collect();
            Law {
                id,
                lhs,
                rhs,
                structures,
            }
        })
        .collect()
}

/// Whether `c` satisfies law `id` (1 to 13).
pub fn satisfies_law(c: &ConnectiveTable, id: u8) -> bool {
    laws()
        .iter()
        .find(|l| l.id == id)
        .unwrap_or_else(|| panic!("no law {id}"))
        .holds_in(c)
}

/// Result of filtering the candidates by a set of laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub laws: Vec<u8>,
    pub count: usize,
    /// The surviving tables in canonical order, when there are at most
    /// [`Census::LISTED`] of them.
    pub survivors: Vec<ConnectiveTable>,
}

impl Census {
    pub const LISTED: usize = 32;
}

/// Count the candidates satisfying every law in `ids`.
pub fn count_candidates(ids: &[u8]) -> Census {
    let all = laws();
    let selected: Vec<&Law> = all.iter().filter(|l| ids.contains(&l.id)).collect();
    let mut survivors = Vec::new();
    let mut count = 0;
    for c in enumerate_candidates() {
        if selected.iter().all(|l| l.holds_in(&c)) {
            count += 1;
            if survivors.len() <= Census::LISTED {
                survivors.push(c);
            }
        }
    }
    if count > Census::LISTED {
        survivors.clear();
    }
    let mut laws: Vec<u8> = ids.to_vec();
    laws.sort_unstable();
    laws.dedup();
    Census {
        laws,
        count,
        survivors,
    }
}
