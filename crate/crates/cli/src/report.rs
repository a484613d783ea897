use std::fmt::Write as _;

use serde::Serialize;

use lpf::semantics::{SearchError, Verdict, Witness};

/// Output of one command. Text and JSON are both rendered from this.
#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Parse {
        formulas: Vec<ParsedFormula>,
    },
    Eval {
        formula: String,
        value: String,
        holds: bool,
    },
    Consequence {
        premises: Vec<String>,
        conclusion: String,
        outcome: SearchOutcome,
    },
    Equiv {
        left: String,
        right: String,
        outcome: SearchOutcome,
    },
    Consistent {
        formula: String,
        outcome: SearchOutcome,
    },
    Check {
        mode: String,
        target: Option<String>,
        lines: Vec<LineVerdict>,
        ok: bool,
        error: Option<String>,
    },
    Translate {
        axioms: Vec<String>,
        premises: Vec<String>,
        conclusion: String,
    },
    Census {
        laws: Vec<u8>,
        count: usize,
        survivors: Vec<String>,
    },
    SoundnessSweep {
        mode: String,
        classical_structures: bool,
        literal_equality: bool,
        rules: Vec<RuleOutcome>,
        ok: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct ParsedFormula {
    pub formula: String,
    pub free_vars: Vec<String>,
    pub depth: usize,
    pub propositional: bool,
}

/// A bounded search verdict. `refuted` means a witness was found.
#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Refuted { witness: WitnessView },
    NoneUpTo { max_domain: usize },
    Inconclusive { budget: u64, domain_size: usize },
}

impl SearchOutcome {
    pub fn from_result(r: Result<Verdict, SearchError>) -> Result<SearchOutcome, SearchError> {
        match r {
            Ok(Verdict::CounterModel(w)) => Ok(SearchOutcome::Refuted {
                witness: WitnessView::new(&w),
            }),
            Ok(Verdict::NoCounterModelUpTo(n)) => Ok(SearchOutcome::NoneUpTo { max_domain: n }),
            Err(SearchError::BudgetExceeded {
                budget,
                domain_size,
            }) => Ok(SearchOutcome::Inconclusive {
                budget,
                domain_size,
            }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessView {
    pub size: usize,
    /// `p=b q=f` style summary of propositions and assignment.
    pub valuation: String,
    /// The structure in the structure file format.
    pub structure: String,
    pub assignment: String,
}

impl WitnessView {
    pub fn new(w: &Witness) -> WitnessView {
        WitnessView {
            size: w.structure.size(),
            valuation: w.valuation(),
            structure: w.structure.to_string(),
            assignment: w.assignment.describe(&w.structure),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LineVerdict {
    pub line: usize,
    pub source_line: usize,
    pub sequent: String,
    pub ok: bool,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct RuleOutcome {
    pub rule: String,
    pub instances: usize,
    pub rejected: usize,
    pub premises_valid: usize,
    pub failures: usize,
    pub passed: bool,
    pub first_failure: Option<FailureView>,
}

#[derive(Debug, Serialize)]
pub struct FailureView {
    pub premises: Vec<String>,
    pub conclusion: String,
    pub witness: WitnessView,
}

impl Report {
    /// 0 ok, 2 check failure or refutation, 3 inconclusive.
    pub fn exit_code(&self) -> u8 {
        let search = |o: &SearchOutcome| match o {
            SearchOutcome::Refuted { .. } => 2,
            SearchOutcome::NoneUpTo { .. } => 0,
            SearchOutcome::Inconclusive { .. } => 3,
        };
        match self {
            Report::Consequence { outcome, .. }
            | Report::Equiv { outcome, .. }
            | Report::Consistent { outcome, .. } => search(outcome),
            Report::Check { ok, .. } | Report::SoundnessSweep { ok, .. } => {
                if *ok {
                    0
                } else {
                    2
                }
            }
            Report::Parse { .. } | Report::Eval { .. } | Report::Translate { .. } | Report::Census { .. } => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let o = &mut out;
        match self {
            Report::Parse { formulas } => {
                for f in formulas {
                    let _ = writeln!(o, "{}", f.formula);
                    let _ = writeln!(
                        o,
                        "  free: {{{}}}  depth: {}  propositional: {}",
                        f.free_vars.join(", "),
                        f.depth,
                        f.propositional
                    );
                }
            }
            Report::Eval { value, .. } => {
                let _ = writeln!(o, "{value}");
            }
            Report::Consequence { outcome, .. } => {
                search_text(o, outcome, "counter-model", "no counter-model");
            }
            Report::Equiv { outcome, .. } => {
                search_text(o, outcome, "not equivalent", "equivalent");
            }
            Report::Consistent { outcome, .. } => {
                search_text(o, outcome, "inconsistent: takes value b", "consistent");
            }
            Report::Check {
                mode,
                lines,
                ok,
                error,
                ..
            } => {
                for l in lines {
                    let status = match &l.error {
                        None => "ok".to_string(),
                        Some(e) => format!("error: {e}"),
                    };
                    let _ = writeln!(o, "{:>3}. {}  [{status}]", l.line, l.sequent);
                }
                match (ok, error) {
                    (true, _) => {
                        let _ = writeln!(o, "proof accepted ({mode})");
                    }
                    (false, Some(e)) => {
                        let _ = writeln!(o, "proof rejected ({mode}): {e}");
                    }
                    (false, None) => {
                        let _ = writeln!(o, "proof rejected ({mode})");
                    }
                }
            }
            Report::Translate {
                axioms,
                premises,
                conclusion,
            } => {
                for f in axioms.iter().chain(premises) {
                    let _ = writeln!(o, "{f}");
                }
                let _ = writeln!(o, "|- {conclusion}");
            }
            Report::Census {
                laws,
                count,
                survivors,
            } => {
                let _ = writeln!(o, "laws: {}", law_list(laws));
                let _ = writeln!(o, "count: {count}");
                for (i, s) in survivors.iter().enumerate() {
                    let _ = writeln!(o, "\nsurvivor {}\n{s}", i + 1);
                }
            }
            Report::SoundnessSweep {
                mode,
                classical_structures,
                literal_equality,
                rules,
                ok,
            } => {
                let _ = writeln!(
                    o,
                    "mode {mode}, {} structures, {} equality",
                    if *classical_structures { "classical" } else { "three-valued" },
                    if *literal_equality { "literal" } else { "substitutive" }
                );
                for r in rules {
                    let _ = writeln!(
                        o,
                        "{:<10} {}  instances {} valid-premises {} failures {}",
                        r.rule,
                        if r.passed { "pass" } else { "FAIL" },
                        r.instances,
                        r.premises_valid,
                        r.failures
                    );
                    if let Some(f) = &r.first_failure {
                        let _ = writeln!(
                            o,
                            "           {} / {}  at {}",
                            f.premises.join(" ; "),
                            f.conclusion,
                            f.witness.valuation
                        );
                    }
                }
                let _ = writeln!(o, "{}", if *ok { "all rules sound" } else { "unsound rules found" });
            }
        }
        out
    }
}

fn search_text(o: &mut String, outcome: &SearchOutcome, refuted: &str, bounded: &str) {
    match outcome {
        SearchOutcome::Refuted { witness } => {
            let _ = writeln!(o, "{refuted}: {}", witness.valuation);
            let _ = write!(o, "{}", witness.structure);
            if !witness.assignment.is_empty() {
                let _ = writeln!(o, "assignment {}", witness.assignment);
            }
        }
        SearchOutcome::NoneUpTo { max_domain } => {
            let _ = writeln!(o, "{bounded} (domains up to {max_domain})");
        }
        SearchOutcome::Inconclusive {
            budget,
            domain_size,
        } => {
            let _ = writeln!(
                o,
                "inconclusive: budget of {budget} checks exhausted at domain size {domain_size}"
            );
        }
    }
}

/// `1-10, 12` style rendering of a sorted law list.
pub fn law_list(laws: &[u8]) -> String {
    if laws.is_empty() {
        return "none".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < laws.len() {
        let mut j = i;
        while j + 1 < laws.len() && laws[j + 1] == laws[j] + 1 {
            j += 1;
        }
        parts.push(if i == j {
            laws[i].to_string()
        } else {
            format!("{}-{}", laws[i], laws[j])
        });
        i = j + 1;
    }
    parts.join(", ")
}
