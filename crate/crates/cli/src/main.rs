mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lpf::embedding::{ax_set, translate_holds};
use lpf::metalab::{count_candidates, sweep_rules, SweepConfig};
use lpf::proofsys::{DerivationError, Mode, Rule, Script, Sequent};
use lpf::semantics::{
    check_consequence, check_consistency, check_equivalence, eval_formula, Assignment,
    SearchConfig, Structure,
};
use lpf::syntax::{format_formula, parse_formula, parse_formula_declaring, Formula, Signature};

use report::{
    FailureView, LineVerdict, ParsedFormula, Report, RuleOutcome, SearchOutcome, WitnessView,
};

#[derive(Parser)]
#[command(
    name = "lpf",
    version,
    about = "Parse, evaluate, search, proof-check and translate formulas of LP with implication and falsum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Signature file with `fun f/n` and `pred P/n` lines. Without it,
    /// undeclared symbols are inferred from use.
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Proof system for `check` and rule catalog for `soundness-sweep`.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Lp)]
    mode: ModeArg,
    /// Largest domain size searched.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_domain: u64,
    /// Cap on (structure, assignment) pairs examined by a search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lp,
    Classical,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lp => Mode::Lp,
            ModeArg::Classical => Mode::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse formulas and print them in canonical form.
    Parse {
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Evaluate a formula in a structure.
    Eval {
        formula: String,
        /// Structure file.
        #[arg(long)]
        structure: PathBuf,
        /// Assignment such as `x=d1, y=d2`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Search for a counter-model to the consequence `premises |- formula`.
    Consequence {
        formula: String,
        /// Premises separated by `;`.
        #[arg(long, default_value = "")]
        premises: String,
        /// File with one premise per line.
        #[arg(long)]
        gamma: Option<PathBuf>,
    },
    /// Search for a point where two formulas differ in value.
    Equiv { left: String, right: String },
    /// Search for a point where a formula takes the value b.
    Consistent { formula: String },
    /// Check a proof script.
    Check { file: PathBuf },
    /// Translate a sequent `A1; ...; An |- A` into classical logic.
    Translate { sequent: String },
    /// Count the connective interpretations satisfying a set of laws.
    Census {
        /// Law ids such as `1-13`, `1-10,12` or `none`.
        #[arg(long, default_value = "1-13")]
        laws: String,
    },
    /// Check the rules of the proof system against the semantics.
    SoundnessSweep {
        /// Only structures without the value b.
        #[arg(long)]
        classical_structures: bool,
        /// Admit equality tables where designated-equal elements differ.
        #[arg(long)]
        literal_equality: bool,
        /// Rule ids to sweep, comma separated. Defaults to the catalog of
        /// the mode.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
    },
}

/// A failure before any verdict: bad input or unreadable file.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(&cli) {
        Ok(report) => {
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            print!("{text}");
            ExitCode::from(report.exit_code())
        }
        Err(InputError(message)) => {
            if format == Format::Json {
                let err = serde_json::json!({ "error": message });
                println!("{}", serde_json::to_string_pretty(&err).expect("json"));
            }
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

struct Context {
    sig: Signature,
    strict: bool,
    search: SearchConfig,
    mode: Mode,
}

impl Context {
    fn new(cli: &Cli) -> Result<Context, InputError> {
        let (sig, strict) = match &cli.sig {
            Some(path) => (Signature::parse(&read(path)?)?, true),
            None => (Signature::new(), false),
        };
        let mut search = SearchConfig::with_max_domain(cli.max_domain as usize);
        if let Some(b) = cli.budget {
            search.budget = b;
        }
        Ok(Context {
            sig,
            strict,
            search,
            mode: cli.mode.into(),
        })
    }

    fn formula(&mut self, text: &str) -> Result<Formula, InputError> {
        let parsed = if self.strict {
            parse_formula(text, &self.sig)
        } else {
            parse_formula_declaring(text, &mut self.sig)
        };
        parsed.map_err(|e| InputError(format!("`{text}`: {e}")))
    }
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    let mut cx = Context::new(cli)?;
    Ok(match &cli.command {
        Command::Parse { formulas } => {
            let mut out = Vec::new();
            for text in formulas {
                let f = cx.formula(text)?;
                out.push(ParsedFormula {
                    formula: format_formula(&f),
                    free_vars: f.free_vars().into_iter().collect(),
                    depth: f.depth(),
                    propositional: f.is_propositional(),
                });
            }
            Report::Parse { formulas: out }
        }
        Command::Eval {
            formula,
            structure,
            assign,
        } => {
            let s = Structure::parse(&read(structure)?)?;
            cx.sig.merge(&s.signature())?;
            cx.strict = true;
            let f = cx.formula(formula)?;
            let a = Assignment::parse(assign, &s)?;
            let value = eval_formula(&f, &s, &a)?;
            Report::Eval {
                formula: format_formula(&f),
                value: value.to_string(),
                holds: value.is_designated(),
            }
        }
        Command::Consequence {
            formula,
            premises,
            gamma,
        } => {
            let mut texts: Vec<String> = premises
                .split(';')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(String::from)
                .collect();
            if let Some(path) = gamma {
                texts.extend(
                    read(path)?
                        .lines()
                        .map(|l| l.split('#').next().unwrap_or("").trim())
                        .filter(|l| !l.is_empty())
                        .map(String::from),
                );
            }
            let premises = texts
                .iter()
                .map(|t| cx.formula(t))
                .collect::<Result<Vec<_>, _>>()?;
            let conclusion = cx.formula(formula)?;
            let outcome =
                SearchOutcome::from_result(check_consequence(&premises, &conclusion, &cx.search))?;
            Report::Consequence {
                premises: premises.iter().map(format_formula).collect(),
                conclusion: format_formula(&conclusion),
                outcome,
            }
        }
        Command::Equiv { left, right } => {
            let (a, b) = (cx.formula(left)?, cx.formula(right)?);
            let outcome = SearchOutcome::from_result(check_equivalence(&a, &b, &cx.search))?;
            Report::Equiv {
                left: format_formula(&a),
                right: format_formula(&b),
                outcome,
            }
        }
        Command::Consistent { formula } => {
            let f = cx.formula(formula)?;
            let outcome = SearchOutcome::from_result(check_consistency(&f, &cx.search))?;
            Report::Consistent {
                formula: format_formula(&f),
                outcome,
            }
        }
        Command::Check { file } => {
            let script = Script::parse(&read(file)?, cx.sig.clone())?;
            let lines = script
                .check_lines(cx.mode)
                .into_iter()
                .enumerate()
                .map(|(i, r)| LineVerdict {
                    line: i + 1,
                    source_line: script.source_lines[i],
                    sequent: script.derivation.lines[i].0.to_string(),
                    ok: r.is_ok(),
                    error: r.err().map(|e| line_error(&e)),
                })
                .collect();
            let verdict = script.check(cx.mode);
            Report::Check {
                mode: cx.mode.to_string(),
                target: script.effective_target().map(Sequent::to_string),
                lines,
                ok: verdict.is_ok(),
                error: verdict.err().map(|e| e.to_string()),
            }
        }
        Command::Translate { sequent } => {
            let seq = Sequent::parse(sequent, &mut cx.sig)
                .map_err(|e| InputError(format!("`{sequent}`: {e}")))?;
            let all = seq.hypotheses().iter().chain([seq.conclusion()]);
            Report::Translate {
                axioms: ax_set(&cx.sig, all).iter().map(format_formula).collect(),
                premises: seq
                    .hypotheses()
                    .iter()
                    .map(|h| format_formula(&translate_holds(h)))
                    .collect(),
                conclusion: format_formula(&translate_holds(seq.conclusion())),
            }
        }
        Command::Census { laws } => {
            let census = count_candidates(&parse_laws(laws)?);
            Report::Census {
                laws: census.laws,
                count: census.count,
                survivors: census.survivors.iter().map(ToString::to_string).collect(),
            }
        }
        Command::SoundnessSweep {
            classical_structures,
            literal_equality,
            rules,
        } => {
            let rules: Vec<Rule> = if rules.is_empty() {
                Rule::ALL
                    .into_iter()
                    .filter(|r| cx.mode == Mode::Classical || *r != Rule::C)
                    .collect()
            } else {
                rules
                    .iter()
                    .map(|r| r.trim().parse::<Rule>())
                    .collect::<Result<_, _>>()?
            };
            let config = SweepConfig {
                classical_structures: *classical_structures,
                literal_equality: *literal_equality,
            };
            let report = sweep_rules(&config, &rules)?;
            let rules: Vec<RuleOutcome> = report
                .rules
                .iter()
                .map(|r| RuleOutcome {
                    rule: r.rule.id().to_string(),
                    instances: r.instances,
                    rejected: r.rejected,
                    premises_valid: r.premises_valid,
                    failures: r.failures,
                    passed: r.passed(),
                    first_failure: r.first_failure.as_ref().map(|f| FailureView {
                        premises: f.premises.iter().map(ToString::to_string).collect(),
                        conclusion: f.conclusion.to_string(),
                        witness: WitnessView::new(&f.witness),
                    }),
                })
                .collect();
            Report::SoundnessSweep {
                mode: cx.mode.to_string(),
                classical_structures: config.classical_structures,
                literal_equality: config.literal_equality,
                ok: rules.iter().all(|r| r.passed),
                rules,
            }
        }
    })
}

/// A per-line error without the line prefix.
fn line_error(e: &DerivationError) -> String {
    match e {
        DerivationError::Step { error, .. } => error.to_string(),
        DerivationError::NotAHypothesis { .. } => "not among the hypothesis sequents".into(),
        other => other.to_string(),
    }
}

/// Parse `1-10,12`, `none` or the empty string into law ids.
fn parse_laws(text: &str) -> Result<Vec<u8>, InputError> {
    let text = text.trim();
    if text.is_empty() || text == "none" {
        return Ok(Vec::new());
    }
    let id = |s: &str| -> Result<u8, InputError> {
        match s.trim().parse::<u8>() {
            Ok(n) if (1..=13).contains(&n) => Ok(n),
            _ => Err(InputError(format!("`{}` is not a law id (1 to 13)", s.trim()))),
        }
    };
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once(['-', '.']) {
            Some((lo, hi)) => {
                let hi = hi.trim_start_matches('.');
                let (lo, hi) = (id(lo)?, id(hi)?);
                if lo > hi {
                    return Err(InputError(format!("empty law range `{}`", part.trim())));
                }
                out.extend(lo..=hi);
            }
            None => out.push(id(part)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_ranges() {
        assert_eq!(parse_laws("1-3, 5").ok(), Some(vec![1, 2, 3, 5]));
        assert_eq!(parse_laws("1..13").ok(), Some((1..=13).collect()));
        assert_eq!(parse_laws("none").ok(), Some(vec![]));
        assert!(parse_laws("0").is_err());
        assert!(parse_laws("5-2").is_err());
    }
}
