//! Acceptance suite: one PASS or FAIL line per criterion.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lpf::embedding::check_correspondence;
use lpf::metalab::{
    count_candidates, internalization_sweep, laws, rule_soundness_sweep, sweep_rules, Binary,
    ConnectiveTable, Family, SweepConfig,
};
use lpf::proofsys::{list_rules, CheckError, DerivationError, Mode, Rule, Script};
use lpf::semantics::{
    check_consequence, check_equivalence, eval_formula, Assignment, Connectives, ModelSpace,
    SearchConfig, Structure, TruthValue, Vocabulary,
};
use lpf::syntax::{parse_formula_declaring, Formula, Signature};

mod common;
use common::{exists_clause, forall_clause, Clauses};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse(text: &str, sig: &mut Signature) -> Formula {
    parse_formula_declaring(text, sig).expect("fixed formula parses")
}

fn truth_table_fidelity() -> Outcome {
    let mut sig = Signature::new();
    let neg = parse("~p", &mut sig);
    let bin = [
        ("/\\", parse("p /\\ q", &mut sig)),
        ("\\/", parse("p \\/ q", &mut sig)),
        ("->", parse("p -> q", &mut sig)),
    ];
    let a = Assignment::new();
    let mut cells = 0;
    for p in TruthValue::ALL {
        let mut s = Structure::with_size(1).unwrap();
        s.set_proposition("p", p).unwrap();
        s.set_proposition("q", TruthValue::True).unwrap();
        let got = eval_formula(&neg, &s, &a).unwrap();
        ensure(got == Clauses.neg(p), || format!("~{p} gave {got}"))?;
        cells += 1;
        for q in TruthValue::ALL {
            s.set_proposition("q", q).unwrap();
            for (op, f) in &bin {
                let want = match *op {
                    "/\\" => Clauses.and(p, q),
                    "\\/" => Clauses.or(p, q),
                    _ => Clauses.imp(p, q),
                };
                let got = eval_formula(f, &s, &a).unwrap();
                ensure(got == want, || format!("{p} {op} {q} gave {got}, expected {want}"))?;
                cells += 1;
            }
        }
    }
    let all = parse("forall x. P(x)", &mut sig);
    let some = parse("exists x. P(x)", &mut sig);
    let mut sets = 0;
    for n in 1..=3u32 {
        for idx in 0..3usize.pow(n) {
            let inst: Vec<TruthValue> = (0..n)
                .map(|i| TruthValue::from_index(idx / 3usize.pow(n - 1 - i) % 3))
                .collect();
            let mut s = Structure::with_size(n as usize).unwrap();
            s.set_predicate("P", 1, inst.clone()).unwrap();
            let (u, e) = (eval_formula(&all, &s, &a).unwrap(), eval_formula(&some, &s, &a).unwrap());
            ensure(u == forall_clause(&inst), || format!("forall over {inst:?} gave {u}"))?;
            ensure(e == exists_clause(&inst), || format!("exists over {inst:?} gave {e}"))?;
            sets += 1;
        }
    }
    Ok(format!("{cells} connective cells, {sets} quantifier value sets per quantifier"))
}

fn paraconsistency() -> Outcome {
    let mut sig = Signature::new();
    let premises = [parse("p", &mut sig), parse("~p", &mut sig)];
    let q = parse("q", &mut sig);
    let oracle = TruthValue::ALL
        .into_iter()
        .flat_map(|p| TruthValue::ALL.map(|q| (p, q)))
        .find(|(p, q)| p.is_designated() && Clauses.neg(*p).is_designated() && !q.is_designated());
    ensure(oracle == Some((TruthValue::Both, TruthValue::False)), || {
        format!("oracle found {oracle:?}")
    })?;
    let verdict = check_consequence(&premises, &q, &SearchConfig::with_max_domain(1))
        .map_err(|e| e.to_string())?;
    let w = verdict.counter_model().ok_or("no counter-model found")?;
    ensure(w.valuation() == "p=b q=f" && w.structure.size() == 1, || {
        format!("counter-model {}", w.valuation())
    })?;
    Ok(format!("counter-model {}", w.valuation()))
}

fn census() -> Outcome {
    let range = |hi: u8| (1..=hi).collect::<Vec<u8>>();
    let counts: Vec<usize> = [0, 10, 11, 13]
        .into_iter()
        .map(|hi| count_candidates(&range(hi)).count)
        .collect();
    ensure(counts == [8192, 32, 16, 1], || format!("counts {counts:?}"))?;
    let survivor = count_candidates(&range(13)).survivors;
    ensure(survivor.len() == 1, || "survivor not listed".into())?;
    let t = &survivor[0];
    for a in TruthValue::ALL {
        ensure(t.neg(a) == Clauses.neg(a), || format!("~{a}"))?;
        for b in TruthValue::ALL {
            for op in Binary::ALL {
                let (got, want) = match op {
                    Binary::And => (t.and(a, b), Clauses.and(a, b)),
                    Binary::Or => (t.or(a, b), Clauses.or(a, b)),
                    Binary::Imp => (t.imp(a, b), Clauses.imp(a, b)),
                };
                ensure(got == want, || format!("{a} {} {b}: {got} vs {want}", op.symbol()))?;
            }
        }
    }
    ensure(*t == ConnectiveTable::lp(), || "survivor differs from the shipped tables".into())?;
    Ok(format!("counts {counts:?}, survivor matches the interpretation clauses"))
}

fn law_suite() -> Outcome {
    let exhaustive = SearchConfig::with_max_domain(3);
    let mut checked = 0;
    for law in laws() {
        ensure(law.holds_in(&ConnectiveTable::lp()), || format!("law {law} fails"))?;
        let verdict =
            check_equivalence(&law.lhs, &law.rhs, &exhaustive).map_err(|e| e.to_string())?;
        ensure(!verdict.is_refuted(), || format!("law {law} refuted"))?;
        checked += 1;
    }
    let mut sig = Signature::new();
    for (lhs, rhs) in [
        ("forall x. P(y)", "P(y)"),
        ("exists x. P(y)", "P(y)"),
        ("forall x. A", "A"),
        ("exists x. A", "A"),
    ] {
        let (l, r) = (parse(lhs, &mut sig), parse(rhs, &mut sig));
        let vocab = Vocabulary::of_formulas([&l, &r]).unwrap();
        let vars: BTreeSet<String> = l.free_vars();
        let space = ModelSpace::enumerate(&vocab, &vars, &exhaustive);
        for i in 0..space.len() {
            let (s, a) = space.point(i);
            let (x, y) = (eval_formula(&l, s, a).unwrap(), eval_formula(&r, s, a).unwrap());
            ensure(x == y, || format!("{lhs} == {rhs} fails at point {i}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} law instances, quantifier laws on domains 1 to 3"))
}

fn rule_soundness() -> Outcome {
    let lp = rule_soundness_sweep(&SweepConfig::default()).map_err(|e| e.to_string())?;
    let catalog = list_rules(Mode::Lp);
    ensure(catalog.len() == 22, || format!("{} catalog entries", catalog.len()))?;
    for entry in &catalog {
        for id in &entry.ids {
            let rule: Rule = id.parse().map_err(|e: String| e)?;
            let r = lp.rule(rule);
            ensure(r.passed() && r.premises_valid > 0, || {
                format!("{id}: {} failures, {} valid instances", r.failures, r.premises_valid)
            })?;
        }
    }
    let c = lp.rule(Rule::C);
    let failure = c.first_failure.as_ref().ok_or("rule C passed under LP")?;
    ensure(failure.witness.valuation() == "p=b q=f", || {
        format!("C witness {}", failure.witness.valuation())
    })?;
    let classical = sweep_rules(
        &SweepConfig {
            classical_structures: true,
            ..SweepConfig::default()
        },
        &[Rule::C],
    )
    .map_err(|e| e.to_string())?;
    let cc = classical.rule(Rule::C);
    ensure(cc.passed() && cc.premises_valid > 0, || "C fails on classical structures".into())?;
    let instances: usize = lp.rules.iter().map(|r| r.instances).sum();
    Ok(format!(
        "22 rules sound over {instances} instances; C fails at p=b q=f, sound on classical structures"
    ))
}

fn embedding_correspondence() -> Outcome {
    let mut total = (0, 0);
    for (atoms, depth) in [
        (&["P(c)", "P(x)", "c = c", "x = x", "x = c", "c = x", "F"][..], 2),
        (&["P(c)", "P(x)", "x = c", "F"][..], 3),
    ] {
        let mut sig = Signature::parse("fun c/0\npred P/1").unwrap();
        let atoms: Vec<Formula> = atoms.iter().map(|t| parse(t, &mut sig)).collect();
        let vocab = Vocabulary::of_signature(&sig, true);
        let vars: BTreeSet<String> = ["x".to_string()].into();
        let space = ModelSpace::enumerate(&vocab, &vars, &SearchConfig::with_max_domain(2));
        let family = Family::build(&space, &atoms, &["x"], depth).map_err(|e| e.to_string())?;
        let report =
            check_correspondence(&space, &sig, &family.all(), 1).map_err(|e| e.to_string())?;
        if let Some(m) = report.mismatches.first() {
            return Err(m.to_string());
        }
        total.0 += report.formulas;
        total.1 += report.checks;
    }
    Ok(format!(
        "{} formula classes, {} checks on domains 1 to 2, axioms hold in every star structure",
        total.0, total.1
    ))
}

fn proof_corpus() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let cases = [
        ("identity.proof", "|- p -> p", None),
        ("double_negation.proof", "|- ~~p -> p", None),
        ("de_morgan.proof", "|- ~(p /\\ q) -> ~p \\/ ~q", None),
        ("forall_intro.proof", "", None),
        ("forall_intro_violation.proof", "", Some(Rule::ForallI)),
        ("exists_elim.proof", "", None),
        ("exists_elim_violation.proof", "", Some(Rule::ExistsE)),
    ];
    for (name, target, rejected_by) in cases {
        let text = fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        let script = Script::parse(&text, Signature::new()).map_err(|e| format!("{name}: {e}"))?;
        if !target.is_empty() {
            let shown = script.effective_target().map(ToString::to_string);
            ensure(shown.as_deref() == Some(target), || format!("{name} proves {shown:?}"))?;
        }
        let verdict = script.check(Mode::Lp);
        match (rejected_by, verdict) {
            (None, Ok(())) => {}
            (
                Some(rule),
                Err(DerivationError::Step {
                    error: CheckError::SideCondition { rule: r, .. },
                    ..
                }),
            ) if r == rule => {}
            (_, v) => return Err(format!("{name}: unexpected verdict {v:?}")),
        }
    }
    Ok("7 scripts with the expected verdicts".into())
}

fn internalization() -> Outcome {
    let summary = internalization_sweep(3).map_err(|e| e.to_string())?;
    ensure(summary.formulas == 872, || format!("{} formulas", summary.formulas))?;
    ensure(summary.all_agree(), || summary.disagreements.join("; "))?;
    Ok(format!(
        "{} formulas, {} consistency and {} equivalence checks agree",
        summary.formulas, summary.consistency_checked, summary.equivalence_checked
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("truth-table fidelity", truth_table_fidelity, Duration::from_secs(1)),
        ("paraconsistency", paraconsistency, Duration::from_secs(1)),
        ("census counts", census, Duration::from_secs(10)),
        ("law suite", law_suite, Duration::from_secs(30)),
        ("rule soundness sweep", rule_soundness, Duration::from_secs(300)),
        ("embedding correspondence", embedding_correspondence, Duration::from_secs(300)),
        ("proof corpus", proof_corpus, Duration::from_secs(60)),
        ("internalization", internalization, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; exceeded {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
