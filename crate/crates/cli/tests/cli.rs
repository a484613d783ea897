use std::path::PathBuf;
use std::process::{Command, Output};

use lpf::embedding::translate_sequent;
use lpf::proofsys::Sequent;
use lpf::syntax::{format_formula, Signature};

fn lpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn paraconsistent_counter_model() {
    let o = lpf(&["consequence", "--premises", "p; ~p", "q"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("counter-model: p=b q=f\n"));
}

#[test]
fn excluded_middle_has_no_counter_model() {
    let o = lpf(&["consequence", "p \\/ ~p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "no counter-model (domains up to 3)\n");
}

#[test]
fn premises_from_file() {
    let gamma = temp_file("gamma.txt", "# premises\np\n\n~p\n");
    let o = lpf(&["consequence", "--gamma", &gamma, "q"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("counter-model: p=b q=f"));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let o = lpf(&[
        "consequence",
        "--budget",
        "10",
        "forall x. exists y. R(x, y) \\/ ~R(x, y)",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("inconclusive"));
}

#[test]
fn equivalence_and_consistency() {
    let o = lpf(&["equiv", "p", "~~p"]);
    assert_eq!(code(&o), 0);
    let o = lpf(&["equiv", "p", "p \\/ q"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("not equivalent: p=f q=t"));
    let o = lpf(&["consistent", "p -> F"]);
    assert_eq!(code(&o), 0);
    let o = lpf(&["consistent", "p"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("inconsistent: takes value b: p=b"));
}

#[test]
fn evaluation_in_a_structure_file() {
    let s = temp_file(
        "structure.txt",
        "domain d1 d2\npred P: (d1) -> t\npred P: (d2) -> b\nfun c: () -> d2\n",
    );
    let value = |f: &str, assign: &str| {
        let o = lpf(&["eval", f, "--structure", &s, "--assign", assign]);
        assert_eq!(code(&o), 0, "{f}");
        stdout(&o)
    };
    assert_eq!(value("F", ""), "f\n");
    assert_eq!(value("forall x. P(x)", ""), "b\n");
    assert_eq!(value("P(x) -> P(c)", "x=d1"), "b\n");
    let o = lpf(&["eval", "Q(c)", "--structure", &s]);
    assert_eq!(code(&o), 1);
}

#[test]
fn proof_checking() {
    let o = lpf(&["check", &corpus("identity.proof")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = lpf(&["check", &corpus("explosion.proof")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("rule C requires classical mode"));
    let o = lpf(&["--mode", "classical", "check", &corpus("explosion.proof")]);
    assert_eq!(code(&o), 0);
    let bad = temp_file("bad.proof", "1. p |- ; rule=I\n");
    let o = lpf(&["check", &bad]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn translation_matches_the_library() {
    let o = lpf(&["translate", "|- p"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "__tt != __ff /\\ __tt != __bb /\\ __ff != __bb");
    assert_eq!(
        *lines.last().unwrap(),
        "|- p__hat = __tt \\/ ~(p__hat = __tt \\/ p__hat = __ff)"
    );
    let seq = Sequent::parse("P(c); ~q |- exists x. P(x) -> q", &mut Signature::new()).unwrap();
    let expected = translate_sequent(&seq);
    let o = lpf(&["translate", "P(c); ~q |- exists x. P(x) -> q"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let (last, hyps) = lines.split_last().unwrap();
    let want: Vec<String> = expected.hypotheses().iter().map(format_formula).collect();
    assert_eq!(hyps, want);
    assert_eq!(*last, format!("|- {}", format_formula(expected.conclusion())));
}

#[test]
fn census_prints_the_single_survivor() {
    let o = lpf(&["census", "--laws", "1-13"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("laws: 1-13\ncount: 1\n"));
    assert!(text.contains("-> | t f b\nt  | t f b\nf  | t t t\nb  | t f b\n"));
    for (laws, count) in [("none", 8192), ("1-10", 32), ("1-11", 16)] {
        let o = lpf(&["--format", "json", "census", "--laws", laws]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["count"], count, "{laws}");
    }
}

#[test]
fn parse_errors_exit_one() {
    let o = lpf(&["parse", "p /\\"]);
    assert_eq!(code(&o), 1);
    let o = lpf(&["translate", "p q"]);
    assert_eq!(code(&o), 1);
    let o = lpf(&["--format", "json", "parse", "(p"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["error"].is_string());
}

#[test]
fn signature_files_are_strict() {
    let sig = temp_file("sig.txt", "pred P/1\nfun c/0\n");
    let o = lpf(&["--sig", &sig, "parse", "P(c)"]);
    assert_eq!(code(&o), 0);
    let o = lpf(&["--sig", &sig, "parse", "Q(c)"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn json_output_is_stable() {
    let args = ["--format", "json", "consequence", "--premises", "exists x. P(x)", "forall x. P(x)"];
    let (a, b) = (lpf(&args), lpf(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "consequence");
    assert_eq!(v["outcome"]["status"], "refuted");
    assert_eq!(v["outcome"]["witness"]["size"], 2);
}

#[test]
fn rule_subset_sweep() {
    let o = lpf(&[
        "--mode",
        "classical",
        "soundness-sweep",
        "--rules",
        "C,Imp-E",
    ]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.contains("p; ~p |- p"), "{text}");
    assert!(text.contains("at p=b q=f"), "{text}");
    let o = lpf(&[
        "--mode",
        "classical",
        "soundness-sweep",
        "--classical-structures",
        "--rules",
        "C",
    ]);
    assert_eq!(code(&o), 0);
}
