use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::sequent::Sequent;
use crate::syntax::{Formula, Term};

/// Which proof system a derivation is checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The natural deduction system of LP with implication and falsum.
    #[default]
    Lp,
    /// The same rules plus rule C, giving classical logic.
    Classical,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lp" => Ok(Mode::Lp),
            "classical" => Ok(Mode::Classical),
            other => Err(format!("unknown mode `{other}` (expected lp or classical)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lp => "lp",
            Mode::Classical => "classical",
        })
    }
}

/// Direction of a two-way rule: `Down` reads the upper sequent as the
/// premise, `Up` the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Down,
    Up,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "down" => Ok(Direction::Down),
            "up" => Ok(Direction::Up),
            other => Err(format!("unknown direction `{other}` (expected up or down)")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Down => "down",
            Direction::Up => "up",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    I,
    Em,
    TrueI,
    FalsumE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    EqI,
    EqE,
    NotM,
    AndM,
    OrM,
    ImpM,
    ForallM,
    ExistsM,
    C,
}

impl Rule {
    pub const ALL: [Rule; 25] = [
        Rule::I,
        Rule::Em,
        Rule::TrueI,
        Rule::FalsumE,
        Rule::AndI,
        Rule::AndE1,
        Rule::AndE2,
        Rule::OrI1,
        Rule::OrI2,
        Rule::OrE,
        Rule::ImpI,
        Rule::ImpE,
        Rule::ForallI,
        Rule::ForallE,
        Rule::ExistsI,
        Rule::ExistsE,
        Rule::EqI,
        Rule::EqE,
        Rule::NotM,
        Rule::AndM,
        Rule::OrM,
        Rule::ImpM,
        Rule::ForallM,
        Rule::ExistsM,
        Rule::C,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::I => "I",
            Rule::Em => "EM",
            Rule::TrueI => "True-I",
            Rule::FalsumE => "Falsum-E",
            Rule::AndI => "And-I",
            Rule::AndE1 => "And-E-1",
            Rule::AndE2 => "And-E-2",
            Rule::OrI1 => "Or-I-1",
            Rule::OrI2 => "Or-I-2",
            Rule::OrE => "Or-E",
            Rule::ImpI => "Imp-I",
            Rule::ImpE => "Imp-E",
            Rule::ForallI => "Forall-I",
            Rule::ForallE => "Forall-E",
            Rule::ExistsI => "Exists-I",
            Rule::ExistsE => "Exists-E",
            Rule::EqI => "Eq-I",
            Rule::EqE => "Eq-E",
            Rule::NotM => "Not-M",
            Rule::AndM => "And-M",
            Rule::OrM => "Or-M",
            Rule::ImpM => "Imp-M",
            Rule::ForallM => "Forall-M",
            Rule::ExistsM => "Exists-M",
            Rule::C => "C",
        }
    }

    pub fn premise_count(self) -> usize {
        match self {
            Rule::I | Rule::Em | Rule::TrueI | Rule::EqI => 0,
            Rule::AndI | Rule::ImpE | Rule::ExistsE | Rule::EqE | Rule::C => 2,
            Rule::OrE => 3,
            _ => 1,
        }
    }

    pub fn is_two_way(self) -> bool {
        matches!(
            self,
            Rule::NotM | Rule::AndM | Rule::OrM | Rule::ImpM | Rule::ForallM | Rule::ExistsM
        )
    }

    /// Parameters that must be supplied with the rule.
    pub fn required_params(self) -> &'static [&'static str] {
        match self {
            Rule::ForallE | Rule::ExistsI => &["t"],
            Rule::EqE => &["x", "A"],
            _ => &[],
        }
    }

    /// Parameters the rule accepts.
    pub fn accepted_params(self) -> &'static [&'static str] {
        match self {
            Rule::ForallI | Rule::ExistsE => &["x"],
            Rule::ForallE | Rule::ExistsI => &["x", "t"],
            Rule::EqE => &["x", "A"],
            _ => &[],
        }
    }

    pub fn side_condition(self) -> Option<&'static str> {
        match self {
            Rule::ForallI => Some("x not free in the hypotheses"),
            Rule::ExistsE => Some("x not free in the hypotheses or the conclusion"),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// One entry of the rule catalog. Rules with an index (`And-E`, `Or-I`)
/// form a single entry with two identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInfo {
    pub name: &'static str,
    pub ids: Vec<&'static str>,
    pub premises: usize,
    pub params: &'static [&'static str],
    pub two_way: bool,
    pub side_condition: Option<&'static str>,
    pub schema: &'static str,
}

/// The rule catalog of `mode`.
pub fn list_rules(mode: Mode) -> Vec<RuleInfo> {
    let entry = |name, rules: &[Rule], schema| {
        let r = rules[0];
        RuleInfo {
            name,
            ids: rules.iter().map(|r| r.id()).collect(),
            premises: r.premise_count(),
            params: r.required_params(),
            two_way: r.is_two_way(),
            side_condition: r.side_condition(),
            schema,
        }
    };
    let mut rules = vec![
        entry("I", &[Rule::I], "G, A |- A"),
        entry("EM", &[Rule::Em], "G |- A \\/ ~A"),
        entry("True-I", &[Rule::TrueI], "G |- ~F"),
        entry("Falsum-E", &[Rule::FalsumE], "G |- F  /  G |- A"),
        entry("And-I", &[Rule::AndI], "G |- A1   G |- A2  /  G |- A1 /\\ A2"),
        entry("And-E", &[Rule::AndE1, Rule::AndE2], "G |- A1 /\\ A2  /  G |- Ai"),
        entry("Or-I", &[Rule::OrI1, Rule::OrI2], "G |- Ai  /  G |- A1 \\/ A2"),
        entry(
            "Or-E",
            &[Rule::OrE],
            "G |- A1 \\/ A2   G, A1 |- A3   G, A2 |- A3  /  G |- A3",
        ),
        entry("Imp-I", &[Rule::ImpI], "G, A1 |- A2  /  G |- A1 -> A2"),
        entry("Imp-E", &[Rule::ImpE], "G |- A1 -> A2   G |- A1  /  G |- A2"),
        entry("Forall-I", &[Rule::ForallI], "G |- A  /  G |- forall x. A"),
        entry("Forall-E", &[Rule::ForallE], "G |- forall x. A  /  G |- A[x:=t]"),
        entry("Exists-I", &[Rule::ExistsI], "G |- A[x:=t]  /  G |- exists x. A"),
        entry(
            "Exists-E",
            &[Rule::ExistsE],
            "G |- exists x. A1   G, A1 |- A2  /  G |- A2",
        ),
        entry("Eq-I", &[Rule::EqI], "G |- t = t"),
        entry(
            "Eq-E",
            &[Rule::EqE],
            "G |- t1 = t2   G |- A[x:=t1]  /  G |- A[x:=t2]",
        ),
        entry("Not-M", &[Rule::NotM], "G |- ~~A  //  G |- A"),
        entry("And-M", &[Rule::AndM], "G |- ~(A1 /\\ A2)  //  G |- ~A1 \\/ ~A2"),
        entry("Or-M", &[Rule::OrM], "G |- ~(A1 \\/ A2)  //  G |- ~A1 /\\ ~A2"),
        entry("Imp-M", &[Rule::ImpM], "G |- ~(A1 -> A2)  //  G |- A1 /\\ ~A2"),
        entry(
            "Forall-M",
            &[Rule::ForallM],
            "G |- ~forall x. A  //  G |- exists x. ~A",
        ),
        entry(
            "Exists-M",
            &[Rule::ExistsM],
            "G |- ~exists x. A  //  G |- forall x. ~A",
        ),
    ];
    if mode == Mode::Classical {
        rules.push(entry("C", &[Rule::C], "G |- A1   G |- ~A1  /  G |- A2"));
    }
    rules
}

/// A rule with its premise line numbers (1-based) and explicit parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub direction: Option<Direction>,
    pub var: Option<String>,
    pub term: Option<Term>,
    pub template: Option<Formula>,
}

impl RuleApplication {
    pub fn new(rule: Rule, premises: impl Into<Vec<usize>>) -> Self {
        RuleApplication {
            rule,
            premises: premises.into(),
            direction: None,
            var: None,
            term: None,
            template: None,
        }
    }

    pub fn direction(mut self, d: Direction) -> Self {
        self.direction = Some(d);
        self
    }

    pub fn var(mut self, x: impl Into<String>) -> Self {
        self.var = Some(x.into());
        self
    }

    pub fn term(mut self, t: Term) -> Self {
        self.term = Some(t);
        self
    }

    pub fn template(mut self, a: Formula) -> Self {
        self.template = Some(a);
        self
    }

    fn given_params(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.var.is_some() {
            out.push("x");
        }
        if self.term.is_some() {
            out.push("t");
        }
        if self.template.is_some() {
            out.push("A");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("rule {rule} expects {expected} premise(s), {found} given")]
    PremiseCount {
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("premise {index} does not refer to an earlier line")]
    BadPremise { index: usize },
    #[error("rule {rule}: {message}")]
    Schema { rule: Rule, message: String },
    #[error("rule {rule}: context mismatch: {message}")]
    Context { rule: Rule, message: String },
    #[error("rule {rule}: side condition violated, `{var}` is free in {place}")]
    SideCondition {
        rule: Rule,
        var: String,
        place: &'static str,
    },
    #[error("rule {rule} requires parameter `{param}`")]
    MissingParam { rule: Rule, param: &'static str },
    #[error("rule {rule} does not take parameter `{param}`")]
    UnexpectedParam { rule: Rule, param: &'static str },
    #[error("rule {rule} is two-way only for M-rules; `dir` is not allowed")]
    UnexpectedDirection { rule: Rule },
    #[error("rule C requires classical mode")]
    ClassicalOnly,
}

fn schema(rule: Rule, message: impl Into<String>) -> CheckError {
    CheckError::Schema {
        rule,
        message: message.into(),
    }
}

fn context(rule: Rule, message: impl Into<String>) -> CheckError {
    CheckError::Context {
        rule,
        message: message.into(),
    }
}

/// The lower form of an M-rule given its upper form.
fn m_lower(rule: Rule, upper: &Formula) -> Option<Formula> {
    let Formula::Not(inner) = upper else {
        return None;
    };
    Some(match (rule, inner.as_ref()) {
        (Rule::NotM, Formula::Not(a)) => (**a).clone(),
        (Rule::AndM, Formula::And(a, b)) => {
            Formula::or(Formula::not((**a).clone()), Formula::not((**b).clone()))
        }
        (Rule::OrM, Formula::Or(a, b)) => {
            Formula::and(Formula::not((**a).clone()), Formula::not((**b).clone()))
        }
        (Rule::ImpM, Formula::Imp(a, b)) => {
            Formula::and((**a).clone(), Formula::not((**b).clone()))
        }
        (Rule::ForallM, Formula::Forall(x, a)) => {
            Formula::exists(x.clone(), Formula::not((**a).clone()))
        }
        (Rule::ExistsM, Formula::Exists(x, a)) => {
            Formula::forall(x.clone(), Formula::not((**a).clone()))
        }
        _ => return None,
    })
}

/// The body of `binder y. body` read with bound variable `x`, if `x` can
/// be used as the bound variable without changing the formula.
fn body_as(y: &str, body: &Formula, x: &str, whole: &Formula) -> Option<Formula> {
    if x == y {
        Some(body.clone())
    } else if whole.has_free(x) {
        None
    } else {
        Some(body.substitute(y, &Term::var(x)))
    }
}

fn same(a: &Formula, b: &Formula) -> bool {
    a.alpha_eq(b)
}

/// Check that `line` is the conclusion of an instance of `app.rule` whose
/// premises are the referenced lines of `earlier`.
pub fn check_step(
    line: &Sequent,
    app: &RuleApplication,
    earlier: &[Sequent],
    mode: Mode,
) -> Result<(), CheckError> {
    let rule = app.rule;
    if rule == Rule::C && mode == Mode::Lp {
        return Err(CheckError::ClassicalOnly);
    }
    if app.premises.len() != rule.premise_count() {
        return Err(CheckError::PremiseCount {
            rule,
            expected: rule.premise_count(),
            found: app.premises.len(),
        });
    }
    let premises = app
        .premises
        .iter()
        .map(|&i| {
            if i >= 1 && i <= earlier.len() {
                Ok(&earlier[i - 1])
            } else {
                Err(CheckError::BadPremise { index: i })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    for p in app.given_params() {
        if !rule.accepted_params().contains(&p) {
            return Err(CheckError::UnexpectedParam { rule, param: p });
        }
    }
    if app.direction.is_some() && !rule.is_two_way() {
        return Err(CheckError::UnexpectedDirection { rule });
    }
    for (k, p) in premises.iter().enumerate() {
        // Every premise except the discharging ones shares the context.
        let discharges = matches!(
            (rule, k),
            (Rule::ImpI, 0) | (Rule::OrE, 1 | 2) | (Rule::ExistsE, 1)
        );
        if !discharges && !p.same_context(line) {
            return Err(context(
                rule,
                format!("premise `{p}` does not have the hypotheses of `{line}`"),
            ));
        }
    }
    let gamma = line.hypotheses();
    let concl = line.conclusion();
    let shape = |what: &str| schema(rule, format!("conclusion is not {what}"));
    match rule {
        Rule::I => {
            if !line.has_hypothesis(concl) {
                return Err(schema(rule, "conclusion is not among the hypotheses"));
            }
        }
        Rule::Em => match concl {
            Formula::Or(a, b) if same(b, &Formula::not((**a).clone())) => {}
            _ => return Err(shape("of the form A \\/ ~A")),
        },
        Rule::TrueI => {
            if !same(concl, &Formula::top()) {
                return Err(shape("~F"));
            }
        }
        Rule::FalsumE => {
            if premises[0].conclusion() != &Formula::Falsum {
                return Err(schema(rule, "premise does not conclude F"));
            }
        }
        Rule::AndI => match concl {
            Formula::And(a, b)
                if same(premises[0].conclusion(), a) && same(premises[1].conclusion(), b) => {}
            Formula::And(..) => return Err(schema(rule, "premises do not match the conjuncts")),
            _ => return Err(shape("a conjunction")),
        },
        Rule::AndE1 | Rule::AndE2 => match premises[0].conclusion() {
            Formula::And(a, b) => {
                let part = if rule == Rule::AndE1 { a } else { b };
                if !same(part, concl) {
                    return Err(schema(rule, "conclusion is not the selected conjunct"));
                }
            }
            _ => return Err(schema(rule, "premise does not conclude a conjunction")),
        },
        Rule::OrI1 | Rule::OrI2 => match concl {
            Formula::Or(a, b) => {
                let part = if rule == Rule::OrI1 { a } else { b };
                if !same(part, premises[0].conclusion()) {
                    return Err(schema(rule, "premise is not the selected disjunct"));
                }
            }
            _ => return Err(shape("a disjunction")),
        },
        Rule::OrE => {
            let Formula::Or(a1, a2) = premises[0].conclusion() else {
                return Err(schema(rule, "first premise does not conclude a disjunction"));
            };
            for (p, a) in [(premises[1], a1), (premises[2], a2)] {
                if !p.context_is(gamma, &[a]) {
                    return Err(context(rule, format!("`{p}` does not assume `{a}` in context")));
                }
                if !same(p.conclusion(), concl) {
                    return Err(schema(rule, format!("`{p}` does not conclude `{concl}`")));
                }
            }
        }
        Rule::ImpI => {
            let Formula::Imp(a1, a2) = concl else {
                return Err(shape("an implication"));
            };
            if !premises[0].context_is(gamma, &[a1]) {
                return Err(context(rule, format!("premise does not assume `{a1}` in context")));
            }
            if !same(premises[0].conclusion(), a2) {
                return Err(schema(rule, "premise does not conclude the consequent"));
            }
        }
        Rule::ImpE => {
            let Formula::Imp(a1, a2) = premises[0].conclusion() else {
                return Err(schema(rule, "first premise does not conclude an implication"));
            };
            if !same(premises[1].conclusion(), a1) {
                return Err(schema(rule, "second premise does not conclude the antecedent"));
            }
            if !same(concl, a2) {
                return Err(schema(rule, "conclusion is not the consequent"));
            }
        }
        Rule::ForallI => {
            let Formula::Forall(y, body) = concl else {
                return Err(shape("a universal formula"));
            };
            let target = premises[0].conclusion();
            let mut candidates: Vec<String> = match &app.var {
                Some(x) => vec![x.clone()],
                None => {
                    let mut c = vec![y.clone()];
                    c.extend(target.free_vars().into_iter().filter(|v| v != y));
                    c
                }
            };
            candidates.retain(|x| {
                body_as(y, body, x, concl).is_some_and(|a| same(&a, target))
            });
            let Some(x) = candidates.first() else {
                return Err(schema(rule, "premise is not the body of the conclusion"));
            };
            if line.hypothesis_free_vars().contains(x) {
                return Err(CheckError::SideCondition {
                    rule,
                    var: x.clone(),
                    place: "the hypotheses",
                });
            }
        }
        Rule::ForallE => {
            let t = app.term.as_ref().ok_or(CheckError::MissingParam { rule, param: "t" })?;
            let Formula::Forall(x, body) = premises[0].conclusion() else {
                return Err(schema(rule, "premise does not conclude a universal formula"));
            };
            if !same(&body.substitute(x, t), concl) {
                return Err(schema(rule, format!("conclusion is not the instance at `{t}`")));
            }
        }
        Rule::ExistsI => {
            let t = app.term.as_ref().ok_or(CheckError::MissingParam { rule, param: "t" })?;
            let Formula::Exists(x, body) = concl else {
                return Err(shape("an existential formula"));
            };
            if !same(&body.substitute(x, t), premises[0].conclusion()) {
                return Err(schema(rule, format!("premise is not the instance at `{t}`")));
            }
        }
        Rule::ExistsE => {
            let whole = premises[0].conclusion();
            let Formula::Exists(y, body) = whole else {
                return Err(schema(rule, "first premise does not conclude an existential formula"));
            };
            let second = premises[1];
            let candidates: Vec<String> = match &app.var {
                Some(x) => vec![x.clone()],
                None => {
                    let mut c = vec![y.clone()];
                    c.extend(second.hypothesis_free_vars().into_iter().filter(|v| v != y));
                    c
                }
            };
            let found = candidates.iter().find_map(|x| {
                let a1 = body_as(y, body, x, whole)?;
                second.context_is(gamma, &[&a1]).then_some((x, a1))
            });
            let Some((x, _)) = found else {
                return Err(context(
                    rule,
                    "second premise does not assume the body of the existential in context",
                ));
            };
            if !same(second.conclusion(), concl) {
                return Err(schema(rule, "second premise does not conclude the conclusion"));
            }
            if line.hypothesis_free_vars().contains(x) {
                return Err(CheckError::SideCondition {
                    rule,
                    var: x.clone(),
                    place: "the hypotheses",
                });
            }
            if concl.has_free(x) {
                return Err(CheckError::SideCondition {
                    rule,
                    var: x.clone(),
                    place: "the conclusion",
                });
            }
        }
        Rule::EqI => match concl {
            Formula::Eq(l, r) if l == r => {}
            _ => return Err(shape("of the form t = t")),
        },
        Rule::EqE => {
            let x = app.var.as_ref().ok_or(CheckError::MissingParam { rule, param: "x" })?;
            let a = app
                .template
                .as_ref()
                .ok_or(CheckError::MissingParam { rule, param: "A" })?;
            let Formula::Eq(t1, t2) = premises[0].conclusion() else {
                return Err(schema(rule, "first premise does not conclude an equation"));
            };
            if !same(premises[1].conclusion(), &a.substitute(x, t1)) {
                return Err(schema(rule, format!("second premise is not A[{x}:={t1}]")));
            }
            if !same(concl, &a.substitute(x, t2)) {
                return Err(schema(rule, format!("conclusion is not A[{x}:={t2}]")));
            }
        }
        Rule::NotM | Rule::AndM | Rule::OrM | Rule::ImpM | Rule::ForallM | Rule::ExistsM => {
            let p = premises[0].conclusion();
            let down = || m_lower(rule, p).is_some_and(|l| same(&l, concl));
            let up = || m_lower(rule, concl).is_some_and(|l| same(&l, p));
            let ok = match app.direction {
                Some(Direction::Down) => down(),
                Some(Direction::Up) => up(),
                None => down() || up(),
            };
            if !ok {
                let dir = app.direction.map(|d| format!(" ({d})")).unwrap_or_default();
                return Err(schema(rule, format!("premise and conclusion do not match the rule{dir}")));
            }
        }
        Rule::C => {
            if !same(premises[1].conclusion(), &Formula::not(premises[0].conclusion().clone())) {
                return Err(schema(rule, "second premise is not the negation of the first"));
            }
        }
    }
    for p in rule.required_params() {
        if !app.given_params().contains(p) {
            return Err(CheckError::MissingParam { rule, param: p });
        }
    }
    Ok(())
}
