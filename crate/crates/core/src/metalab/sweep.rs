//! Bounded soundness sweep of the inference rules.
//!
//! Every rule is instantiated over exhaustive formula families. An
//! instance passes when the conclusion is valid on the model space
//! whenever all premises are. Connective rules run over the valuations of
//! `p` and `q` with formulas up to depth 2 (depth 1 for the disjuncts of
//! `Or-E`); quantifier and equality rules run over formulas up to depth 2
//! built from `P(x)`, `P(y)`, `x = y` and `F`, on domains of size 1 and 2.

use std::collections::BTreeSet;

use super::family::Family;
use crate::proofsys::{check_step, Direction, Mode, Rule, RuleApplication, Sequent};
use crate::semantics::{EvalError, ModelSpace, SearchConfig, Vocabulary, Witness};
use crate::syntax::{Formula, Term};

/// Which structures the sweep ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepConfig {
    /// Only structures without the value `b`.
    pub classical_structures: bool,
    /// Admit every equality table with a designated diagonal, including
    /// those where designated-equal elements can be told apart.
    pub literal_equality: bool,
}

/// A rule instance whose premises are valid and whose conclusion is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: Rule,
    /// Generated instances accepted by the rule checker.
    pub instances: usize,
    /// Generated candidates the rule checker rejected, such as
    /// side-condition violations.
    pub rejected: usize,
    /// Instances whose premises are all valid.
    pub premises_valid: usize,
    pub failures: usize,
    pub first_failure: Option<Failure>,
}

impl RuleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rules: Vec<RuleReport>,
}

impl SweepReport {
    pub fn rule(&self, rule: Rule) -> &RuleReport {
        self.rules
            .iter()
            .find(|r| r.rule == rule)
            .expect("every rule is swept")
    }

    /// Whether every rule other than `C` passed.
    pub fn lp_rules_pass(&self) -> bool {
        self.rules.iter().filter(|r| r.rule != Rule::C).all(RuleReport::passed)
    }
}

struct Instance {
    premises: Vec<Sequent>,
    conclusion: Sequent,
    app: RuleApplication,
}

/// Formulas and contexts a group of rules is instantiated with.
struct Pools {
    space: ModelSpace,
    contexts: Vec<Vec<Formula>>,
    /// Main metavariable range.
    large: Vec<Formula>,
    /// Range for metavariables of rules with three formula metavariables.
    small: Vec<Formula>,
    vars: Vec<String>,
    terms: Vec<Term>,
}

fn parse_all(texts: &[&str]) -> Vec<Formula> {
    texts
        .iter()
        .map(|t| {
            crate::syntax::parse_formula_declaring(t, &mut crate::syntax::Signature::new())
                .expect("fixed formulas parse")
        })
        .collect()
}

fn space_config(config: &SweepConfig, max_domain: usize) -> SearchConfig {
    SearchConfig {
        max_domain,
        classical_only: config.classical_structures,
        substitutive_equality: !config.literal_equality,
        ..SearchConfig::default()
    }
}

fn propositional_pools(config: &SweepConfig) -> Result<Pools, EvalError> {
    let atoms = [Formula::prop("p"), Formula::prop("q"), Formula::Falsum];
    let vocab = Vocabulary::of_formulas(&atoms).expect("fixed symbols");
    let space = ModelSpace::enumerate(&vocab, &BTreeSet::new(), &space_config(config, 1));
    let family = Family::build(&space, &atoms, &[], 2)?;
    let contexts = ["", "p", "q", "~p", "p; ~p", "p \\/ q", "p -> q", "F"]
        .iter()
        .map(|c| parse_all(&c.split(';').filter(|s| !s.trim().is_empty()).collect::<Vec<_>>()))
        .collect();
    Ok(Pools {
        large: family.up_to(2),
        small: family.up_to(1),
        space,
        contexts,
        vars: vec![],
        terms: vec![],
    })
}

fn first_order_pools(config: &SweepConfig) -> Result<Pools, EvalError> {
    let atoms = parse_all(&["P(x)", "P(y)", "x = y", "F"]);
    let vocab = Vocabulary::of_formulas(&atoms).expect("fixed symbols");
    let vars: BTreeSet<String> = ["x", "y"].map(String::from).into();
    let space = ModelSpace::enumerate(&vocab, &vars, &space_config(config, 2));
    let family = Family::build(&space, &atoms, &["x", "y"], 2)?;
    let contexts = [
        vec![],
        parse_all(&["P(x)"]),
        parse_all(&["x = y"]),
        parse_all(&["x = y", "P(x)"]),
        parse_all(&["forall x. P(x)"]),
        parse_all(&["exists x. P(x)"]),
        parse_all(&["P(x)", "~P(x)"]),
    ];
    Ok(Pools {
        large: family.up_to(2),
        small: family.up_to(1),
        space,
        contexts: contexts.to_vec(),
        vars: vec!["x".into(), "y".into()],
        terms: vec![Term::var("x"), Term::var("y")],
    })
}

fn seq(gamma: &[Formula], a: Formula) -> Sequent {
    Sequent::new(gamma.iter().cloned(), a)
}

fn with(gamma: &[Formula], extra: &Formula) -> Vec<Formula> {
    gamma.iter().cloned().chain([extra.clone()]).collect()
}

fn instances(rule: Rule, p: &Pools) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut add = |premises: Vec<Sequent>, conclusion: Sequent, app: RuleApplication| {
        out.push(Instance {
            premises,
            conclusion,
            app,
        })
    };
    let n = rule.premise_count();
    let base = || RuleApplication::new(rule, (1..=n).collect::<Vec<_>>());
    let not = |a: &Formula| Formula::not(a.clone());
    for g in &p.contexts {
        match rule {
            Rule::I => {
                for a in &p.large {
                    add(vec![], seq(&with(g, a), a.clone()), base());
                }
            }
            Rule::Em => {
                for a in &p.large {
                    add(vec![], seq(g, Formula::or(a.clone(), not(a))), base());
                }
            }
            Rule::TrueI => add(vec![], seq(g, Formula::top()), base()),
            Rule::FalsumE => {
                for a in &p.large {
                    add(vec![seq(g, Formula::Falsum)], seq(g, a.clone()), base());
                }
            }
            Rule::C => {
                for a1 in &p.large {
                    for a2 in &p.large {
                        let prem = vec![seq(g, a1.clone()), seq(g, not(a1))];
                        add(prem, seq(g, a2.clone()), base());
                    }
                }
            }
            Rule::OrE => {
                for a1 in &p.small {
                    for a2 in &p.small {
                        for a3 in &p.large {
                            let prem = vec![
                                seq(g, Formula::or(a1.clone(), a2.clone())),
                                seq(&with(g, a1), a3.clone()),
                                seq(&with(g, a2), a3.clone()),
                            ];
                            add(prem, seq(g, a3.clone()), base());
                        }
                    }
                }
            }
            Rule::AndI
            | Rule::AndE1
            | Rule::AndE2
            | Rule::OrI1
            | Rule::OrI2
            | Rule::ImpI
            | Rule::ImpE
            | Rule::AndM
            | Rule::OrM
            | Rule::ImpM => {
                for a1 in &p.large {
                    for a2 in &p.large {
                        let (l, r) = (a1.clone(), a2.clone());
                        match rule {
                            Rule::AndI => add(
                                vec![seq(g, l.clone()), seq(g, r.clone())],
                                seq(g, Formula::and(l, r)),
                                base(),
                            ),
                            Rule::AndE1 => {
                                add(vec![seq(g, Formula::and(l.clone(), r))], seq(g, l), base())
                            }
                            Rule::AndE2 => {
                                add(vec![seq(g, Formula::and(l, r.clone()))], seq(g, r), base())
                            }
                            Rule::OrI1 => {
                                add(vec![seq(g, l.clone())], seq(g, Formula::or(l, r)), base())
                            }
                            Rule::OrI2 => {
                                add(vec![seq(g, r.clone())], seq(g, Formula::or(l, r)), base())
                            }
                            Rule::ImpI => add(
                                vec![seq(&with(g, &l), r.clone())],
                                seq(g, Formula::imp(l, r)),
                                base(),
                            ),
                            Rule::ImpE => add(
                                vec![seq(g, Formula::imp(l.clone(), r.clone())), seq(g, l)],
                                seq(g, r),
                                base(),
                            ),
                            _ => {
                                let (upper, lower) = match rule {
                                    Rule::AndM => (
                                        not(&Formula::and(l.clone(), r.clone())),
                                        Formula::or(not(&l), not(&r)),
                                    ),
                                    Rule::OrM => (
                                        not(&Formula::or(l.clone(), r.clone())),
                                        Formula::and(not(&l), not(&r)),
                                    ),
                                    _ => (
                                        not(&Formula::imp(l.clone(), r.clone())),
                                        Formula::and(l, not(&r)),
                                    ),
                                };
                                two_way(&mut add, g, upper, lower, base);
                            }
                        }
                    }
                }
            }
            Rule::NotM => {
                for a in &p.large {
                    two_way(&mut add, g, not(&not(a)), a.clone(), base);
                }
            }
            Rule::ForallM | Rule::ExistsM => {
                for a in &p.large {
                    for x in &p.vars {
                        let (upper, lower) = if rule == Rule::ForallM {
                            (not(&Formula::forall(x, a.clone())), Formula::exists(x, not(a)))
                        } else {
                            (not(&Formula::exists(x, a.clone())), Formula::forall(x, not(a)))
                        };
                        two_way(&mut add, g, upper, lower, base);
                    }
                }
            }
            Rule::ForallI => {
                for a in &p.large {
                    for x in &p.vars {
                        add(
                            vec![seq(g, a.clone())],
                            seq(g, Formula::forall(x, a.clone())),
                            base().var(x),
                        );
                    }
                }
            }
            Rule::ForallE | Rule::ExistsI => {
                for a in &p.large {
                    for x in &p.vars {
                        for t in &p.terms {
                            let inst = a.substitute(x, t);
                            let app = base().term(t.clone());
                            if rule == Rule::ForallE {
                                add(vec![seq(g, Formula::forall(x, a.clone()))], seq(g, inst), app);
                            } else {
                                add(vec![seq(g, inst)], seq(g, Formula::exists(x, a.clone())), app);
                            }
                        }
                    }
                }
            }
            Rule::ExistsE => {
                for a1 in &p.large {
                    for a2 in &p.small {
                        for x in &p.vars {
                            let prem = vec![
                                seq(g, Formula::exists(x, a1.clone())),
                                seq(&with(g, a1), a2.clone()),
                            ];
                            add(prem, seq(g, a2.clone()), base().var(x));
                        }
                    }
                }
            }
            Rule::EqI => {
                for t in &p.terms {
                    add(vec![], seq(g, Formula::eq(t.clone(), t.clone())), base());
                }
            }
            Rule::EqE => {
                for a in &p.large {
                    for x in &p.vars {
                        for t1 in &p.terms {
                            for t2 in &p.terms {
                                let prem = vec![
                                    seq(g, Formula::eq(t1.clone(), t2.clone())),
                                    seq(g, a.substitute(x, t1)),
                                ];
                                let app = base().var(x).template(a.clone());
                                add(prem, seq(g, a.substitute(x, t2)), app);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn two_way(
    add: &mut impl FnMut(Vec<Sequent>, Sequent, RuleApplication),
    g: &[Formula],
    upper: Formula,
    lower: Formula,
    base: impl Fn() -> RuleApplication,
) {
    add(
        vec![seq(g, upper.clone())],
        seq(g, lower.clone()),
        base().direction(Direction::Down),
    );
    add(vec![seq(g, lower)], seq(g, upper), base().direction(Direction::Up));
}

fn is_connective_rule(rule: Rule) -> bool {
    !matches!(
        rule,
        Rule::ForallI
            | Rule::ForallE
            | Rule::ExistsI
            | Rule::ExistsE
            | Rule::EqI
            | Rule::EqE
            | Rule::ForallM
            | Rule::ExistsM
    )
}

fn sweep_rule(rule: Rule, pools: &mut Pools) -> Result<RuleReport, EvalError> {
    let mut report = RuleReport {
        rule,
        instances: 0,
        rejected: 0,
        premises_valid: 0,
        failures: 0,
        first_failure: None,
    };
    for inst in instances(rule, pools) {
        // Instances are checked in classical mode so that C can be swept.
        if check_step(&inst.conclusion, &inst.app, &inst.premises, Mode::Classical).is_err() {
            report.rejected += 1;
            continue;
        }
        report.instances += 1;
        let mut premises_valid = true;
        for prem in &inst.premises {
            if pools
                .space
                .counter_point(prem.hypotheses(), prem.conclusion())?
                .is_some()
            {
                premises_valid = false;
                break;
            }
        }
        if !premises_valid {
            continue;
        }
        report.premises_valid += 1;
        let c = &inst.conclusion;
        if let Some(point) = pools.space.counter_point(c.hypotheses(), c.conclusion())? {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(Failure {
                    premises: inst.premises.clone(),
                    conclusion: inst.conclusion.clone(),
                    witness: pools.space.witness(point),
                });
            }
        }
    }
    Ok(report)
}

/// Sweep every rule, `C` included, in the order of [`Rule::ALL`].
pub fn rule_soundness_sweep(config: &SweepConfig) -> Result<SweepReport, EvalError> {
    sweep_rules(config, &Rule::ALL)
}

/// Sweep the given rules.
pub fn sweep_rules(config: &SweepConfig, rules: &[Rule]) -> Result<SweepReport, EvalError> {
    let mut prop = None;
    let mut fo = None;
    let mut reports = Vec::new();
    for &rule in rules {
        let pools = if is_connective_rule(rule) {
            if prop.is_none() {
                prop = Some(propositional_pools(config)?);
            }
            prop.as_mut().expect("built")
        } else {
            if fo.is_none() {
                fo = Some(first_order_pools(config)?);
            }
            fo.as_mut().expect("built")
        };
        reports.push(sweep_rule(rule, pools)?);
        pools.space.clear_cache();
    }
    Ok(SweepReport {
        config: *config,
        rules: reports,
    })
}
