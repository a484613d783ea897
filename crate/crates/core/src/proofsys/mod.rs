//! Sequents, the natural deduction rules and derivation checking.
//!
//! Rules are checked with explicit parameters: the term of `Forall-E` and
//! `Exists-I`, and the variable and template of `Eq-E`. Two-way rules take
//! an optional direction. Rule `C` is only available in classical mode.

mod derivation;
mod rules;
mod script;
mod sequent;

pub use derivation::{check_derivation, check_lines, Derivation, DerivationError, Justification};
pub use rules::{
    check_step, list_rules, CheckError, Direction, Mode, Rule, RuleApplication, RuleInfo,
};
pub use script::{Script, ScriptError};
pub use sequent::Sequent;
