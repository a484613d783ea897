//! Meta-level experiments: the census of three-valued connective tables
//! against the distinguishing laws of logical equivalence, the
//! internalization properties, and the bounded soundness sweep of the
//! inference rules.

mod candidates;
mod family;
mod internal;
mod sweep;

pub use candidates::{
    candidate, candidate_count, count_candidates, enumerate_candidates, free_cells, laws,
    satisfies_law, Binary, Cell, Census, ConnectiveTable, Law, LAW_MAX_DOMAIN,
};
pub use family::Family;
pub use internal::{
    check_internalization_consistency, check_internalization_equivalence, consistency_formula,
    equivalence_formula, internalization_sweep, Agreement, InternalizationSummary,
};
pub use sweep::{rule_soundness_sweep, sweep_rules, Failure, RuleReport, SweepConfig, SweepReport};
