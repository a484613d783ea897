//! Three-valued structures, evaluation and bounded counter-model search.

mod eval;
mod search;
mod structure;
mod truth;

pub use eval::{eval_formula, eval_term, eval_with, holds, Connectives, EvalError, Lp};
pub use search::{
    assignments, check_consequence, check_consistency, check_equivalence, search, ModelSpace,
    Profile, SearchConfig, SearchError, StructureEnumerator, Verdict, Vocabulary, Witness,
};
pub(crate) use structure::tuple_at;
pub use structure::{Assignment, Element, Structure, StructureError, Table};
pub use truth::{BadTruthValue, TruthValue};
