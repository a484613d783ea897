//! Terms, formulas and signatures of the object language, with the
//! concrete ASCII syntax, free variables, substitution and alpha-equivalence.

mod ast;
mod parser;
mod print;
mod signature;
mod subst;

pub use ast::{Formula, Quantifier, Term};
pub use parser::{
    is_variable_name, parse_formula, parse_formula_declaring, parse_term, parse_term_declaring,
    ParseError, ParseErrorKind,
};
pub use print::format_formula;
pub use signature::{Signature, SignatureError, SymbolKind, RESERVED_WORDS};
pub use subst::{alpha_equal, free_vars_of, fresh_variant};
