//! A toolkit for the first-order paraconsistent logic LP with an
//! implication satisfying the deduction theorem and a falsum constant.
//!
//! * [`syntax`]: terms, formulas, parsing and substitution.
//! * [`semantics`]: three-valued structures, evaluation and bounded
//!   counter-model search.
//! * [`proofsys`]: sequents, the natural deduction rules and derivation
//!   checking, with an optional classical mode.
//! * [`embedding`]: translation of sequents into classical first-order
//!   logic and the matching transformation of structures.
//! * [`metalab`]: enumeration of three-valued connective tables, the
//!   equivalence-law census and other property harnesses.

pub mod syntax;
pub mod embedding;
pub mod metalab;
pub mod proofsys;
pub mod semantics;
