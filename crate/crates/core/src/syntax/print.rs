use std::fmt::{self, Display, Formatter, Write};

use super::ast::{Formula, Term};

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(g, args) if args.is_empty() => f.write_str(g),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_char(')')
            }
        }
    }
}

const PREC_QUANT: u8 = 0;
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_ATOM: u8 = 4;

fn precedence(a: &Formula) -> u8 {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => PREC_QUANT,
        Formula::Imp(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_ATOM,
    }
}

/// `min` is the weakest binding that may appear unparenthesized here;
/// `last` tells whether nothing follows this subformula, which is what
/// lets a quantifier stay bare.
fn write_formula(out: &mut Formatter<'_>, a: &Formula, min: u8, last: bool) -> fmt::Result {
    let prec = precedence(a);
    let parens = if prec == PREC_QUANT { !last } else { prec < min };
    if parens {
        out.write_char('(')?;
    }
    let last = last || parens;
    match a {
        Formula::Falsum => out.write_char('F')?,
        Formula::Pred(p, args) => write!(out, "{}", Term::App(p.clone(), args.clone()))?,
        Formula::Eq(l, r) => write!(out, "{l} = {r}")?,
        Formula::Not(b) => match b.as_ref() {
            Formula::Eq(l, r) => write!(out, "{l} != {r}")?,
            _ => {
                out.write_char('~')?;
                write_formula(out, b, PREC_ATOM, last)?;
            }
        },
        Formula::And(l, r) => binary(out, l, r, " /\\ ", PREC_AND, PREC_ATOM, last)?,
        Formula::Or(l, r) => binary(out, l, r, " \\/ ", PREC_OR, PREC_AND, last)?,
        Formula::Imp(l, r) => binary(out, l, r, " -> ", PREC_OR, PREC_IMP, last)?,
        Formula::Forall(x, b) => {
            write!(out, "forall {x}. ")?;
            write_formula(out, b, PREC_QUANT, true)?;
        }
        Formula::Exists(x, b) => {
            write!(out, "exists {x}. ")?;
            write_formula(out, b, PREC_QUANT, true)?;
        }
    }
    if parens {
        out.write_char(')')?;
    }
    Ok(())
}

fn binary(
    out: &mut Formatter<'_>,
    l: &Formula,
    r: &Formula,
    op: &str,
    left_min: u8,
    right_min: u8,
    last: bool,
) -> fmt::Result {
    write_formula(out, l, left_min, false)?;
    out.write_str(op)?;
    write_formula(out, r, right_min, last)
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, PREC_QUANT, true)
    }
}

pub fn format_formula(a: &Formula) -> String {
    a.to_string()
}
