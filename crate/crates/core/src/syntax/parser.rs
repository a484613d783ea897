//! Concrete ASCII syntax.
//!
//! ```text
//! formula := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "~" unary | ("forall" | "exists") ident ("," ident)* "." formula | primary
//! primary := "F" | "T" | "(" formula ")" | ident ["(" terms ")"] | term ("=" | "!=") term
//! ```
//!
//! `T`, `!=` and `<->` are expanded while parsing, so the resulting tree only
//! contains primitive constructors.

use thiserror::Error;

use super::ast::{Formula, Term};
use super::signature::{is_identifier, Signature, SymbolKind, RESERVED_WORDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Lexical(char),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("predicate `{0}` used as a term")]
    PredicateAsTerm(String),
    #[error("`{0}` is a declared symbol and cannot be bound")]
    BinderIsSymbol(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("{0}")]
    Signature(String),
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {}: {kind}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Wedge,
    Vee,
    Arrow,
    DArrow,
    Equals,
    NotEquals,
    Falsum,
    Truth,
    Forall,
    Exists,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Vee => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Equals => "`=`".into(),
            Tok::NotEquals => "`!=`".into(),
            Tok::Falsum => "`F`".into(),
            Tok::Truth => "`T`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::DArrow, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("/\\") {
            (Tok::Wedge, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Vee, 2)
        } else if rest.starts_with("!=") {
            (Tok::NotEquals, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                '.' => (Tok::Dot, 1),
                '~' => (Tok::Tilde, 1),
                '=' => (Tok::Equals, 1),
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let len = rest
                        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                        .unwrap_or(rest.len());
                    let word = &rest[..len];
                    let tok = match word {
                        "F" => Tok::Falsum,
                        "T" => Tok::Truth,
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, len)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or(c);
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::Lexical(ch),
                    });
                }
            }
        };
        out.push((tok, start));
        i += len;
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

enum Symbols<'s> {
    Fixed(&'s Signature),
    Infer(&'s mut Signature),
}

impl Symbols<'_> {
    fn lookup(&self, name: &str) -> Option<(SymbolKind, usize)> {
        match self {
            Symbols::Fixed(s) => s.lookup(name),
            Symbols::Infer(s) => s.lookup(name),
        }
    }
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    symbols: Symbols<'s>,
}

/// Parse a formula whose symbols must all be declared in `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    Parser::new(text, Symbols::Fixed(sig))?.finish_formula()
}

/// Parse a formula, declaring undeclared symbols in `sig` as they are met.
///
/// An unknown name applied to arguments is a predicate in formula position
/// and a function in term position; a bare unknown name is a proposition in
/// formula position and a variable in term position.
pub fn parse_formula_declaring(text: &str, sig: &mut Signature) -> Result<Formula, ParseError> {
    Parser::new(text, Symbols::Infer(sig))?.finish_formula()
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, Symbols::Fixed(sig))?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

pub fn parse_term_declaring(text: &str, sig: &mut Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, Symbols::Infer(sig))?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

impl<'s> Parser<'s> {
    fn new(text: &str, symbols: Symbols<'s>) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            symbols,
        })
    }

    fn finish_formula(mut self) -> Result<Formula, ParseError> {
        let f = self.formula()?;
        self.expect(Tok::Eof)?;
        Ok(f)
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { pos, kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error(
            self.pos(),
            ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found: self.peek().describe(),
            },
        )
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Vee) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Wedge) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let forall = self.bump() == Tok::Forall;
                let mut binders = vec![self.binder()?];
                while self.eat(&Tok::Comma) {
                    binders.push(self.binder()?);
                }
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(binders.into_iter().rev().fold(body, |acc, x| {
                    if forall {
                        Formula::forall(x, acc)
                    } else {
                        Formula::exists(x, acc)
                    }
                }))
            }
            _ => self.primary(),
        }
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(x) => {
                if self.symbols.lookup(&x).is_some() {
                    Err(self.error(pos, ParseErrorKind::BinderIsSymbol(x)))
                } else {
                    Ok(x)
                }
            }
            other => Err(self.error(
                pos,
                ParseErrorKind::Unexpected {
                    expected: "a variable".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Falsum => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::Truth => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => self.atom(name),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn atom(&mut self, name: String) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.symbols.lookup(&name) {
            Some((SymbolKind::Predicate, arity)) => {
                self.bump();
                let args = self.arguments()?;
                self.check_arity(pos, &name, arity, args.len())?;
                Ok(Formula::Pred(name, args))
            }
            Some((SymbolKind::Function, _)) => self.equation(),
            None => {
                let applied = self.peek_at(1) == &Tok::LParen;
                if !applied {
                    if matches!(self.peek_at(1), Tok::Equals | Tok::NotEquals) {
                        return self.equation();
                    }
                    if matches!(self.symbols, Symbols::Fixed(_)) {
                        return Err(self.error(pos, ParseErrorKind::UnknownSymbol(name)));
                    }
                    self.bump();
                    self.declare_here(pos, &name, SymbolKind::Predicate, 0)?;
                    return Ok(Formula::Pred(name, Vec::new()));
                }
                if matches!(self.symbols, Symbols::Fixed(_)) {
                    return Err(self.error(pos, ParseErrorKind::UnknownSymbol(name)));
                }
                // Undeclared application: a predicate unless an equation follows.
                self.bump();
                let args = self.arguments()?;
                if matches!(self.peek(), Tok::Equals | Tok::NotEquals) {
                    self.declare_here(pos, &name, SymbolKind::Function, args.len())?;
                    let lhs = Term::App(name, args);
                    self.equation_rest(lhs)
                } else {
                    self.declare_here(pos, &name, SymbolKind::Predicate, args.len())?;
                    Ok(Formula::Pred(name, args))
                }
            }
        }
    }

    fn declare_here(
        &mut self,
        pos: usize,
        name: &str,
        kind: SymbolKind,
        arity: usize,
    ) -> Result<(), ParseError> {
        if let Symbols::Infer(sig) = &mut self.symbols {
            declare(sig, name, kind, arity).map_err(|k| ParseError { pos, kind: k })?;
        }
        Ok(())
    }

    fn equation(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        self.equation_rest(lhs)
    }

    fn equation_rest(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Equals => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::NotEquals => {
                self.bump();
                Ok(Formula::neq(lhs, self.term()?))
            }
            _ => Err(self.unexpected("`=` or `!=`")),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args.push(self.term()?);
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    fn check_arity(
        &self,
        pos: usize,
        name: &str,
        expected: usize,
        found: usize,
    ) -> Result<(), ParseError> {
        if expected == found {
            Ok(())
        } else {
            Err(self.error(
                pos,
                ParseErrorKind::Arity {
                    name: name.to_string(),
                    expected,
                    found,
                },
            ))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let name = match self.peek().clone() {
            Tok::Ident(name) => name,
            _ => return Err(self.unexpected("a term")),
        };
        self.bump();
        match self.symbols.lookup(&name) {
            Some((SymbolKind::Function, arity)) => {
                let args = self.arguments()?;
                self.check_arity(pos, &name, arity, args.len())?;
                Ok(Term::App(name, args))
            }
            Some((SymbolKind::Predicate, _)) => {
                Err(self.error(pos, ParseErrorKind::PredicateAsTerm(name)))
            }
            None if self.peek() == &Tok::LParen => {
                if matches!(self.symbols, Symbols::Fixed(_)) {
                    return Err(self.error(pos, ParseErrorKind::UnknownSymbol(name)));
                }
                let args = self.arguments()?;
                self.declare_here(pos, &name, SymbolKind::Function, args.len())?;
                Ok(Term::App(name, args))
            }
            None => Ok(Term::Var(name)),
        }
    }
}

fn declare(
    sig: &mut Signature,
    name: &str,
    kind: SymbolKind,
    arity: usize,
) -> Result<(), ParseErrorKind> {
    sig.declare(name, kind, arity)
        .map_err(|e| ParseErrorKind::Signature(e.to_string()))
}

/// Whether `name` can be written as a variable in concrete syntax.
pub fn is_variable_name(name: &str) -> bool {
    is_identifier(name) && !RESERVED_WORDS.contains(&name)
}
