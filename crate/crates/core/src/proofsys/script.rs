//! The line-oriented proof script format.
//!
//! ```text
//! # comment
//! pred P/1
//! target: |- p -> p
//! premise: p |- q
//! 1. p |- p ; rule=I
//! 2. |- p -> p ; rule=Imp-I from=1
//! ```
//!
//! Justifications are `key=value` fields: `rule`, `dir`, `from`, `x`, `t`
//! and `A`. Values containing spaces are wrapped in braces, as in
//! `A={P(x) -> q}`. `rule=hyp` marks a line taken from the `premise:`
//! sequents. Without a `target:` header the last line is the target.

use std::fmt;

use thiserror::Error;

use super::derivation::{check_derivation, check_lines, Derivation, DerivationError, Justification};
use super::rules::{Direction, Mode, Rule, RuleApplication};
use super::sequent::Sequent;
use crate::syntax::{parse_formula_declaring, parse_term_declaring, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

/// A parsed proof script.
#[derive(Clone, Debug)]
pub struct Script {
    pub signature: Signature,
    pub target: Option<Sequent>,
    pub premises: Vec<Sequent>,
    pub derivation: Derivation,
    /// Source line of each derivation line.
    pub source_lines: Vec<usize>,
}

impl Script {
    /// Parse a script. Symbols not declared in `sig` or in the script's
    /// own declarations are inferred from use.
    pub fn parse(text: &str, sig: Signature) -> Result<Script, ScriptError> {
        let mut script = Script {
            signature: sig,
            target: None,
            premises: Vec::new(),
            derivation: Derivation::new(),
            source_lines: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let err = |message: String| ScriptError {
                line: lineno,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with("fun ") || line.starts_with("pred ") {
                script.signature.parse_declaration(line).map_err(err)?;
            } else if let Some(rest) = line.strip_prefix("target:") {
                if script.target.is_some() {
                    return Err(err("duplicate target".into()));
                }
                script.target = Some(script.sequent(rest, lineno)?);
            } else if let Some(rest) = line.strip_prefix("premise:") {
                let s = script.sequent(rest, lineno)?;
                script.premises.push(s);
            } else {
                script.body_line(line, lineno)?;
            }
        }
        Ok(script)
    }

    fn sequent(&mut self, text: &str, line: usize) -> Result<Sequent, ScriptError> {
        Sequent::parse(text, &mut self.signature).map_err(|e| ScriptError {
            line,
            message: e.to_string(),
        })
    }

    fn body_line(&mut self, line: &str, lineno: usize) -> Result<(), ScriptError> {
        let err = |message: String| ScriptError {
            line: lineno,
            message,
        };
        let (num, rest) = line
            .split_once('.')
            .ok_or_else(|| err("expected `n. <sequent> ; rule=...`".into()))?;
        let num: usize = num
            .trim()
            .parse()
            .map_err(|_| err(format!("bad line number `{}`", num.trim())))?;
        if num != self.derivation.len() + 1 {
            return Err(err(format!(
                "line number {num} out of sequence (expected {})",
                self.derivation.len() + 1
            )));
        }
        let turnstile = rest
            .find("|-")
            .ok_or_else(|| err("missing `|-`".into()))?;
        let split = rest[turnstile..]
            .find(';')
            .map(|k| turnstile + k)
            .ok_or_else(|| err("missing `; rule=...` justification".into()))?;
        let sequent = self.sequent(&rest[..split], lineno)?;
        let just = self.justification(&rest[split + 1..], lineno)?;
        self.derivation.push(sequent, just);
        self.source_lines.push(lineno);
        Ok(())
    }

    fn justification(&mut self, text: &str, lineno: usize) -> Result<Justification, ScriptError> {
        let err = |message: String| ScriptError {
            line: lineno,
            message,
        };
        let fields = split_fields(text).map_err(err)?;
        let mut rule: Option<String> = None;
        let mut app = RuleApplication::new(Rule::I, Vec::new());
        for (key, value) in fields {
            match key.as_str() {
                "rule" => rule = Some(value),
                "dir" => app.direction = Some(value.parse::<Direction>().map_err(err)?),
                "from" => {
                    app.premises = value
                        .split(',')
                        .map(|n| n.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| err(format!("bad premise list `{value}`")))?
                }
                "x" => app.var = Some(value),
                "t" => {
                    app.term = Some(
                        parse_term_declaring(&value, &mut self.signature)
                            .map_err(|e| err(format!("in t: {e}")))?,
                    )
                }
                "A" => {
                    app.template = Some(
                        parse_formula_declaring(&value, &mut self.signature)
                            .map_err(|e| err(format!("in A: {e}")))?,
                    )
                }
                other => return Err(err(format!("unknown field `{other}`"))),
            }
        }
        let rule = rule.ok_or_else(|| err("missing `rule=`".into()))?;
        if rule == "hyp" {
            return Ok(Justification::Hypothesis);
        }
        app.rule = rule.parse().map_err(err)?;
        Ok(Justification::Rule(app))
    }

    /// The target: the `target:` header, or else the last line.
    pub fn effective_target(&self) -> Option<&Sequent> {
        self.target.as_ref().or_else(|| self.derivation.last())
    }

    /// Check the whole script.
    pub fn check(&self, mode: Mode) -> Result<(), DerivationError> {
        let target = self.effective_target().ok_or(DerivationError::Empty)?;
        check_derivation(&self.derivation, &self.premises, target, mode)
    }

    /// Per-line verdicts.
    pub fn check_lines(&self, mode: Mode) -> Vec<Result<(), DerivationError>> {
        check_lines(&self.derivation, &self.premises, mode)
    }
}

/// Split `key=value key={value with spaces}` into pairs.
fn split_fields(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut key_end = None;
        while let Some(&(i, c)) = chars.peek() {
            if c == '=' {
                key_end = Some(i);
                chars.next();
                break;
            }
            if c.is_whitespace() {
                break;
            }
            chars.next();
        }
        let key_end = key_end.ok_or_else(|| format!("expected `key=value` at `{}`", &text[start..]))?;
        let key = text[start..key_end].to_string();
        let value = if chars.peek().map(|&(_, c)| c) == Some('{') {
            let (open, _) = chars.next().expect("peeked");
            let mut depth = 1;
            let mut close = None;
            for (i, c) in chars.by_ref() {
                match c {
                    '{' => depth += 1,
                    '}' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| format!("unclosed `{{` in value of `{key}`"))?;
            text[open + 1..close].to_string()
        } else {
            let begin = chars.peek().map_or(text.len(), |&(i, _)| i);
            let mut end = text.len();
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() {
                    end = i;
                    break;
                }
                chars.next();
            }
            text[begin..end].to_string()
        };
        if value.is_empty() {
            return Err(format!("empty value for `{key}`"));
        }
        out.push((key, value));
    }
    Ok(out)
}

fn wrap(value: String) -> String {
    if value.contains(char::is_whitespace) {
        format!("{{{value}}}")
    } else {
        value
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let app = match self {
            Justification::Hypothesis => return f.write_str("rule=hyp"),
            Justification::Rule(app) => app,
        };
        write!(f, "rule={}", app.rule)?;
        if let Some(d) = app.direction {
            write!(f, " dir={d}")?;
        }
        if !app.premises.is_empty() {
            let list: Vec<String> = app.premises.iter().map(usize::to_string).collect();
            write!(f, " from={}", list.join(","))?;
        }
        if let Some(x) = &app.var {
            write!(f, " x={x}")?;
        }
        if let Some(t) = &app.term {
            write!(f, " t={}", wrap(t.to_string()))?;
        }
        if let Some(a) = &app.template {
            write!(f, " A={}", wrap(a.to_string()))?;
        }
        Ok(())
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in self.signature.functions() {
            writeln!(f, "fun {name}/{arity}")?;
        }
        for (name, arity) in self.signature.predicates() {
            writeln!(f, "pred {name}/{arity}")?;
        }
        if let Some(t) = &self.target {
            writeln!(f, "target: {t}")?;
        }
        for p in &self.premises {
            writeln!(f, "premise: {p}")?;
        }
        for (i, (s, j)) in self.derivation.lines.iter().enumerate() {
            writeln!(f, "{}. {s} ; {j}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_with_braces() {
        let f = split_fields(" rule=Eq-E from=1,2 x=x A={P(x) -> q} ").unwrap();
        assert_eq!(f[3], ("A".to_string(), "P(x) -> q".to_string()));
        assert_eq!(f.len(), 4);
        assert!(split_fields("rule").is_err());
        assert!(split_fields("A={p").is_err());
    }

    #[test]
    fn parse_and_print() {
        let text = "target: |- p -> p\n1. p |- p ; rule=I\n2. |- p -> p ; rule=Imp-I from=1 # done\n";
        let s = Script::parse(text, Signature::new()).unwrap();
        assert_eq!(s.derivation.len(), 2);
        assert_eq!(s.source_lines, vec![2, 3]);
        assert!(s.check(Mode::Lp).is_ok());
        let again = Script::parse(&s.to_string(), Signature::new()).unwrap();
        assert_eq!(again.derivation, s.derivation);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        for (text, line) in [
            ("1. p |- p ; rule=I\n3. p |- p ; rule=I", 2),
            ("\n1. p |- p", 2),
            ("1. p |- p ; rule=Foo", 1),
            ("1. p & q |- p ; rule=I", 1),
            ("1. p |- p ; rule=I\n2. |- p -> p ; rule=Imp-I from=x", 2),
        ] {
            assert_eq!(Script::parse(text, Signature::new()).unwrap_err().line, line, "{text}");
        }
    }
}
