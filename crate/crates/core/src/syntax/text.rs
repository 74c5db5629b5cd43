//! Parenthesized prefix text for terms and formulas, e.g.
//! `(forall v0 (-> (= v0 0) (Prov (S v0))))`.
//!
//! Accepted heads: `S`, `+`, `*`/`·`, `diag`/`diagfn` for terms;
//! `=`, `Prov`, `not`/`¬`, `->`/`→`, `and`/`∧`, `or`/`∨`,
//! `forall`/`∀`, `exists`/`∃` for formulas. Atoms are `0`, `vN`, and
//! decimal literals, which stand for their binary-doubling numeral.
//! Printing always uses the ASCII heads.

use std::fmt;

use num_bigint::BigUint;

use super::{numeral, Formula, Syntax, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SExpr {
    Atom(String, usize),
    List(Vec<SExpr>, usize),
}

impl SExpr {
    pub(crate) fn offset(&self) -> usize {
        match self {
            SExpr::Atom(_, o) | SExpr::List(_, o) => *o,
        }
    }
}

fn text_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Text { offset, message: message.into() }
}

pub(crate) fn read_sexpr(text: &str) -> Result<SExpr> {
    let mut stack: Vec<(Vec<SExpr>, usize)> = Vec::new();
    let mut done: Option<SExpr> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if done.is_some() {
            return Err(text_err(i, "trailing input"));
        }
        let item = match c {
            '(' => {
                stack.push((Vec::new(), i));
                None
            }
            ')' => {
                let (items, start) = stack.pop().ok_or_else(|| text_err(i, "unbalanced ')'"))?;
                Some(SExpr::List(items, start))
            }
            _ => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                Some(SExpr::Atom(text[i..end].to_string(), i))
            }
        };
        if let Some(item) = item {
            match stack.last_mut() {
                Some((items, _)) => items.push(item),
                None => done = Some(item),
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(text_err(*start, "unclosed '('"));
    }
    done.ok_or_else(|| text_err(text.len(), "empty input"))
}

pub(crate) fn parse_var(atom: &str) -> Option<u64> {
    atom.strip_prefix('v').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))?.parse().ok()
}

fn arity(items: &[SExpr], n: usize, offset: usize, head: &str) -> Result<()> {
    if items.len() != n + 1 {
        return Err(text_err(offset, format!("{head} takes {n} argument(s), got {}", items.len() - 1)));
    }
    Ok(())
}

fn head_of(items: &[SExpr], offset: usize) -> Result<&str> {
    match items.first() {
        Some(SExpr::Atom(h, _)) => Ok(h.as_str()),
        Some(other) => Err(text_err(other.offset(), "expected an operator")),
        None => Err(text_err(offset, "empty list")),
    }
}

const TERM_HEADS: [&str; 6] = ["S", "+", "*", "·", "diag", "diagfn"];

pub(crate) fn term_from_sexpr(e: &SExpr) -> Result<Term> {
    match e {
        SExpr::Atom(a, o) => {
            if let Some(v) = parse_var(a) {
                return Ok(Term::Var(v));
            }
            if a.bytes().all(|b| b.is_ascii_digit()) {
                let n: BigUint = a.parse().map_err(|_| text_err(*o, "bad numeral"))?;
                return Ok(numeral(&n));
            }
            Err(text_err(*o, format!("unknown term atom {a:?}")))
        }
        SExpr::List(items, o) => {
            let head = head_of(items, *o)?;
            match head {
                "S" | "diag" | "diagfn" => {
                    arity(items, 1, *o, head)?;
                    let a = term_from_sexpr(&items[1])?;
                    Ok(if head == "S" { Term::succ(a) } else { Term::diag(a) })
                }
                "+" | "*" | "·" => {
                    arity(items, 2, *o, head)?;
                    let a = term_from_sexpr(&items[1])?;
                    let b = term_from_sexpr(&items[2])?;
                    Ok(if head == "+" { Term::plus(a, b) } else { Term::times(a, b) })
                }
                _ => Err(text_err(*o, format!("unknown term operator {head:?}"))),
            }
        }
    }
}

pub(crate) fn formula_from_sexpr(e: &SExpr) -> Result<Formula> {
    let SExpr::List(items, o) = e else {
        return Err(text_err(e.offset(), "expected a formula"));
    };
    let head = head_of(items, *o)?;
    match head {
        "=" => {
            arity(items, 2, *o, head)?;
            Ok(Formula::eq(term_from_sexpr(&items[1])?, term_from_sexpr(&items[2])?))
        }
        "Prov" => {
            arity(items, 1, *o, head)?;
            Ok(Formula::prov(term_from_sexpr(&items[1])?))
        }
        "not" | "¬" | "~" => {
            arity(items, 1, *o, head)?;
            Ok(Formula::not(formula_from_sexpr(&items[1])?))
        }
        "->" | "→" | "and" | "∧" | "&" | "or" | "∨" | "|" => {
            arity(items, 2, *o, head)?;
            let a = formula_from_sexpr(&items[1])?;
            let b = formula_from_sexpr(&items[2])?;
            Ok(match head {
                "->" | "→" => Formula::imp(a, b),
                "and" | "∧" | "&" => Formula::and(a, b),
                _ => Formula::or(a, b),
            })
        }
        "forall" | "∀" | "exists" | "∃" => {
            arity(items, 2, *o, head)?;
            let v = match &items[1] {
                SExpr::Atom(a, vo) => parse_var(a).ok_or_else(|| text_err(*vo, "expected a variable vN"))?,
                other => return Err(text_err(other.offset(), "expected a variable vN")),
            };
            let body = formula_from_sexpr(&items[2])?;
            Ok(if matches!(head, "forall" | "∀") { Formula::forall(v, body) } else { Formula::exists(v, body) })
        }
        _ => Err(text_err(*o, format!("unknown formula operator {head:?}"))),
    }
}

pub fn parse_formula_text(text: &str) -> Result<Formula> {
    formula_from_sexpr(&read_sexpr(text)?)
}

pub fn parse_term_text(text: &str) -> Result<Term> {
    term_from_sexpr(&read_sexpr(text)?)
}

/// Term or formula, decided by the outermost operator.
pub fn parse_syntax_text(text: &str) -> Result<Syntax> {
    let e = read_sexpr(text)?;
    let is_term = match &e {
        SExpr::Atom(..) => true,
        SExpr::List(items, _) => matches!(items.first(), Some(SExpr::Atom(h, _)) if TERM_HEADS.contains(&h.as_str())),
    };
    if is_term {
        term_from_sexpr(&e).map(Syntax::Term)
    } else {
        formula_from_sexpr(&e).map(Syntax::Formula)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(i) => write!(f, "v{i}"),
            Term::Succ(a) => write!(f, "(S {a})"),
            Term::Diag(a) => write!(f, "(diag {a})"),
            Term::Plus(a, b) => write!(f, "(+ {a} {b})"),
            Term::Times(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Prov(t) => write!(f, "(Prov {t})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Imp(a, b) => write!(f, "(-> {a} {b})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Forall(v, a) => write!(f, "(forall v{v} {a})"),
            Formula::Exists(v, a) => write!(f, "(exists v{v} {a})"),
        }
    }
}

impl fmt::Display for Syntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syntax::Term(t) => t.fmt(f),
            Syntax::Formula(x) => x.fmt(f),
        }
    }
}
