use std::collections::BTreeSet;

use super::Symbol;
use crate::error::{Error, ParseErrorKind, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    /// The object-level diagonal function symbol.
    Diag(Box<Term>),
    Var(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    /// The designated provability predicate.
    Prov(Term),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(u64, Box<Formula>),
    Exists(u64, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Term,
    Formula,
}

/// A parsed term or formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syntax {
    Term(Term),
    Formula(Formula),
}

impl Syntax {
    pub fn category(&self) -> Category {
        match self {
            Syntax::Term(_) => Category::Term,
            Syntax::Formula(_) => Category::Formula,
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        match self {
            Syntax::Term(t) => t.symbols(),
            Syntax::Formula(f) => f.symbols(),
        }
    }
}

impl From<Term> for Syntax {
    fn from(t: Term) -> Self {
        Syntax::Term(t)
    }
}

impl From<Formula> for Syntax {
    fn from(f: Formula) -> Self {
        Syntax::Formula(f)
    }
}

// Shorthand constructors; tests and the generators build a lot of trees.
impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }
    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }
    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }
    pub fn diag(t: Term) -> Term {
        Term::Diag(Box::new(t))
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }
    pub fn prov(t: Term) -> Formula {
        Formula::Prov(t)
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn forall(v: u64, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }
    pub fn exists(v: u64, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }
}

enum NodeRef<'a> {
    T(&'a Term),
    F(&'a Formula),
}

/// Prefix-order traversal with an explicit stack.
fn flatten_into(root: NodeRef<'_>, out: &mut Vec<Symbol>) {
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match node {
            NodeRef::T(t) => match t {
                Term::Zero => out.push(Symbol::Zero),
                Term::Var(i) => out.push(Symbol::Var(*i)),
                Term::Succ(a) => {
                    out.push(Symbol::Succ);
                    stack.push(NodeRef::T(a));
                }
                Term::Diag(a) => {
                    out.push(Symbol::Diag);
                    stack.push(NodeRef::T(a));
                }
                Term::Plus(a, b) | Term::Times(a, b) => {
                    out.push(if matches!(t, Term::Plus(..)) { Symbol::Plus } else { Symbol::Times });
                    stack.push(NodeRef::T(b));
                    stack.push(NodeRef::T(a));
                }
            },
            NodeRef::F(f) => match f {
                Formula::Eq(a, b) => {
                    out.push(Symbol::Eq);
                    stack.push(NodeRef::T(b));
                    stack.push(NodeRef::T(a));
                }
                Formula::Prov(t) => {
                    out.push(Symbol::Prov);
                    stack.push(NodeRef::T(t));
                }
                Formula::Not(a) => {
                    out.push(Symbol::Not);
                    stack.push(NodeRef::F(a));
                }
                Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    out.push(match f {
                        Formula::Imp(..) => Symbol::Imp,
                        Formula::And(..) => Symbol::And,
                        _ => Symbol::Or,
                    });
                    stack.push(NodeRef::F(b));
                    stack.push(NodeRef::F(a));
                }
                Formula::Forall(v, body) | Formula::Exists(v, body) => {
                    out.push(if matches!(f, Formula::Forall(..)) { Symbol::Forall } else { Symbol::Exists });
                    out.push(Symbol::Var(*v));
                    stack.push(NodeRef::F(body));
                }
            },
        }
    }
}

impl Term {
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        flatten_into(NodeRef::T(self), &mut out);
        out
    }

    pub fn symbol_len(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 1,
            Term::Succ(a) | Term::Diag(a) => 1 + a.symbol_len(),
            Term::Plus(a, b) | Term::Times(a, b) => 1 + a.symbol_len() + b.symbol_len(),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<u64>) {
        match self {
            Term::Zero => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Succ(a) | Term::Diag(a) => a.vars(out),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn contains_var(&self, v: u64) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(i) => *i == v,
            Term::Succ(a) | Term::Diag(a) => a.contains_var(v),
            Term::Plus(a, b) | Term::Times(a, b) => a.contains_var(v) || b.contains_var(v),
        }
    }

    /// Replaces every occurrence of `v`.
    pub fn substitute(&self, v: u64, replacement: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(i) if *i == v => replacement.clone(),
            Term::Var(i) => Term::Var(*i),
            Term::Succ(a) => Term::succ(a.substitute(v, replacement)),
            Term::Diag(a) => Term::diag(a.substitute(v, replacement)),
            Term::Plus(a, b) => Term::plus(a.substitute(v, replacement), b.substitute(v, replacement)),
            Term::Times(a, b) => Term::times(a.substitute(v, replacement), b.substitute(v, replacement)),
        }
    }
}

impl Formula {
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        flatten_into(NodeRef::F(self), &mut out);
        out
    }

    pub fn symbol_len(&self) -> usize {
        match self {
            Formula::Eq(a, b) => 1 + a.symbol_len() + b.symbol_len(),
            Formula::Prov(t) => 1 + t.symbol_len(),
            Formula::Not(a) => 1 + a.symbol_len(),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.symbol_len() + b.symbol_len(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 2 + a.symbol_len(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u64>, out: &mut BTreeSet<u64>) {
        let add_term = |t: &Term, out: &mut BTreeSet<u64>| {
            let mut vs = BTreeSet::new();
            t.vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Eq(a, b) => {
                add_term(a, out);
                add_term(b, out);
            }
            Formula::Prov(t) => add_term(t, out),
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: u64) -> bool {
        match self {
            Formula::Eq(a, b) => a.contains_var(v) || b.contains_var(v),
            Formula::Prov(t) => t.contains_var(v),
            Formula::Not(a) => a.has_free(v),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Forall(w, a) | Formula::Exists(w, a) => *w != v && a.has_free(v),
        }
    }

    /// Replaces the free occurrences of `v`; no renaming of binders.
    pub fn substitute_free(&self, v: u64, replacement: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(v, replacement), b.substitute(v, replacement)),
            Formula::Prov(t) => Formula::Prov(t.substitute(v, replacement)),
            Formula::Not(a) => Formula::not(a.substitute_free(v, replacement)),
            Formula::Imp(a, b) => Formula::imp(a.substitute_free(v, replacement), b.substitute_free(v, replacement)),
            Formula::And(a, b) => Formula::and(a.substitute_free(v, replacement), b.substitute_free(v, replacement)),
            Formula::Or(a, b) => Formula::or(a.substitute_free(v, replacement), b.substitute_free(v, replacement)),
            Formula::Forall(w, _) | Formula::Exists(w, _) if *w == v => self.clone(),
            Formula::Forall(w, a) => Formula::forall(*w, a.substitute_free(v, replacement)),
            Formula::Exists(w, a) => Formula::exists(*w, a.substitute_free(v, replacement)),
        }
    }

    /// All subformulas, including `self`, in prefix order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                Formula::Eq(..) | Formula::Prov(_) => {}
                Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => stack.push(a),
                Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }
}

enum Frame {
    Succ,
    Diag,
    Plus(Option<Term>),
    Times(Option<Term>),
    Eq(Option<Term>),
    Prov,
    Not,
    Imp(Option<Formula>),
    And(Option<Formula>),
    Or(Option<Formula>),
    Forall(u64),
    Exists(u64),
}

enum Node {
    T(Term),
    F(Formula),
}

impl Frame {
    fn expects(&self) -> Category {
        match self {
            Frame::Succ | Frame::Diag | Frame::Plus(_) | Frame::Times(_) | Frame::Eq(_) | Frame::Prov => Category::Term,
            _ => Category::Formula,
        }
    }

    /// Feeds a finished child. Returns the completed node, or the frame
    /// still waiting for its next child.
    fn feed(self, child: Node) -> std::result::Result<Node, Frame> {
        use Node::{F, T};
        match (self, child) {
            (Frame::Succ, T(t)) => Ok(T(Term::succ(t))),
            (Frame::Diag, T(t)) => Ok(T(Term::diag(t))),
            (Frame::Plus(None), T(t)) => Err(Frame::Plus(Some(t))),
            (Frame::Plus(Some(a)), T(b)) => Ok(T(Term::plus(a, b))),
            (Frame::Times(None), T(t)) => Err(Frame::Times(Some(t))),
            (Frame::Times(Some(a)), T(b)) => Ok(T(Term::times(a, b))),
            (Frame::Eq(None), T(t)) => Err(Frame::Eq(Some(t))),
            (Frame::Eq(Some(a)), T(b)) => Ok(F(Formula::Eq(a, b))),
            (Frame::Prov, T(t)) => Ok(F(Formula::Prov(t))),
            (Frame::Not, F(f)) => Ok(F(Formula::not(f))),
            (Frame::Imp(None), F(f)) => Err(Frame::Imp(Some(f))),
            (Frame::Imp(Some(a)), F(b)) => Ok(F(Formula::imp(a, b))),
            (Frame::And(None), F(f)) => Err(Frame::And(Some(f))),
            (Frame::And(Some(a)), F(b)) => Ok(F(Formula::and(a, b))),
            (Frame::Or(None), F(f)) => Err(Frame::Or(Some(f))),
            (Frame::Or(Some(a)), F(b)) => Ok(F(Formula::or(a, b))),
            (Frame::Forall(v), F(f)) => Ok(F(Formula::forall(v, f))),
            (Frame::Exists(v), F(f)) => Ok(F(Formula::exists(v, f))),
            _ => unreachable!("child category is checked before it is built"),
        }
    }
}

fn starts_formula(s: Symbol) -> bool {
    matches!(
        s,
        Symbol::Not | Symbol::Imp | Symbol::And | Symbol::Or | Symbol::Forall | Symbol::Exists | Symbol::Eq | Symbol::Prov
    )
}

/// Parses a Polish-notation symbol string. With `category = None` the
/// category is taken from the first symbol. Positions in errors are 1-based.
pub fn parse(symbols: &[Symbol], category: Option<Category>) -> Result<Syntax> {
    let err = |kind, position| Error::Parse { kind, position };
    let root = match (category, symbols.first()) {
        (Some(c), _) => c,
        (None, Some(&s)) if starts_formula(s) => Category::Formula,
        (None, Some(_)) => Category::Term,
        (None, None) => return Err(err(ParseErrorKind::TruncatedInput, 1)),
    };
    let mut stack: Vec<Frame> = Vec::new();
    let mut done: Option<Node> = None;
    let mut pos = 0;
    while pos < symbols.len() {
        if done.is_some() {
            return Err(err(ParseErrorKind::TrailingSymbols, pos + 1));
        }
        let expected = stack.last().map_or(root, Frame::expects);
        let sym = symbols[pos];
        let leaf = match (expected, sym) {
            (Category::Term, Symbol::Zero) => Some(Node::T(Term::Zero)),
            (Category::Term, Symbol::Var(i)) => Some(Node::T(Term::Var(i))),
            (Category::Term, Symbol::Succ) => {
                stack.push(Frame::Succ);
                None
            }
            (Category::Term, Symbol::Diag) => {
                stack.push(Frame::Diag);
                None
            }
            (Category::Term, Symbol::Plus) => {
                stack.push(Frame::Plus(None));
                None
            }
            (Category::Term, Symbol::Times) => {
                stack.push(Frame::Times(None));
                None
            }
            (Category::Formula, Symbol::Eq) => {
                stack.push(Frame::Eq(None));
                None
            }
            (Category::Formula, Symbol::Prov) => {
                stack.push(Frame::Prov);
                None
            }
            (Category::Formula, Symbol::Not) => {
                stack.push(Frame::Not);
                None
            }
            (Category::Formula, Symbol::Imp) => {
                stack.push(Frame::Imp(None));
                None
            }
            (Category::Formula, Symbol::And) => {
                stack.push(Frame::And(None));
                None
            }
            (Category::Formula, Symbol::Or) => {
                stack.push(Frame::Or(None));
                None
            }
            (Category::Formula, Symbol::Forall | Symbol::Exists) => {
                pos += 1;
                let v = match symbols.get(pos) {
                    None => return Err(err(ParseErrorKind::TruncatedInput, pos + 1)),
                    Some(Symbol::Var(v)) => *v,
                    Some(_) => return Err(err(ParseErrorKind::UnexpectedSymbol, pos + 1)),
                };
                stack.push(if sym == Symbol::Forall { Frame::Forall(v) } else { Frame::Exists(v) });
                None
            }
            _ => return Err(err(ParseErrorKind::UnexpectedSymbol, pos + 1)),
        };
        pos += 1;
        if let Some(mut node) = leaf {
            loop {
                match stack.pop() {
                    None => {
                        done = Some(node);
                        break;
                    }
                    Some(frame) => match frame.feed(node) {
                        Ok(parent) => node = parent,
                        Err(waiting) => {
                            stack.push(waiting);
                            break;
                        }
                    },
                }
            }
        }
    }
    match done {
        Some(Node::T(t)) => Ok(Syntax::Term(t)),
        Some(Node::F(f)) => Ok(Syntax::Formula(f)),
        None => Err(err(ParseErrorKind::TruncatedInput, symbols.len() + 1)),
    }
}

pub fn parse_formula(symbols: &[Symbol]) -> Result<Formula> {
    match parse(symbols, Some(Category::Formula))? {
        Syntax::Formula(f) => Ok(f),
        Syntax::Term(_) => unreachable!(),
    }
}

pub fn parse_term(symbols: &[Symbol]) -> Result<Term> {
    match parse(symbols, Some(Category::Term))? {
        Syntax::Term(t) => Ok(t),
        Syntax::Formula(_) => unreachable!(),
    }
}
