//! Hilbert-style calculus: axiom schemas, proof checking over proof codes,
//! bounded forward-chaining proof search, and the Gödel sentence.
//!
//! Built-in schemas:
//!
//! | name             | shape                                            |
//! |------------------|--------------------------------------------------|
//! | `K`              | `A → (B → A)`                                    |
//! | `S`              | `(A → (B → C)) → ((A → B) → (A → C))`            |
//! | `contraposition` | `(¬B → ¬A) → (A → B)`                            |
//! | `eq_refl`        | `t = t`                                          |
//! | `eq_subst`       | `s = t → (A → A')`, `A'` replaces some free `s` by `t` |
//! | `forall_inst`    | `∀x A → A[x := t]`, `t` free for `x`             |
//! | `forall_dist`    | `∀x (A → B) → (∀x A → ∀x B)`                     |
//! | `forall_vacuous` | `A → ∀x A`, `x` not free in `A`                  |
//!
//! Further schemas are patterns in prefix text where `?Name` in formula
//! position is a formula metavariable and in term position a term
//! metavariable, e.g. `(-> ?A (or ?A ?B))`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcode::SeqCode;
use crate::substitution::{fixed_point_with, DiagOptions, FixedPoint};
use crate::syntax::text::{formula_from_sexpr, parse_formula_text, parse_var, read_sexpr, term_from_sexpr, SExpr};
use crate::syntax::{decode_formula, decode_proof, encode_formula, encode_proof, Alphabet, Formula, Term};

/// `S` instances are generated for the search only when the universe is
/// at most this large (the instance count is cubic).
pub const S_INSTANCE_UNIVERSE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    K,
    S,
    Contraposition,
    EqRefl,
    EqSubst,
    ForallInst,
    ForallDist,
    ForallVacuous,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::K,
        Builtin::S,
        Builtin::Contraposition,
        Builtin::EqRefl,
        Builtin::EqSubst,
        Builtin::ForallInst,
        Builtin::ForallDist,
        Builtin::ForallVacuous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::K => "K",
            Builtin::S => "S",
            Builtin::Contraposition => "contraposition",
            Builtin::EqRefl => "eq_refl",
            Builtin::EqSubst => "eq_subst",
            Builtin::ForallInst => "forall_inst",
            Builtin::ForallDist => "forall_dist",
            Builtin::ForallVacuous => "forall_vacuous",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn matches(self, f: &Formula) -> bool {
        match self {
            Builtin::K => K_PATTERN.matches(f),
            Builtin::S => S_PATTERN.matches(f),
            Builtin::Contraposition => CONTRAPOSITION_PATTERN.matches(f),
            Builtin::EqRefl => matches!(f, Formula::Eq(a, b) if a == b),
            Builtin::EqSubst => match f {
                Formula::Imp(h, rest) => match (&**h, &**rest) {
                    (Formula::Eq(s, t), Formula::Imp(a, b)) => eq_subst_walk(a, b, s, t, &mut Vec::new()),
                    _ => false,
                },
                _ => false,
            },
            Builtin::ForallInst => match f {
                Formula::Imp(h, b) => match &**h {
                    Formula::Forall(x, a) => inst_formula(a, b, *x, &mut Vec::new(), &mut None),
                    _ => false,
                },
                _ => false,
            },
            Builtin::ForallDist => match f {
                Formula::Imp(h, rest) => match (&**h, &**rest) {
                    (Formula::Forall(x, body), Formula::Imp(l, r)) => match (&**body, &**l, &**r) {
                        (Formula::Imp(a, b), Formula::Forall(y, a2), Formula::Forall(z, b2)) => {
                            x == y && y == z && a == a2 && b == b2
                        }
                        _ => false,
                    },
                    _ => false,
                },
                _ => false,
            },
            Builtin::ForallVacuous => match f {
                Formula::Imp(a, q) => match &**q {
                    Formula::Forall(x, a2) => a == a2 && !a.has_free(*x),
                    _ => false,
                },
                _ => false,
            },
        }
    }
}

static K_PATTERN: LazyLock<Pattern> = LazyLock::new(|| Pattern::parse("(-> ?A (-> ?B ?A))").expect("built-in pattern"));

static S_PATTERN: LazyLock<Pattern> = LazyLock::new(|| {
    Pattern::parse("(-> (-> ?A (-> ?B ?C)) (-> (-> ?A ?B) (-> ?A ?C)))").expect("built-in pattern")
});

static CONTRAPOSITION_PATTERN: LazyLock<Pattern> =
    LazyLock::new(|| Pattern::parse("(-> (-> (not ?B) (not ?A)) (-> ?A ?B))").expect("built-in pattern"));

fn term_vars(t: &Term) -> BTreeSet<u64> {
    let mut vs = BTreeSet::new();
    t.vars(&mut vs);
    vs
}

fn free_for(t: &Term, bound: &[u64]) -> bool {
    term_vars(t).iter().all(|v| !bound.contains(v))
}

/// `a`, `b` agree except where `a` has `s` and `b` has `t`, at positions
/// where neither term's variables are bound.
fn eq_subst_walk(a: &Formula, b: &Formula, s: &Term, t: &Term, bound: &mut Vec<u64>) -> bool {
    fn terms(a: &Term, b: &Term, s: &Term, t: &Term, bound: &[u64]) -> bool {
        if a == b {
            return true;
        }
        if a == s && b == t && free_for(s, bound) && free_for(t, bound) {
            return true;
        }
        match (a, b) {
            (Term::Succ(x), Term::Succ(y)) | (Term::Diag(x), Term::Diag(y)) => terms(x, y, s, t, bound),
            (Term::Plus(x1, x2), Term::Plus(y1, y2)) | (Term::Times(x1, x2), Term::Times(y1, y2)) => {
                terms(x1, y1, s, t, bound) && terms(x2, y2, s, t, bound)
            }
            _ => false,
        }
    }
    match (a, b) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => terms(a1, b1, s, t, bound) && terms(a2, b2, s, t, bound),
        (Formula::Prov(x), Formula::Prov(y)) => terms(x, y, s, t, bound),
        (Formula::Not(x), Formula::Not(y)) => eq_subst_walk(x, y, s, t, bound),
        (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2)) => {
            eq_subst_walk(a1, b1, s, t, bound) && eq_subst_walk(a2, b2, s, t, bound)
        }
        (Formula::Forall(v, x), Formula::Forall(w, y)) | (Formula::Exists(v, x), Formula::Exists(w, y)) if v == w => {
            bound.push(*v);
            let ok = eq_subst_walk(x, y, s, t, bound);
            bound.pop();
            ok
        }
        _ => false,
    }
}

/// `b` is `a[x := t]` for a single `t` free for `x`; `t` is fixed at the
/// first free occurrence.
fn inst_term<'a>(a: &Term, b: &'a Term, x: u64, bound: &[u64], found: &mut Option<&'a Term>) -> bool {
    match (a, b) {
        (Term::Var(v), _) if *v == x && !bound.contains(&x) => {
            if !free_for(b, bound) {
                return false;
            }
            match found {
                Some(t) => *t == b,
                None => {
                    *found = Some(b);
                    true
                }
            }
        }
        (Term::Zero, Term::Zero) => true,
        (Term::Var(v), Term::Var(w)) => v == w,
        (Term::Succ(p), Term::Succ(q)) | (Term::Diag(p), Term::Diag(q)) => inst_term(p, q, x, bound, found),
        (Term::Plus(p1, p2), Term::Plus(q1, q2)) | (Term::Times(p1, p2), Term::Times(q1, q2)) => {
            inst_term(p1, q1, x, bound, found) && inst_term(p2, q2, x, bound, found)
        }
        _ => false,
    }
}

fn inst_formula<'a>(a: &Formula, b: &'a Formula, x: u64, bound: &mut Vec<u64>, found: &mut Option<&'a Term>) -> bool {
    match (a, b) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
            inst_term(a1, b1, x, bound, found) && inst_term(a2, b2, x, bound, found)
        }
        (Formula::Prov(p), Formula::Prov(q)) => inst_term(p, q, x, bound, found),
        (Formula::Not(p), Formula::Not(q)) => inst_formula(p, q, x, bound, found),
        (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2)) => {
            inst_formula(a1, b1, x, bound, found) && inst_formula(a2, b2, x, bound, found)
        }
        (Formula::Forall(v, p), Formula::Forall(w, q)) | (Formula::Exists(v, p), Formula::Exists(w, q)) if v == w => {
            bound.push(*v);
            let ok = inst_formula(p, q, x, bound, found);
            bound.pop();
            ok
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternTerm {
    Meta(String),
    Zero,
    Var(u64),
    Succ(Box<PatternTerm>),
    Plus(Box<PatternTerm>, Box<PatternTerm>),
    Times(Box<PatternTerm>, Box<PatternTerm>),
    Diag(Box<PatternTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternFormula {
    Meta(String),
    Eq(PatternTerm, PatternTerm),
    Prov(PatternTerm),
    Not(Box<PatternFormula>),
    Imp(Box<PatternFormula>, Box<PatternFormula>),
    And(Box<PatternFormula>, Box<PatternFormula>),
    Or(Box<PatternFormula>, Box<PatternFormula>),
    Forall(u64, Box<PatternFormula>),
    Exists(u64, Box<PatternFormula>),
}

impl PatternTerm {
    fn lift(t: &Term) -> PatternTerm {
        match t {
            Term::Zero => PatternTerm::Zero,
            Term::Var(v) => PatternTerm::Var(*v),
            Term::Succ(a) => PatternTerm::Succ(Box::new(Self::lift(a))),
            Term::Diag(a) => PatternTerm::Diag(Box::new(Self::lift(a))),
            Term::Plus(a, b) => PatternTerm::Plus(Box::new(Self::lift(a)), Box::new(Self::lift(b))),
            Term::Times(a, b) => PatternTerm::Times(Box::new(Self::lift(a)), Box::new(Self::lift(b))),
        }
    }
}

fn meta_name(e: &SExpr) -> Option<&str> {
    match e {
        SExpr::Atom(a, _) => a.strip_prefix('?').filter(|n| !n.is_empty()),
        SExpr::List(..) => None,
    }
}

fn pattern_term(e: &SExpr) -> Result<PatternTerm> {
    if let Some(name) = meta_name(e) {
        return Ok(PatternTerm::Meta(name.to_string()));
    }
    let SExpr::List(items, _) = e else {
        return Ok(PatternTerm::lift(&term_from_sexpr(e)?));
    };
    if items.iter().skip(1).all(|x| !contains_meta(x)) {
        return Ok(PatternTerm::lift(&term_from_sexpr(e)?));
    }
    let head = match items.first() {
        Some(SExpr::Atom(h, _)) => h.as_str(),
        _ => return Ok(PatternTerm::lift(&term_from_sexpr(e)?)),
    };
    let arg = |i: usize| -> Result<Box<PatternTerm>> {
        items.get(i).map(pattern_term).transpose()?.map(Box::new).ok_or_else(|| pattern_err(e, "missing argument"))
    };
    let (n, t) = match head {
        "S" => (1, PatternTerm::Succ(arg(1)?)),
        "diag" | "diagfn" => (1, PatternTerm::Diag(arg(1)?)),
        "+" => (2, PatternTerm::Plus(arg(1)?, arg(2)?)),
        "*" | "·" => (2, PatternTerm::Times(arg(1)?, arg(2)?)),
        _ => return Err(pattern_err(e, &format!("unknown term operator {head:?}"))),
    };
    if items.len() != n + 1 {
        return Err(pattern_err(e, &format!("{head} takes {n} argument(s)")));
    }
    Ok(t)
}

fn contains_meta(e: &SExpr) -> bool {
    match e {
        SExpr::Atom(a, _) => a.starts_with('?'),
        SExpr::List(items, _) => items.iter().any(contains_meta),
    }
}

fn pattern_err(e: &SExpr, message: &str) -> Error {
    Error::Text { offset: e.offset(), message: message.to_string() }
}

fn pattern_formula(e: &SExpr) -> Result<PatternFormula> {
    if let Some(name) = meta_name(e) {
        return Ok(PatternFormula::Meta(name.to_string()));
    }
    if !contains_meta(e) {
        return Ok(PatternFormula::lift(&formula_from_sexpr(e)?));
    }
    let SExpr::List(items, _) = e else {
        return Err(pattern_err(e, "expected a formula"));
    };
    let head = match items.first() {
        Some(SExpr::Atom(h, _)) => h.as_str(),
        _ => return Err(pattern_err(e, "expected an operator")),
    };
    let want = |n: usize| -> Result<()> {
        if items.len() == n + 1 {
            Ok(())
        } else {
            Err(pattern_err(e, &format!("{head} takes {n} argument(s)")))
        }
    };
    let f = |i: usize| pattern_formula(&items[i]).map(Box::new);
    Ok(match head {
        "=" => {
            want(2)?;
            PatternFormula::Eq(pattern_term(&items[1])?, pattern_term(&items[2])?)
        }
        "Prov" => {
            want(1)?;
            PatternFormula::Prov(pattern_term(&items[1])?)
        }
        "not" | "¬" | "~" => {
            want(1)?;
            PatternFormula::Not(f(1)?)
        }
        "->" | "→" => {
            want(2)?;
            PatternFormula::Imp(f(1)?, f(2)?)
        }
        "and" | "∧" | "&" => {
            want(2)?;
            PatternFormula::And(f(1)?, f(2)?)
        }
        "or" | "∨" | "|" => {
            want(2)?;
            PatternFormula::Or(f(1)?, f(2)?)
        }
        "forall" | "∀" | "exists" | "∃" => {
            want(2)?;
            let v = match &items[1] {
                SExpr::Atom(a, _) => parse_var(a).ok_or_else(|| pattern_err(&items[1], "expected a variable vN"))?,
                other => return Err(pattern_err(other, "expected a variable vN")),
            };
            if matches!(head, "forall" | "∀") {
                PatternFormula::Forall(v, f(2)?)
            } else {
                PatternFormula::Exists(v, f(2)?)
            }
        }
        _ => return Err(pattern_err(e, &format!("unknown formula operator {head:?}"))),
    })
}

impl PatternFormula {
    fn lift(f: &Formula) -> PatternFormula {
        let b = |x: &Formula| Box::new(Self::lift(x));
        match f {
            Formula::Eq(a, c) => PatternFormula::Eq(PatternTerm::lift(a), PatternTerm::lift(c)),
            Formula::Prov(t) => PatternFormula::Prov(PatternTerm::lift(t)),
            Formula::Not(a) => PatternFormula::Not(b(a)),
            Formula::Imp(a, c) => PatternFormula::Imp(b(a), b(c)),
            Formula::And(a, c) => PatternFormula::And(b(a), b(c)),
            Formula::Or(a, c) => PatternFormula::Or(b(a), b(c)),
            Formula::Forall(v, a) => PatternFormula::Forall(*v, b(a)),
            Formula::Exists(v, a) => PatternFormula::Exists(*v, b(a)),
        }
    }
}

#[derive(Default)]
struct Bindings<'a> {
    formulas: HashMap<&'a str, &'a Formula>,
    terms: HashMap<&'a str, &'a Term>,
}

fn bind<'a, T: PartialEq>(map: &mut HashMap<&'a str, &'a T>, name: &'a str, value: &'a T) -> bool {
    match map.get(name) {
        Some(prev) => *prev == value,
        None => {
            map.insert(name, value);
            true
        }
    }
}

fn match_term<'a>(p: &'a PatternTerm, t: &'a Term, env: &mut Bindings<'a>) -> bool {
    match (p, t) {
        (PatternTerm::Meta(n), _) => bind(&mut env.terms, n, t),
        (PatternTerm::Zero, Term::Zero) => true,
        (PatternTerm::Var(v), Term::Var(w)) => v == w,
        (PatternTerm::Succ(p), Term::Succ(t)) | (PatternTerm::Diag(p), Term::Diag(t)) => match_term(p, t, env),
        (PatternTerm::Plus(p1, p2), Term::Plus(t1, t2)) | (PatternTerm::Times(p1, p2), Term::Times(t1, t2)) => {
            match_term(p1, t1, env) && match_term(p2, t2, env)
        }
        _ => false,
    }
}

fn match_formula<'a>(p: &'a PatternFormula, f: &'a Formula, env: &mut Bindings<'a>) -> bool {
    match (p, f) {
        (PatternFormula::Meta(n), _) => bind(&mut env.formulas, n, f),
        (PatternFormula::Eq(p1, p2), Formula::Eq(t1, t2)) => match_term(p1, t1, env) && match_term(p2, t2, env),
        (PatternFormula::Prov(p), Formula::Prov(t)) => match_term(p, t, env),
        (PatternFormula::Not(p), Formula::Not(g)) => match_formula(p, g, env),
        (PatternFormula::Imp(p1, p2), Formula::Imp(g1, g2))
        | (PatternFormula::And(p1, p2), Formula::And(g1, g2))
        | (PatternFormula::Or(p1, p2), Formula::Or(g1, g2)) => match_formula(p1, g1, env) && match_formula(p2, g2, env),
        (PatternFormula::Forall(v, p), Formula::Forall(w, g)) | (PatternFormula::Exists(v, p), Formula::Exists(w, g)) => {
            v == w && match_formula(p, g, env)
        }
        _ => false,
    }
}

/// A user-defined schema: a formula pattern with metavariables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    source: String,
    root: PatternFormula,
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern> {
        let root = pattern_formula(&read_sexpr(text)?)?;
        let mut fmetas = BTreeSet::new();
        let mut tmetas = BTreeSet::new();
        collect_metas(&root, &mut fmetas, &mut tmetas);
        if let Some(clash) = fmetas.intersection(&tmetas).next() {
            return Err(Error::Config(format!("metavariable ?{clash} used as both formula and term")));
        }
        Ok(Pattern { source: text.trim().to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Syntactic unification of the metavariables against `f`.
    pub fn matches(&self, f: &Formula) -> bool {
        match_formula(&self.root, f, &mut Bindings::default())
    }
}

fn collect_metas(p: &PatternFormula, fm: &mut BTreeSet<String>, tm: &mut BTreeSet<String>) {
    fn term(p: &PatternTerm, tm: &mut BTreeSet<String>) {
        match p {
            PatternTerm::Meta(n) => {
                tm.insert(n.clone());
            }
            PatternTerm::Zero | PatternTerm::Var(_) => {}
            PatternTerm::Succ(a) | PatternTerm::Diag(a) => term(a, tm),
            PatternTerm::Plus(a, b) | PatternTerm::Times(a, b) => {
                term(a, tm);
                term(b, tm);
            }
        }
    }
    match p {
        PatternFormula::Meta(n) => {
            fm.insert(n.clone());
        }
        PatternFormula::Eq(a, b) => {
            term(a, tm);
            term(b, tm);
        }
        PatternFormula::Prov(a) => term(a, tm),
        PatternFormula::Not(a) | PatternFormula::Forall(_, a) | PatternFormula::Exists(_, a) => collect_metas(a, fm, tm),
        PatternFormula::Imp(a, b) | PatternFormula::And(a, b) | PatternFormula::Or(a, b) => {
            collect_metas(a, fm, tm);
            collect_metas(b, fm, tm);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schema {
    Builtin(Builtin),
    Pattern { name: String, pattern: Pattern },
}

impl Schema {
    pub fn name(&self) -> &str {
        match self {
            Schema::Builtin(b) => b.name(),
            Schema::Pattern { name, .. } => name,
        }
    }

    pub fn matches(&self, f: &Formula) -> bool {
        match self {
            Schema::Builtin(b) => b.matches(f),
            Schema::Pattern { pattern, .. } => pattern.matches(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rules {
    pub modus_ponens: bool,
    pub generalization: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Self { modus_ponens: true, generalization: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryConfig {
    pub schemas: Vec<Schema>,
    pub extra_axioms: Vec<Formula>,
    pub rules: Rules,
    /// Name of the provability predicate; the alphabet has one, `Prov`.
    pub prov_symbol: String,
}

impl Default for TheoryConfig {
    fn default() -> Self {
        Self {
            schemas: Builtin::ALL.into_iter().map(Schema::Builtin).collect(),
            extra_axioms: Vec::new(),
            rules: Rules::default(),
            prov_symbol: "Prov".to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternFile {
    name: String,
    pattern: String,
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct TheoryFile {
    schemas: Vec<String>,
    patterns: Vec<PatternFile>,
    extra_axioms: Vec<String>,
    rules: Rules,
    prov_symbol: String,
}

impl Default for TheoryFile {
    fn default() -> Self {
        Self {
            schemas: Builtin::ALL.iter().map(|b| b.name().to_string()).collect(),
            patterns: Vec::new(),
            extra_axioms: Vec::new(),
            rules: Rules::default(),
            prov_symbol: "Prov".to_string(),
        }
    }
}

impl TheoryConfig {
    /// A theory with no schemas and no rules.
    pub fn empty() -> Self {
        Self {
            schemas: Vec::new(),
            extra_axioms: Vec::new(),
            rules: Rules { modus_ponens: false, generalization: false },
            prov_symbol: "Prov".to_string(),
        }
    }

    pub fn with_extra_axioms(mut self, axioms: impl IntoIterator<Item = Formula>) -> Self {
        self.extra_axioms.extend(axioms);
        self
    }

    pub fn has_builtin(&self, b: Builtin) -> bool {
        self.schemas.contains(&Schema::Builtin(b))
    }

    /// Reads `{"schemas": [...], "patterns": [{"name", "pattern"}],
    /// "extra_axioms": [...], "rules": {...}, "prov_symbol": "Prov"}`;
    /// every field is optional.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TheoryFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if file.prov_symbol != "Prov" {
            return Err(Error::Config(format!("unknown provability predicate {:?}", file.prov_symbol)));
        }
        let mut schemas = Vec::new();
        for name in &file.schemas {
            let b = Builtin::from_name(name).ok_or_else(|| Error::Config(format!("unknown schema {name:?}")))?;
            schemas.push(Schema::Builtin(b));
        }
        for p in &file.patterns {
            schemas.push(Schema::Pattern { name: p.name.clone(), pattern: Pattern::parse(&p.pattern)? });
        }
        let extra_axioms = file
            .extra_axioms
            .iter()
            .map(|s| parse_formula_text(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { schemas, extra_axioms, rules: file.rules, prov_symbol: file.prov_symbol })
    }

    pub fn to_json(&self) -> String {
        let mut file = TheoryFile {
            schemas: Vec::new(),
            patterns: Vec::new(),
            extra_axioms: self.extra_axioms.iter().map(ToString::to_string).collect(),
            rules: self.rules,
            prov_symbol: self.prov_symbol.clone(),
        };
        for s in &self.schemas {
            match s {
                Schema::Builtin(b) => file.schemas.push(b.name().to_string()),
                Schema::Pattern { name, pattern } => {
                    file.patterns.push(PatternFile { name: name.clone(), pattern: pattern.source().to_string() })
                }
            }
        }
        serde_json::to_string_pretty(&file).expect("theory serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AxiomRef {
    Schema(String),
    /// Index into `extra_axioms`.
    Extra(usize),
}

/// Step indices are 0-based and refer to strictly earlier steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(AxiomRef),
    /// From `A` at `minor` and `A → B` at `major`.
    ModusPonens { minor: usize, major: usize },
    Generalization { premise: usize, var: u64 },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(AxiomRef::Schema(name)) => write!(f, "axiom {name}"),
            Justification::Axiom(AxiomRef::Extra(i)) => write!(f, "extra axiom {i}"),
            Justification::ModusPonens { minor, major } => write!(f, "mp({minor},{major})"),
            Justification::Generalization { premise, var } => write!(f, "gen({premise},v{var})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn formulas(&self) -> Vec<Formula> {
        self.steps.iter().map(|s| s.formula.clone()).collect()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn encode(&self, alphabet: &Alphabet) -> Result<SeqCode> {
        encode_proof(&self.formulas(), alphabet)
    }
}

pub fn axiom_ref(f: &Formula, t: &TheoryConfig) -> Option<AxiomRef> {
    if let Some(i) = t.extra_axioms.iter().position(|a| a == f) {
        return Some(AxiomRef::Extra(i));
    }
    t.schemas.iter().find(|s| s.matches(f)).map(|s| AxiomRef::Schema(s.name().to_string()))
}

pub fn is_axiom(f: &Formula, t: &TheoryConfig) -> bool {
    axiom_ref(f, t).is_some()
}

/// `q` is `p → r`.
pub fn check_mp(p: &Formula, q: &Formula, r: &Formula) -> bool {
    matches!(q, Formula::Imp(a, b) if **a == *p && **b == *r)
}

/// [`check_mp`] on decoded codes; false if any code is not a wff.
pub fn check_mp_codes(p: &SeqCode, q: &SeqCode, r: &SeqCode, alphabet: &Alphabet) -> bool {
    match (decode_formula(p, alphabet), decode_formula(q, alphabet), decode_formula(r, alphabet)) {
        (Ok(p), Ok(q), Ok(r)) => check_mp(&p, &q, &r),
        _ => false,
    }
}

/// Reconstructs a justification for every step, preferring axioms, then
/// modus ponens, then generalization, with the earliest premises.
pub fn justify(formulas: &[Formula], t: &TheoryConfig) -> Option<Proof> {
    let mut first: HashMap<&Formula, usize> = HashMap::new();
    let mut steps = Vec::with_capacity(formulas.len());
    for (k, f) in formulas.iter().enumerate() {
        let justification = axiom_ref(f, t)
            .map(Justification::Axiom)
            .or_else(|| {
                if !t.rules.modus_ponens {
                    return None;
                }
                formulas[..k].iter().enumerate().find_map(|(j, g)| match g {
                    Formula::Imp(a, b) if **b == *f => {
                        first.get(&**a).map(|&i| Justification::ModusPonens { minor: i, major: j })
                    }
                    _ => None,
                })
            })
            .or_else(|| match f {
                Formula::Forall(x, a) if t.rules.generalization => {
                    first.get(&**a).map(|&i| Justification::Generalization { premise: i, var: *x })
                }
                _ => None,
            })?;
        first.entry(f).or_insert(k);
        steps.push(ProofStep { formula: f.clone(), justification });
    }
    Some(Proof { steps })
}

/// Checks explicit justifications: premises precede the step and the
/// rule's shape matches.
pub fn verify_proof(p: &Proof, t: &TheoryConfig) -> bool {
    p.steps.iter().enumerate().all(|(k, step)| match &step.justification {
        Justification::Axiom(AxiomRef::Extra(i)) => t.extra_axioms.get(*i) == Some(&step.formula),
        Justification::Axiom(AxiomRef::Schema(name)) => {
            t.schemas.iter().any(|s| s.name() == name && s.matches(&step.formula))
        }
        Justification::ModusPonens { minor, major } => {
            t.rules.modus_ponens
                && *minor < k
                && *major < k
                && check_mp(&p.steps[*minor].formula, &p.steps[*major].formula, &step.formula)
        }
        Justification::Generalization { premise, var } => {
            t.rules.generalization
                && *premise < k
                && matches!(&step.formula, Formula::Forall(x, a) if x == var && **a == p.steps[*premise].formula)
        }
    })
}

/// True iff the code decodes to a nonempty proof whose every step is
/// justified. Total: malformed codes give false.
pub fn check_proof(proof_code: &SeqCode, t: &TheoryConfig, alphabet: &Alphabet) -> bool {
    match decode_proof(proof_code, alphabet) {
        Ok(formulas) if !formulas.is_empty() => justify(&formulas, t).is_some(),
        _ => false,
    }
}

struct Search<'a> {
    theory: &'a TheoryConfig,
    alphabet: &'a Alphabet,
    codes: HashMap<Formula, SeqCode>,
}

impl Search<'_> {
    fn code(&mut self, f: &Formula) -> SeqCode {
        if let Some(c) = self.codes.get(f) {
            return c.clone();
        }
        let c = encode_formula(f, self.alphabet);
        self.codes.insert(f.clone(), c.clone());
        c
    }

    /// Fewer steps first, then lexicographic on step codes.
    fn better(&mut self, a: &[Formula], b: &[Formula]) -> bool {
        if a.len() != b.len() {
            return a.len() < b.len();
        }
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return self.code(x) < self.code(y);
            }
        }
        false
    }
}

fn merge(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let seen: HashSet<&Formula> = a.iter().collect();
    let mut out = a.to_vec();
    out.extend(b.iter().filter(|f| !seen.contains(f)).cloned());
    out
}

fn search_seeds(universe: &BTreeSet<Formula>, t: &TheoryConfig) -> BTreeSet<Formula> {
    let mut seeds: BTreeSet<Formula> = universe.iter().filter(|f| is_axiom(f, t)).cloned().collect();
    seeds.extend(t.extra_axioms.iter().cloned());
    let u: Vec<&Formula> = universe.iter().collect();
    if t.has_builtin(Builtin::K) {
        for a in &u {
            for b in &u {
                seeds.insert(Formula::imp((*a).clone(), Formula::imp((*b).clone(), (*a).clone())));
            }
        }
    }
    if t.has_builtin(Builtin::Contraposition) {
        for a in &u {
            for b in &u {
                let premise = Formula::imp(Formula::not((*b).clone()), Formula::not((*a).clone()));
                seeds.insert(Formula::imp(premise, Formula::imp((*a).clone(), (*b).clone())));
            }
        }
    }
    if t.has_builtin(Builtin::S) && u.len() <= S_INSTANCE_UNIVERSE_LIMIT {
        for a in &u {
            for b in &u {
                for c in &u {
                    let (a, b, c) = ((*a).clone(), (*b).clone(), (*c).clone());
                    let left = Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()));
                    let right = Formula::imp(Formula::imp(a.clone(), b), Formula::imp(a, c));
                    seeds.insert(Formula::imp(left, right));
                }
            }
        }
    }
    seeds
}

/// Bounded proof search over a finite universe: subformulas of the target
/// and extra axioms, plus `K`, contraposition and (for small universes)
/// `S` instances over it. Forward chaining keeps the best proof per
/// formula until a fixpoint; the bound is applied to the final proof, so
/// success at `b` implies success at every larger bound.
pub fn prov_bounded_formula(target: &Formula, bound: usize, t: &TheoryConfig, alphabet: &Alphabet) -> Option<Proof> {
    let mut universe: BTreeSet<Formula> = target.subformulas().into_iter().cloned().collect();
    for a in &t.extra_axioms {
        universe.extend(a.subformulas().into_iter().cloned());
    }
    let mut search = Search { theory: t, alphabet, codes: HashMap::new() };
    let mut best: BTreeMap<Formula, Vec<Formula>> =
        search_seeds(&universe, t).into_iter().map(|f| (f.clone(), vec![f])).collect();

    loop {
        let mut updates: Vec<(Formula, Vec<Formula>)> = Vec::new();
        if search.theory.rules.modus_ponens {
            for (f, pf) in &best {
                let Formula::Imp(a, b) = f else { continue };
                let Some(pa) = best.get(&**a) else { continue };
                let orders = [merge(pa, pf), merge(pf, pa)];
                for mut cand in orders {
                    if cand.contains(&**b) {
                        continue;
                    }
                    cand.push((**b).clone());
                    let improves = match best.get(&**b) {
                        Some(cur) => search.better(&cand, cur),
                        None => true,
                    };
                    if improves {
                        updates.push(((**b).clone(), cand));
                    }
                }
            }
        }
        if search.theory.rules.generalization {
            for g in &universe {
                let Formula::Forall(_, a) = g else { continue };
                let Some(pa) = best.get(&**a) else { continue };
                if pa.contains(g) {
                    continue;
                }
                let mut cand = pa.clone();
                cand.push(g.clone());
                let improves = match best.get(g) {
                    Some(cur) => search.better(&cand, cur),
                    None => true,
                };
                if improves {
                    updates.push((g.clone(), cand));
                }
            }
        }
        let mut changed = false;
        for (f, cand) in updates {
            let improves = match best.get(&f) {
                Some(cur) => search.better(&cand, cur),
                None => true,
            };
            if improves {
                best.insert(f, cand);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let found = best.get(target).filter(|p| p.len() <= bound)?;
    justify(found, t)
}

/// Code-level [`prov_bounded_formula`]; the target must be a wff code.
pub fn prov_bounded(target: &SeqCode, bound: usize, t: &TheoryConfig, alphabet: &Alphabet) -> Result<Option<SeqCode>> {
    let f = decode_formula(target, alphabet).map_err(|_| Error::NotWffCode)?;
    prov_bounded_formula(&f, bound, t, alphabet).map(|p| p.encode(alphabet)).transpose()
}

/// `G = fixed_point(¬Prov(v0))`, so `⌜G⌝ = diag(m)`.
pub fn godel_sentence(t: &TheoryConfig, alphabet: &Alphabet) -> Result<FixedPoint> {
    godel_sentence_with(t, alphabet, &DiagOptions::default())
}

pub fn godel_sentence_with(t: &TheoryConfig, alphabet: &Alphabet, opts: &DiagOptions) -> Result<FixedPoint> {
    if t.prov_symbol != "Prov" {
        return Err(Error::Config(format!("unknown provability predicate {:?}", t.prov_symbol)));
    }
    let phi = Formula::not(Formula::prov(Term::Var(opts.target_var)));
    fixed_point_with(&encode_formula(&phi, alphabet), alphabet, opts)
}
