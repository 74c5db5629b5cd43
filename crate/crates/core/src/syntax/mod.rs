//! Symbol numeration, Polish-notation terms and formulas of arithmetic, and
//! their codes.
//!
//! A string `s_1 … s_m` is coded as the sequence code of its symbol
//! numbers. Base symbols get fixed codes below the offset `k`; variable
//! `v_i` gets `i + k`. Proofs are sequences of formula codes, so their
//! element values are themselves (large) codes.

mod ast;
pub mod random;
pub mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use ast::{parse, parse_formula, parse_term, Category, Formula, Syntax, Term};

use crate::error::{Error, Result};
use crate::numeric::Nat;
use crate::seqcode::{seq_decode, seq_encode, SeqCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Not,
    Imp,
    And,
    Or,
    Forall,
    Exists,
    Eq,
    Zero,
    Succ,
    Plus,
    Times,
    Diag,
    Prov,
    Var(u64),
}

impl Symbol {
    /// Every non-variable symbol, in default-table order.
    pub const BASE: [Symbol; 13] = [
        Symbol::Not,
        Symbol::Imp,
        Symbol::And,
        Symbol::Or,
        Symbol::Forall,
        Symbol::Exists,
        Symbol::Eq,
        Symbol::Zero,
        Symbol::Succ,
        Symbol::Plus,
        Symbol::Times,
        Symbol::Diag,
        Symbol::Prov,
    ];

    /// Name used in alphabet files. `None` for variables.
    pub fn name(self) -> Option<&'static str> {
        Some(match self {
            Symbol::Not => "¬",
            Symbol::Imp => "→",
            Symbol::And => "∧",
            Symbol::Or => "∨",
            Symbol::Forall => "∀",
            Symbol::Exists => "∃",
            Symbol::Eq => "=",
            Symbol::Zero => "0",
            Symbol::Succ => "S",
            Symbol::Plus => "+",
            Symbol::Times => "·",
            Symbol::Diag => "diagfn",
            Symbol::Prov => "Prov",
            Symbol::Var(_) => return None,
        })
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::BASE.into_iter().find(|s| s.name() == Some(name))
    }

    fn base_slot(self) -> Option<usize> {
        Symbol::BASE.iter().position(|&s| s == self)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var(i) => write!(f, "v{i}"),
            s => f.write_str(s.name().expect("base symbol")),
        }
    }
}

/// Bijection between symbols and positive codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    base: [u64; 13],
    offset: u64,
    by_code: HashMap<u64, Symbol>,
}

#[derive(Serialize, Deserialize)]
struct AlphabetFile {
    symbols: BTreeMap<String, u64>,
    offset: u64,
}

impl Default for Alphabet {
    /// ¬ 1, → 2, ∧ 3, ∨ 4, ∀ 5, ∃ 6, = 7, 0 8, S 9, + 10, · 11, diagfn 12,
    /// Prov 13; offset 16.
    fn default() -> Self {
        Self::new([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13], 16).expect("default table is valid")
    }
}

impl Alphabet {
    /// `base[i]` is the code of `Symbol::BASE[i]`.
    pub fn new(base: [u64; 13], offset: u64) -> Result<Self> {
        if offset <= base.len() as u64 {
            return Err(Error::Config(format!("offset {offset} must exceed the {} base symbols", base.len())));
        }
        let mut by_code = HashMap::new();
        for (slot, &code) in base.iter().enumerate() {
            if code == 0 || code >= offset {
                return Err(Error::Config(format!(
                    "code {code} for {} must lie in 1..{offset}",
                    Symbol::BASE[slot]
                )));
            }
            if by_code.insert(code, Symbol::BASE[slot]).is_some() {
                return Err(Error::Config(format!("code {code} assigned twice")));
            }
        }
        Ok(Self { base, offset, by_code })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlphabetFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut base = [0u64; 13];
        let mut seen = 0;
        for (name, code) in &file.symbols {
            let sym = Symbol::from_name(name).ok_or_else(|| Error::Config(format!("unknown symbol {name:?}")))?;
            base[sym.base_slot().expect("base symbol")] = *code;
            seen += 1;
        }
        if seen != base.len() {
            let missing: Vec<String> = Symbol::BASE
                .iter()
                .filter(|s| !file.symbols.contains_key(s.name().unwrap()))
                .map(|s| s.to_string())
                .collect();
            return Err(Error::Config(format!("missing symbols: {}", missing.join(" "))));
        }
        Self::new(base, file.offset)
    }

    pub fn to_json(&self) -> String {
        let file = AlphabetFile {
            symbols: Symbol::BASE
                .iter()
                .zip(self.base)
                .map(|(s, c)| (s.name().unwrap().to_string(), c))
                .collect(),
            offset: self.offset,
        };
        serde_json::to_string_pretty(&file).expect("alphabet serializes")
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn code_of(&self, sym: Symbol) -> Nat {
        match sym {
            Symbol::Var(i) => Nat::from(i) + self.offset,
            s => Nat::from(self.base[s.base_slot().expect("base symbol")]),
        }
    }

    pub fn var_code(&self, i: u64) -> Nat {
        self.code_of(Symbol::Var(i))
    }

    /// `None` for 0, for unassigned codes below the offset, and for
    /// variable indices beyond 64 bits.
    pub fn symbol_of(&self, code: &Nat) -> Option<Symbol> {
        let c = code.to_u64()?;
        if c >= self.offset {
            return Some(Symbol::Var(c - self.offset));
        }
        self.by_code.get(&c).copied()
    }

    pub fn codes(&self, symbols: &[Symbol]) -> Vec<Nat> {
        symbols.iter().map(|&s| self.code_of(s)).collect()
    }
}

/// Maps codes back to symbols; positions in errors are 1-based.
pub fn symbols_from_codes(codes: &[Nat], alphabet: &Alphabet) -> Result<Vec<Symbol>> {
    codes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            alphabet
                .symbol_of(c)
                .ok_or_else(|| Error::InvalidSymbol { position: i + 1, value: c.clone() })
        })
        .collect()
}

pub fn encode_symbols(symbols: &[Symbol], alphabet: &Alphabet) -> SeqCode {
    seq_encode(&alphabet.codes(symbols))
}

/// `⌜x⌝`: flatten, number the symbols, sequence-code the result.
pub fn encode_syntax(x: &Syntax, alphabet: &Alphabet) -> SeqCode {
    encode_symbols(&x.symbols(), alphabet)
}

pub fn encode_formula(f: &Formula, alphabet: &Alphabet) -> SeqCode {
    encode_symbols(&f.symbols(), alphabet)
}

pub fn encode_term(t: &Term, alphabet: &Alphabet) -> SeqCode {
    encode_symbols(&t.symbols(), alphabet)
}

pub fn decode_symbols(c: &SeqCode, alphabet: &Alphabet) -> Result<Vec<Symbol>> {
    symbols_from_codes(&seq_decode(c)?, alphabet)
}

pub fn decode_syntax(c: &SeqCode, alphabet: &Alphabet) -> Result<Syntax> {
    parse(&decode_symbols(c, alphabet)?, None)
}

pub fn decode_formula(c: &SeqCode, alphabet: &Alphabet) -> Result<Formula> {
    parse_formula(&decode_symbols(c, alphabet)?)
}

pub fn decode_term(c: &SeqCode, alphabet: &Alphabet) -> Result<Term> {
    parse_term(&decode_symbols(c, alphabet)?)
}

pub fn is_wff_code(c: &SeqCode, alphabet: &Alphabet) -> bool {
    decode_formula(c, alphabet).is_ok()
}

pub fn is_term_code(c: &SeqCode, alphabet: &Alphabet) -> bool {
    decode_term(c, alphabet).is_ok()
}

fn two() -> Term {
    Term::succ(Term::succ(Term::Zero))
}

/// Binary-doubling numeral: `2j ↦ ·(SS0, j)`, `2j+1 ↦ S(·(SS0, j))`,
/// `1 ↦ S0`, `0 ↦ 0`. Length is linear in the bit length of `n`.
pub fn numeral(n: &Nat) -> Term {
    let bits = n.bits();
    if bits == 0 {
        return Term::Zero;
    }
    let mut t = Term::succ(Term::Zero);
    for bit in (0..bits - 1).rev() {
        t = Term::times(two(), t);
        if n.bit(bit) {
            t = Term::succ(t);
        }
    }
    t
}

/// Symbol string of [`numeral`], built without an intermediate tree.
pub fn numeral_symbols(n: &Nat) -> Vec<Symbol> {
    let bits = n.bits();
    if bits == 0 {
        return vec![Symbol::Zero];
    }
    let doubling = [Symbol::Times, Symbol::Succ, Symbol::Succ, Symbol::Zero];
    let mut out = Vec::with_capacity(5 * bits as usize);
    // outermost operator corresponds to the lowest bit
    for bit in 0..bits - 1 {
        if n.bit(bit) {
            out.push(Symbol::Succ);
        }
        out.extend_from_slice(&doubling);
    }
    out.extend_from_slice(&[Symbol::Succ, Symbol::Zero]);
    out
}

/// Nested code of a proof: the sequence of its formulas' codes.
pub fn encode_proof(formulas: &[Formula], alphabet: &Alphabet) -> Result<SeqCode> {
    let items = formulas
        .iter()
        .map(|f| encode_formula(f, alphabet).to_number())
        .collect::<Result<Vec<_>>>()?;
    Ok(seq_encode(&items))
}

pub fn decode_proof(c: &SeqCode, alphabet: &Alphabet) -> Result<Vec<Formula>> {
    seq_decode(c)?
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            decode_formula(&SeqCode::from_number(n), alphabet).map_err(|_| Error::NotWffElement { index: i + 1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;
    use crate::seqcode::seq_encode_u64;

    fn alpha() -> Alphabet {
        Alphabet::default()
    }

    fn eval(t: &Term) -> Nat {
        match t {
            Term::Zero => Nat::from(0u32),
            Term::Succ(a) => eval(a) + 1u32,
            Term::Plus(a, b) => eval(a) + eval(b),
            Term::Times(a, b) => eval(a) * eval(b),
            Term::Diag(_) | Term::Var(_) => panic!("not closed arithmetic"),
        }
    }

    #[test]
    fn default_table() {
        let a = alpha();
        assert_eq!(a.code_of(Symbol::Not), Nat::from(1u32));
        assert_eq!(a.code_of(Symbol::Prov), Nat::from(13u32));
        assert_eq!(a.var_code(0), Nat::from(16u32));
        assert_eq!(a.var_code(3), Nat::from(19u32));
        assert_eq!(a.symbol_of(&Nat::from(14u32)), None);
        assert_eq!(a.symbol_of(&Nat::from(0u32)), None);
        assert_eq!(a.symbol_of(&Nat::from(20u32)), Some(Symbol::Var(4)));
    }

    #[test]
    fn alphabet_json_roundtrip_and_validation() {
        let a = alpha();
        assert_eq!(Alphabet::from_json(&a.to_json()).unwrap(), a);
        assert!(Alphabet::from_json(r#"{"symbols":{"¬":1},"offset":16}"#).is_err());
        let dup = a.to_json().replace("\"∧\": 3", "\"∧\": 1");
        assert!(Alphabet::from_json(&dup).is_err());
        let low = a.to_json().replace("\"offset\": 16", "\"offset\": 13");
        assert!(Alphabet::from_json(&low).is_err());
    }

    #[test]
    fn flatten_examples() {
        let f = Formula::eq(Term::Zero, Term::Zero);
        assert_eq!(f.symbols(), vec![Symbol::Eq, Symbol::Zero, Symbol::Zero]);
        let g = Formula::forall(0, Formula::eq(Term::Var(0), Term::Var(0)));
        assert_eq!(
            g.symbols(),
            vec![Symbol::Forall, Symbol::Var(0), Symbol::Eq, Symbol::Var(0), Symbol::Var(0)]
        );
        assert_eq!(parse_formula(&g.symbols()).unwrap(), g);
    }

    #[test]
    fn parse_errors_are_positioned() {
        assert_eq!(
            parse(&[Symbol::Eq, Symbol::Zero], None),
            Err(Error::Parse { kind: ParseErrorKind::TruncatedInput, position: 3 })
        );
        assert_eq!(
            parse(&[Symbol::Eq, Symbol::Zero, Symbol::Zero, Symbol::Zero], None),
            Err(Error::Parse { kind: ParseErrorKind::TrailingSymbols, position: 4 })
        );
        assert_eq!(
            parse(&[Symbol::Eq, Symbol::Not], None),
            Err(Error::Parse { kind: ParseErrorKind::UnexpectedSymbol, position: 2 })
        );
        assert_eq!(
            parse(&[Symbol::Forall, Symbol::Zero, Symbol::Eq], None),
            Err(Error::Parse { kind: ParseErrorKind::UnexpectedSymbol, position: 2 })
        );
        assert_eq!(parse_formula(&[Symbol::Zero]).unwrap_err().position(), Some(1));
        assert!(parse(&[], None).is_err());
    }

    #[test]
    fn encode_eq_zero_zero() {
        let f = Formula::eq(Term::Zero, Term::Zero);
        assert_eq!(encode_formula(&f, &alpha()), seq_encode_u64(&[7, 8, 8]));
        assert_eq!(decode_formula(&seq_encode_u64(&[7, 8, 8]), &alpha()).unwrap(), f);
    }

    #[test]
    fn decode_errors() {
        let a = alpha();
        assert!(matches!(
            decode_syntax(&seq_encode_u64(&[7, 14, 8]), &a),
            Err(Error::InvalidSymbol { position: 2, .. })
        ));
        assert!(matches!(decode_syntax(&SeqCode::from_number(0u32.into()), &a), Err(Error::Parse { .. })));
        assert_eq!(decode_syntax(&SeqCode::from_number(1u32.into()), &a), Err(Error::NotASequenceCode));
    }

    #[test]
    fn category_predicates() {
        let a = alpha();
        let wff = encode_formula(&Formula::eq(Term::Zero, Term::Zero), &a);
        let term = encode_term(&Term::succ(Term::Zero), &a);
        assert!(is_wff_code(&wff, &a) && !is_term_code(&wff, &a));
        assert!(is_term_code(&term, &a) && !is_wff_code(&term, &a));
        let one = SeqCode::from_number(1u32.into());
        assert!(!is_wff_code(&one, &a) && !is_term_code(&one, &a));
    }

    #[test]
    fn numeral_examples() {
        assert_eq!(numeral(&0u32.into()), Term::Zero);
        assert_eq!(numeral(&1u32.into()), Term::succ(Term::Zero));
        let six = Term::times(two(), Term::succ(Term::times(two(), Term::succ(Term::Zero))));
        assert_eq!(numeral(&6u32.into()), six);
    }

    #[test]
    fn numerals_evaluate_to_their_value() {
        for v in 0..=10_000u32 {
            let t = numeral(&v.into());
            assert_eq!(eval(&t), Nat::from(v));
            assert_eq!(numeral_symbols(&v.into()), t.symbols());
        }
    }

    #[test]
    fn proof_codes_nest() {
        let a = alpha();
        assert_eq!(encode_proof(&[], &a).unwrap().to_number().unwrap(), Nat::from(0u32));
        let f = Formula::eq(Term::Zero, Term::Zero);
        let inner = encode_formula(&f, &a).to_number().unwrap();
        let code = encode_proof(std::slice::from_ref(&f), &a).unwrap();
        assert_eq!(code, seq_encode(&[inner]));
        assert_eq!(decode_proof(&code, &a).unwrap(), vec![f]);
        let bad = seq_encode(&[Nat::from(1u32)]);
        assert_eq!(decode_proof(&bad, &a), Err(Error::NotWffElement { index: 1 }));
    }

    #[test]
    fn variable_and_base_codes_are_disjoint() {
        let a = alpha();
        let max_base = Symbol::BASE.iter().map(|&s| a.code_of(s)).max().unwrap();
        assert!(a.var_code(0) > max_base);
    }
}
