//! Code-level substitution, the diagonal function, and the fixed-point
//! construction.
//!
//! `diag(n)` substitutes the *numeral* of `n` for the target variable in
//! the formula coded by `n`. The fixed point of `φ(x)` is built from
//! `θ(x) = φ(diagfn(x))` and `m = ⌜θ⌝`: the sentence `ψ = θ(numeral m)`
//! satisfies `⌜ψ⌝ = diag(m)`, which is checked as an identity of supports.

use crate::error::{Error, Result};
use crate::numeric::Nat;
use crate::seqcode::{seq_decode, seq_encode, SeqCode};
use crate::syntax::{
    decode_formula, decode_term, encode_formula, numeral_symbols, parse_formula, parse_term, symbols_from_codes,
    Alphabet, Formula, Term,
};

/// Default cap on the bit length of a numeral built by [`diag`].
pub const DEFAULT_NUMERAL_BIT_LIMIT: u64 = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRequest {
    pub formula_code: SeqCode,
    pub replacement_code: SeqCode,
    /// Index `i` of the variable `v_i` being replaced.
    pub target_var: u64,
}

impl SubRequest {
    pub fn new(formula_code: SeqCode, replacement_code: SeqCode) -> Self {
        Self { formula_code, replacement_code, target_var: 0 }
    }

    pub fn with_var(mut self, var: u64) -> Self {
        self.target_var = var;
        self
    }
}

fn wff_items(c: &SeqCode, alphabet: &Alphabet) -> Result<Vec<Nat>> {
    let items = seq_decode(c).map_err(|_| Error::NotWffCode)?;
    let symbols = symbols_from_codes(&items, alphabet).map_err(|_| Error::NotWffCode)?;
    parse_formula(&symbols).map_err(|_| Error::NotWffCode)?;
    Ok(items)
}

fn term_items(c: &SeqCode, alphabet: &Alphabet) -> Result<Vec<Nat>> {
    let items = seq_decode(c).map_err(|_| Error::NotTermCode)?;
    let symbols = symbols_from_codes(&items, alphabet).map_err(|_| Error::NotTermCode)?;
    parse_term(&symbols).map_err(|_| Error::NotTermCode)?;
    Ok(items)
}

/// Replaces every element equal to `target` by the whole `replacement` list.
pub(crate) fn splice(items: &[Nat], target: &Nat, replacement: &[Nat]) -> Vec<Nat> {
    let mut out = Vec::with_capacity(items.len());
    for a in items {
        if a == target {
            out.extend_from_slice(replacement);
        } else {
            out.push(a.clone());
        }
    }
    out
}

/// Symbol-level substitution: every occurrence of the target variable's
/// code, bound or free, is replaced by the term's symbol string, and the
/// result is re-encoded with fresh positions.
pub fn sub_z(req: &SubRequest, alphabet: &Alphabet) -> Result<SeqCode> {
    let items = wff_items(&req.formula_code, alphabet)?;
    let replacement = term_items(&req.replacement_code, alphabet)?;
    let target = alphabet.var_code(req.target_var);
    Ok(seq_encode(&splice(&items, &target, &replacement)))
}

/// Substitution of free occurrences only, through the syntax tree.
pub fn sub_free(req: &SubRequest, alphabet: &Alphabet) -> Result<SeqCode> {
    let f = decode_formula(&req.formula_code, alphabet).map_err(|_| Error::NotWffCode)?;
    let t = decode_term(&req.replacement_code, alphabet).map_err(|_| Error::NotTermCode)?;
    Ok(encode_formula(&f.substitute_free(req.target_var, &t), alphabet))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagOptions {
    pub target_var: u64,
    pub numeral_bit_limit: u64,
}

impl Default for DiagOptions {
    fn default() -> Self {
        Self { target_var: 0, numeral_bit_limit: DEFAULT_NUMERAL_BIT_LIMIT }
    }
}

fn numeral_codes(n: &SeqCode, alphabet: &Alphabet, limit: u64) -> Result<Vec<Nat>> {
    let estimate = n.bits_estimate();
    if estimate > Nat::from(limit) + 1u32 {
        let bits = u64::try_from(&estimate).unwrap_or(u64::MAX);
        return Err(Error::NumeralTooLarge { bits, limit });
    }
    let value = n.to_number()?;
    if value.bits() > limit {
        return Err(Error::NumeralTooLarge { bits: value.bits(), limit });
    }
    Ok(alphabet.codes(&numeral_symbols(&value)))
}

/// `Diag(n) = Sub_Z(n, ⌜numeral(n)⌝)`.
pub fn diag(n: &SeqCode, alphabet: &Alphabet) -> Result<SeqCode> {
    diag_with(n, alphabet, &DiagOptions::default())
}

pub fn diag_with(n: &SeqCode, alphabet: &Alphabet, opts: &DiagOptions) -> Result<SeqCode> {
    let items = wff_items(n, alphabet)?;
    let replacement = numeral_codes(n, alphabet, opts.numeral_bit_limit)?;
    let target = alphabet.var_code(opts.target_var);
    Ok(seq_encode(&splice(&items, &target, &replacement)))
}

#[derive(Clone, Debug)]
pub struct FixedPoint {
    /// `⌜ψ⌝`, support form.
    pub psi: SeqCode,
    /// `⌜θ⌝` where `θ(x) = φ(diagfn(x))`.
    pub m: SeqCode,
    pub theta: Formula,
    /// Occurrences of the target variable in `θ`.
    pub occurrences: usize,
    /// Symbol length of `numeral(m)`.
    pub numeral_len: usize,
}

/// Builds `ψ` with `⌜ψ⌝ = diag(m)` for the formula coded by `phi_code`.
pub fn fixed_point(phi_code: &SeqCode, alphabet: &Alphabet) -> Result<FixedPoint> {
    fixed_point_with(phi_code, alphabet, &DiagOptions::default())
}

pub fn fixed_point_with(phi_code: &SeqCode, alphabet: &Alphabet, opts: &DiagOptions) -> Result<FixedPoint> {
    let phi = decode_formula(phi_code, alphabet).map_err(|_| Error::NotWffCode)?;
    let x = opts.target_var;
    let theta = phi.substitute_free(x, &Term::diag(Term::Var(x)));
    let m = encode_formula(&theta, alphabet);
    let theta_items = seq_decode(&m)?;
    let replacement = numeral_codes(&m, alphabet, opts.numeral_bit_limit)?;
    let target = alphabet.var_code(x);
    let occurrences = theta_items.iter().filter(|a| **a == target).count();
    let psi = seq_encode(&splice(&theta_items, &target, &replacement));
    Ok(FixedPoint { psi, m, theta, occurrences, numeral_len: replacement.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcode::is_code;
    use crate::syntax::{encode_term, is_wff_code, numeral};
    use crate::syntax::text::parse_formula_text;

    fn a() -> Alphabet {
        Alphabet::default()
    }

    fn f(text: &str) -> SeqCode {
        encode_formula(&parse_formula_text(text).unwrap(), &a())
    }

    fn t(term: &Term) -> SeqCode {
        encode_term(term, &a())
    }

    #[test]
    fn replaces_variable_by_term() {
        let req = SubRequest::new(f("(= v0 v0)"), t(&Term::Zero));
        assert_eq!(sub_z(&req, &a()).unwrap(), f("(= 0 0)"));
    }

    #[test]
    fn identity_and_absent_variable() {
        let phi = f("(-> (= v0 (S v1)) (Prov v0))");
        let same = SubRequest::new(phi.clone(), t(&Term::Var(0)));
        assert_eq!(sub_z(&same, &a()).unwrap(), phi);
        let absent = SubRequest::new(phi.clone(), t(&Term::Zero)).with_var(7);
        assert_eq!(sub_z(&absent, &a()).unwrap(), phi);
    }

    #[test]
    fn precondition_errors() {
        let not_term = SubRequest::new(f("(= v0 v0)"), f("(= 0 0)"));
        assert_eq!(sub_z(&not_term, &a()), Err(Error::NotTermCode));
        let not_wff = SubRequest::new(t(&Term::Zero), t(&Term::Zero));
        assert_eq!(sub_z(&not_wff, &a()), Err(Error::NotWffCode));
        assert_eq!(sub_free(&not_wff, &a()), Err(Error::NotWffCode));
        assert_eq!(diag(&t(&Term::Zero), &a()), Err(Error::NotWffCode));
    }

    #[test]
    fn free_substitution_respects_binders() {
        let bound = f("(forall v0 (= v0 v0))");
        let req = SubRequest::new(bound.clone(), t(&Term::Zero));
        assert_eq!(sub_free(&req, &a()).unwrap(), bound);
        // the symbol-level version rewrites the binder slot too, leaving `∀ 0 = 0 0`
        let spliced = sub_z(&req, &a()).unwrap();
        assert!(is_code(&spliced));
        assert!(!is_wff_code(&spliced, &a()));

        let mixed = f("(-> (= v0 0) (forall v0 (= v0 v0)))");
        let req = SubRequest::new(mixed, t(&Term::succ(Term::Zero)));
        assert_eq!(sub_free(&req, &a()).unwrap(), f("(-> (= (S 0) 0) (forall v0 (= v0 v0)))"));
    }

    #[test]
    fn diag_of_reflexive_equation() {
        let n = f("(= v0 v0)");
        let value = n.to_number().unwrap();
        let expected = encode_formula(&Formula::eq(numeral(&value), numeral(&value)), &a());
        let d = diag(&n, &a()).unwrap();
        assert_eq!(d, expected);
        assert!(is_code(&d) && is_wff_code(&d, &a()));
    }

    #[test]
    fn diag_without_target_is_identity() {
        let n = f("(= (S v1) 0)");
        assert_eq!(diag(&n, &a()).unwrap(), n);
    }

    #[test]
    fn diag_numeral_limit() {
        let n = f("(= v0 v0)");
        let opts = DiagOptions { numeral_bit_limit: 8, ..DiagOptions::default() };
        assert!(matches!(diag_with(&n, &a(), &opts), Err(Error::NumeralTooLarge { limit: 8, .. })));
    }

    #[test]
    fn fixed_point_length_accounting() {
        let fp = fixed_point(&f("(= v0 v0)"), &a()).unwrap();
        assert_eq!(fp.occurrences, 2);
        let theta_len = fp.theta.symbol_len();
        assert_eq!(crate::seqcode::len(&fp.psi), theta_len + fp.occurrences * (fp.numeral_len - 1));
        assert_eq!(fp.psi, diag(&fp.m, &a()).unwrap());
    }
}
