//! Gödel numbering over Zeckendorf representations.
//!
//! Naturals are coded by their Fibonacci supports, sequences by
//! `Σ F_{2⟨a_i,i⟩+1}`, and formulas by the sequence of their symbol codes.
//! On top sit code-level substitution, the diagonal function, the
//! fixed-point construction, a Hilbert-style proof checker with bounded
//! proof search, a Fibonacci identity oracle, and a prime-exponent
//! baseline for size comparison.

pub mod error;
pub mod cli;
pub mod logic;
pub mod numeric;
pub mod oracle;
pub mod primecode;
pub mod seqcode;
pub mod substitution;
pub mod syntax;
pub mod zeckendorf;

pub use error::{Error, ParseErrorKind, Result};
pub use numeric::{cantor_pair, cantor_unpair, fib, max_fib_index_le, zeck_length_bound, Nat};
pub use oracle::{mp_witness, oracle_check, oracle_solve, OracleTriple};
pub use primecode::{code_p, compare_sizes, decode_p, sub_prime, PrimeTable, SizeReport};
pub use seqcode::{concat, is_code, seq_decode, seq_encode, symbol_at, SeqCode, Sequence};
pub use substitution::{diag, fixed_point, sub_free, sub_z, DiagOptions, FixedPoint, SubRequest};
pub use syntax::{
    decode_formula, decode_proof, decode_syntax, decode_term, encode_formula, encode_proof, encode_syntax,
    encode_term, is_term_code, is_wff_code, numeral, Alphabet, Formula, Symbol, Syntax, Term,
};
pub use zeckendorf::{is_valid_support, z_decode, z_encode, ZeckSupport};
pub use logic::{
    check_mp, check_proof, godel_sentence, is_axiom, justify, prov_bounded, prov_bounded_formula, Proof,
    TheoryConfig,
};
