use num_bigint::BigUint;
use thiserror::Error;

/// Where a Polish-notation parse went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedSymbol,
    TruncatedInput,
    TrailingSymbols,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParseErrorKind::UnexpectedSymbol => "unexpected symbol",
            ParseErrorKind::TruncatedInput => "truncated input",
            ParseErrorKind::TrailingSymbols => "trailing symbols",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Fibonacci index 0 is outside the F_1 = 1, F_2 = 2 convention")]
    ZeroFibIndex,

    #[error("no positive Fibonacci number is <= 0")]
    NoFibonacciBelowZero,

    #[error("Fibonacci index {0} does not fit in 64 bits")]
    IndexTooLarge(BigUint),

    #[error("malformed Zeckendorf support: {0}")]
    MalformedSupport(String),

    #[error("not a sequence code")]
    NotASequenceCode,

    #[error("code too large to materialize (about {bits_estimate} bits)")]
    CodeTooLarge { bits_estimate: BigUint },

    #[error("invalid symbol number {value} at position {position}")]
    InvalidSymbol { position: usize, value: BigUint },

    #[error("parse error: {kind} at position {position}")]
    Parse { kind: ParseErrorKind, position: usize },

    #[error("not a wff code")]
    NotWffCode,

    #[error("not a term code")]
    NotTermCode,

    #[error("element {index} is not a wff code")]
    NotWffElement { index: usize },

    #[error("numeral too large: {bits} bits exceeds the limit of {limit}")]
    NumeralTooLarge { bits: u64, limit: u64 },

    #[error("symbol value 0 not representable under prime coding (position {position})")]
    ZeroPrimeExponent { position: usize },

    #[error("prime exponent {0} is too large")]
    ExponentTooLarge(BigUint),

    #[error("gap in prime support: {missing} does not divide but {present} does")]
    GapInPrimeSupport { missing: u64, present: u64 },

    #[error("factor exceeds table of {table_len} primes")]
    FactorExceedsTable { table_len: usize },

    #[error("prime code must be >= 1")]
    ZeroPrimeCode,

    #[error("premise index {0} is below 2")]
    PremiseIndexTooSmall(u64),

    #[error("text syntax error at offset {offset}: {message}")]
    Text { offset: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroFibIndex => "zero_fib_index",
            Error::NoFibonacciBelowZero => "no_fibonacci_below_zero",
            Error::IndexTooLarge(_) => "index_too_large",
            Error::MalformedSupport(_) => "malformed_support",
            Error::NotASequenceCode => "not_a_sequence_code",
            Error::CodeTooLarge { .. } => "code_too_large",
            Error::InvalidSymbol { .. } => "invalid_symbol_number",
            Error::Parse { .. } => "parse_error",
            Error::NotWffCode => "not_a_wff_code",
            Error::NotTermCode => "not_a_term_code",
            Error::NotWffElement { .. } => "element_not_wff",
            Error::NumeralTooLarge { .. } => "numeral_too_large",
            Error::ZeroPrimeExponent { .. } => "zero_prime_exponent",
            Error::ExponentTooLarge(_) => "exponent_too_large",
            Error::GapInPrimeSupport { .. } => "gap_in_prime_support",
            Error::FactorExceedsTable { .. } => "factor_exceeds_table",
            Error::ZeroPrimeCode => "zero_prime_code",
            Error::PremiseIndexTooSmall(_) => "premise_index_too_small",
            Error::Text { .. } => "text_syntax",
            Error::Config(_) => "config",
        }
    }

    /// Symbol position (1-based) or text offset, when the error carries one.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::InvalidSymbol { position, .. }
            | Error::Parse { position, .. }
            | Error::ZeroPrimeExponent { position } => Some(*position),
            Error::Text { offset, .. } => Some(*offset),
            Error::NotWffElement { index } => Some(*index),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
