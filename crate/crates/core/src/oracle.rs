//! Fibonacci verification oracle: the bounded identity `F_n + 2 F_m = F_k`,
//! read as a witness for an inference step.
//!
//! Standalone arithmetic checker; the proof checker in [`crate::logic`]
//! does not consult it.

use crate::error::{Error, Result};
use crate::numeric::{fib, max_fib_index_le};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OracleTriple {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl OracleTriple {
    pub fn new(n: u64, m: u64, k: u64) -> Result<Self> {
        if n == 0 || m == 0 || k == 0 {
            return Err(Error::ZeroFibIndex);
        }
        Ok(Self { n, m, k })
    }
}

/// Exact test of `F_n + 2 F_m = F_k`.
pub fn oracle_check(t: &OracleTriple) -> bool {
    match (fib(t.n), fib(t.m), fib(t.k)) {
        (Ok(a), Ok(b), Ok(c)) => a + (b << 1u32) == c,
        _ => false,
    }
}

/// The `k` with `F_n + 2 F_m = F_k`, if the sum is a Fibonacci number.
pub fn oracle_solve(n: u64, m: u64) -> Result<Option<u64>> {
    let sum = fib(n)? + (fib(m)? << 1u32);
    let k = max_fib_index_le(&sum)?;
    Ok((fib(k)? == sum).then_some(k))
}

/// `(n - 1, n, n + 2)`: `F_{n-1} + 2 F_n = F_{n+2}`, the modus ponens family.
pub fn mp_witness(n: u64) -> Result<OracleTriple> {
    if n < 2 {
        return Err(Error::PremiseIndexTooSmall(n));
    }
    OracleTriple::new(n - 1, n, n + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(n: u64, m: u64, k: u64) -> OracleTriple {
        OracleTriple::new(n, m, k).unwrap()
    }

    #[test]
    fn check_examples() {
        // F_1 + 2 F_2 = 1 + 4 = 5 = F_4
        assert!(oracle_check(&triple(1, 2, 4)));
        // 1 + 2 = 3 = F_3, not F_2
        assert!(!oracle_check(&triple(1, 1, 2)));
        for n in 2..=50 {
            assert!(oracle_check(&triple(n - 1, n, n + 2)));
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(oracle_solve(1, 1).unwrap(), Some(3));
        // 3 F_5 = 24 is not a Fibonacci number
        assert_eq!(oracle_solve(5, 5).unwrap(), None);
        for n in 2..=50 {
            assert_eq!(oracle_solve(n - 1, n).unwrap(), Some(n + 2));
        }
        assert_eq!(oracle_solve(0, 3), Err(Error::ZeroFibIndex));
    }

    #[test]
    fn witness_family() {
        assert_eq!(mp_witness(2).unwrap(), triple(1, 2, 4));
        assert_eq!(mp_witness(10).unwrap(), triple(9, 10, 12));
        assert!(oracle_check(&mp_witness(10).unwrap()));
        assert_eq!(mp_witness(1), Err(Error::PremiseIndexTooSmall(1)));
        assert!(OracleTriple::new(0, 1, 1).is_err());
    }
}
