//! Zeckendorf encode/decode between naturals and non-consecutive Fibonacci
//! index sets.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{fib_pair, max_fib_index_le, Nat};

/// A Zeckendorf support: Fibonacci indices, strictly decreasing, pairwise
/// gap at least 2, all `>= 1`. The empty support stands for 0.
///
/// The derived ordering is lexicographic on the decreasing index list, which
/// coincides with the numeric order of the encoded naturals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeckSupport(Vec<BigUint>);

impl ZeckSupport {
    pub fn new(indices: Vec<BigUint>) -> Result<Self> {
        check_support(&indices)?;
        Ok(Self(indices))
    }

    pub fn from_u64s(indices: &[u64]) -> Result<Self> {
        Self::new(indices.iter().map(|&e| BigUint::from(e)).collect())
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_sorted_unchecked(indices: Vec<BigUint>) -> Self {
        debug_assert!(check_support(&indices).is_ok());
        Self(indices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_indices(self) -> Vec<BigUint> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<&BigUint> {
        self.0.first()
    }
}

impl fmt::Display for ZeckSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Z[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

fn check_support(indices: &[BigUint]) -> Result<()> {
    if indices.iter().any(Zero::is_zero) {
        return Err(Error::MalformedSupport("index 0 is not a Fibonacci index".into()));
    }
    for pair in indices.windows(2) {
        if pair[0] <= pair[1] {
            return Err(Error::MalformedSupport(format!(
                "indices not strictly decreasing at {} -> {}",
                pair[0], pair[1]
            )));
        }
        if &pair[0] - &pair[1] < BigUint::from(2u32) {
            return Err(Error::MalformedSupport(format!(
                "consecutive indices {} and {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// True iff `indices` is strictly decreasing, gapped by at least 2, and
/// positive.
pub fn is_valid_support(indices: &[BigUint]) -> bool {
    check_support(indices).is_ok()
}

/// `Σ F_e` over the support.
pub fn z_encode(s: &ZeckSupport) -> Result<Nat> {
    // classical indices Fib(e + 1), ascending
    let mut classical = Vec::with_capacity(s.len());
    for e in s.0.iter().rev() {
        let e = e.to_u64().ok_or_else(|| Error::IndexTooLarge(e.clone()))?;
        classical.push(e.checked_add(1).ok_or_else(|| Error::IndexTooLarge(e.into()))?);
    }
    if classical.is_empty() {
        return Ok(Nat::zero());
    }
    Ok(sum_classical(&classical).0)
}

/// Classical `(Fib(c - 1), Fib(c))`, including `c = 0` where `Fib(-1) = 1`.
fn classical_prev_cur(c: u64) -> (Nat, Nat) {
    match c {
        0 => (Nat::from(1u32), Nat::zero()),
        1 => (Nat::zero(), Nat::from(1u32)),
        _ => fib_pair(c - 2),
    }
}

/// For ascending distinct classical indices, returns `(Σ Fib(c), Σ Fib(c - 1))`.
///
/// Splits the list and shifts the upper half down by its smallest index `p`
/// using `Fib(p + h) = Fib(h) Fib(p + 1) + Fib(h - 1) Fib(p)`, so the large
/// multiplications are balanced instead of summing many huge terms.
fn sum_classical(cs: &[u64]) -> (Nat, Nat) {
    if cs.len() <= 2 {
        let mut cur = Nat::zero();
        let mut prev = Nat::zero();
        for &c in cs {
            let (p, q) = classical_prev_cur(c);
            cur += q;
            prev += p;
        }
        return (cur, prev);
    }
    let mid = cs.len() / 2;
    let (low, high) = cs.split_at(mid);
    let p = high[0];
    let shifted: Vec<u64> = high.iter().map(|&c| c - p).collect();
    let (a, b) = sum_classical(&shifted);
    let (fib_pm1, fib_p) = classical_prev_cur(p);
    let fib_pp1 = &fib_pm1 + &fib_p;
    let high_cur = &a * &fib_pp1 + &b * &fib_p;
    let high_prev = &a * &fib_p + &b * &fib_pm1;
    let (low_cur, low_prev) = sum_classical(low);
    (high_cur + low_cur, high_prev + low_prev)
}

/// Greedy decomposition: repeatedly take the largest `F_e <= n`.
pub fn z_decode(n: &Nat) -> ZeckSupport {
    let mut indices = Vec::new();
    let mut rem = n.clone();
    while !rem.is_zero() {
        let e = max_fib_index_le(&rem).expect("remainder is positive");
        let (f, _) = fib_pair(e);
        rem -= f;
        indices.push(BigUint::from(e));
    }
    ZeckSupport::from_sorted_unchecked(indices)
}
