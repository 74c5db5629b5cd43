//! Exact Fibonacci arithmetic and the Cantor pairing bijection.
//!
//! Fibonacci numbers use the shifted convention `F_1 = 1, F_2 = 2,
//! F_e = F_{e-1} + F_{e-2}`, so `F_e` here is the classical `Fib(e + 1)`.
//! Small indices are served from a lazily grown table shared by all
//! threads; larger ones are computed by fast doubling.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

/// Indices below this bound are memoized.
pub const MEMO_LIMIT: u64 = 1 << 16;

// TABLE[e] = F_e; entry 0 holds the recurrence-consistent F_0 = 1.
static TABLE: LazyLock<RwLock<Vec<BigUint>>> =
    LazyLock::new(|| RwLock::new(vec![BigUint::one(), BigUint::one(), BigUint::from(2u32)]));

fn ensure_table(upto: u64) {
    let upto = upto.min(MEMO_LIMIT - 1) as usize;
    if TABLE.read().expect("fib table poisoned").len() > upto {
        return;
    }
    let mut table = TABLE.write().expect("fib table poisoned");
    while table.len() <= upto {
        let n = table.len();
        let next = &table[n - 1] + &table[n - 2];
        table.push(next);
    }
}

/// Classical `(Fib(n), Fib(n + 1))` with `Fib(0) = 0, Fib(1) = 1`, by fast doubling.
pub(crate) fn fib_classical_pair(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    if n == 0 {
        return (a, b);
    }
    let top = 63 - n.leading_zeros();
    for bit in (0..=top).rev() {
        // Fib(2k) = Fib(k) * (2 Fib(k+1) - Fib(k)), Fib(2k+1) = Fib(k)^2 + Fib(k+1)^2
        let two_b = &b << 1u32;
        let c = &a * (two_b - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// `F_e` in the shifted convention.
pub fn fib(e: u64) -> Result<Nat> {
    if e == 0 {
        return Err(Error::ZeroFibIndex);
    }
    Ok(fib_unchecked(e))
}

pub(crate) fn fib_unchecked(e: u64) -> Nat {
    if e < MEMO_LIMIT {
        ensure_table(e);
        return TABLE.read().expect("fib table poisoned")[e as usize].clone();
    }
    fib_classical_pair(e).1
}

/// `(F_e, F_{e+1})`. Valid for `e = 0` as well, with `F_0 = 1`.
pub(crate) fn fib_pair(e: u64) -> (Nat, Nat) {
    if e + 1 < MEMO_LIMIT {
        ensure_table(e + 1);
        let table = TABLE.read().expect("fib table poisoned");
        return (table[e as usize].clone(), table[e as usize + 1].clone());
    }
    fib_classical_pair(e + 1)
}

/// Rough index of the largest `F_e <= n`, from the bit length (`log2 phi ~ 0.6942`).
fn estimate_index(n: &BigUint) -> u64 {
    let bits = n.bits();
    bits.saturating_mul(10_000) / 6_942 + 2
}

/// The unique `e >= 1` with `F_e <= n < F_{e+1}`.
pub fn max_fib_index_le(n: &Nat) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::NoFibonacciBelowZero);
    }
    let estimate = estimate_index(n);
    if estimate < MEMO_LIMIT - 1 {
        ensure_table(estimate + 1);
        let table = TABLE.read().expect("fib table poisoned");
        // first index in 1.. whose value exceeds n
        let above = table[1..].partition_point(|f| f <= n) + 1;
        if above < table.len() {
            return Ok(above as u64 - 1);
        }
    }
    // Walk from the estimate using (F_e, F_{e+1}) pairs.
    let mut e = estimate.max(1);
    let (mut lo, mut hi) = fib_pair(e);
    while &lo > n {
        // (F_{e-1}, F_e) = (F_{e+1} - F_e, F_e)
        let prev = &hi - &lo;
        hi = lo;
        lo = prev;
        e -= 1;
    }
    while &hi <= n {
        let next = &lo + &hi;
        lo = hi;
        hi = next;
        e += 1;
    }
    Ok(e)
}

/// Upper bound on `|Z(n)|`, computed as the greedy starting index rather than
/// through a real logarithm.
pub fn zeck_length_bound(n: &Nat) -> u64 {
    if n.is_zero() {
        0
    } else {
        max_fib_index_le(n).expect("n is positive")
    }
}

/// `<x, y> = (x + y)(x + y + 1) / 2 + x`.
pub fn cantor_pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    let t = (&s * (&s + 1u32)) >> 1u32;
    t + x
}

/// Inverse of [`cantor_pair`], exact at any size.
pub fn cantor_unpair(p: &Nat) -> (Nat, Nat) {
    // w = floor((isqrt(8p + 1) - 1) / 2) is the diagonal containing p.
    let disc: BigUint = (p << 3u32) + 1u32;
    let w: BigUint = (disc.sqrt() - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1u32;
    let x = p - t;
    let y = w - &x;
    (x, y)
}

/// `cantor_pair` on machine integers, when the result fits.
pub(crate) fn cantor_pair_u64(x: u64, y: u64) -> Option<u64> {
    let s = x.checked_add(y)?;
    let t = (s as u128 * (s as u128 + 1)) / 2 + x as u128;
    u64::try_from(t).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn naive_fibs(count: usize) -> Vec<Nat> {
        // F_1 = 1, F_2 = 2, ... by plain iteration
        let mut out = vec![n(1), n(2)];
        while out.len() < count {
            let k = out.len();
            out.push(&out[k - 1] + &out[k - 2]);
        }
        out
    }

    #[test]
    fn first_terms_follow_shifted_convention() {
        let got: Vec<Nat> = (1..=7).map(|e| fib(e).unwrap()).collect();
        let want: Vec<Nat> = [1u64, 2, 3, 5, 8, 13, 21].iter().map(|&v| n(v)).collect();
        assert_eq!(got, want);
        assert_eq!(fib(7).unwrap(), n(21));
    }

    #[test]
    fn fib_100_matches_iteration() {
        let oracle = &naive_fibs(100)[99];
        assert_eq!(oracle.to_string(), "573147844013817084101");
        assert_eq!(fib(100).unwrap(), *oracle);
    }

    #[test]
    fn fib_rejects_zero() {
        assert_eq!(fib(0), Err(Error::ZeroFibIndex));
    }

    #[test]
    fn doubling_agrees_with_iteration() {
        let fibs = naive_fibs(10_001);
        for e in 1..=10_000u64 {
            assert_eq!(fib_classical_pair(e).1, fibs[e as usize - 1], "e = {e}");
        }
        for e in 1..=9_998usize {
            assert_eq!(fibs[e + 1], &fibs[e] + &fibs[e - 1]);
        }
    }

    #[test]
    fn fib_beyond_memo_limit() {
        let e = MEMO_LIMIT + 17;
        let (a, b) = fib_pair(e - 2);
        assert_eq!(fib(e).unwrap(), a + b);
    }

    #[test]
    fn max_index_examples() {
        assert_eq!(max_fib_index_le(&n(32)).unwrap(), 7);
        assert_eq!(max_fib_index_le(&n(1)).unwrap(), 1);
        assert_eq!(max_fib_index_le(&n(0)), Err(Error::NoFibonacciBelowZero));
    }

    #[test]
    fn max_index_one_million_by_scan() {
        let target = n(1_000_000);
        let fibs = naive_fibs(40);
        let oracle = fibs.iter().take_while(|f| **f <= target).count() as u64;
        let e = max_fib_index_le(&target).unwrap();
        assert_eq!(e, oracle);
        assert!(fib(e).unwrap() <= target && target < fib(e + 1).unwrap());
    }

    #[test]
    fn max_index_large_values_use_pair_walk() {
        for e in [MEMO_LIMIT - 3, MEMO_LIMIT, MEMO_LIMIT + 5, 200_000] {
            let f = fib(e).unwrap();
            assert_eq!(max_fib_index_le(&f).unwrap(), e);
            assert_eq!(max_fib_index_le(&(&f - 1u32)).unwrap(), e - 1);
            assert_eq!(max_fib_index_le(&(&f + 1u32)).unwrap(), e);
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(cantor_pair(&n(0), &n(1)), n(1));
        assert_eq!(cantor_pair(&n(0), &n(2)), n(3));
        assert_eq!(cantor_pair(&n(0), &n(0)), n(0));
        assert_eq!(cantor_unpair(&n(1)), (n(0), n(1)));
        assert_eq!(cantor_unpair(&n(0)), (n(0), n(0)));
        let p = cantor_pair(&n(17), &n(42));
        assert_eq!(cantor_unpair(&p), (n(17), n(42)));
    }

    #[test]
    fn unpair_roundtrip_exhaustive() {
        for x in 0..=1000u64 {
            for y in 0..=1000u64 {
                let p = cantor_pair(&n(x), &n(y));
                assert_eq!(cantor_pair_u64(x, y).map(n), Some(p.clone()));
                assert_eq!(cantor_unpair(&p), (n(x), n(y)));
            }
        }
    }

    #[test]
    fn pair_injective_small_grid() {
        let mut seen = std::collections::HashSet::new();
        for x in 0..=200u64 {
            for y in 0..=200u64 {
                assert!(seen.insert(cantor_pair(&n(x), &n(y))));
            }
        }
    }

    #[test]
    fn length_bound_examples() {
        assert_eq!(zeck_length_bound(&n(0)), 0);
        assert_eq!(zeck_length_bound(&n(32)), 7);
    }

    #[test]
    fn table_is_shareable_across_threads() {
        let handles: Vec<_> = (0..8u64)
            .map(|t| std::thread::spawn(move || fib(500 + t * 300).unwrap()))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), fib_classical_pair(501 + t as u64 * 300).0);
        }
    }
}
