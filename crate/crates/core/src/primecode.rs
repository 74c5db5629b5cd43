//! Classical prime-exponent coding `∏ p_i^{a_i}` as a baseline, and the
//! size/cost comparison against sequence codes.

use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Nat;
use crate::seqcode::{seq_decode, seq_encode, Sequence};
use crate::substitution::splice;
use crate::syntax::{Alphabet, Symbol};

/// Table size used by [`decode_p`].
pub const DEFAULT_PRIME_TABLE_LEN: usize = 1024;

/// Timing runs per measurement; the median is reported.
pub const TIMING_RUNS: usize = 5;

/// The first `t` primes, gap-free from 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn first(t: usize) -> Self {
        if t == 0 {
            return Self { primes: Vec::new() };
        }
        // p_t < t (ln t + ln ln t) for t >= 6
        let tf = t.max(6) as f64;
        let bound = (tf * (tf.ln() + tf.ln().ln())).ceil() as usize + 1;
        let mut composite = vec![false; bound + 1];
        let mut primes = Vec::with_capacity(t);
        for i in 2..=bound {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            if primes.len() == t {
                break;
            }
            let mut j = i * i;
            while j <= bound {
                composite[j] = true;
                j += i;
            }
        }
        Self { primes }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

fn exponent(a: &Nat, position: usize) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::ZeroPrimeExponent { position });
    }
    a.to_u32().ok_or_else(|| Error::ExponentTooLarge(a.clone()))
}

/// `∏ p_i^{a_i}`; every `a_i` must be at least 1. The empty product is 1.
pub fn code_p(seq: &[Nat]) -> Result<Nat> {
    let exps = seq.iter().enumerate().map(|(i, a)| exponent(a, i + 1)).collect::<Result<Vec<_>>>()?;
    let table = PrimeTable::first(seq.len());
    Ok(table.primes().iter().zip(exps).fold(Nat::one(), |acc, (&p, e)| acc * Nat::from(p).pow(e)))
}

pub fn decode_p(n: &Nat) -> Result<Sequence> {
    decode_p_with(n, &PrimeTable::first(DEFAULT_PRIME_TABLE_LEN))
}

/// Trial division by `p_1, p_2, …` until the cofactor reaches 1.
pub fn decode_p_with(n: &Nat, table: &PrimeTable) -> Result<Sequence> {
    if n.is_zero() {
        return Err(Error::ZeroPrimeCode);
    }
    let mut rem = n.clone();
    let mut out = Vec::new();
    for (i, &p) in table.primes().iter().enumerate() {
        if rem.is_one() {
            return Ok(out);
        }
        let mut e = 0u64;
        while (&rem % p).is_zero() {
            rem /= p;
            e += 1;
        }
        if e == 0 {
            let present = table.primes()[i + 1..].iter().copied().find(|&q| (&rem % q).is_zero());
            return Err(match present {
                Some(q) => Error::GapInPrimeSupport { missing: p, present: q },
                None => Error::FactorExceedsTable { table_len: table.len() },
            });
        }
        out.push(Nat::from(e));
    }
    if rem.is_one() {
        Ok(out)
    } else {
        Err(Error::FactorExceedsTable { table_len: table.len() })
    }
}

/// Sequence-level substitution under prime coding.
pub fn sub_prime(formula_seq: &[Nat], term_seq: &[Nat], target_code: &Nat) -> Result<Nat> {
    code_p(formula_seq)?;
    code_p(term_seq)?;
    code_p(&splice(formula_seq, target_code, term_seq))
}

/// Substitution starting from a prime code: factor, splice, re-multiply.
pub fn sub_prime_code(formula_code: &Nat, term_seq: &[Nat], target_code: &Nat) -> Result<Nat> {
    let items = decode_p(formula_code)?;
    sub_prime(&items, term_seq, target_code)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub sequence_length: usize,
    pub zeck_bits: u64,
    pub prime_bits: u64,
    pub zeck_max_index: u64,
    /// Median wall-clock nanoseconds.
    pub encode_zeck_ns: u64,
    pub encode_prime_ns: u64,
    pub substitute_zeck_ns: u64,
    pub substitute_prime_ns: u64,
}

fn median_time<T>(mut f: impl FnMut() -> Result<T>) -> Result<u64> {
    f()?; // warm caches
    let mut samples: Vec<Duration> = Vec::with_capacity(TIMING_RUNS);
    for _ in 0..TIMING_RUNS {
        let start = Instant::now();
        std::hint::black_box(f()?);
        samples.push(start.elapsed());
    }
    samples.sort();
    Ok(samples[TIMING_RUNS / 2].as_nanos() as u64)
}

/// Encodes `seq` under both schemes and times one substitution of `v0`
/// by `S0` in each.
pub fn compare_sizes(seq: &[Nat], alphabet: &Alphabet) -> Result<SizeReport> {
    let prime = code_p(seq)?;
    let zeck = seq_encode(seq);
    let zeck_number = zeck.to_number()?;
    let zeck_max_index = zeck.max_index().map_or(Some(0), ToPrimitive::to_u64).expect("materialized code has a small index");

    let target = alphabet.var_code(0);
    let replacement = alphabet.codes(&[Symbol::Succ, Symbol::Zero]);

    let encode_zeck_ns = median_time(|| seq_encode(seq).to_number())?;
    let encode_prime_ns = median_time(|| code_p(seq))?;
    let substitute_zeck_ns = median_time(|| {
        let items = seq_decode(&zeck)?;
        seq_encode(&splice(&items, &target, &replacement)).to_number()
    })?;
    let substitute_prime_ns = median_time(|| sub_prime_code(&prime, &replacement, &target))?;

    Ok(SizeReport {
        sequence_length: seq.len(),
        zeck_bits: zeck_number.bits(),
        prime_bits: prime.bits(),
        zeck_max_index,
        encode_zeck_ns,
        encode_prime_ns,
        substitute_zeck_ns,
        substitute_prime_ns,
    })
}
