//! Sequence codes: `[a_1, …, a_m] ↦ Σ F_{2<a_i, i> + 1}`, kept primarily in
//! support form so that codes far too large to write out stay cheap to
//! manipulate.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{cantor_pair, cantor_pair_u64, cantor_unpair, Nat};
use crate::zeckendorf::{z_decode, z_encode, ZeckSupport};

/// Largest support index that [`SeqCode::to_number`] will materialize by
/// default (about 23 Mbit numbers).
pub const DEFAULT_MATERIALIZE_LIMIT: u64 = 1 << 25;

pub type Sequence = Vec<Nat>;

/// A natural number in dual form: its Zeckendorf support, plus the number
/// itself once it has been materialized.
#[derive(Clone, Debug, Default)]
pub struct SeqCode {
    support: ZeckSupport,
    number: OnceLock<Nat>,
}

impl PartialEq for SeqCode {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
    }
}

impl Eq for SeqCode {}

impl std::hash::Hash for SeqCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.support.hash(state);
    }
}

impl PartialOrd for SeqCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SeqCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.support.cmp(&other.support)
    }
}

impl From<ZeckSupport> for SeqCode {
    fn from(support: ZeckSupport) -> Self {
        Self::from_support(support)
    }
}

impl SeqCode {
    pub fn from_support(support: ZeckSupport) -> Self {
        Self { support, number: OnceLock::new() }
    }

    pub fn from_number(n: Nat) -> Self {
        let support = z_decode(&n);
        let number = OnceLock::new();
        let _ = number.set(n);
        Self { support, number }
    }

    pub fn support(&self) -> &ZeckSupport {
        &self.support
    }

    pub fn max_index(&self) -> Option<&BigUint> {
        self.support.max_index()
    }

    /// `⌈0.6943 · e_max⌉ + 1`, an estimate of the bit length; 0 for the empty code.
    pub fn bits_estimate(&self) -> BigUint {
        match self.max_index() {
            None => BigUint::zero(),
            Some(e) => (e * 6943u32 + 9999u32) / 10_000u32 + 1u32,
        }
    }

    pub fn is_materializable(&self, limit: u64) -> bool {
        match self.max_index() {
            None => true,
            Some(e) => e.to_u64().is_some_and(|e| e <= limit),
        }
    }

    /// The number, if already materialized.
    pub fn cached_number(&self) -> Option<&Nat> {
        self.number.get()
    }

    pub fn to_number(&self) -> Result<Nat> {
        self.to_number_with_limit(DEFAULT_MATERIALIZE_LIMIT)
    }

    pub fn to_number_with_limit(&self, limit: u64) -> Result<Nat> {
        if let Some(n) = self.number.get() {
            return Ok(n.clone());
        }
        if !self.is_materializable(limit) {
            return Err(Error::CodeTooLarge { bits_estimate: self.bits_estimate() });
        }
        let n = z_encode(&self.support)?;
        Ok(self.number.get_or_init(|| n).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

pub fn from_number(n: Nat) -> SeqCode {
    SeqCode::from_number(n)
}

pub fn to_number(c: &SeqCode) -> Result<Nat> {
    c.to_number()
}

/// `2 <a, i> + 1`, with a machine-integer path for small arguments.
pub(crate) fn element_index(a: &Nat, position: u64) -> BigUint {
    if let Some(a) = a.to_u64() {
        if let Some(p) = cantor_pair_u64(a, position).and_then(|p| p.checked_mul(2)).and_then(|p| p.checked_add(1)) {
            return BigUint::from(p);
        }
    }
    (cantor_pair(a, &BigUint::from(position)) << 1u32) + 1u32
}

/// Recovers `(a, i)` from an odd support index.
fn split_index(e: &BigUint) -> Option<(Nat, Nat)> {
    if !e.bit(0) {
        return None;
    }
    let p: BigUint = e >> 1u32;
    if let Some(p) = p.to_u64() {
        let w = (((8 * p as u128 + 1).isqrt() - 1) / 2) as u64;
        let t = w as u128 * (w as u128 + 1) / 2;
        let x = (p as u128 - t) as u64;
        return Some((Nat::from(x), Nat::from(w - x)));
    }
    Some(cantor_unpair(&p))
}

pub fn seq_encode(items: &[Nat]) -> SeqCode {
    let mut indices: Vec<BigUint> = items
        .iter()
        .enumerate()
        .map(|(i, a)| element_index(a, i as u64 + 1))
        .collect();
    indices.sort_unstable_by(|a, b| b.cmp(a));
    let code = SeqCode::from_support(ZeckSupport::from_sorted_unchecked(indices));
    if items.is_empty() {
        let _ = code.number.set(Nat::zero());
    }
    code
}

/// Convenience for small symbol values.
pub fn seq_encode_u64(items: &[u64]) -> SeqCode {
    let items: Vec<Nat> = items.iter().map(|&a| Nat::from(a)).collect();
    seq_encode(&items)
}

pub fn seq_decode(c: &SeqCode) -> Result<Sequence> {
    let m = c.support.len();
    let mut slots: Vec<Option<Nat>> = vec![None; m];
    for e in c.support.indices() {
        let (a, i) = split_index(e).ok_or(Error::NotASequenceCode)?;
        let i = i.to_usize().filter(|&i| (1..=m).contains(&i)).ok_or(Error::NotASequenceCode)?;
        let slot = &mut slots[i - 1];
        if slot.is_some() {
            return Err(Error::NotASequenceCode);
        }
        *slot = Some(a);
    }
    Ok(slots.into_iter().map(|a| a.expect("positions form 1..=m")).collect())
}

/// Odd indices whose unpaired positions are exactly `{1..m}`.
pub fn is_code(c: &SeqCode) -> bool {
    seq_decode(c).is_ok()
}

/// Number of elements, or 0 for non-codes.
pub fn len(c: &SeqCode) -> usize {
    if is_code(c) {
        c.support.len()
    } else {
        0
    }
}

/// Element at 1-based position `i`, located by recovered position; 0 when
/// `c` is not a code or `i` is out of range.
pub fn symbol_at(c: &SeqCode, i: &Nat) -> Nat {
    let Ok(items) = seq_decode(c) else {
        return Nat::zero();
    };
    match i.to_usize() {
        Some(i) if i >= 1 && i <= items.len() => items[i - 1].clone(),
        _ => Nat::zero(),
    }
}

pub fn concat(left: &SeqCode, right: &SeqCode) -> Result<SeqCode> {
    let mut items = seq_decode(left)?;
    items.extend(seq_decode(right)?);
    Ok(seq_encode(&items))
}
