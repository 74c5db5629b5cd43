//! Seeded generators of random terms and formulas, for benchmark corpora
//! and property suites.

use rand::Rng;

use super::{Formula, Term};

#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    /// Variables are drawn from `v0..=v{max_var}`.
    pub max_var: u64,
    pub binders: bool,
    /// Whether `diag` and `Prov` may appear.
    pub special_symbols: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self { max_var: 4, binders: true, special_symbols: true }
    }
}

fn leaf<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Term {
    if rng.random_bool(0.4) {
        Term::Zero
    } else {
        Term::Var(rng.random_range(0..=cfg.max_var))
    }
}

/// A term with exactly `size >= 1` symbols.
pub fn term_of_size<R: Rng>(rng: &mut R, size: usize, cfg: &GenConfig) -> Term {
    assert!(size >= 1);
    if size == 1 {
        return leaf(rng, cfg);
    }
    let unary_kinds = if cfg.special_symbols { 2 } else { 1 };
    let binary_kinds = if size >= 3 { 2 } else { 0 };
    match rng.random_range(0..unary_kinds + binary_kinds) {
        0 => Term::succ(term_of_size(rng, size - 1, cfg)),
        1 if cfg.special_symbols => Term::diag(term_of_size(rng, size - 1, cfg)),
        k => {
            let left = rng.random_range(1..=size - 2);
            let a = term_of_size(rng, left, cfg);
            let b = term_of_size(rng, size - 1 - left, cfg);
            if k % 2 == 0 {
                Term::plus(a, b)
            } else {
                Term::times(a, b)
            }
        }
    }
}

/// A formula with exactly `size` symbols. Sizes below the smallest
/// producible formula are rounded up (3 symbols without `Prov`, else 2).
pub fn formula_of_size<R: Rng>(rng: &mut R, size: usize, cfg: &GenConfig) -> Formula {
    let min = if cfg.special_symbols { 2 } else { 3 };
    let size = size.max(min);
    let mut options: Vec<u8> = Vec::new();
    if cfg.special_symbols {
        options.push(0); // Prov
    }
    if size >= 3 {
        options.push(1); // =
    }
    if size > min {
        options.push(2); // ¬
    }
    if size > 2 * min {
        options.extend([3, 4, 5]); // → ∧ ∨
    }
    if cfg.binders && size >= min + 2 {
        options.extend([6, 7]); // ∀ ∃
    }
    match options[rng.random_range(0..options.len())] {
        0 => Formula::prov(term_of_size(rng, size - 1, cfg)),
        1 => {
            let left = rng.random_range(1..=size - 2);
            Formula::eq(term_of_size(rng, left, cfg), term_of_size(rng, size - 1 - left, cfg))
        }
        2 => Formula::not(formula_of_size(rng, size - 1, cfg)),
        k @ 3..=5 => {
            let left = rng.random_range(min..=size - 1 - min);
            let a = formula_of_size(rng, left, cfg);
            let b = formula_of_size(rng, size - 1 - left, cfg);
            match k {
                3 => Formula::imp(a, b),
                4 => Formula::and(a, b),
                _ => Formula::or(a, b),
            }
        }
        k => {
            let v = rng.random_range(0..=cfg.max_var);
            let body = formula_of_size(rng, size - 2, cfg);
            if k == 6 {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
    }
}

/// A term of nesting depth at most `depth` (leaves have depth 0).
pub fn term_of_depth<R: Rng>(rng: &mut R, depth: usize, cfg: &GenConfig) -> Term {
    if depth == 0 || rng.random_bool(0.3) {
        return leaf(rng, cfg);
    }
    let kinds = if cfg.special_symbols { 4 } else { 3 };
    match rng.random_range(0..kinds) {
        0 => Term::succ(term_of_depth(rng, depth - 1, cfg)),
        1 => Term::plus(term_of_depth(rng, depth - 1, cfg), term_of_depth(rng, depth - 1, cfg)),
        2 => Term::times(term_of_depth(rng, depth - 1, cfg), term_of_depth(rng, depth - 1, cfg)),
        _ => Term::diag(term_of_depth(rng, depth - 1, cfg)),
    }
}

/// A formula of nesting depth at most `depth` (atomic formulas count as
/// depth 1, their terms included).
pub fn formula_of_depth<R: Rng>(rng: &mut R, depth: usize, cfg: &GenConfig) -> Formula {
    let depth = depth.max(1);
    if depth == 1 || rng.random_bool(0.25) {
        if cfg.special_symbols && rng.random_bool(0.2) {
            return Formula::prov(term_of_depth(rng, depth - 1, cfg));
        }
        return Formula::eq(term_of_depth(rng, depth - 1, cfg), term_of_depth(rng, depth - 1, cfg));
    }
    let kinds = if cfg.binders { 6 } else { 4 };
    let d = depth - 1;
    match rng.random_range(0..kinds) {
        0 => Formula::not(formula_of_depth(rng, d, cfg)),
        1 => Formula::imp(formula_of_depth(rng, d, cfg), formula_of_depth(rng, d, cfg)),
        2 => Formula::and(formula_of_depth(rng, d, cfg), formula_of_depth(rng, d, cfg)),
        3 => Formula::or(formula_of_depth(rng, d, cfg), formula_of_depth(rng, d, cfg)),
        4 => Formula::forall(rng.random_range(0..=cfg.max_var), formula_of_depth(rng, d, cfg)),
        _ => Formula::exists(rng.random_range(0..=cfg.max_var), formula_of_depth(rng, d, cfg)),
    }
}
