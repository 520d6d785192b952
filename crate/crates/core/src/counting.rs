//! Exact counts of meaningful compositions.
//!
//! `f_i(k)` counts meaningful words of length `k` whose first applied operator
//! is `∇_i`; `f(k)` is their sum. The vector `(f_1(k), …, f_n(k))` is obtained
//! from the all-ones vector by `k - 1` products with the adjacency matrix, so
//! `f(k) = v · A^(k-1) · vᵀ`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::classify::CompositionWord;
use crate::error::{Error, Result};
use crate::graph::{build_adjacency, Dimension};

/// Default cap on the number of words [`enumerate_words`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Per-start counts `f_i(k)` for a fixed order `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    pub n: Dimension,
    pub k: usize,
    /// Entry `i - 1` holds `f_i(k)`.
    pub per_start: Vec<BigUint>,
}

impl CountVector {
    pub fn total(&self) -> BigUint {
        self.per_start.iter().sum()
    }
}

/// `f(1), …, f(k_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub n: Dimension,
    /// `values[k - 1] == f(k)`.
    pub values: Vec<BigUint>,
}

impl CountSequence {
    /// `f(k)` for `1 <= k <= k_max`.
    pub fn get(&self, k: usize) -> Option<&BigUint> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }
}

/// One step of `f(k) = A · f(k-1)`.
fn step(rows: &[Vec<usize>], v: &[BigUint]) -> Vec<BigUint> {
    rows.iter()
        .map(|cols| cols.iter().map(|&j| &v[j]).sum())
        .collect()
}

/// Iterates the per-start vectors for `k = 1, 2, …`.
fn per_start_iter(n: Dimension) -> impl Iterator<Item = Vec<BigUint>> {
    let rows = build_adjacency(n).sparse_rows();
    let start = vec![BigUint::one(); n.n()];
    std::iter::successors(Some(start), move |v| Some(step(&rows, v)))
}

pub fn count_per_start(n: Dimension, k: usize) -> Result<CountVector> {
    if k < 1 {
        return Err(Error::OrderTooSmall(k));
    }
    let per_start = per_start_iter(n).nth(k - 1).expect("infinite iterator");
    Ok(CountVector { n, k, per_start })
}

/// `f(k)`; `f(0) = 1` counts the empty composition.
pub fn count_total(n: Dimension, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    per_start_iter(n)
        .nth(k - 1)
        .expect("infinite iterator")
        .into_iter()
        .sum()
}

pub fn count_sequence(n: Dimension, k_max: usize) -> Result<CountSequence> {
    if k_max < 1 {
        return Err(Error::OrderTooSmall(k_max));
    }
    let values = per_start_iter(n)
        .take(k_max)
        .map(|v| v.into_iter().sum())
        .collect();
    Ok(CountSequence { n, values })
}

/// Every meaningful word of length `k` in lexicographic order of the
/// application-order index tuple.
pub fn enumerate_words(n: Dimension, k: usize, cap: usize) -> Result<Vec<CompositionWord>> {
    if k < 1 {
        return Err(Error::OrderTooSmall(k));
    }
    let total = count_total(n, k);
    let count = match total.to_usize() {
        Some(c) if c <= cap => c,
        _ => {
            return Err(Error::EnumerationCap {
                count: total.to_string(),
                cap,
            })
        }
    };

    fn walk(rows: &[Vec<usize>], k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.iter().map(|&i| i + 1).collect());
            return;
        }
        let last = *prefix.last().expect("seeded with a first operator");
        for &j in &rows[last] {
            prefix.push(j);
            walk(rows, k, prefix, out);
            prefix.pop();
        }
    }

    // successor lists are ascending, so depth-first order is lexicographic
    let rows = build_adjacency(n).sparse_rows();
    let mut raw = Vec::with_capacity(count);
    let mut prefix = Vec::with_capacity(k);
    for first in 0..n.n() {
        prefix.push(first);
        walk(&rows, k, &mut prefix, &mut raw);
        prefix.pop();
    }
    let out = raw
        .iter()
        .map(|w| CompositionWord::from_indices(n, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Depth-first count of meaningful words without the matrix formula.
///
/// Used as an oracle against [`count_total`].
pub fn brute_force_count(n: Dimension, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let size = n.n();
    fn leaves(last: usize, remaining: usize, n: usize) -> BigUint {
        if remaining == 0 {
            return BigUint::one();
        }
        let mut acc = BigUint::zero();
        for j in 1..=n {
            if j == last + 1 || last + j == n + 1 {
                acc += leaves(j, remaining - 1, n);
            }
        }
        acc
    }
    (1..=size).map(|i| leaves(i, k - 1, size)).sum()
}
