//! Composition words, their triviality classes, and the non-trivial
//! alternating chains.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Dimension, OperatorIndex};

/// A chain of operators in application order: `indices[0]` is applied first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionWord {
    n: Dimension,
    indices: Vec<OperatorIndex>,
}

impl CompositionWord {
    pub fn new(n: Dimension, indices: Vec<OperatorIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyWord);
        }
        for &i in &indices {
            n.operator(i.get())?;
        }
        Ok(CompositionWord { n, indices })
    }

    /// Builds a word from raw 1-based indices.
    pub fn from_indices(n: Dimension, indices: &[usize]) -> Result<Self> {
        let ops = indices
            .iter()
            .map(|&i| n.operator(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, ops)
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn indices(&self) -> &[OperatorIndex] {
        &self.indices
    }

    pub fn raw(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First consecutive pair `(i_t, i_{t+1})` that is not composable.
    pub fn first_undefined_pair(&self) -> Option<(usize, usize)> {
        let n = self.n.n();
        self.indices.windows(2).find_map(|w| {
            let (i, j) = (w[0].get(), w[1].get());
            (j != i + 1 && i + j != n + 1).then_some((i, j))
        })
    }

    pub fn is_meaningful(&self) -> bool {
        self.first_undefined_pair().is_none()
    }

    /// Composition notation, last-applied operator leftmost: `∇3∘∇1`.
    pub fn composition_notation(&self) -> String {
        self.indices
            .iter()
            .rev()
            .map(|i| format!("∇{}", i.get()))
            .collect::<Vec<_>>()
            .join("∘")
    }

    /// `grad`/`curl`/`div` names for `n = 3`, `None` otherwise.
    pub fn named_notation(&self) -> Option<String> {
        if self.n.n() != 3 {
            return None;
        }
        Some(
            self.indices
                .iter()
                .rev()
                .map(|i| match i.get() {
                    1 => "grad",
                    2 => "curl",
                    _ => "div",
                })
                .collect::<Vec<_>>()
                .join("∘"),
        )
    }
}

impl fmt::Display for CompositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let raw: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", raw.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrivialityClass {
    /// Identically the zero operator.
    Zero,
    /// Meaningful and not identically zero.
    NonTrivial,
    /// Not meaningful: the nowhere-defined function.
    Undefined,
}

impl TrivialityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TrivialityClass::Zero => "zero",
            TrivialityClass::NonTrivial => "nontrivial",
            TrivialityClass::Undefined => "undefined",
        }
    }
}

impl fmt::Display for TrivialityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[inline]
fn pair_class(k: usize, j: usize, n: usize) -> TrivialityClass {
    if j == k + 1 {
        TrivialityClass::Zero
    } else if k + j == n + 1 {
        TrivialityClass::NonTrivial
    } else {
        TrivialityClass::Undefined
    }
}

/// Class of `∇_j ∘ ∇_k` (apply `∇_k` first).
///
/// `j == k + 1` is tested first, so the middle pair of an even dimension
/// (where both clauses hold) is `Zero`.
pub fn classify_pair(k: OperatorIndex, j: OperatorIndex, n: Dimension) -> TrivialityClass {
    pair_class(k.get(), j.get(), n.n())
}

/// Undefined if any step is undefined, otherwise Zero if any step is zero.
pub fn classify_word(w: &CompositionWord) -> TrivialityClass {
    let n = w.n.n();
    let mut zero = false;
    for p in w.indices.windows(2) {
        match pair_class(p[0].get(), p[1].get(), n) {
            TrivialityClass::Undefined => return TrivialityClass::Undefined,
            TrivialityClass::Zero => zero = true,
            TrivialityClass::NonTrivial => {}
        }
    }
    if zero {
        TrivialityClass::Zero
    } else {
        TrivialityClass::NonTrivial
    }
}

fn admissible_start(k: usize, n: usize, length: usize) -> bool {
    let j = n + 1 - k;
    match length {
        0 => false,
        1 => true,
        // only the pair (k, j) occurs
        2 => 2 * k != n,
        // both (k, j) and (j, k) occur
        _ => 2 * k != n && 2 * j != n,
    }
}

/// All non-trivial words of the given length: the alternating chains
/// `k, j, k, j, …` with `k + j = n + 1`, ordered by starting index.
pub fn enumerate_nontrivial(n: Dimension, length: usize) -> Result<Vec<CompositionWord>> {
    if length == 0 {
        return Err(Error::OrderTooSmall(0));
    }
    let size = n.n();
    (1..=size)
        .filter(|&k| admissible_start(k, size, length))
        .map(|k| {
            let j = size + 1 - k;
            let raw: Vec<usize> = (0..length)
                .map(|t| if t % 2 == 0 { k } else { j })
                .collect();
            CompositionWord::from_indices(n, &raw)
        })
        .collect()
}

/// Number of non-trivial words of a given length (`length >= 2`).
///
/// Odd `n`: `n`. Even `n`: `n - 1` at length 2 and `n - 2` beyond.
pub fn count_nontrivial(n: Dimension, length: usize) -> Result<BigUint> {
    if length < 2 {
        return Err(Error::OrderTooSmall(length));
    }
    let size = n.n();
    let count = if size % 2 == 1 {
        size
    } else if length == 2 {
        size - 1
    } else {
        size - 2
    };
    Ok(BigUint::from(count))
}
