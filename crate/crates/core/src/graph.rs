//! The composability relation between the operators `∇_1..∇_n` and its
//! adjacency matrix.
//!
//! `∇_j ∘ ∇_i` is meaningful iff `j == i + 1` or `i + j == n + 1`. Indices are
//! 1-based throughout the public surface.

use std::fmt;

use crate::error::{Error, Result};

/// Dimension `n` of the coordinate space `R^n`, with `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub const MIN: usize = 3;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Dimension(n))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0
    }

    /// `floor(n / 2)`.
    #[inline]
    pub fn m(self) -> usize {
        self.0 / 2
    }

    /// Validates `i` as an operator index for this dimension.
    pub fn operator(self, i: usize) -> Result<OperatorIndex> {
        if i == 0 || i > self.0 {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.0,
            });
        }
        Ok(OperatorIndex(i))
    }

    /// All operator indices `1..=n`.
    pub fn operators(self) -> impl Iterator<Item = OperatorIndex> {
        (1..=self.0).map(OperatorIndex)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 1-based index `i` of the operator `∇_i`.
///
/// Obtained through [`Dimension::operator`], which checks `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorIndex(usize);

impl OperatorIndex {
    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for OperatorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check(i: OperatorIndex, n: Dimension) -> Result<()> {
    if i.0 == 0 || i.0 > n.0 {
        return Err(Error::IndexOutOfRange { index: i.0, n: n.0 });
    }
    Ok(())
}

#[inline]
fn relation(i: usize, j: usize, n: usize) -> bool {
    j == i + 1 || i + j == n + 1
}

/// Whether `∇_j ∘ ∇_i` (apply `∇_i`, then `∇_j`) is meaningful.
pub fn is_composable(i: OperatorIndex, j: OperatorIndex, n: Dimension) -> Result<bool> {
    check(i, n)?;
    check(j, n)?;
    Ok(relation(i.0, j.0, n.0))
}

/// Ascending list of every `j` with `∇_i ρ ∇_j`.
pub fn successors(i: OperatorIndex, n: Dimension) -> Result<Vec<OperatorIndex>> {
    check(i, n)?;
    Ok((1..=n.0)
        .filter(|&j| relation(i.0, j, n.0))
        .map(OperatorIndex)
        .collect())
}

/// Boolean `n × n` matrix of the relation; row `i`, column `j` is true iff
/// `∇_j ∘ ∇_i` is meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    dim: Dimension,
    entries: Vec<bool>,
}

impl AdjacencyMatrix {
    /// Builds an arbitrary square boolean matrix (row-major).
    ///
    /// Only [`build_adjacency`] produces the composability relation; this is
    /// for test matrices fed to the characteristic polynomial.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let dim = Dimension::new(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::VariableCountMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(AdjacencyMatrix { dim, entries })
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    /// Entry `a_ij`, 1-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> bool {
        let n = self.dim.0;
        assert!(
            (1..=n).contains(&i) && (1..=n).contains(&j),
            "index out of range"
        );
        self.entries[(i - 1) * n + (j - 1)]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> &[bool] {
        let n = self.dim.0;
        &self.entries[(i - 1) * n..i * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.entries.chunks(self.dim.0)
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().filter(|&&b| b).count())
            .collect()
    }

    /// Column indices (0-based) of the true entries of each row.
    pub(crate) fn sparse_rows(&self) -> Vec<Vec<usize>> {
        self.rows()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(j, &b)| b.then_some(j))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Materializes the composability relation as an adjacency matrix.
pub fn build_adjacency(n: Dimension) -> AdjacencyMatrix {
    let size = n.0;
    let mut entries = Vec::with_capacity(size * size);
    for i in 1..=size {
        for j in 1..=size {
            entries.push(relation(i, j, size));
        }
    }
    AdjacencyMatrix { dim: n, entries }
}
