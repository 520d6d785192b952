//! Counting, classification and symbolic verification of compositions of the
//! first-order differential operations `∇_1..∇_n` on `R^n`.
//!
//! `∇_i` is the exterior derivative on forms of degree `i - 1`, transported to
//! plain component vectors. For `n = 3` the three operators are grad, curl
//! and div.

pub mod calculus;
pub mod classify;
pub mod counting;
pub mod error;
pub mod graph;
pub mod polynomial;
pub mod recurrence;
pub mod verify;

pub use classify::{
    classify_pair, classify_word, count_nontrivial, enumerate_nontrivial, CompositionWord,
    TrivialityClass,
};
pub use counting::{
    brute_force_count, count_per_start, count_sequence, count_total, enumerate_words,
    CountSequence, CountVector, DEFAULT_ENUMERATION_CAP,
};
pub use error::{Error, Result};
pub use graph::{
    build_adjacency, is_composable, successors, AdjacencyMatrix, Dimension, OperatorIndex,
};
pub use recurrence::{
    characteristic_polynomial, minimal_recurrence, minimal_recurrence_of_terms,
    recurrence_from_polynomial, reduced_characteristic_recurrence, reference_table,
    verify_recurrence, IntegerPolynomial, Recurrence,
};
