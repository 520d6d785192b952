#![allow(dead_code)]

use std::collections::BTreeMap;

use nabla_core::calculus::{binomial, subsets, ComponentVector, DifferentialForm};
use nabla_core::polynomial::Polynomial;
use nabla_core::{CompositionWord, Dimension};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let r = rational(rng);
        if r != BigRational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// Random polynomial with up to `max_terms` terms, each exponent `<= max_exp`.
pub fn polynomial(
    rng: &mut ChaCha8Rng,
    n_vars: usize,
    max_terms: usize,
    max_exp: u32,
) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        n_vars,
        (0..count)
            .map(|_| {
                let e: Vec<u32> = (0..n_vars).map(|_| rng.gen_range(0..=max_exp)).collect();
                (e, rational(rng))
            })
            .collect::<Vec<_>>(),
    )
}

pub fn form(rng: &mut ChaCha8Rng, n: Dimension, degree: usize) -> DifferentialForm {
    let comps: BTreeMap<Vec<usize>, Polynomial> = subsets(n.n(), degree)
        .into_iter()
        .map(|s| (s, polynomial(rng, n.n(), 3, 3)))
        .collect();
    DifferentialForm::new(n, degree, comps).unwrap()
}

pub fn vector(rng: &mut ChaCha8Rng, n: Dimension, level: usize) -> ComponentVector {
    let entries = (0..binomial(n.n(), level))
        .map(|_| polynomial(rng, n.n(), 3, 3))
        .collect();
    ComponentVector::new(n, level, entries).unwrap()
}

/// Every monomial of total degree `<= max_degree` with a distinct nonzero
/// random coefficient.
pub fn generic_polynomial(rng: &mut ChaCha8Rng, n_vars: usize, max_degree: u32) -> Polynomial {
    let terms: Vec<(Vec<u32>, BigRational)> =
        nabla_core::calculus::monomials_up_to(n_vars, max_degree)
            .into_iter()
            .enumerate()
            .map(|(idx, e)| {
                // offset keeps coefficients pairwise distinct
                let base = nonzero_rational(rng).abs();
                (
                    e,
                    base + BigRational::from_integer(BigInt::from(100 * (idx as i64 + 1))),
                )
            })
            .collect();
    Polynomial::from_terms(n_vars, terms)
}

/// All meaningful words of every length in `1..=max_len`.
pub fn meaningful_words(n: Dimension, max_len: usize) -> Vec<CompositionWord> {
    (1..=max_len)
        .flat_map(|k| nabla_core::enumerate_words(n, k, usize::MAX).unwrap())
        .collect()
}
