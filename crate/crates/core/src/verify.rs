//! Self-check suites behind `nabla verify`.
//!
//! Inputs are deterministic so reports are reproducible byte for byte.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::calculus::{
    apply_word, exterior_derivative, is_zero_operator, monomials_up_to, nabla, subsets,
    ComponentVector, DifferentialForm,
};
use crate::classify::{classify_word, TrivialityClass};
use crate::counting::{
    brute_force_count, count_per_start, count_sequence, count_total, enumerate_words,
};
use crate::graph::{build_adjacency, Dimension};
use crate::polynomial::Polynomial;
use crate::recurrence::{
    characteristic_polynomial, minimal_recurrence, recurrence_from_polynomial,
    reduced_characteristic_recurrence, reference_table, verify_recurrence,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Counting,
    Recurrence,
    Calculus,
    All,
}

impl Scope {
    fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>, summary: impl Into<String>) -> Check {
        match failure {
            None => Check {
                name: name.into(),
                passed: true,
                detail: summary.into(),
            },
            Some(detail) => Check {
                name: name.into(),
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

fn dim(n: usize) -> Dimension {
    Dimension::new(n).expect("n >= 3")
}

pub fn run(scope: Scope) -> Vec<Check> {
    let mut checks = Vec::new();
    if scope.includes(Scope::Counting) {
        checks.extend(counting_checks());
    }
    if scope.includes(Scope::Recurrence) {
        checks.extend(recurrence_checks());
    }
    if scope.includes(Scope::Calculus) {
        checks.extend(calculus_checks());
    }
    checks
}

fn counting_checks() -> Vec<Check> {
    let mut oracle = None;
    'outer: for n in 3..=6 {
        for k in 1..=10 {
            let (fast, slow) = (count_total(dim(n), k), brute_force_count(dim(n), k));
            if fast != slow {
                oracle = Some(format!("n={n} k={k}: matrix {fast}, depth-first {slow}"));
                break 'outer;
            }
        }
    }

    let mut fib = None;
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::from(3u32));
    for k in 1..=30 {
        // a = F(k+2), b = F(k+3)
        let f = count_total(dim(3), k);
        if f != b {
            fib = Some(format!("k={k}: f(k)={f}, F(k+3)={b}"));
            break;
        }
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }

    let mut decomposition = None;
    'dec: for n in 3..=12 {
        for k in 1..=20 {
            let v = count_per_start(dim(n), k).expect("k >= 1");
            if v.total() != count_total(dim(n), k) {
                decomposition = Some(format!("n={n} k={k}"));
                break 'dec;
            }
        }
    }

    let mut words = None;
    'w: for n in 3..=6 {
        for k in 1..=6 {
            let ws = enumerate_words(dim(n), k, usize::MAX).expect("small enumeration");
            if BigUint::from(ws.len()) != brute_force_count(dim(n), k)
                || !ws.iter().all(|w| w.is_meaningful())
            {
                words = Some(format!("n={n} k={k}"));
                break 'w;
            }
        }
    }

    vec![
        Check::new(
            "counting/oracle",
            oracle,
            "matrix formula equals depth-first count for n<=6, k<=10",
        ),
        Check::new("counting/fibonacci", fib, "f(k) = F(k+3) for n=3, k<=30"),
        Check::new(
            "counting/decomposition",
            decomposition,
            "sum of f_i(k) equals f(k) for n<=12, k<=20",
        ),
        Check::new(
            "counting/enumeration",
            words,
            "enumerated words are meaningful and fully counted for n<=6, k<=6",
        ),
    ]
}

fn recurrence_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for (n, row) in reference_table() {
        let seq = count_sequence(dim(n), 2 * n + 8).expect("k_max >= 1");
        let check = match minimal_recurrence(&seq) {
            Ok(minimal) if minimal.same_relation(&row) => Check::new(
                format!("recurrence/table n={n}"),
                None,
                format!("{minimal}"),
            ),
            Ok(minimal) => {
                let reduced = reduced_characteristic_recurrence(&build_adjacency(dim(n)));
                Check::new(
                    format!("recurrence/table n={n}"),
                    Some(format!(
                        "minimal {minimal}, table {row} (holds on sequence: {}), reduced characteristic {reduced}",
                        verify_recurrence(&row, &seq)
                    )),
                    "",
                )
            }
            Err(e) => Check::new(format!("recurrence/table n={n}"), Some(e.to_string()), ""),
        };
        checks.push(check);
    }

    let mut cayley = None;
    for n in 3..=12 {
        let p = characteristic_polynomial(&build_adjacency(dim(n)));
        let r = recurrence_from_polynomial(&p).expect("monic");
        let seq = count_sequence(dim(n), n + 20).expect("k_max >= 1");
        if !verify_recurrence(&r, &seq) {
            cayley = Some(format!("n={n}: {r} fails"));
            break;
        }
    }
    checks.push(Check::new(
        "recurrence/characteristic",
        cayley,
        "characteristic recurrence annihilates f(k), k in n+1..=n+20, n<=12",
    ));
    checks
}

/// Every monomial of total degree `<= max_degree`, with pairwise distinct
/// coefficients derived from `salt`.
fn generic(n_vars: usize, max_degree: u32, salt: i64) -> Polynomial {
    let terms = monomials_up_to(n_vars, max_degree)
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let i = i as i64;
            (
                e,
                BigRational::new(BigInt::from(7 * i + salt), BigInt::from(i % 5 + 1)),
            )
        })
        .collect::<Vec<_>>();
    Polynomial::from_terms(n_vars, terms)
}

fn calculus_checks() -> Vec<Check> {
    let mut d_squared = None;
    'dd: for n in 3..=6 {
        let d = dim(n);
        for degree in 0..=n {
            let comps = subsets(n, degree)
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, generic(n, 3, 11 * i as i64 + 1)))
                .collect();
            let w = DifferentialForm::new(d, degree, comps).expect("well-formed");
            let dd = exterior_derivative(&exterior_derivative(&w).expect("d")).expect("d");
            if !dd.is_zero() {
                d_squared = Some(format!("n={n} degree={degree}: {dd}"));
                break 'dd;
            }
        }
    }

    let n3 = dim(3);
    let op = |i| n3.operator(i).expect("1..=3");
    let f = generic(3, 4, 1);
    let grad = nabla(
        op(1),
        &ComponentVector::new(n3, 0, vec![f.clone()]).expect("level 0"),
    )
    .expect("grad");
    let fs = [generic(3, 4, 2), generic(3, 4, 3), generic(3, 4, 5)];
    let v = ComponentVector::new(n3, 1, fs.to_vec()).expect("level 1");
    let dv = |i: usize, j: usize| fs[i - 1].derivative(j);
    let curl = nabla(op(2), &v).expect("curl");
    let div = nabla(op(3), &v).expect("div");
    let mut identities = Vec::new();
    if grad.entries() != [f.derivative(1), f.derivative(2), f.derivative(3)] {
        identities.push("grad");
    }
    if curl.entries()
        != [
            &dv(3, 2) - &dv(2, 3),
            &dv(1, 3) - &dv(3, 1),
            &dv(2, 1) - &dv(1, 2),
        ]
    {
        identities.push("curl");
    }
    if div.entries() != [&(&dv(1, 1) + &dv(2, 2)) + &dv(3, 3)] {
        identities.push("div");
    }
    let zero_pairs = [
        (
            vec![1usize, 2],
            ComponentVector::new(n3, 0, vec![f.clone()]).expect("level 0"),
        ),
        (vec![2, 3], v.clone()),
    ];
    for (w, input) in &zero_pairs {
        let word = crate::classify::CompositionWord::from_indices(n3, w).expect("valid");
        if !apply_word(&word, input).expect("meaningful").is_zero() {
            identities.push(if w[0] == 1 {
                "curl∘grad"
            } else {
                "div∘curl"
            });
        }
    }
    let identities = (!identities.is_empty()).then(|| format!("failed: {}", identities.join(", ")));

    let mut concordance = None;
    let mut checked = 0usize;
    'c: for n in 3..=5 {
        for len in 1..=4 {
            for w in enumerate_words(dim(n), len, usize::MAX).expect("small enumeration") {
                let zero = is_zero_operator(&w).expect("meaningful");
                let class = classify_word(&w);
                checked += 1;
                if zero != (class == TrivialityClass::Zero) {
                    concordance = Some(format!(
                        "n={n} word {w}: symbolic zero {zero}, class {class}"
                    ));
                    break 'c;
                }
            }
        }
    }

    vec![
        Check::new(
            "calculus/d-squared",
            d_squared,
            "d(d(w)) = 0 for every degree, n<=6",
        ),
        Check::new(
            "calculus/grad-curl-div",
            identities,
            "n=3 operators are grad, curl, div; curl∘grad = div∘curl = 0",
        ),
        Check::new(
            "calculus/triviality",
            concordance,
            format!(
                "symbolic zero test agrees with classification on {checked} words, n<=5, length<=4"
            ),
        ),
    ]
}
