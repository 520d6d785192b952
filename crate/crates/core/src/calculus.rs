//! Polynomial differential forms on `R^n`, the exterior derivative, and the
//! operators `∇_i` acting on component vectors.
//!
//! A form of degree `p` is stored on the basis `dx_S`, `S` an ascending
//! subset of `{1..n}` with `|S| = p`. Component vectors at level `l` hold
//! `C(n, l)` polynomials in lexicographic subset order. Degrees `p <= m`
//! (`m = floor(n/2)`) are identified with level `p` by copying coefficients;
//! degrees `p > m` are identified with level `n - p` through
//! `v_S = sign(S, Sᶜ) · coeff(dx_{Sᶜ})`, where `sign(S, Sᶜ)` is the sign of the
//! permutation sorting `S ++ Sᶜ`. With this choice `∇_1, ∇_2, ∇_3` on `R^3`
//! are exactly grad, curl and div.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::classify::CompositionWord;
use crate::error::{Error, Result};
use crate::graph::{Dimension, OperatorIndex};
use crate::polynomial::{Monomial, Polynomial};

/// Ascending subset of `{1..n}`, 1-based.
pub type Subset = Vec<usize>;

/// All `size`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Subset> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Subset, out: &mut Vec<Subset>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for x in start..=n + 1 - need {
            cur.push(x);
            go(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(1, n, size, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn complement(s: &[usize], n: usize) -> Subset {
    (1..=n).filter(|x| !s.contains(x)).collect()
}

/// Sign of the permutation sorting the concatenation `S ++ T` (disjoint,
/// each ascending).
fn shuffle_sign(s: &[usize], t: &[usize]) -> bool {
    let inversions: usize = s
        .iter()
        .map(|&a| t.iter().filter(|&&b| b < a).count())
        .sum();
    inversions.is_multiple_of(2)
}

fn signed(p: Polynomial, positive: bool) -> Polynomial {
    if positive {
        p
    } else {
        -p
    }
}

/// Which identification applies to a form degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoSide {
    /// Degree `p <= m`, level `p`, coefficients copied.
    Low,
    /// Degree `p > m`, level `n - p`, signed complement.
    High,
}

impl IsoSide {
    pub fn for_degree(degree: usize, n: Dimension) -> IsoSide {
        if degree <= n.m() {
            IsoSide::Low
        } else {
            IsoSide::High
        }
    }

    pub fn level(self, degree: usize, n: Dimension) -> usize {
        match self {
            IsoSide::Low => degree,
            IsoSide::High => n.n() - degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    n: Dimension,
    degree: usize,
    components: BTreeMap<Subset, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(n: Dimension, degree: usize) -> Result<Self> {
        Self::new(n, degree, BTreeMap::new())
    }

    /// Zero coefficients are dropped; keys must be ascending `degree`-subsets.
    pub fn new(
        n: Dimension,
        degree: usize,
        components: BTreeMap<Subset, Polynomial>,
    ) -> Result<Self> {
        let size = n.n();
        if degree > size {
            return Err(Error::InvalidBasis {
                subset: Vec::new(),
                degree,
                n: size,
            });
        }
        let mut clean = BTreeMap::new();
        for (s, p) in components {
            let ascending = s.windows(2).all(|w| w[0] < w[1]);
            let in_range = s.iter().all(|&x| (1..=size).contains(&x));
            if s.len() != degree || !ascending || !in_range {
                return Err(Error::InvalidBasis {
                    subset: s,
                    degree,
                    n: size,
                });
            }
            if p.n_vars() != size {
                return Err(Error::VariableCountMismatch {
                    expected: size,
                    found: p.n_vars(),
                });
            }
            if !p.is_zero() {
                clean.insert(s, p);
            }
        }
        Ok(DifferentialForm {
            n,
            degree,
            components: clean,
        })
    }

    /// Zero-form `g`.
    pub fn function(n: Dimension, g: Polynomial) -> Result<Self> {
        Self::new(n, 0, BTreeMap::from([(Vec::new(), g)]))
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `dx_S`.
    pub fn component(&self, s: &[usize]) -> Polynomial {
        self.components
            .get(s)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n.n()))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Subset, &Polynomial)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (s, p)) in self.components.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            if !s.is_empty() {
                let basis: Vec<String> = s.iter().map(|x| format!("dx{x}")).collect();
                write!(f, " {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// An element of `A_level`: `C(n, level)` polynomials in lexicographic slot
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentVector {
    n: Dimension,
    level: usize,
    entries: Vec<Polynomial>,
}

impl ComponentVector {
    pub fn new(n: Dimension, level: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if level > n.m() {
            return Err(Error::IncompatibleDegree {
                level,
                degree: level,
                n: n.n(),
            });
        }
        let expected = binomial(n.n(), level);
        if entries.len() != expected {
            return Err(Error::ComponentCount {
                level,
                expected,
                found: entries.len(),
            });
        }
        if let Some(p) = entries.iter().find(|p| p.n_vars() != n.n()) {
            return Err(Error::VariableCountMismatch {
                expected: n.n(),
                found: p.n_vars(),
            });
        }
        Ok(ComponentVector { n, level, entries })
    }

    pub fn zero(n: Dimension, level: usize) -> Result<Self> {
        let len = binomial(n.n(), level);
        Self::new(n, level, vec![Polynomial::zero(n.n()); len])
    }

    /// Parses polynomial strings, one per slot.
    pub fn parse<S: AsRef<str>>(n: Dimension, level: usize, entries: &[S]) -> Result<Self> {
        let polys = entries
            .iter()
            .map(|s| Polynomial::parse(s.as_ref(), n.n()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, level, polys)
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ComponentVector) -> Result<ComponentVector> {
        if self.n != other.n || self.level != other.level {
            return Err(Error::LevelMismatch {
                operator: 0,
                expected: self.level,
                found: other.level,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComponentVector {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &BigRational) -> ComponentVector {
        ComponentVector {
            n: self.n,
            level: self.level,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Entries rendered in the polynomial syntax.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(Polynomial::to_string).collect()
    }
}

impl fmt::Display for ComponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

pub fn exterior_derivative(form: &DifferentialForm) -> Result<DifferentialForm> {
    let n = form.n;
    let size = n.n();
    if form.degree >= size {
        return DifferentialForm::zero(n, size);
    }
    let mut out: BTreeMap<Subset, Polynomial> = BTreeMap::new();
    for (s, g) in &form.components {
        if g.n_vars() != size {
            return Err(Error::VariableCountMismatch {
                expected: size,
                found: g.n_vars(),
            });
        }
        for t in (1..=size).filter(|t| !s.contains(t)) {
            let dg = g.derivative(t);
            if dg.is_zero() {
                continue;
            }
            // moving dx_t past the smaller indices of S
            let before = s.iter().filter(|&&x| x < t).count();
            let mut key = s.clone();
            key.insert(before, t);
            let term = signed(dg, before % 2 == 0);
            let slot = out.entry(key).or_insert_with(|| Polynomial::zero(size));
            *slot = &*slot + &term;
        }
    }
    DifferentialForm::new(n, form.degree + 1, out)
}

pub fn iso_to_components(form: &DifferentialForm) -> ComponentVector {
    let n = form.n;
    let size = n.n();
    let side = IsoSide::for_degree(form.degree, n);
    let level = side.level(form.degree, n);
    let entries = subsets(size, level)
        .into_iter()
        .map(|s| match side {
            IsoSide::Low => form.component(&s),
            IsoSide::High => {
                let t = complement(&s, size);
                signed(form.component(&t), shuffle_sign(&s, &t))
            }
        })
        .collect();
    ComponentVector { n, level, entries }
}

pub fn iso_from_components(v: &ComponentVector, target_degree: usize) -> Result<DifferentialForm> {
    let n = v.n;
    let size = n.n();
    let side = IsoSide::for_degree(target_degree, n);
    if target_degree > size || side.level(target_degree, n) != v.level {
        return Err(Error::IncompatibleDegree {
            level: v.level,
            degree: target_degree,
            n: size,
        });
    }
    let mut components = BTreeMap::new();
    for (s, p) in subsets(size, v.level).into_iter().zip(&v.entries) {
        match side {
            IsoSide::Low => {
                components.insert(s, p.clone());
            }
            IsoSide::High => {
                let t = complement(&s, size);
                let positive = shuffle_sign(&s, &t);
                components.insert(t, signed(p.clone(), positive));
            }
        }
    }
    DifferentialForm::new(n, target_degree, components)
}

/// Level of the input of `∇_i`.
pub fn domain_level(i: OperatorIndex, n: Dimension) -> usize {
    (i.get() - 1).min(n.n() + 1 - i.get())
}

/// Level of the output of `∇_i`.
pub fn codomain_level(i: OperatorIndex, n: Dimension) -> usize {
    i.get().min(n.n() - i.get())
}

/// `∇_i`: lift to a form of degree `i - 1`, differentiate, push down.
pub fn nabla(i: OperatorIndex, v: &ComponentVector) -> Result<ComponentVector> {
    let n = v.n;
    n.operator(i.get())?;
    let expected = domain_level(i, n);
    if v.level != expected {
        return Err(Error::LevelMismatch {
            operator: i.get(),
            expected,
            found: v.level,
        });
    }
    let form = iso_from_components(v, i.get() - 1)?;
    Ok(iso_to_components(&exterior_derivative(&form)?))
}

/// Applies the word in application order.
pub fn apply_word(w: &CompositionWord, v: &ComponentVector) -> Result<ComponentVector> {
    if let Some((first, second)) = w.first_undefined_pair() {
        return Err(Error::NotComposable { first, second });
    }
    if w.dimension() != v.n {
        return Err(Error::VariableCountMismatch {
            expected: w.dimension().n(),
            found: v.n.n(),
        });
    }
    w.indices()
        .iter()
        .try_fold(v.clone(), |acc, &i| nabla(i, &acc))
}

/// Exponent vectors over `n_vars` variables of total degree `<= max_degree`.
pub fn monomials_up_to(n_vars: usize, max_degree: u32) -> Vec<Monomial> {
    fn go(var: usize, budget: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if var == cur.len() {
            out.push(cur.clone());
            return;
        }
        for p in 0..=budget {
            cur[var] = p;
            go(var + 1, budget - p, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    go(0, max_degree, &mut vec![0; n_vars], &mut out);
    out
}

/// A single-monomial input on which the word is nonzero, if any.
///
/// The composite is a linear constant-coefficient operator of order
/// `len(w)`, so it is the zero operator iff it kills every monomial of total
/// degree `<= len(w)` in every slot.
pub fn zero_operator_witness(w: &CompositionWord) -> Result<Option<ComponentVector>> {
    if let Some((first, second)) = w.first_undefined_pair() {
        return Err(Error::NotComposable { first, second });
    }
    let n = w.dimension();
    let size = n.n();
    let level = domain_level(w.indices()[0], n);
    let slots = binomial(size, level);
    let probes = monomials_up_to(size, w.len() as u32);
    for slot in 0..slots {
        for e in &probes {
            let mut entries = vec![Polynomial::zero(size); slots];
            entries[slot] = Polynomial::monomial(size, e.clone(), BigRational::one());
            let input = ComponentVector { n, level, entries };
            if !apply_word(w, &input)?.is_zero() {
                return Ok(Some(input));
            }
        }
    }
    Ok(None)
}

pub fn is_zero_operator(w: &CompositionWord) -> Result<bool> {
    Ok(zero_operator_witness(w)?.is_none())
}
