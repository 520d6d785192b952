//! Multivariate polynomials with exact rational coefficients.
//!
//! Textual syntax: `3/2*x1^2*x3 - x2`, variables `x1..xn`, `^` for powers,
//! parentheses allowed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Canonical form: no zero coefficients stored, so structural equality is
/// polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: BigRational) -> Self {
        Self::monomial(n_vars, vec![0; n_vars], c)
    }

    pub fn from_int(n_vars: usize, c: i64) -> Self {
        Self::constant(n_vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The coordinate `x_i`, 1-based.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!((1..=n_vars).contains(&i), "variable x{i} out of range");
        let mut e = vec![0; n_vars];
        e[i - 1] = 1;
        Self::monomial(n_vars, e, BigRational::one())
    }

    pub fn monomial(n_vars: usize, exponents: Monomial, coeff: BigRational) -> Self {
        assert_eq!(exponents.len(), n_vars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        Polynomial { n_vars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Polynomial::zero(n_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n_vars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_i`, 1-based.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!((1..=self.n_vars).contains(&i), "variable x{i} out of range");
        let mut out = Polynomial::zero(self.n_vars);
        for (e, c) in &self.terms {
            let power = e[i - 1];
            if power == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i - 1] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(power)));
        }
        out
    }

    fn check_vars(&self, other: &Polynomial) {
        assert_eq!(
            self.n_vars, other.n_vars,
            "polynomials over different variable sets"
        );
    }

    /// Parses the textual syntax over `n_vars` variables.
    pub fn parse(input: &str, n_vars: usize) -> Result<Polynomial> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
            n_vars,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea
                    .iter()
                    .zip(eb)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn display_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| display_order(a.0, b.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            match (idx == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn small(&mut self) -> Result<u32> {
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| self.error("number too large"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.n_vars);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.small()?;
        let mut out = Polynomial::from_int(self.n_vars, 1);
        for _ in 0..exp {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.small()? as usize;
                if i == 0 || i > self.n_vars {
                    return Err(self.error(&format!("variable x{i} outside x1..x{}", self.n_vars)));
                }
                Ok(Polynomial::var(self.n_vars, i))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(Polynomial::constant(self.n_vars, value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_and_display() {
        let poly = p("3/2*x1^2*x3 - x2");
        assert_eq!(poly.num_terms(), 2);
        assert_eq!(poly.coefficient(&[2, 0, 1]), q(3, 2));
        assert_eq!(poly.coefficient(&[0, 1, 0]), q(-1, 1));
        assert_eq!(poly.to_string(), "3/2*x1^2*x3 - x2");
        assert_eq!(p("-x2 + 3/2 * x3 * x1^2").to_string(), "3/2*x1^2*x3 - x2");
        assert_eq!(p("(x1 + x2)^2").to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(p("x1 - x1").to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-7/14").to_string(), "-1/2");
        assert_eq!(p("4/2*x1").to_string(), "2*x1");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "x4", "x0", "x1 +", "3/0", "x1 ** x2", "(x1", "y", "x1 x2",
        ] {
            assert!(
                matches!(Polynomial::parse(bad, 3), Err(Error::Parse(_))),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn derivative_power_rule() {
        let poly = p("x1^3*x2 + 5*x2 - 2");
        assert_eq!(poly.derivative(1), p("3*x1^2*x2"));
        assert_eq!(poly.derivative(2), p("x1^3 + 5"));
        assert!(poly.derivative(3).is_zero());
        assert_eq!(p("7").derivative(1), Polynomial::zero(3));
    }

    #[test]
    fn arithmetic() {
        let a = p("x1 + x2");
        let b = p("x1 - x2");
        assert_eq!(&a * &b, p("x1^2 - x2^2"));
        assert_eq!(&a + &b, p("2*x1"));
        assert_eq!(&a - &a, Polynomial::zero(3));
        assert_eq!(-&a, p("-x1 - x2"));
        assert_eq!(a.scale(&q(1, 2)), p("1/2*x1 + 1/2*x2"));
        assert!(a.scale(&q(0, 1)).is_zero());
        assert_eq!(p("x1^2*x3 + x2").total_degree(), Some(3));
        assert_eq!(Polynomial::zero(3).total_degree(), None);
    }
}
