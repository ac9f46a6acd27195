use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MAX_VARS};
use crate::graded::{Component, KernelError};

/// A polynomial with exact rational coefficients. No zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(nvars, Monomial::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn term(nvars: usize, mono: Monomial, c: BigRational) -> Self {
        assert!(
            mono.support_width() <= nvars,
            "monomial uses undeclared variables"
        );
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        Self::term(nvars, Monomial::variable(index), BigRational::one())
    }

    /// Sums the given terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert!(
                m.support_width() <= nvars,
                "monomial uses undeclared variables"
            );
            p.add_term(m, &c);
        }
        p
    }

    /// Integer coefficients on exponent vectors, handy in tests.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), integer(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigRational> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The common degree of all terms, if the polynomial is a nonzero form.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let top = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == top).then_some(top)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Splits into forms, keyed by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    /// The same polynomial read in a ring with `nvars` variables, the new
    /// ones appended after the existing ones.
    pub fn with_nvars(&self, nvars: usize) -> Polynomial {
        assert!(nvars <= MAX_VARS);
        assert!(
            self.terms.keys().all(|m| m.support_width() <= nvars),
            "polynomial uses variables beyond the target ring"
        );
        Polynomial {
            nvars,
            terms: self.terms.clone(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), KernelError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(KernelError::VariableMismatch)
        }
    }

    /// Inverse of the leading coefficient, if nonzero.
    pub fn leading_coefficient_inverse(&self) -> Option<BigRational> {
        self.leading_term().map(|(_, c)| c.recip())
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient_inverse() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Canonical comparison: terms from the top down, monomial first, then
    /// coefficient. The zero polynomial is the smallest.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        let mut left = self.terms.iter().rev();
        let mut right = other.terms.iter().rev();
        loop {
            match (left.next(), right.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let ord = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }

    /// Renders with the given variable names, e.g. `x^2 - 1/2*x*y + 3`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let is_one = magnitude.is_one();
            if *m == Monomial::one() {
                out.push_str(&fmt_rational(&magnitude));
            } else if is_one {
                out.push_str(&m.fmt_with(names));
            } else {
                out.push_str(&fmt_rational(&magnitude));
                out.push('*');
                out.push_str(&m.fmt_with(names));
            }
        }
        out
    }
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn default_names(nvars: usize) -> Vec<String> {
    const NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];
    NAMES[..nvars].iter().map(|s| s.to_string()).collect()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_names(self.nvars)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_names(self.nvars)))
    }
}

impl Component for Polynomial {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable mismatch");
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    fn negated(&self) -> Self {
        -self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("variable mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("variable mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("variable mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(2, terms)
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, &[1, 0]), (1, &[0, 1])]);
        let b = p(&[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(&a * &b, p(&[(1, &[2, 0]), (-1, &[0, 2])]));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = p(&[(3, &[2, 1]), (-2, &[0, 0])]);
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn exact_rationals() {
        let half_x = Polynomial::term(2, Monomial::variable(0), rational(1, 2));
        let two = Polynomial::constant(2, integer(2));
        assert_eq!(&half_x * &two, Polynomial::variable(2, 0));
    }

    #[test]
    fn variable_mismatch_is_reported() {
        let a = Polynomial::variable(2, 0);
        let b = Polynomial::variable(3, 0);
        assert_eq!(a.checked_add(&b), Err(KernelError::VariableMismatch));
        assert_eq!(a.checked_mul(&b), Err(KernelError::VariableMismatch));
    }

    #[test]
    fn formatting() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = Polynomial::from_terms(
            2,
            [
                (Monomial::from_exponents(&[2, 0]), integer(1)),
                (Monomial::from_exponents(&[1, 1]), rational(-1, 2)),
                (Monomial::one(), integer(3)),
            ],
        );
        assert_eq!(f.fmt_with(&names), "x^2 - 1/2*x*y + 3");
        assert_eq!((-&Polynomial::one(2)).fmt_with(&names), "-1");
        assert_eq!(Polynomial::zero(2).fmt_with(&names), "0");
    }

    #[test]
    fn homogeneous_parts_split_by_degree() {
        let f = p(&[(1, &[2, 0]), (1, &[0, 1]), (1, &[0, 0])]);
        let parts = f.homogeneous_parts();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(parts.values().all(Polynomial::is_homogeneous));
        assert!(!f.is_homogeneous());
    }
}
