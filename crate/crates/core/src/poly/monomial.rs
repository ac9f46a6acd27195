use std::cmp::Ordering;
use std::fmt;

/// Hard limit on the number of ring variables.
pub const MAX_VARS: usize = 8;

/// A monomial `x_0^e_0 ... x_7^e_7`. Unused variables carry exponent zero.
///
/// Ordered degree-reverse-lexicographically: higher total degree is larger;
/// on ties, the monomial with the smaller exponent in the last variable where
/// they differ is larger.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Panics if more than [`MAX_VARS`] exponents are given.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn variable(index: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: usize) -> u32 {
        u32::from(self.exps[var])
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Largest variable index with a nonzero exponent, plus one.
    pub fn support_width(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out.degree += other.degree;
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for (a, b) in out.exps.iter_mut().zip(&self.exps) {
            *a -= b;
        }
        out.degree -= self.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::default();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.degree += u32::from(out.exps[i]);
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.exps[i] != other.exps[i] {
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..self.support_width()])
    }
}
