//! Euclid over `Q[x]`, on dense coefficient vectors.

use num_rational::BigRational;
use num_traits::Zero;

use super::OracleError;
use crate::poly::{Monomial, Polynomial};

/// Coefficients by exponent, highest nonzero last.
type Dense = Vec<BigRational>;

fn dense(p: &Polynomial) -> Result<Dense, OracleError> {
    if p.nvars() != 1 {
        return Err(OracleError::NotUnivariate { nvars: p.nvars() });
    }
    let mut out: Dense = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponent(0) as usize;
        if out.len() <= e {
            out.resize(e + 1, BigRational::zero());
        }
        out[e] = c.clone();
    }
    Ok(out)
}

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn remainder(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        trim(&mut r);
    }
    r
}

fn monic(p: Dense) -> Dense {
    match p.last() {
        Some(lead) => {
            let inv = lead.recip();
            p.into_iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

fn sparse(p: &Dense) -> Polynomial {
    Polynomial::from_terms(
        1,
        p.iter()
            .enumerate()
            .map(|(e, c)| (Monomial::from_exponents(&[e as u32]), c.clone())),
    )
}

/// Monic generator of the ideal spanned by `gens` (zero if all are zero).
pub fn univariate_gcd(gens: &[Polynomial]) -> Result<Polynomial, OracleError> {
    let mut g: Dense = Vec::new();
    for p in gens {
        let mut b = dense(p)?;
        trim(&mut b);
        let mut a = std::mem::take(&mut g);
        while !b.is_empty() {
            let r = remainder(&a, &b);
            a = b;
            b = r;
        }
        g = a;
    }
    Ok(sparse(&monic(g)))
}

/// Whether `divisor` divides `p` in `Q[x]`. Zero divides only zero.
pub fn univariate_divides(divisor: &Polynomial, p: &Polynomial) -> Result<bool, OracleError> {
    let mut b = dense(divisor)?;
    let mut a = dense(p)?;
    trim(&mut a);
    trim(&mut b);
    if b.is_empty() {
        return Ok(a.is_empty());
    }
    if b.len() == 1 {
        return Ok(true);
    }
    Ok(remainder(&a, &b).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32)]) -> Polynomial {
        let t: Vec<(i64, Vec<u32>)> = terms.iter().map(|(c, e)| (*c, vec![*e])).collect();
        let refs: Vec<(i64, &[u32])> = t.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        Polynomial::from_int_terms(1, &refs)
    }

    #[test]
    fn coprime_generators_give_the_unit_ideal() {
        let g = univariate_gcd(&[p(&[(1, 2), (-1, 0)]), p(&[(1, 3)])]).unwrap();
        assert_eq!(g, Polynomial::one(1));
    }

    #[test]
    fn common_factor() {
        let g = univariate_gcd(&[p(&[(1, 2), (1, 1)]), p(&[(1, 3)])]).unwrap();
        assert_eq!(g, p(&[(1, 1)]));
    }

    #[test]
    fn single_generator_is_made_monic() {
        let g = univariate_gcd(&[p(&[(3, 2), (6, 0)])]).unwrap();
        assert_eq!(g, p(&[(1, 2), (2, 0)]));
        assert!(univariate_divides(&g, &p(&[(1, 3), (2, 1)])).unwrap());
        assert!(!univariate_divides(&g, &p(&[(1, 1)])).unwrap());
    }

    #[test]
    fn rejects_several_variables() {
        let q = Polynomial::variable(2, 0);
        assert!(matches!(
            univariate_gcd(&[q]),
            Err(OracleError::NotUnivariate { nvars: 2 })
        ));
    }
}
