//! Multivariate polynomials over the rationals, graded by total degree, as a
//! homogeneous kernel.
//!
//! Homogeneous syzygies and memberships are answered by a classical
//! Gröbner basis of the prepared family under degrevlex (position over term),
//! with Schreyer lifting of the S-vector reductions for the syzygies.

mod classical;
mod monomial;
mod polynomial;

use std::cmp::Ordering;

use num_rational::BigRational;

pub use monomial::{Monomial, MAX_VARS};
pub use polynomial::{fmt_rational, integer, rational, Polynomial};

use crate::graded::{
    Degree, GradedElement, HomVector, HomogeneousComponent, HomogeneousKernel, KernelError,
    ModuleVector, RingElement, ShiftedFreeModule, SyzygyRow,
};
use classical::{minimal_generators, ClassicalBasis, SparseVec, Term};

/// `Q[x_1, ..., x_n]` with `deg(x_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, KernelError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(KernelError::TooManyVariables {
                requested: names.len(),
                limit: MAX_VARS,
            });
        }
        Ok(PolyRing { names })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Polynomial::variable(self.nvars(), i))
    }

    pub fn zero_poly(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn constant(&self, c: BigRational) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    /// Splits a polynomial into its forms.
    pub fn graded(&self, p: &Polynomial) -> RingElement<Polynomial> {
        GradedElement::from_components(
            p.homogeneous_parts()
                .into_iter()
                .map(|(d, f)| (Degree::new(d as i32), f)),
        )
    }

    pub fn flatten(&self, a: &RingElement<Polynomial>) -> Polynomial {
        let mut out = self.zero_poly();
        for (_, c) in a.components() {
            out = &out + c;
        }
        out
    }

    /// An element of the ring viewed as a rank-one free module.
    pub fn ring_vector(&self, p: &Polynomial) -> ModuleVector<Polynomial> {
        ShiftedFreeModule::ring()
            .vector_from_entries(self, &[self.graded(p)])
            .expect("rank one")
    }

    /// A module vector from one (inhomogeneous) polynomial per basis vector.
    pub fn module_vector(
        &self,
        module: &ShiftedFreeModule,
        entries: &[Polynomial],
    ) -> Result<ModuleVector<Polynomial>, KernelError> {
        for p in entries {
            if p.nvars() != self.nvars() {
                return Err(KernelError::VariableMismatch);
            }
        }
        let graded: Vec<_> = entries.iter().map(|p| self.graded(p)).collect();
        Ok(module.vector_from_entries(self, &graded)?)
    }

    /// One polynomial per basis vector.
    pub fn module_entries(
        &self,
        module: &ShiftedFreeModule,
        v: &ModuleVector<Polynomial>,
    ) -> Vec<Polynomial> {
        module
            .entries_of(v)
            .iter()
            .map(|e| self.flatten(e))
            .collect()
    }

    /// The same ring with `extra` further variables.
    pub fn extended(&self, extra: &[&str]) -> Result<PolyRing, KernelError> {
        PolyRing::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.to_string())),
        )
    }

    fn to_sparse(&self, v: &HomVector<Polynomial>) -> SparseVec {
        let mut terms = Vec::new();
        for (pos, entry) in v.entries.iter().enumerate() {
            for (m, c) in entry.terms() {
                terms.push((Term { pos, mono: *m }, c.clone()));
            }
        }
        SparseVec::from_unsorted(terms)
    }

    fn polys_of(&self, v: &SparseVec, len: usize) -> Vec<Polynomial> {
        let mut out: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); len];
        for (t, c) in &v.terms {
            out[t.pos].push((t.mono, c.clone()));
        }
        out.into_iter()
            .map(|terms| Polynomial::from_terms(self.nvars(), terms))
            .collect()
    }
}

/// A prepared homogeneous family: its generators and their classical basis.
#[derive(Debug, Clone)]
pub struct PolySpan {
    degrees: Vec<Degree>,
    rank: usize,
    inputs: Vec<SparseVec>,
    basis: ClassicalBasis,
}

impl PolySpan {
    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }
}

impl HomogeneousKernel for PolyRing {
    type Hom = Polynomial;
    type Span = PolySpan;

    fn zero(&self) -> Polynomial {
        self.zero_poly()
    }

    fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }

    fn is_homogeneous_of(&self, a: &Polynomial, degree: Degree) -> bool {
        a.nvars() == self.nvars()
            && (a.is_zero() || a.homogeneous_degree().map(|d| d as i32) == Some(degree.value()))
    }

    fn compare(&self, a: &Polynomial, b: &Polynomial) -> Ordering {
        a.canonical_cmp(b)
    }

    /// Inverse of the coefficient of the leading term under position over
    /// term: first nonzero entry, largest monomial.
    fn monic_factor(&self, v: &HomVector<Polynomial>) -> Option<Polynomial> {
        let entry = v.entries.iter().find(|e| !e.is_zero())?;
        let inv = entry.leading_coefficient_inverse()?;
        Some(self.constant(inv))
    }

    fn prepare(
        &self,
        module: &ShiftedFreeModule,
        gens: &[HomogeneousComponent<HomVector<Polynomial>>],
    ) -> Result<PolySpan, KernelError> {
        for (index, g) in gens.iter().enumerate() {
            if g.payload.len() != module.rank() {
                return Err(crate::graded::GradedError::RankMismatch {
                    rank: module.rank(),
                    found: g.payload.len(),
                }
                .into());
            }
            for (pos, entry) in g.payload.entries.iter().enumerate() {
                if entry.nvars() != self.nvars() {
                    return Err(KernelError::VariableMismatch);
                }
                if !self.is_homogeneous_of(entry, g.degree - module.shift(pos)) {
                    return Err(KernelError::NotHomogeneous { index });
                }
            }
        }
        let inputs: Vec<SparseVec> = gens.iter().map(|g| self.to_sparse(&g.payload)).collect();
        let basis = ClassicalBasis::compute(&inputs, true);
        Ok(PolySpan {
            degrees: gens.iter().map(|g| g.degree).collect(),
            rank: module.rank(),
            inputs,
            basis,
        })
    }

    /// Minimal homogeneous syzygy generators, each scaled so its leading
    /// coefficient is one, sorted by degree and then in descending canonical
    /// order of the entries.
    fn syzygies(&self, span: &PolySpan) -> Result<Vec<SyzygyRow<Polynomial>>, KernelError> {
        if span.inputs.is_empty() {
            return Ok(Vec::new());
        }
        let all = span.basis.schreyer_syzygies(&span.inputs);
        let base = span.degrees.iter().min().copied().unwrap_or(Degree::ZERO);
        let shifts: Vec<u32> = span
            .degrees
            .iter()
            .map(|d| (*d - base).value() as u32)
            .collect();
        let kept = minimal_generators(all, &shifts);
        let mut rows: Vec<SyzygyRow<Polynomial>> = kept
            .into_iter()
            .map(|mut v| {
                let (t, c) = v.lead().cloned().expect("nonzero syzygy");
                v.scale(&c.recip());
                SyzygyRow {
                    degree: Degree::new(t.mono.degree() as i32) + span.degrees[t.pos],
                    entries: self.polys_of(&v, span.inputs.len()),
                }
            })
            .collect();
        rows.sort_by(|a, b| {
            a.degree.cmp(&b.degree).then_with(|| {
                self.compare_vectors(
                    &HomVector::new(b.entries.clone()),
                    &HomVector::new(a.entries.clone()),
                )
            })
        });
        Ok(rows)
    }

    fn express(
        &self,
        span: &PolySpan,
        target: &HomogeneousComponent<HomVector<Polynomial>>,
    ) -> Result<Option<Vec<Polynomial>>, KernelError> {
        if target.payload.len() != span.rank {
            return Err(crate::graded::GradedError::RankMismatch {
                rank: span.rank,
                found: target.payload.len(),
            }
            .into());
        }
        let v = self.to_sparse(&target.payload);
        if v.is_zero() {
            return Err(KernelError::ZeroTarget);
        }
        let (r, q) = span.basis.reduce(&v);
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.polys_of(&q, span.inputs.len())))
    }
}

/// Convenience for tests and callers holding plain polynomials: the
/// homogeneous component of a form.
pub fn form(p: &Polynomial) -> HomogeneousComponent<HomVector<Polynomial>> {
    let d = p.homogeneous_degree().expect("nonzero form");
    HomogeneousComponent::new(Degree::new(d as i32), HomVector::new(vec![p.clone()]))
}
