//! Gröbner bases for inhomogeneous submodules of shifted free modules over a
//! graded ring, driven entirely through a [`HomogeneousKernel`].
//!
//! Initial terms come from the grading alone: the initial term of an element
//! is its top-degree component. A family `X` is a Gröbner basis of the
//! submodule it spans when the initial terms of `X` generate the initial
//! module, which is checked by reducing every syzygy probe
//! `z_j = Σ c_{i,j} x_i` built from a homogeneous generating set `(c_{·,j})`
//! of the syzygies of the initial terms.

mod buchberger;
mod quotient;
mod reduce;
mod syzygy;

use thiserror::Error;

pub use quotient::{QuotientGroebner, QuotientModule};
pub use syzygy::Presentation;

use crate::graded::{
    Degree, GradedError, HomVector, HomogeneousComponent, HomogeneousKernel, KernelError,
    ModuleVector, RingElement, ShiftedFreeModule, SyzygyRow,
};

pub const DEFAULT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("the basis carries no reduction for probe {index}")]
    MissingCertificate { index: usize },
    #[error("element does not live in the expected module")]
    ModuleMismatch,
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("no Gröbner basis after {} rounds", .0.rounds_used)]
    CapExceeded(TerminationReport),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Which elements a Buchberger round adjoins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Nonzero remainders of the probes after generalized division.
    #[default]
    Remainder,
    /// The probes `z_j` themselves, as in the unoptimized loop.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub cap: usize,
    pub variant: Variant,
    /// Keep exact duplicates when canonicalizing an output basis.
    pub keep_duplicates: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            cap: DEFAULT_CAP,
            variant: Variant::Remainder,
            keep_duplicates: false,
        }
    }
}

/// A finite family of nonzero elements of a shifted free module.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSet<H> {
    module: ShiftedFreeModule,
    elements: Vec<ModuleVector<H>>,
}

impl<H: crate::graded::Component> GeneratingSet<H> {
    /// Validates every element against `module`; zero elements are dropped
    /// with a warning.
    pub fn new<K>(
        kernel: &K,
        module: ShiftedFreeModule,
        elements: Vec<ModuleVector<H>>,
    ) -> Result<Self, EngineError>
    where
        K: HomogeneousKernel<Hom = H>,
    {
        let mut kept = Vec::with_capacity(elements.len());
        for (i, v) in elements.into_iter().enumerate() {
            if v.is_zero() {
                log::warn!("dropping zero generator {i}");
                continue;
            }
            module.validate(kernel, &v)?;
            kept.push(v);
        }
        Ok(GeneratingSet {
            module,
            elements: kept,
        })
    }

    pub(crate) fn from_parts(module: ShiftedFreeModule, elements: Vec<ModuleVector<H>>) -> Self {
        debug_assert!(elements.iter().all(|v| !v.is_zero()));
        GeneratingSet { module, elements }
    }

    pub fn module(&self) -> &ShiftedFreeModule {
        &self.module
    }

    pub fn elements(&self) -> &[ModuleVector<H>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.elements
            .iter()
            .map(|v| v.degree().expect("generators are nonzero"))
            .collect()
    }

    pub fn initial_terms(&self) -> Vec<HomogeneousComponent<HomVector<H>>> {
        self.elements
            .iter()
            .map(|v| v.initial_term().expect("generators are nonzero"))
            .collect()
    }

    pub fn into_elements(self) -> Vec<ModuleVector<H>> {
        self.elements
    }
}

/// `y = Σ a_i x_i + remainder` with `deg(a_i) + deg(x_i) <= deg(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedExpression<H> {
    pub coefficients: Vec<RingElement<H>>,
    pub remainder: ModuleVector<H>,
}

impl<H: crate::graded::Component> ReducedExpression<H> {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// A syzygy row of the initial terms applied to the actual generators.
#[derive(Debug, Clone, PartialEq)]
pub struct SyzygyProbe<H> {
    pub row: SyzygyRow<H>,
    pub probe: ModuleVector<H>,
    pub reduction: Option<ReducedExpression<H>>,
}

/// A generating family whose probes all reduce to zero.
///
/// Only the engine builds these, so holding one is the certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<H> {
    base: GeneratingSet<H>,
    initial_terms: Vec<HomogeneousComponent<HomVector<H>>>,
    certificate: Vec<SyzygyProbe<H>>,
}

impl<H: crate::graded::Component> GroebnerBasis<H> {
    pub fn base(&self) -> &GeneratingSet<H> {
        &self.base
    }

    pub fn module(&self) -> &ShiftedFreeModule {
        self.base.module()
    }

    pub fn elements(&self) -> &[ModuleVector<H>] {
        self.base.elements()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn initial_terms(&self) -> &[HomogeneousComponent<HomVector<H>>] {
        &self.initial_terms
    }

    pub fn certificate(&self) -> &[SyzygyProbe<H>] {
        &self.certificate
    }

    /// Drops the reductions, e.g. to exercise [`Engine::kernel_groebner`]'s
    /// refusal of incomplete certificates.
    pub fn without_reductions(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.certificate {
            p.reduction = None;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Completed,
    /// The round cap was hit; the ring may not admit finite Gröbner bases or
    /// the cap was too small.
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminationReport {
    pub rounds_used: usize,
    pub cap: usize,
    /// Basis size at the start of each round.
    pub basis_growth: Vec<usize>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuchbergerResult<H> {
    Completed(GroebnerBasis<H>),
    Partial(GeneratingSet<H>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuchbergerRun<H> {
    pub result: BuchbergerResult<H>,
    pub report: TerminationReport,
}

impl<H> BuchbergerRun<H> {
    pub fn basis(&self) -> Option<&GroebnerBasis<H>> {
        match &self.result {
            BuchbergerResult::Completed(g) => Some(g),
            BuchbergerResult::Partial(_) => None,
        }
    }

    pub fn into_basis(self) -> Result<GroebnerBasis<H>, EngineError> {
        match self.result {
            BuchbergerResult::Completed(g) => Ok(g),
            BuchbergerResult::Partial(_) => Err(EngineError::CapExceeded(self.report)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership<H> {
    Member(ReducedExpression<H>),
    /// The reduction stranded a nonzero remainder.
    NotMember(ModuleVector<H>),
}

impl<H> Membership<H> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// The generalized Gröbner machinery over one kernel.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'k, K> {
    kernel: &'k K,
    options: EngineOptions,
}

impl<'k, K: HomogeneousKernel> Engine<'k, K> {
    pub fn new(kernel: &'k K) -> Self {
        Engine {
            kernel,
            options: EngineOptions::default(),
        }
    }

    pub fn with_options(kernel: &'k K, options: EngineOptions) -> Self {
        Engine { kernel, options }
    }

    pub fn kernel(&self) -> &'k K {
        self.kernel
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    /// Convenience constructor for a generating set over this kernel.
    pub fn generating_set(
        &self,
        module: ShiftedFreeModule,
        elements: Vec<ModuleVector<K::Hom>>,
    ) -> Result<GeneratingSet<K::Hom>, EngineError> {
        GeneratingSet::new(self.kernel, module, elements)
    }
}

#[cfg(test)]
mod tests;
