use crate::graded::{HomogeneousKernel, ModuleVector, ShiftedFreeModule};

use super::{Engine, EngineError, GeneratingSet, GroebnerBasis, Membership, TerminationReport};

/// `F / K` for a shifted free module `F` and a homogeneous submodule `K`
/// given by a certified basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientModule<H> {
    free: ShiftedFreeModule,
    relations: GroebnerBasis<H>,
}

impl<H: crate::graded::Component> QuotientModule<H> {
    /// Every relation must be homogeneous and live in `relations.module()`.
    pub fn new(relations: GroebnerBasis<H>) -> Result<Self, EngineError> {
        for (index, r) in relations.elements().iter().enumerate() {
            if !r.is_homogeneous() {
                return Err(EngineError::InhomogeneousRelation { index });
            }
        }
        Ok(QuotientModule {
            free: relations.module().clone(),
            relations,
        })
    }

    pub fn free(&self) -> &ShiftedFreeModule {
        &self.free
    }

    pub fn relations(&self) -> &GroebnerBasis<H> {
        &self.relations
    }
}

/// Gröbner basis of a submodule `N` of a quotient `F / K`, obtained from a
/// Gröbner basis of its inverse image `Ñ` in `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientGroebner<H> {
    /// Basis of `Ñ = ⟨lifts⟩ + K`.
    pub lifted: GroebnerBasis<H>,
    /// Images of the lifted basis in `F / K`, zero images dropped; each is
    /// represented by its remainder modulo `K`.
    pub projected: Vec<ModuleVector<H>>,
    pub report: TerminationReport,
}

impl<K: HomogeneousKernel> Engine<'_, K> {
    /// A representative of the class of `v` modulo the relations; zero iff
    /// `v` lies in `K`.
    pub fn project(
        &self,
        quotient: &QuotientModule<K::Hom>,
        v: &ModuleVector<K::Hom>,
    ) -> Result<ModuleVector<K::Hom>, EngineError> {
        Ok(self.reduce(v, quotient.relations().base())?.remainder)
    }

    /// Runs Buchberger on the inverse image `⟨lifts⟩ + K` and projects.
    pub fn quotient_groebner(
        &self,
        quotient: &QuotientModule<K::Hom>,
        lifts: &[ModuleVector<K::Hom>],
    ) -> Result<QuotientGroebner<K::Hom>, EngineError> {
        let mut elements: Vec<ModuleVector<K::Hom>> = lifts.to_vec();
        elements.extend(quotient.relations().elements().iter().cloned());
        let family = GeneratingSet::new(self.kernel, quotient.free().clone(), elements)?;
        let run = self.buchberger(&family)?;
        let report = run.report.clone();
        let lifted = run.into_basis()?;
        let mut projected = Vec::new();
        for g in lifted.elements() {
            let image = self.project(quotient, g)?;
            if !image.is_zero() {
                projected.push(image);
            }
        }
        Ok(QuotientGroebner {
            lifted,
            projected,
            report,
        })
    }

    /// Membership of the class of `y` in the submodule of the quotient.
    pub fn quotient_membership(
        &self,
        result: &QuotientGroebner<K::Hom>,
        y: &ModuleVector<K::Hom>,
    ) -> Result<Membership<K::Hom>, EngineError> {
        self.membership(y, &result.lifted)
    }
}
