use crate::graded::{
    combine, GradedElement, HomVector, HomogeneousKernel, ModuleVector, ShiftedFreeModule,
};

use super::{Engine, EngineError, EngineOptions, GeneratingSet, GroebnerBasis, TerminationReport};

/// A finite presentation of the span of a family: the Gröbner generators and
/// a Gröbner basis of their relation module, which lives in the free module
/// with shifts `deg(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<H> {
    pub generators: GroebnerBasis<H>,
    pub relations: GroebnerBasis<H>,
    pub report: TerminationReport,
}

impl<H: crate::graded::Component> Presentation<H> {
    /// The relation module's free module, `⊕ R e_i` with `deg(e_i) = deg(x_i)`.
    pub fn relation_module(&self) -> &ShiftedFreeModule {
        self.relations.module()
    }
}

impl<K: HomogeneousKernel> Engine<'_, K> {
    /// The relations `r_j = Σ (c_{i,j} - d_{i,j}) e_i` from a certified basis:
    /// `c_{·,j}` a syzygy row of the initial terms and `d_{·,j}` the reduction
    /// of its probe. They form a Gröbner basis of the kernel of `e_i ↦ x_i`;
    /// each is checked to map to zero and the family is certified in the
    /// shifted free module.
    pub fn kernel_groebner(
        &self,
        basis: &GroebnerBasis<K::Hom>,
    ) -> Result<GroebnerBasis<K::Hom>, EngineError> {
        let free = ShiftedFreeModule::new(basis.base().degrees());
        let mut relations = Vec::with_capacity(basis.certificate().len());
        for (index, probe) in basis.certificate().iter().enumerate() {
            let reduction = probe
                .reduction
                .as_ref()
                .ok_or(EngineError::MissingCertificate { index })?;
            let top = GradedElement::homogeneous(
                probe.row.degree,
                HomVector::new(probe.row.entries.clone()),
            );
            let tail = free.vector_from_entries(self.kernel, &reduction.coefficients)?;
            let r = &top - &tail;
            let image = combine(self.kernel, &free.entries_of(&r), basis.elements());
            if !image.is_zero() {
                return Err(EngineError::InvariantViolation(format!(
                    "relation {index} does not map to zero"
                )));
            }
            if r.initial_term().map(|t| t.degree) != Ok(probe.row.degree) {
                return Err(EngineError::InvariantViolation(format!(
                    "relation {index} lost its initial term"
                )));
            }
            relations.push(r);
        }
        let family = GeneratingSet::new(self.kernel, free, relations)?;
        self.certify(&family)?.ok_or_else(|| {
            EngineError::InvariantViolation("relations fail their own certificate".into())
        })
    }

    /// Gröbner generators of the span of `xs` together with a Gröbner basis
    /// of their relations. Duplicated generators are kept, so each shows up
    /// as a relation `e_i - e_j`.
    pub fn presentation(
        &self,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<Presentation<K::Hom>, EngineError> {
        let engine = Engine::with_options(
            self.kernel,
            EngineOptions {
                keep_duplicates: true,
                ..self.options
            },
        );
        let run = engine.buchberger(xs)?;
        let report = run.report.clone();
        let generators = run.into_basis()?;
        let relations = self.kernel_groebner(&generators)?;
        Ok(Presentation {
            generators,
            relations,
            report,
        })
    }

    /// Rows of the relation matrix: entry `i` of row `j` is the coefficient
    /// of `x_i` in relation `j`.
    pub fn relation_matrix(
        &self,
        presentation: &Presentation<K::Hom>,
    ) -> Vec<Vec<GradedElement<K::Hom>>> {
        let free = presentation.relation_module();
        presentation
            .relations
            .elements()
            .iter()
            .map(|r: &ModuleVector<K::Hom>| free.entries_of(r))
            .collect()
    }
}
