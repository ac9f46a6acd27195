use std::cmp::Ordering;

use crate::graded::{scale, GradedElement, HomogeneousKernel, ModuleVector};

use super::{
    BuchbergerResult, BuchbergerRun, Engine, EngineError, GeneratingSet, Outcome,
    TerminationReport, Variant,
};

impl<K: HomogeneousKernel> Engine<'_, K> {
    /// Scales `v` so its initial term is monic, where the kernel can.
    pub fn normalize(&self, v: &ModuleVector<K::Hom>) -> ModuleVector<K::Hom> {
        let Ok(top) = v.initial_term() else {
            return v.clone();
        };
        match self.kernel.monic_factor(&top.payload) {
            Some(u) => scale(
                self.kernel,
                &GradedElement::homogeneous(crate::graded::Degree::ZERO, u),
                v,
            ),
            None => v.clone(),
        }
    }

    /// Monic initial terms, sorted by degree of the initial term and then
    /// descending kernel order; exact duplicates dropped unless the options
    /// say otherwise.
    pub fn canonicalize(&self, xs: &GeneratingSet<K::Hom>) -> GeneratingSet<K::Hom> {
        let mut elements: Vec<ModuleVector<K::Hom>> =
            xs.elements().iter().map(|v| self.normalize(v)).collect();
        elements.sort_by(|a, b| self.canonical_order(a, b));
        if !self.options.keep_duplicates {
            elements.dedup();
        }
        GeneratingSet::from_parts(xs.module().clone(), elements)
    }

    fn canonical_order(&self, a: &ModuleVector<K::Hom>, b: &ModuleVector<K::Hom>) -> Ordering {
        let ia = a.initial_term().expect("nonzero");
        let ib = b.initial_term().expect("nonzero");
        ia.degree
            .cmp(&ib.degree)
            .then_with(|| self.kernel.compare_vectors(&ib.payload, &ia.payload))
            .then_with(|| self.kernel.compare_elements(b, a))
    }

    /// Generalized Buchberger loop. Each round computes the probes of the
    /// current family, reduces them against it, and stops if every remainder
    /// vanishes; otherwise it adjoins the new elements (remainders, or the raw
    /// probes) and goes again, at most `cap` rounds.
    pub fn buchberger(
        &self,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<BuchbergerRun<K::Hom>, EngineError> {
        let cap = self.options.cap.max(1);
        let mut current = xs.clone();
        let mut growth = Vec::new();
        for round in 1..=cap {
            growth.push(current.len());
            let span = self.prepare_initial(&current)?;
            let probes = self.reduced_probes(&span, &current)?;
            let stranded: Vec<&ModuleVector<K::Hom>> = probes
                .iter()
                .map(|p| &p.reduction.as_ref().expect("reduced").remainder)
                .filter(|r| !r.is_zero())
                .collect();
            let mut adjoined: Vec<ModuleVector<K::Hom>> = Vec::new();
            let adjoin = |v: ModuleVector<K::Hom>, adjoined: &mut Vec<ModuleVector<K::Hom>>| {
                if !v.is_zero() && !current.elements().contains(&v) && !adjoined.contains(&v) {
                    adjoined.push(v);
                }
            };
            if !stranded.is_empty() {
                if self.options.variant == Variant::Raw {
                    // the literal loop adjoins the whole of Z
                    for p in &probes {
                        adjoin(p.probe.clone(), &mut adjoined);
                    }
                }
                if adjoined.is_empty() {
                    for r in &stranded {
                        adjoin(self.normalize(r), &mut adjoined);
                    }
                }
                if adjoined.is_empty() {
                    return Err(EngineError::InvariantViolation(
                        "stranded remainders are already in the family".into(),
                    ));
                }
            }
            if adjoined.is_empty() {
                let report = TerminationReport {
                    rounds_used: round,
                    cap,
                    basis_growth: growth,
                    outcome: Outcome::Completed,
                };
                let canonical = self.canonicalize(&current);
                let certified = if canonical == current {
                    Self::certified(&current, probes)
                } else {
                    self.certify(&canonical)?
                };
                let basis = certified.ok_or_else(|| {
                    EngineError::InvariantViolation("canonical basis lost its certificate".into())
                })?;
                return Ok(BuchbergerRun {
                    result: BuchbergerResult::Completed(basis),
                    report,
                });
            }
            log::debug!(
                "round {round}: adjoining {} elements to {}",
                adjoined.len(),
                current.len()
            );
            let mut elements = current.into_elements();
            elements.extend(adjoined);
            current = GeneratingSet::from_parts(xs.module().clone(), elements);
        }
        Ok(BuchbergerRun {
            result: BuchbergerResult::Partial(current),
            report: TerminationReport {
                rounds_used: cap,
                cap,
                basis_growth: growth,
                outcome: Outcome::CapExceeded,
            },
        })
    }
}
