use crate::graded::{scale, GradedElement, HomogeneousKernel, ModuleVector, SyzygyRow};

use super::{
    Engine, EngineError, GeneratingSet, GroebnerBasis, Membership, ReducedExpression, SyzygyProbe,
};

impl<K: HomogeneousKernel> Engine<'_, K> {
    pub(crate) fn prepare_initial(
        &self,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<K::Span, EngineError> {
        Ok(self.kernel.prepare(xs.module(), &xs.initial_terms())?)
    }

    /// `z = Σ c_i x_i` for a syzygy row of the initial terms.
    fn apply_row(
        &self,
        xs: &GeneratingSet<K::Hom>,
        row: &SyzygyRow<K::Hom>,
    ) -> Result<ModuleVector<K::Hom>, EngineError> {
        let mut z = GradedElement::zero();
        for ((c, x), dx) in row.entries.iter().zip(xs.elements()).zip(xs.degrees()) {
            let coefficient = GradedElement::homogeneous(row.degree - dx, c.clone());
            z.add_assign(&scale(self.kernel, &coefficient, x));
        }
        if let Ok(dz) = z.degree() {
            if dz >= row.degree {
                return Err(EngineError::InvariantViolation(format!(
                    "probe of degree {dz} does not drop below its row degree {}",
                    row.degree
                )));
            }
        }
        Ok(z)
    }

    pub(crate) fn probes_with(
        &self,
        span: &K::Span,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<Vec<SyzygyProbe<K::Hom>>, EngineError> {
        let mut rows = self.kernel.syzygies(span)?;
        // the kernel's order is canonical within a degree
        rows.sort_by_key(|r| r.degree);
        rows.into_iter()
            .map(|row| {
                let probe = self.apply_row(xs, &row)?;
                Ok(SyzygyProbe {
                    row,
                    probe,
                    reduction: None,
                })
            })
            .collect()
    }

    /// Probes from a homogeneous generating set of the syzygies of the
    /// initial terms, reductions not yet attempted.
    pub fn syzygy_probes(
        &self,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<Vec<SyzygyProbe<K::Hom>>, EngineError> {
        let span = self.prepare_initial(xs)?;
        self.probes_with(&span, xs)
    }

    /// Generalized division, top degree first: while the working element is
    /// nonzero, either its initial term is expressed through the initial
    /// terms of `xs` and the matching combination of the `x_i` is subtracted,
    /// or the initial term is moved to the remainder.
    pub(crate) fn reduce_with(
        &self,
        span: &K::Span,
        xs: &GeneratingSet<K::Hom>,
        y: &ModuleVector<K::Hom>,
    ) -> Result<ReducedExpression<K::Hom>, EngineError> {
        let degrees = xs.degrees();
        let mut coefficients = vec![GradedElement::zero(); xs.len()];
        let mut remainder = GradedElement::zero();
        let mut work = y.clone();
        while let Ok(top) = work.initial_term() {
            match self.kernel.express(span, &top)? {
                Some(a) => {
                    for (i, ai) in a.into_iter().enumerate() {
                        if crate::graded::Component::is_zero(&ai) {
                            continue;
                        }
                        let da = top.degree - degrees[i];
                        if da.value() < 0 {
                            return Err(EngineError::InvariantViolation(
                                "kernel returned a coefficient of negative degree".into(),
                            ));
                        }
                        let a_i = GradedElement::homogeneous(da, ai);
                        work.sub_assign(&scale(self.kernel, &a_i, &xs.elements()[i]));
                        coefficients[i].add_assign(&a_i);
                    }
                    if work.degree().is_ok_and(|d| d >= top.degree) {
                        return Err(EngineError::InvariantViolation(
                            "kernel expression did not cancel the initial term".into(),
                        ));
                    }
                }
                None => {
                    remainder.add_component(top.degree, &top.payload);
                    work.remove_component(top.degree);
                }
            }
        }
        Ok(ReducedExpression {
            coefficients,
            remainder,
        })
    }

    pub fn reduce(
        &self,
        y: &ModuleVector<K::Hom>,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<ReducedExpression<K::Hom>, EngineError> {
        if y.is_zero() {
            return Ok(ReducedExpression {
                coefficients: vec![GradedElement::zero(); xs.len()],
                remainder: GradedElement::zero(),
            });
        }
        xs.module().validate(self.kernel, y)?;
        let span = self.prepare_initial(xs)?;
        self.reduce_with(&span, xs, y)
    }

    /// Computes and reduces every probe of `xs`, returning them all.
    pub(crate) fn reduced_probes(
        &self,
        span: &K::Span,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<Vec<SyzygyProbe<K::Hom>>, EngineError> {
        let mut probes = self.probes_with(span, xs)?;
        for p in &mut probes {
            p.reduction = Some(self.reduce_with(span, xs, &p.probe)?);
        }
        Ok(probes)
    }

    /// Wraps `xs` as a Gröbner basis if every probe reduces to zero.
    pub fn certify(
        &self,
        xs: &GeneratingSet<K::Hom>,
    ) -> Result<Option<GroebnerBasis<K::Hom>>, EngineError> {
        let span = self.prepare_initial(xs)?;
        let probes = self.reduced_probes(&span, xs)?;
        Ok(Self::certified(xs, probes))
    }

    pub(crate) fn certified(
        xs: &GeneratingSet<K::Hom>,
        probes: Vec<SyzygyProbe<K::Hom>>,
    ) -> Option<GroebnerBasis<K::Hom>> {
        let all_zero = probes.iter().all(|p| {
            p.reduction
                .as_ref()
                .is_some_and(ReducedExpression::is_exact)
        });
        all_zero.then(|| GroebnerBasis {
            base: xs.clone(),
            initial_terms: xs.initial_terms(),
            certificate: probes,
        })
    }

    pub fn groebner_certificate(&self, xs: &GeneratingSet<K::Hom>) -> Result<bool, EngineError> {
        Ok(self.certify(xs)?.is_some())
    }

    /// Decides membership in the span of a certified basis.
    pub fn membership(
        &self,
        y: &ModuleVector<K::Hom>,
        basis: &GroebnerBasis<K::Hom>,
    ) -> Result<Membership<K::Hom>, EngineError> {
        let expr = self.reduce(y, basis.base())?;
        if expr.is_exact() {
            Ok(Membership::Member(expr))
        } else {
            Ok(Membership::NotMember(expr.remainder))
        }
    }
}
