use proptest::prelude::*;

use super::*;
use crate::graded::{is_reduced_expression, GradedElement};
use crate::poly::{PolyRing, Polynomial};

fn ring() -> PolyRing {
    PolyRing::new(["x", "y"]).unwrap()
}

fn p(terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_int_terms(2, terms)
}

fn family(k: &PolyRing, ps: &[Polynomial]) -> GeneratingSet<Polynomial> {
    let elements = ps.iter().map(|q| k.ring_vector(q)).collect();
    GeneratingSet::new(k, ShiftedFreeModule::ring(), elements).unwrap()
}

fn flat(k: &PolyRing, basis: &[ModuleVector<Polynomial>]) -> Vec<Polynomial> {
    basis
        .iter()
        .map(|v| k.flatten(&ShiftedFreeModule::ring().entries_of(v)[0]))
        .collect()
}

fn worked() -> Vec<Polynomial> {
    vec![
        p(&[(1, &[2, 0]), (1, &[0, 1])]),
        p(&[(1, &[1, 1]), (1, &[0, 0])]),
    ]
}

#[test]
fn worked_example_probe() {
    let k = ring();
    let engine = Engine::new(&k);
    let xs = family(&k, &worked());
    let probes = engine.syzygy_probes(&xs).unwrap();
    assert_eq!(probes.len(), 1);
    let z = k.flatten(&ShiftedFreeModule::ring().entries_of(&probes[0].probe)[0]);
    assert_eq!(z, p(&[(1, &[0, 2]), (-1, &[1, 0])]));
    let expr = engine.reduce(&probes[0].probe, &xs).unwrap();
    assert!(!expr.is_exact());
    assert_eq!(expr.remainder, probes[0].probe);
    assert!(!engine.groebner_certificate(&xs).unwrap());
}

#[test]
fn worked_example_basis() {
    let k = ring();
    let engine = Engine::new(&k);
    let run = engine.buchberger(&family(&k, &worked())).unwrap();
    assert_eq!(run.report.outcome, Outcome::Completed);
    assert_eq!(run.report.rounds_used, 2);
    assert_eq!(run.report.basis_growth, vec![2, 3]);
    let basis = run.into_basis().unwrap();
    assert_eq!(
        flat(&k, basis.elements()),
        vec![
            p(&[(1, &[2, 0]), (1, &[0, 1])]),
            p(&[(1, &[1, 1]), (1, &[0, 0])]),
            p(&[(1, &[0, 2]), (-1, &[1, 0])]),
        ]
    );
    assert!(engine.groebner_certificate(basis.base()).unwrap());
    assert_eq!(basis.certificate().len(), 2);
}

#[test]
fn worked_example_relations() {
    let k = ring();
    let engine = Engine::new(&k);
    let basis = engine
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    let relations = engine.kernel_groebner(&basis).unwrap();
    let free = relations.module().clone();
    assert_eq!(
        free.shifts(),
        &[Degree::new(2), Degree::new(2), Degree::new(2)]
    );
    let rows: Vec<Vec<Polynomial>> = relations
        .elements()
        .iter()
        .map(|r| k.module_entries(&free, r))
        .collect();
    let x = p(&[(1, &[1, 0])]);
    let y = p(&[(1, &[0, 1])]);
    let one = Polynomial::one(2);
    let expected = [vec![y.clone(), -&x, -&one], vec![-&one, y.clone(), -&x]];
    for e in &expected {
        assert!(rows.contains(e), "missing relation {e:?} in {rows:?}");
    }
    assert_eq!(rows.len(), 2);
}

#[test]
fn univariate_pair_reaches_a_unit() {
    let k = PolyRing::new(["x"]).unwrap();
    let engine = Engine::new(&k);
    let xs = [
        Polynomial::from_int_terms(1, &[(1, &[2]), (-1, &[0])]),
        Polynomial::from_int_terms(1, &[(1, &[3])]),
    ];
    let basis = engine
        .buchberger(&family(&k, &xs))
        .unwrap()
        .into_basis()
        .unwrap();
    assert!(basis
        .elements()
        .iter()
        .any(|g| g.degree() == Ok(Degree::ZERO)));
    let any = k.ring_vector(&Polynomial::from_int_terms(1, &[(5, &[4]), (1, &[1])]));
    assert!(engine.membership(&any, &basis).unwrap().is_member());
}

#[test]
fn homogeneous_input_is_already_a_basis() {
    let k = ring();
    let engine = Engine::new(&k);
    let xs = family(&k, &[p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])])]);
    assert!(engine.groebner_certificate(&xs).unwrap());
    let run = engine.buchberger(&xs).unwrap();
    assert_eq!(run.report.rounds_used, 1);
}

#[test]
fn reduce_of_zero_is_zero() {
    let k = ring();
    let engine = Engine::new(&k);
    let xs = family(&k, &worked());
    let expr = engine.reduce(&GradedElement::zero(), &xs).unwrap();
    assert!(expr.is_exact());
    assert!(expr.coefficients.iter().all(GradedElement::is_zero));
}

#[test]
fn reduction_stays_below_target_degree() {
    let k = ring();
    let engine = Engine::new(&k);
    let xs = family(&k, &worked());
    // x^3 + x y^2 + 1
    let y = k.ring_vector(&p(&[(1, &[3, 0]), (1, &[1, 2]), (1, &[0, 0])]));
    let expr = engine.reduce(&y, &xs).unwrap();
    let mut terms: Vec<_> = expr
        .coefficients
        .iter()
        .cloned()
        .zip(xs.elements().iter().cloned())
        .collect();
    terms.push((
        GradedElement::homogeneous(Degree::ZERO, Polynomial::one(2)),
        expr.remainder.clone(),
    ));
    assert!(is_reduced_expression(&k, &y, &terms));
}

#[test]
fn membership_in_worked_ideal() {
    let k = ring();
    let engine = Engine::new(&k);
    let basis = engine
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    // y^2 - x = y(x^2 + y) - x(xy + 1)
    let inside = k.ring_vector(&p(&[(1, &[0, 2]), (-1, &[1, 0])]));
    assert!(engine.membership(&inside, &basis).unwrap().is_member());
    let outside = k.ring_vector(&p(&[(1, &[1, 0])]));
    match engine.membership(&outside, &basis).unwrap() {
        Membership::NotMember(r) => assert_eq!(r, outside),
        Membership::Member(_) => panic!("x is not in the ideal"),
    }
}

#[test]
fn cap_is_reported() {
    let k = ring();
    let engine = Engine::with_options(
        &k,
        EngineOptions {
            cap: 1,
            ..EngineOptions::default()
        },
    );
    let run = engine.buchberger(&family(&k, &worked())).unwrap();
    assert_eq!(run.report.outcome, Outcome::CapExceeded);
    assert!(run.basis().is_none());
    assert!(matches!(run.into_basis(), Err(EngineError::CapExceeded(_))));
}

#[test]
fn raw_variant_agrees_on_the_span() {
    let k = ring();
    let raw = Engine::with_options(
        &k,
        EngineOptions {
            variant: Variant::Raw,
            ..EngineOptions::default()
        },
    );
    let basis = raw
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    let default = Engine::new(&k)
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    for g in default.elements() {
        assert!(raw.membership(g, &basis).unwrap().is_member());
    }
    for g in basis.elements() {
        assert!(raw.membership(g, &default).unwrap().is_member());
    }
}

#[test]
fn kernel_groebner_needs_reductions() {
    let k = ring();
    let engine = Engine::new(&k);
    let basis = engine
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    assert_eq!(
        engine.kernel_groebner(&basis.without_reductions()),
        Err(EngineError::MissingCertificate { index: 0 })
    );
}

#[test]
fn presentation_keeps_duplicates() {
    let k = ring();
    let engine = Engine::new(&k);
    let x = p(&[(1, &[1, 0])]);
    let pres = engine.presentation(&family(&k, &[x.clone(), x])).unwrap();
    assert_eq!(pres.generators.len(), 2);
    assert_eq!(pres.relations.len(), 1);
    let row = engine.relation_matrix(&pres).remove(0);
    let row: Vec<Polynomial> = row.iter().map(|e| k.flatten(e)).collect();
    assert_eq!(row, vec![Polynomial::one(2), -&Polynomial::one(2)]);
}

#[test]
fn zero_generators_are_dropped() {
    let k = ring();
    let xs = family(&k, &[k.zero_poly(), p(&[(1, &[1, 0])])]);
    assert_eq!(xs.len(), 1);
}

#[test]
fn wrong_rank_is_rejected() {
    let k = ring();
    let module = ShiftedFreeModule::new(vec![Degree::ZERO, Degree::ZERO]);
    let v = k.ring_vector(&p(&[(1, &[1, 0])]));
    assert!(matches!(
        GeneratingSet::new(&k, module, vec![v]),
        Err(EngineError::Graded(GradedError::RankMismatch {
            rank: 2,
            found: 1
        }))
    ));
}

#[test]
fn quotient_of_ring_by_x_cubed() {
    let k = PolyRing::new(["x"]).unwrap();
    let engine = Engine::new(&k);
    let q = |t: &[(i64, &[u32])]| Polynomial::from_int_terms(1, t);
    let relations = engine
        .buchberger(&family(&k, &[q(&[(1, &[3])])]))
        .unwrap()
        .into_basis()
        .unwrap();
    let quotient = QuotientModule::new(relations).unwrap();
    let lift = k.ring_vector(&q(&[(1, &[2]), (1, &[1])]));
    let result = engine
        .quotient_groebner(&quotient, std::slice::from_ref(&lift))
        .unwrap();
    let projected = flat(&k, &result.projected);
    assert!(projected.contains(&q(&[(1, &[2]), (1, &[1])])));
    assert!(projected.contains(&q(&[(1, &[1])])));
    assert_eq!(projected.len(), 2);
    // x^2 = x·(x^2 + x) - x^3
    let x2 = k.ring_vector(&q(&[(1, &[2])]));
    assert!(engine
        .quotient_membership(&result, &x2)
        .unwrap()
        .is_member());
    assert!(engine
        .project(&quotient, &k.ring_vector(&q(&[(1, &[4])])))
        .unwrap()
        .is_zero());
}

#[test]
fn inhomogeneous_relations_are_rejected() {
    let k = ring();
    let engine = Engine::new(&k);
    let basis = engine
        .buchberger(&family(&k, &worked()))
        .unwrap()
        .into_basis()
        .unwrap();
    assert_eq!(
        QuotientModule::new(basis).unwrap_err(),
        EngineError::InhomogeneousRelation { index: 0 }
    );
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 1..4).prop_map(|terms| {
        let owned: Vec<(i64, [u32; 2])> = terms.into_iter().map(|(c, a, b)| (c, [a, b])).collect();
        let borrowed: Vec<(i64, &[u32])> = owned.iter().map(|(c, e)| (*c, &e[..])).collect();
        Polynomial::from_int_terms(2, &borrowed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_contract(gens in prop::collection::vec(arb_poly(), 1..4), target in arb_poly()) {
        let k = ring();
        let engine = Engine::new(&k);
        let xs = family(&k, &gens);
        prop_assume!(!xs.is_empty());
        let y = k.ring_vector(&target);
        let expr = engine.reduce(&y, &xs).unwrap();
        let mut terms: Vec<_> = expr.coefficients.iter().cloned().zip(xs.elements().iter().cloned()).collect();
        if !expr.remainder.is_zero() {
            terms.push((GradedElement::homogeneous(Degree::ZERO, Polynomial::one(2)), expr.remainder.clone()));
        }
        if !y.is_zero() {
            prop_assert!(is_reduced_expression(&k, &y, &terms));
        }
        // no component of the remainder is reachable from the initial terms
        for (d, c) in expr.remainder.components() {
            let target = crate::graded::HomogeneousComponent::new(d, c.clone());
            let hit = k.h_member_express(xs.module(), &target, &xs.initial_terms()).unwrap();
            prop_assert!(hit.is_none());
        }
    }

    #[test]
    fn basis_spans_the_input(gens in prop::collection::vec(arb_poly(), 1..4)) {
        let k = ring();
        let engine = Engine::new(&k);
        let xs = family(&k, &gens);
        prop_assume!(!xs.is_empty());
        let basis = engine.buchberger(&xs).unwrap().into_basis().unwrap();
        prop_assert!(engine.groebner_certificate(basis.base()).unwrap());
        for x in xs.elements() {
            prop_assert!(engine.membership(x, &basis).unwrap().is_member());
        }
        let relations = engine.kernel_groebner(&basis).unwrap();
        prop_assert!(engine.groebner_certificate(relations.base()).unwrap());
    }
}
