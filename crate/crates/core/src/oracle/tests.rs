use super::*;
use crate::engine::Engine;
use crate::graded::Degree;

fn ring() -> PolyRing {
    PolyRing::new(["x", "y"]).unwrap()
}

fn p(terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_int_terms(2, terms)
}

fn vectors(k: &PolyRing, ps: &[Polynomial]) -> Vec<ModuleVector<Polynomial>> {
    ps.iter().map(|q| k.ring_vector(q)).collect()
}

fn worked() -> Vec<Polynomial> {
    vec![
        p(&[(1, &[2, 0]), (1, &[0, 1])]),
        p(&[(1, &[1, 1]), (1, &[0, 0])]),
    ]
}

fn completed() -> Vec<Polynomial> {
    let mut out = worked();
    out.push(p(&[(1, &[0, 2]), (-1, &[1, 0])]));
    out
}

#[test]
fn slack_reveals_lower_degree_elements() {
    let k = ring();
    let module = ShiftedFreeModule::ring();
    let oracle = Oracle::new(&k, &module);
    let xs = vectors(&k, &worked());
    let d = Degree::new(2);
    let tight = oracle.truncated_span(&xs, d, 0).unwrap();
    let loose = oracle.truncated_span(&xs, d, 1).unwrap();
    assert_eq!(tight.dim(), 2);
    assert_eq!(loose.dim(), 3);
    let target = k.ring_vector(&p(&[(1, &[0, 2]), (-1, &[1, 0])]));
    assert!(!tight.contains(&target));
    assert!(loose.contains(&target));
    assert!(tight.is_subspace_of(&loose));
    assert!(!loose.is_subspace_of(&tight));
    // nothing of degree <= 1 is reachable from two quadrics
    assert_eq!(
        oracle.truncated_span(&xs, Degree::new(1), 0).unwrap().dim(),
        0
    );
}

#[test]
fn verify_refutes_the_input_and_accepts_the_basis() {
    let k = ring();
    let module = ShiftedFreeModule::ring();
    let oracle = Oracle::new(&k, &module);
    let xs = vectors(&k, &worked());
    let d = Degree::new(DEFAULT_TRUNCATION);
    assert_eq!(
        oracle.verify_gb_truncated(&xs, &xs, d, DEFAULT_MAX_SLACK),
        Verdict::Refuted {
            degree: Degree::new(2),
            slack: 1
        }
    );
    let gb = vectors(&k, &completed());
    assert_eq!(
        oracle.verify_gb_truncated(&xs, &gb, d, DEFAULT_MAX_SLACK),
        Verdict::Verified
    );
}

#[test]
fn verify_agrees_with_the_engine() {
    let k = PolyRing::new(["x", "y", "z"]).unwrap();
    let q = |t: &[(i64, &[u32])]| Polynomial::from_int_terms(3, t);
    let gens = [
        q(&[(1, &[1, 1, 0]), (-1, &[0, 0, 1])]),
        q(&[(1, &[0, 2, 0]), (2, &[1, 0, 0]), (-1, &[0, 0, 0])]),
        q(&[(1, &[1, 0, 1]), (1, &[0, 1, 0])]),
    ];
    let xs = vectors(&k, &gens);
    let engine = Engine::new(&k);
    let family = engine
        .generating_set(ShiftedFreeModule::ring(), xs.clone())
        .unwrap();
    let basis = engine.buchberger(&family).unwrap().into_basis().unwrap();
    let module = ShiftedFreeModule::ring();
    let oracle = Oracle::new(&k, &module);
    assert_eq!(
        oracle.verify_gb_truncated(&xs, basis.elements(), Degree::new(5), 3),
        Verdict::Verified
    );
}

#[test]
fn initial_module_matches_basis_initial_terms() {
    let k = ring();
    let module = ShiftedFreeModule::ring();
    let oracle = Oracle::new(&k, &module);
    let d = Degree::new(5);
    let from_span = oracle
        .truncated_initial_module(&vectors(&k, &worked()), d, 2)
        .unwrap();
    let from_basis = oracle
        .initial_span_of_basis(&vectors(&k, &completed()), d)
        .unwrap();
    assert_eq!(from_span, from_basis);
    let dims: Vec<usize> = from_basis.iter().map(InitialSlice::dim).collect();
    // x^2, xy, y^2 generate everything from degree 2 on
    assert_eq!(dims, vec![0, 0, 3, 4, 5, 6]);
    let rendered = slice_vectors(&k, 1, &from_basis[2]);
    assert_eq!(rendered.len(), 3);
}

#[test]
fn overflow_is_inconclusive() {
    let k = ring();
    let module = ShiftedFreeModule::ring();
    let oracle = Oracle::new(&k, &module).with_limit(10);
    let xs = vectors(&k, &worked());
    assert!(matches!(
        oracle.truncated_span(&xs, Degree::new(8), 0),
        Err(OracleError::DimensionOverflow { limit: 10, .. })
    ));
    assert!(matches!(
        oracle.verify_gb_truncated(&xs, &xs, Degree::new(8), 4),
        Verdict::Inconclusive { .. }
    ));
}

#[test]
fn degree_below_the_module_is_rejected() {
    let k = ring();
    let module = ShiftedFreeModule::new(vec![Degree::new(2)]);
    let oracle = Oracle::new(&k, &module);
    assert_eq!(
        oracle.truncated_span(&[], Degree::new(1), 0),
        Err(OracleError::BelowLowerBound {
            degree: Degree::new(1),
            bound: Degree::new(2)
        })
    );
}

#[test]
fn shifted_module_coordinates() {
    let k = ring();
    let module = ShiftedFreeModule::new(vec![Degree::ZERO, Degree::new(1)]);
    let oracle = Oracle::new(&k, &module);
    let x = p(&[(1, &[1, 0])]);
    let v = k
        .module_vector(&module, &[x.clone(), Polynomial::one(2)])
        .unwrap();
    let row = oracle.coordinates_of(&v, Degree::new(1)).unwrap().unwrap();
    assert_eq!(row.len(), 2);
    let span = oracle
        .truncated_span(std::slice::from_ref(&v), Degree::new(2), 0)
        .unwrap();
    // v, x·v, y·v
    assert_eq!(span.dim(), 3);
}
