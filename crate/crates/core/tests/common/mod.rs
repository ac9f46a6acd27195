//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use graded_groebner::engine::{Engine, GeneratingSet};
use graded_groebner::graded::ShiftedFreeModule;
use graded_groebner::poly::{integer, Monomial, PolyRing, Polynomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(nvars: usize) -> PolyRing {
    PolyRing::new(NAMES[..nvars].iter().copied()).unwrap()
}

/// A monomial of total degree exactly `degree`.
pub fn random_monomial(rng: &mut impl Rng, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// A nonzero polynomial with up to `max_terms` terms of degree at most
/// `max_degree` and integer coefficients in `-3..=3`.
pub fn random_poly(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            let d = rng.gen_range(0..=max_degree);
            (
                random_monomial(rng, nvars, d),
                integer(rng.gen_range(-3..=3)),
            )
        });
        let p = Polynomial::from_terms(nvars, terms.collect::<Vec<_>>());
        if !p.is_zero() {
            return p;
        }
    }
}

/// One corpus instance: a ring in 1 to 3 variables and 1 to 4 generators of
/// degree at most 4.
#[derive(Debug, Clone)]
pub struct Instance {
    pub ring: PolyRing,
    pub gens: Vec<Polynomial>,
}

pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let nvars = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=4);
    let gens = (0..count).map(|_| random_poly(rng, nvars, 4, 4)).collect();
    Instance {
        ring: ring(nvars),
        gens,
    }
}

pub fn corpus(seed: u64, size: usize) -> Vec<Instance> {
    let mut rng = rng(seed);
    (0..size).map(|_| random_instance(&mut rng)).collect()
}

pub fn family(ring: &PolyRing, ps: &[Polynomial]) -> GeneratingSet<Polynomial> {
    let engine = Engine::new(ring);
    let elements = ps.iter().map(|p| ring.ring_vector(p)).collect();
    engine
        .generating_set(ShiftedFreeModule::ring(), elements)
        .unwrap()
}

pub fn flatten(
    ring: &PolyRing,
    v: &graded_groebner::graded::ModuleVector<Polynomial>,
) -> Polynomial {
    ring.flatten(&ShiftedFreeModule::ring().entries_of(v)[0])
}
