//! Classical Buchberger over `Q[x]^n` with degrevlex extended
//! position-over-term, tracking how every basis element is built from the
//! inputs. Used only for homogeneous families: the graded engine never sees a
//! monomial order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;

/// A module term `m·e_pos`. Lower positions have priority.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .pos
            .cmp(&self.pos)
            .then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse module vector, terms strictly descending.
#[derive(Clone, Debug, PartialEq, Default)]
pub(crate) struct SparseVec {
    pub terms: Vec<(Term, BigRational)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { terms: Vec::new() }
    }

    pub fn unit(pos: usize) -> Self {
        SparseVec {
            terms: vec![(
                Term {
                    pos,
                    mono: Monomial::one(),
                },
                BigRational::one(),
            )],
        }
    }

    pub fn from_unsorted(mut terms: Vec<(Term, BigRational)>) -> Self {
        terms.sort_by_key(|e| std::cmp::Reverse(e.0));
        let mut out: Vec<(Term, BigRational)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == t => *acc += c,
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Term, BigRational)> {
        self.terms.first()
    }

    /// `self += c · m · other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &BigRational, m: &Monomial) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut right = other
            .terms
            .iter()
            .map(|(t, a)| {
                (
                    Term {
                        pos: t.pos,
                        mono: t.mono.mul(m),
                    },
                    a,
                )
            })
            .peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((a, _)), Some((b, _))) => a.cmp(b),
            };
            match ord {
                Ordering::Greater => out.push(left.next().unwrap()),
                Ordering::Less => {
                    let (t, a) = right.next().unwrap();
                    out.push((t, a * c));
                }
                Ordering::Equal => {
                    let (t, a) = left.next().unwrap();
                    let (_, b) = right.next().unwrap();
                    let sum = a + b * c;
                    if !sum.is_zero() {
                        out.push((t, sum));
                    }
                }
            }
        }
        self.terms = out;
    }

    pub fn scale(&mut self, c: &BigRational) {
        for (_, a) in &mut self.terms {
            *a *= c;
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> SparseVec {
        let mut out = SparseVec::zero();
        out.add_scaled(self, c, m);
        out
    }
}

/// A basis element `vec` together with `rep`, its coordinates over the inputs.
#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub vec: SparseVec,
    pub rep: SparseVec,
}

#[derive(Clone, Debug)]
pub(crate) struct ClassicalBasis {
    pub elems: Vec<Tracked>,
    track: bool,
}

impl ClassicalBasis {
    /// Buchberger's algorithm on `inputs`, pairs processed by increasing lcm
    /// degree. With `track`, every element records its input coordinates.
    pub fn compute(inputs: &[SparseVec], track: bool) -> ClassicalBasis {
        let mut basis = ClassicalBasis {
            elems: Vec::new(),
            track,
        };
        let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        for (i, v) in inputs.iter().enumerate() {
            let rep = if track {
                SparseVec::unit(i)
            } else {
                SparseVec::zero()
            };
            basis.push_reduced(v.clone(), rep, &mut pairs);
        }
        while let Some(pair) = pairs.pop_first() {
            let (_, a, b) = pair;
            let (s, rep) = basis.s_vector(a, b);
            basis.push_reduced(s, rep, &mut pairs);
        }
        basis
    }

    fn push_reduced(
        &mut self,
        v: SparseVec,
        rep: SparseVec,
        pairs: &mut BTreeSet<(u32, usize, usize)>,
    ) {
        let (r, q) = self.reduce(&v);
        if r.is_zero() {
            return;
        }
        let mut rep = rep;
        if self.track {
            rep.add_scaled(&q, &-BigRational::one(), &Monomial::one());
        }
        let mut vec = r;
        let inv = vec.lead().expect("nonzero").1.recip();
        vec.scale(&inv);
        rep.scale(&inv);
        let lead = vec.lead().expect("nonzero").0;
        let index = self.elems.len();
        for (j, other) in self.elems.iter().enumerate() {
            let olead = other.vec.lead().expect("basis elements are nonzero").0;
            if olead.pos == lead.pos {
                pairs.insert((lead.mono.lcm(&olead.mono).degree(), j, index));
            }
        }
        self.elems.push(Tracked { vec, rep });
    }

    /// The S-vector of elements `a` and `b` (which share a lead position) and
    /// its input coordinates.
    fn s_vector(&self, a: usize, b: usize) -> (SparseVec, SparseVec) {
        let (ga, gb) = (&self.elems[a], &self.elems[b]);
        let la = ga.vec.lead().unwrap().0.mono;
        let lb = gb.vec.lead().unwrap().0.mono;
        let l = la.lcm(&lb);
        let ua = la.quotient_of(&l).unwrap();
        let ub = lb.quotient_of(&l).unwrap();
        let one = BigRational::one();
        let minus = -BigRational::one();
        let mut s = ga.vec.mul_term(&ua, &one);
        s.add_scaled(&gb.vec, &minus, &ub);
        let mut rep = SparseVec::zero();
        if self.track {
            rep = ga.rep.mul_term(&ua, &one);
            rep.add_scaled(&gb.rep, &minus, &ub);
        }
        (s, rep)
    }

    fn divisor_of(&self, t: &Term) -> Option<(usize, Monomial)> {
        self.elems.iter().enumerate().find_map(|(i, g)| {
            let lead = g.vec.lead().unwrap().0;
            if lead.pos == t.pos {
                lead.mono.quotient_of(&t.mono).map(|q| (i, q))
            } else {
                None
            }
        })
    }

    /// Full normal form: returns `(r, q)` with `v = r + q·inputs`, no term of
    /// `r` divisible by a leading term. `q` is zero unless tracking.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut work = v.clone();
        let mut remainder = Vec::new();
        let mut quotient = SparseVec::zero();
        while let Some((t, c)) = work.lead().cloned() {
            match self.divisor_of(&t) {
                Some((i, m)) => {
                    let g = &self.elems[i];
                    work.add_scaled(&g.vec, &-&c, &m);
                    if self.track {
                        quotient.add_scaled(&g.rep, &c, &m);
                    }
                }
                None => {
                    remainder.push((t, c));
                    work.terms.remove(0);
                }
            }
        }
        (SparseVec { terms: remainder }, quotient)
    }

    /// Generators of the syzygies of `inputs`, as vectors over the inputs:
    /// lifted S-vector reductions plus `e_i - q_i` from dividing each input.
    /// Requires tracking.
    pub fn schreyer_syzygies(&self, inputs: &[SparseVec]) -> Vec<SparseVec> {
        assert!(self.track, "syzygies need tracked representations");
        let mut out = Vec::new();
        for b in 0..self.elems.len() {
            for a in 0..b {
                let pa = self.elems[a].vec.lead().unwrap().0.pos;
                let pb = self.elems[b].vec.lead().unwrap().0.pos;
                if pa != pb {
                    continue;
                }
                let (s, mut rep) = self.s_vector(a, b);
                let (r, q) = self.reduce(&s);
                assert!(
                    r.is_zero(),
                    "S-vector of a Groebner basis must reduce to zero"
                );
                rep.add_scaled(&q, &-BigRational::one(), &Monomial::one());
                if !rep.is_zero() {
                    out.push(rep);
                }
            }
        }
        for (i, v) in inputs.iter().enumerate() {
            let (r, q) = self.reduce(v);
            assert!(r.is_zero(), "inputs lie in their own span");
            let mut syz = SparseVec::unit(i);
            syz.add_scaled(&q, &-BigRational::one(), &Monomial::one());
            if !syz.is_zero() {
                out.push(syz);
            }
        }
        out
    }
}

/// Selects a minimal generating subset of homogeneous `candidates`, where the
/// degree of a term `m·e_i` is `deg(m) + shifts[i]`.
///
/// Degrees are processed upwards. A candidate is kept when its normal form
/// modulo the module generated by lower-degree survivors is linearly
/// independent of the normal forms already kept in its own degree.
pub(crate) fn minimal_generators(candidates: Vec<SparseVec>, shifts: &[u32]) -> Vec<SparseVec> {
    let degree_of = |v: &SparseVec| {
        let (t, _) = v.lead().expect("candidates are nonzero");
        t.mono.degree() + shifts[t.pos]
    };
    let mut by_degree: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
    for c in candidates.into_iter().filter(|c| !c.is_zero()) {
        by_degree.entry(degree_of(&c)).or_default().push(c);
    }
    let mut kept: Vec<SparseVec> = Vec::new();
    for (_, group) in by_degree {
        let lower = ClassicalBasis::compute(&kept, false);
        // echelon of normal forms in this degree, keyed by leading term
        let mut echelon: BTreeMap<Term, SparseVec> = BTreeMap::new();
        let mut accepted = Vec::new();
        for c in group {
            let (mut nf, _) = lower.reduce(&c);
            while let Some((t, a)) = nf
                .terms
                .iter()
                .find(|(t, _)| echelon.contains_key(t))
                .cloned()
            {
                let row = &echelon[&t];
                nf.add_scaled(row, &-a, &Monomial::one());
            }
            if nf.is_zero() {
                continue;
            }
            let inv = nf.lead().unwrap().1.recip();
            nf.scale(&inv);
            // keep the echelon reduced on the new pivot
            let pivot = nf.lead().unwrap().0;
            for row in echelon.values_mut() {
                if let Some((_, a)) = row.terms.iter().find(|(t, _)| *t == pivot).cloned() {
                    row.add_scaled(&nf, &-a, &Monomial::one());
                }
            }
            echelon.insert(pivot, nf);
            accepted.push(c);
        }
        kept.extend(accepted);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polynomial::integer;

    fn vec_of(terms: &[(usize, &[u32], i64)]) -> SparseVec {
        SparseVec::from_unsorted(
            terms
                .iter()
                .map(|(p, e, c)| {
                    (
                        Term {
                            pos: *p,
                            mono: Monomial::from_exponents(e),
                        },
                        integer(*c),
                    )
                })
                .collect(),
        )
    }

    #[test]
    fn add_scaled_cancels() {
        let mut a = vec_of(&[(0, &[1, 0], 2), (0, &[0, 1], 1)]);
        let b = vec_of(&[(0, &[0, 0], 1)]);
        a.add_scaled(&b, &integer(-2), &Monomial::from_exponents(&[1, 0]));
        assert_eq!(a, vec_of(&[(0, &[0, 1], 1)]));
    }

    #[test]
    fn position_has_priority() {
        let hi = Term {
            pos: 0,
            mono: Monomial::one(),
        };
        let lo = Term {
            pos: 1,
            mono: Monomial::from_exponents(&[5]),
        };
        assert!(hi > lo);
    }

    #[test]
    fn tracked_representations_are_exact() {
        let inputs = vec![
            vec_of(&[(0, &[2, 0], 1), (0, &[1, 1], 1)]),
            vec_of(&[(0, &[1, 1], 1), (0, &[0, 2], -1)]),
        ];
        let basis = ClassicalBasis::compute(&inputs, true);
        for g in &basis.elems {
            let mut rebuilt = SparseVec::zero();
            for (t, c) in &g.rep.terms {
                rebuilt.add_scaled(&inputs[t.pos], c, &t.mono);
            }
            assert_eq!(rebuilt, g.vec);
        }
    }

    #[test]
    fn monomial_syzygies_are_minimized() {
        // x^2, xy, y^2: the degree-4 syzygy y^2 e1 - x^2 e3 is redundant
        let inputs = vec![
            vec_of(&[(0, &[2, 0], 1)]),
            vec_of(&[(0, &[1, 1], 1)]),
            vec_of(&[(0, &[0, 2], 1)]),
        ];
        let basis = ClassicalBasis::compute(&inputs, true);
        let all = basis.schreyer_syzygies(&inputs);
        assert_eq!(all.len(), 3);
        let min = minimal_generators(all, &[2, 2, 2]);
        assert_eq!(min.len(), 2);
    }
}
