//! Brute-force verification at bounded degree.
//!
//! Everything here works on coordinate vectors over the monomial basis of the
//! ambient free module and exact row reduction. Products `m·x` are expanded
//! directly from the terms; nothing is routed through the engine or the
//! kernel's classical bases.
//!
//! Coordinates are ordered by descending degree, then descending monomial,
//! then ascending basis index. With that order the rows of an echelon form
//! whose pivots have degree at most `d` span exactly the intersection with
//! the degree `<= d` part, which is how truncations are read off.

mod linalg;
mod univariate;

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use thiserror::Error;

pub use linalg::{rref, Echelon, Row};
pub use univariate::{univariate_divides, univariate_gcd};

use crate::graded::{Degree, HomVector, HomogeneousComponent, ModuleVector, ShiftedFreeModule};
use crate::poly::{Monomial, PolyRing, Polynomial};

pub const DEFAULT_TRUNCATION: i32 = 8;
pub const DEFAULT_MAX_SLACK: u32 = 4;
pub const DEFAULT_COORDINATE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ambient truncation needs {needed} coordinates, limit is {limit}")]
    DimensionOverflow { needed: usize, limit: usize },
    #[error("expected a ring in one variable, found {nvars}")]
    NotUnivariate { nvars: usize },
    #[error("truncation degree {degree} is below the module lower bound {bound}")]
    BelowLowerBound { degree: Degree, bound: Degree },
}

/// Outcome of a truncated Gröbner check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The check held at every tested degree and slack. Nothing is claimed
    /// beyond the truncation.
    Verified,
    /// An element of degree `degree` reachable with `slack` extra degrees is
    /// missed by the candidate's slack-free span.
    Refuted {
        degree: Degree,
        slack: u32,
    },
    Inconclusive {
        reason: String,
    },
}

/// The part of degree `<= degree_bound` of the span of all products `m·x`
/// with `deg(m·x) <= degree_bound + slack`, in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSpan {
    pub degree_bound: Degree,
    pub slack: u32,
    coords: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    rows: Vec<Row>,
}

impl TruncatedSpan {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Coordinate basis: `(basis index, monomial)` in column order.
    pub fn coordinates(&self) -> &[(usize, Monomial)] {
        &self.coords
    }

    pub fn contains(&self, v: &ModuleVector<Polynomial>) -> bool {
        let Some(row) = row_of(&self.index, v, Monomial::one()) else {
            return false;
        };
        let mut ech = Echelon::new();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.contains(row)
    }

    pub fn is_subspace_of(&self, other: &TruncatedSpan) -> bool {
        if self.coords != other.coords {
            return false;
        }
        let mut ech = Echelon::new();
        for r in &other.rows {
            ech.insert(r.clone());
        }
        self.rows.iter().all(|r| ech.contains(r.clone()))
    }
}

/// The degree `degree` slice of an initial module approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialSlice {
    pub degree: Degree,
    pub coords: Vec<(usize, Monomial)>,
    pub rows: Vec<Row>,
}

impl InitialSlice {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Ambient coordinates of all terms of degree `<= top`.
#[derive(Debug, Clone)]
struct Coordinates {
    keys: Vec<(usize, Monomial)>,
    degrees: Vec<Degree>,
    index: HashMap<(usize, Monomial), usize>,
}

impl Coordinates {
    fn build(
        nvars: usize,
        module: &ShiftedFreeModule,
        top: Degree,
        limit: usize,
    ) -> Result<Self, OracleError> {
        let bound = module.lower_bound();
        let mut needed = 0usize;
        let mut d = top;
        while d >= bound {
            for &shift in module.shifts() {
                let k = (d - shift).value();
                if k >= 0 {
                    needed = needed.saturating_add(count_monomials(nvars, k as u32));
                }
            }
            d = d - Degree::new(1);
        }
        if needed > limit {
            return Err(OracleError::DimensionOverflow { needed, limit });
        }
        let mut keys = Vec::with_capacity(needed);
        let mut degrees = Vec::with_capacity(needed);
        let mut d = top;
        while d >= bound {
            let mut block: Vec<(usize, Monomial)> = Vec::new();
            for (pos, &shift) in module.shifts().iter().enumerate() {
                let k = (d - shift).value();
                if k >= 0 {
                    for m in monomials_of_degree(nvars, k as u32) {
                        block.push((pos, m));
                    }
                }
            }
            block.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            degrees.extend(std::iter::repeat_n(d, block.len()));
            keys.extend(block);
            d = d - Degree::new(1);
        }
        let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Ok(Coordinates {
            keys,
            degrees,
            index,
        })
    }

    /// First column of degree `<= d`.
    fn offset(&self, d: Degree) -> usize {
        self.degrees.partition_point(|&deg| deg > d)
    }

    fn len(&self) -> usize {
        self.keys.len()
    }
}

fn count_monomials(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    // C(k + n - 1, n - 1)
    let (n, k) = (nvars as u128 - 1, k as u128);
    let mut acc: u128 = 1;
    for i in 1..=n {
        acc = acc * (k + i) / i;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// All monomials of total degree `k` in `nvars` variables.
fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, var: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            exps.push(left);
            out.push(Monomial::from_exponents(exps));
            exps.pop();
            return;
        }
        for e in (0..=left).rev() {
            exps.push(e);
            rec(nvars, var + 1, left - e, exps, out);
            exps.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(nvars, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `m·v`; `None` if some term falls outside the ambient.
fn row_of(
    index: &HashMap<(usize, Monomial), usize>,
    v: &ModuleVector<Polynomial>,
    m: Monomial,
) -> Option<Row> {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (_, comp) in v.components() {
        for (pos, entry) in comp.entries.iter().enumerate() {
            for (mono, c) in entry.terms() {
                let col = *index.get(&(pos, mono.mul(&m)))?;
                *acc.entry(col)
                    .or_insert_with(|| BigRational::from_integer(0.into())) += c;
            }
        }
    }
    Some(
        acc.into_iter()
            .filter(|(_, c)| *c != BigRational::from_integer(0.into()))
            .collect(),
    )
}

/// One incremental echelon over products sorted by degree, with the row
/// count recorded after each product degree.
struct Ladder {
    echelon: Echelon,
    stage_rows: BTreeMap<Degree, usize>,
}

impl Ladder {
    fn build(
        nvars: usize,
        coords: &Coordinates,
        elements: &[ModuleVector<Polynomial>],
        bottom: Degree,
        top: Degree,
    ) -> Ladder {
        let mut products: Vec<(Degree, usize, Monomial)> = Vec::new();
        for (i, x) in elements.iter().enumerate() {
            let Ok(dx) = x.degree() else { continue };
            let mut k = 0;
            while dx + Degree::new(k) <= top {
                for m in monomials_of_degree(nvars, k as u32) {
                    products.push((dx + Degree::new(k), i, m));
                }
                k += 1;
            }
        }
        products.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)));
        let mut echelon = Echelon::new();
        let mut stage_rows = BTreeMap::new();
        let mut next = 0;
        let mut t = bottom;
        while t <= top {
            while next < products.len() && products[next].0 <= t {
                let (_, i, m) = products[next];
                if echelon.rank() < coords.len() {
                    let row =
                        row_of(&coords.index, &elements[i], m).expect("product within ambient");
                    echelon.insert(row);
                }
                next += 1;
            }
            stage_rows.insert(t, echelon.rank());
            t = t + Degree::new(1);
        }
        Ladder {
            echelon,
            stage_rows,
        }
    }

    /// Rows present once all products of degree `<= stage` are in.
    fn rows_at(&self, stage: Degree) -> usize {
        self.stage_rows
            .range(..=stage)
            .next_back()
            .map_or(0, |(_, &n)| n)
    }

    /// Dimension of the degree `<= d` part at `stage`.
    fn rank_at(&self, coords: &Coordinates, stage: Degree, d: Degree) -> usize {
        let offset = coords.offset(d);
        (0..self.rows_at(stage))
            .filter(|&r| self.echelon.pivot(r) >= offset)
            .count()
    }
}

/// Brute-force checks inside a shifted free module over a polynomial ring.
#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    ring: &'a PolyRing,
    module: &'a ShiftedFreeModule,
    limit: usize,
}

impl<'a> Oracle<'a> {
    pub fn new(ring: &'a PolyRing, module: &'a ShiftedFreeModule) -> Self {
        Oracle {
            ring,
            module,
            limit: DEFAULT_COORDINATE_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    fn check_bound(&self, d: Degree) -> Result<(), OracleError> {
        let bound = self.module.lower_bound();
        if d < bound {
            return Err(OracleError::BelowLowerBound { degree: d, bound });
        }
        Ok(())
    }

    pub fn truncated_span(
        &self,
        xs: &[ModuleVector<Polynomial>],
        d: Degree,
        slack: u32,
    ) -> Result<TruncatedSpan, OracleError> {
        self.check_bound(d)?;
        let top = d + Degree::new(slack as i32);
        let coords = Coordinates::build(self.ring.nvars(), self.module, top, self.limit)?;
        let ladder = Ladder::build(
            self.ring.nvars(),
            &coords,
            xs,
            self.module.lower_bound(),
            top,
        );
        let offset = coords.offset(d);
        let kept = (0..ladder.rows_at(top))
            .filter(|&r| ladder.echelon.pivot(r) >= offset)
            .map(|r| {
                ladder.echelon.rows()[r]
                    .iter()
                    .map(|(c, a)| (c - offset, a.clone()))
                    .collect::<Row>()
            });
        let rows = rref(kept);
        let keys: Vec<(usize, Monomial)> = coords.keys[offset..].to_vec();
        let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Ok(TruncatedSpan {
            degree_bound: d,
            slack,
            coords: keys,
            index,
            rows,
        })
    }

    /// Compares the slack-free span of `candidate` against the slack-`s` span
    /// of `original ∪ candidate` in every degree up to `d`.
    pub fn verify_gb_truncated(
        &self,
        original: &[ModuleVector<Polynomial>],
        candidate: &[ModuleVector<Polynomial>],
        d: Degree,
        max_slack: u32,
    ) -> Verdict {
        match self.try_verify(original, candidate, d, max_slack) {
            Ok(v) => v,
            Err(e) => Verdict::Inconclusive {
                reason: e.to_string(),
            },
        }
    }

    fn try_verify(
        &self,
        original: &[ModuleVector<Polynomial>],
        candidate: &[ModuleVector<Polynomial>],
        d: Degree,
        max_slack: u32,
    ) -> Result<Verdict, OracleError> {
        self.check_bound(d)?;
        let bottom = self.module.lower_bound();
        let top = d + Degree::new(max_slack as i32);
        let coords = Coordinates::build(self.ring.nvars(), self.module, top, self.limit)?;
        let nvars = self.ring.nvars();
        let only_candidate = Ladder::build(nvars, &coords, candidate, bottom, d);
        let mut union: Vec<ModuleVector<Polynomial>> = candidate.to_vec();
        union.extend(original.iter().cloned());
        let both = Ladder::build(nvars, &coords, &union, bottom, top);
        let mut level = bottom;
        while level <= d {
            let a = only_candidate.rank_at(&coords, level, level);
            for s in 0..=max_slack {
                let b = both.rank_at(&coords, level + Degree::new(s as i32), level);
                if b > a {
                    return Ok(Verdict::Refuted {
                        degree: level,
                        slack: s,
                    });
                }
            }
            level = level + Degree::new(1);
        }
        Ok(Verdict::Verified)
    }

    /// For each degree `d' <= d`, the top-degree parts of the elements of
    /// `truncated_span(xs, d', slack)` of degree exactly `d'`.
    pub fn truncated_initial_module(
        &self,
        xs: &[ModuleVector<Polynomial>],
        d: Degree,
        slack: u32,
    ) -> Result<Vec<InitialSlice>, OracleError> {
        self.check_bound(d)?;
        let bottom = self.module.lower_bound();
        let top = d + Degree::new(slack as i32);
        let coords = Coordinates::build(self.ring.nvars(), self.module, top, self.limit)?;
        let ladder = Ladder::build(self.ring.nvars(), &coords, xs, bottom, top);
        let mut out = Vec::new();
        let mut level = bottom;
        while level <= d {
            let start = coords.offset(level);
            let end = coords.offset(level - Degree::new(1));
            let stage = level + Degree::new(slack as i32);
            let block = (0..ladder.rows_at(stage))
                .filter(|&r| (start..end).contains(&ladder.echelon.pivot(r)))
                .map(|r| {
                    ladder.echelon.rows()[r]
                        .iter()
                        .filter(|(c, _)| *c < end)
                        .map(|(c, a)| (c - start, a.clone()))
                        .collect::<Row>()
                });
            out.push(InitialSlice {
                degree: level,
                coords: coords.keys[start..end].to_vec(),
                rows: rref(block),
            });
            level = level + Degree::new(1);
        }
        Ok(out)
    }

    /// For each degree `d' <= d`, the span of the products `m·ini(g)` of
    /// degree `d'`.
    pub fn initial_span_of_basis(
        &self,
        basis: &[ModuleVector<Polynomial>],
        d: Degree,
    ) -> Result<Vec<InitialSlice>, OracleError> {
        self.check_bound(d)?;
        let initial: Vec<ModuleVector<Polynomial>> = basis
            .iter()
            .filter_map(|g| g.initial_term().ok())
            .map(|HomogeneousComponent { degree, payload }| {
                ModuleVector::homogeneous(degree, payload)
            })
            .collect();
        self.truncated_initial_module(&initial, d, 0)
    }

    /// Exact coordinate vector of `v` within the degree `<= d` ambient.
    pub fn coordinates_of(
        &self,
        v: &ModuleVector<Polynomial>,
        d: Degree,
    ) -> Result<Option<Row>, OracleError> {
        let coords = Coordinates::build(self.ring.nvars(), self.module, d, self.limit)?;
        Ok(row_of(&coords.index, v, Monomial::one()))
    }
}

/// Renders a slice basis as polynomials (one vector per row), for reports.
pub fn slice_vectors(
    ring: &PolyRing,
    rank: usize,
    slice: &InitialSlice,
) -> Vec<HomVector<Polynomial>> {
    slice
        .rows
        .iter()
        .map(|row| {
            let mut entries = vec![Vec::new(); rank];
            for (c, a) in row {
                let (pos, m) = slice.coords[*c];
                entries[pos].push((m, a.clone()));
            }
            HomVector::new(
                entries
                    .into_iter()
                    .map(|t| Polynomial::from_terms(ring.nvars(), t))
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests;
