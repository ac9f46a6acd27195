//! Degree calculus, graded elements, shifted free modules and the contract a
//! homogeneous kernel has to satisfy.
//!
//! An element of a graded module is stored as a finitely supported map from
//! degrees to nonzero homogeneous components. The degree of an element is the
//! largest degree in its support and its initial term is the component sitting
//! there. Nothing here knows what a homogeneous component actually is; that is
//! supplied by a [`HomogeneousKernel`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

/// An integer degree. Arithmetic panics on overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(i32);

impl Degree {
    pub const ZERO: Degree = Degree(0);

    pub const fn new(value: i32) -> Self {
        Degree(value)
    }

    pub const fn value(self) -> i32 {
        self.0
    }
}

impl From<i32> for Degree {
    fn from(value: i32) -> Self {
        Degree(value)
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        Degree(self.0.checked_add(rhs.0).expect("degree overflow"))
    }
}

impl Sub for Degree {
    type Output = Degree;

    fn sub(self, rhs: Degree) -> Degree {
        Degree(self.0.checked_sub(rhs.0).expect("degree overflow"))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("the zero element has no degree")]
    ZeroElement,
    #[error("component of degree {degree} lies below the module lower bound {bound}")]
    BelowLowerBound { degree: Degree, bound: Degree },
    #[error("vector has {found} entries but the module has rank {rank}")]
    RankMismatch { rank: usize, found: usize },
    #[error(
        "entry {index} of the degree {degree} component is not homogeneous of degree {expected}"
    )]
    EntryDegree {
        index: usize,
        degree: Degree,
        expected: Degree,
    },
}

/// Errors raised by a homogeneous kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("operands live over different variable sets")]
    VariableMismatch,
    #[error("{requested} variables requested, at most {limit} supported")]
    TooManyVariables { requested: usize, limit: usize },
    #[error("generator {index} is not homogeneous of its declared degree")]
    NotHomogeneous { index: usize },
    #[error("membership target must be nonzero")]
    ZeroTarget,
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Payload of a homogeneous component: an additive group element with a
/// distinguished zero.
pub trait Component: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    fn negated(&self) -> Self;
}

/// A homogeneous component `x_n` together with its degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousComponent<C> {
    pub degree: Degree,
    pub payload: C,
}

impl<C> HomogeneousComponent<C> {
    pub fn new(degree: Degree, payload: C) -> Self {
        HomogeneousComponent { degree, payload }
    }
}

/// A finitely supported sum of homogeneous components in canonical sparse
/// form: no zero component is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement<C> {
    components: BTreeMap<Degree, C>,
}

impl<C: Component> Default for GradedElement<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Component> GradedElement<C> {
    pub fn zero() -> Self {
        GradedElement {
            components: BTreeMap::new(),
        }
    }

    pub fn homogeneous(degree: Degree, payload: C) -> Self {
        let mut out = Self::zero();
        if !payload.is_zero() {
            out.components.insert(degree, payload);
        }
        out
    }

    /// Sums the given components; repeated degrees are added together.
    pub fn from_components<I>(components: I) -> Self
    where
        I: IntoIterator<Item = (Degree, C)>,
    {
        let mut out = Self::zero();
        for (degree, payload) in components {
            out.add_component(degree, &payload);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.len() <= 1
    }

    /// The largest degree carrying a nonzero component.
    pub fn degree(&self) -> Result<Degree, GradedError> {
        self.components
            .keys()
            .next_back()
            .copied()
            .ok_or(GradedError::ZeroElement)
    }

    pub fn lowest_degree(&self) -> Result<Degree, GradedError> {
        self.components
            .keys()
            .next()
            .copied()
            .ok_or(GradedError::ZeroElement)
    }

    pub fn initial_term(&self) -> Result<HomogeneousComponent<C>, GradedError> {
        self.components
            .iter()
            .next_back()
            .map(|(d, c)| HomogeneousComponent::new(*d, c.clone()))
            .ok_or(GradedError::ZeroElement)
    }

    pub fn component(&self, degree: Degree) -> Option<&C> {
        self.components.get(&degree)
    }

    /// Components in ascending degree.
    pub fn components(&self) -> impl DoubleEndedIterator<Item = (Degree, &C)> + '_ {
        self.components.iter().map(|(d, c)| (*d, c))
    }

    pub fn support_len(&self) -> usize {
        self.components.len()
    }

    pub fn add_component(&mut self, degree: Degree, payload: &C) {
        if payload.is_zero() {
            return;
        }
        match self.components.get_mut(&degree) {
            Some(existing) => {
                existing.accumulate(payload);
                if existing.is_zero() {
                    self.components.remove(&degree);
                }
            }
            None => {
                self.components.insert(degree, payload.clone());
            }
        }
    }

    pub fn remove_component(&mut self, degree: Degree) -> Option<C> {
        self.components.remove(&degree)
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (d, c) in &other.components {
            self.add_component(*d, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (d, c) in &other.components {
            self.add_component(*d, &c.negated());
        }
    }

    pub fn negated(&self) -> Self {
        GradedElement {
            components: self
                .components
                .iter()
                .map(|(d, c)| (*d, c.negated()))
                .collect(),
        }
    }

    /// Applies `f` to every component, dropping any that become zero.
    pub fn map_components<D: Component>(
        &self,
        mut f: impl FnMut(Degree, &C) -> D,
    ) -> GradedElement<D> {
        GradedElement::from_components(self.components.iter().map(|(d, c)| (*d, f(*d, c))))
    }

    /// Moves every component up by `shift`.
    pub fn shifted(&self, shift: Degree) -> Self {
        GradedElement {
            components: self
                .components
                .iter()
                .map(|(d, c)| (*d + shift, c.clone()))
                .collect(),
        }
    }
}

impl<C: Component> Add for &GradedElement<C> {
    type Output = GradedElement<C>;

    fn add(self, rhs: &GradedElement<C>) -> GradedElement<C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<C: Component> Sub for &GradedElement<C> {
    type Output = GradedElement<C>;

    fn sub(self, rhs: &GradedElement<C>) -> GradedElement<C> {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<C: Component> Neg for &GradedElement<C> {
    type Output = GradedElement<C>;

    fn neg(self) -> GradedElement<C> {
        self.negated()
    }
}

/// A homogeneous vector of a free module: one homogeneous ring element per
/// basis vector, entry `i` having degree `d - shift_i` for the common degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomVector<H> {
    pub entries: Vec<H>,
}

impl<H> HomVector<H> {
    pub fn new(entries: Vec<H>) -> Self {
        HomVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<H: Component> Component for HomVector<H> {
    fn is_zero(&self) -> bool {
        self.entries.iter().all(Component::is_zero)
    }

    fn accumulate(&mut self, other: &Self) {
        debug_assert_eq!(self.entries.len(), other.entries.len());
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.accumulate(b);
        }
    }

    fn negated(&self) -> Self {
        HomVector::new(self.entries.iter().map(Component::negated).collect())
    }
}

pub type RingElement<H> = GradedElement<H>;
pub type ModuleVector<H> = GradedElement<HomVector<H>>;

/// A homogeneous generator row `(c_i)` of the syzygies of homogeneous elements
/// `x_i`: every nonzero `c_i` has degree `degree - deg(x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyRow<H> {
    pub degree: Degree,
    pub entries: Vec<H>,
}

/// The free module `⊕ R e_i` with `e_i` homogeneous of degree `shifts[i]`.
///
/// Components are bounded below by the smallest shift, since ring degrees are
/// non-negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftedFreeModule {
    shifts: Vec<Degree>,
}

impl ShiftedFreeModule {
    pub fn new(shifts: Vec<Degree>) -> Self {
        ShiftedFreeModule { shifts }
    }

    /// The ring itself: rank one, generator in degree zero.
    pub fn ring() -> Self {
        ShiftedFreeModule::new(vec![Degree::ZERO])
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[Degree] {
        &self.shifts
    }

    pub fn shift(&self, index: usize) -> Degree {
        self.shifts[index]
    }

    pub fn lower_bound(&self) -> Degree {
        self.shifts.iter().copied().min().unwrap_or(Degree::ZERO)
    }

    pub fn zero_vector<K: HomogeneousKernel>(&self, kernel: &K) -> HomVector<K::Hom> {
        HomVector::new(vec![kernel.zero(); self.rank()])
    }

    /// The basis vector `e_index`, living in degree `shifts[index]`.
    pub fn basis_vector<K: HomogeneousKernel>(
        &self,
        kernel: &K,
        index: usize,
    ) -> ModuleVector<K::Hom> {
        let mut v = self.zero_vector(kernel);
        v.entries[index] = kernel.one();
        GradedElement::homogeneous(self.shifts[index], v)
    }

    /// Assembles a vector from one graded ring element per basis vector.
    pub fn vector_from_entries<K: HomogeneousKernel>(
        &self,
        kernel: &K,
        entries: &[RingElement<K::Hom>],
    ) -> Result<ModuleVector<K::Hom>, GradedError> {
        if entries.len() != self.rank() {
            return Err(GradedError::RankMismatch {
                rank: self.rank(),
                found: entries.len(),
            });
        }
        let mut out = GradedElement::zero();
        for (index, entry) in entries.iter().enumerate() {
            for (d, c) in entry.components() {
                let mut v = self.zero_vector(kernel);
                v.entries[index] = c.clone();
                out.add_component(d + self.shifts[index], &v);
            }
        }
        Ok(out)
    }

    /// Splits a vector back into one graded ring element per basis vector.
    pub fn entries_of<H: Component>(&self, v: &ModuleVector<H>) -> Vec<RingElement<H>> {
        let mut out = vec![GradedElement::zero(); self.rank()];
        for (d, c) in v.components() {
            for (index, entry) in c.entries.iter().enumerate() {
                out[index].add_component(d - self.shifts[index], entry);
            }
        }
        out
    }

    /// Checks rank, the lower bound and the degree of every entry.
    pub fn validate<K: HomogeneousKernel>(
        &self,
        kernel: &K,
        v: &ModuleVector<K::Hom>,
    ) -> Result<(), GradedError> {
        let bound = self.lower_bound();
        for (degree, c) in v.components() {
            if c.len() != self.rank() {
                return Err(GradedError::RankMismatch {
                    rank: self.rank(),
                    found: c.len(),
                });
            }
            if degree < bound {
                return Err(GradedError::BelowLowerBound { degree, bound });
            }
            for (index, entry) in c.entries.iter().enumerate() {
                let expected = degree - self.shifts[index];
                if !entry.is_zero()
                    && (expected < Degree::ZERO || !kernel.is_homogeneous_of(entry, expected))
                {
                    return Err(GradedError::EntryDegree {
                        index,
                        degree,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The homogeneous layer of a graded ring `R` (supported in non-negative
/// degrees) acting on shifted free modules over it.
///
/// `Hom` is a homogeneous ring element; its degree is always carried
/// alongside it by the caller. A `Span` is a prepared finite family of
/// homogeneous module elements against which syzygies and memberships are
/// computed; kernels are free to cache whatever they need inside it.
///
/// Contract:
/// * [`express`](Self::express) returns coefficients `a_i` homogeneous of
///   degree exactly `deg(y) - deg(x_i)` (zero where that is negative) with
///   `Σ a_i x_i = y`, or `None` when `y` is not in the span.
/// * [`syzygies`](Self::syzygies) returns a finite homogeneous generating set
///   of the syzygy module of the prepared family.
pub trait HomogeneousKernel {
    type Hom: Component + Send + Sync;
    type Span;

    fn zero(&self) -> Self::Hom;
    fn one(&self) -> Self::Hom;
    fn mul(&self, a: &Self::Hom, b: &Self::Hom) -> Self::Hom;
    fn is_homogeneous_of(&self, a: &Self::Hom, degree: Degree) -> bool;

    /// Canonical total order on homogeneous ring elements.
    fn compare(&self, a: &Self::Hom, b: &Self::Hom) -> Ordering;

    /// A degree-zero unit `u` such that `u·v` is monic, if the kernel has a
    /// notion of leading coefficient.
    fn monic_factor(&self, v: &HomVector<Self::Hom>) -> Option<Self::Hom>;

    fn prepare(
        &self,
        module: &ShiftedFreeModule,
        gens: &[HomogeneousComponent<HomVector<Self::Hom>>],
    ) -> Result<Self::Span, KernelError>;

    fn syzygies(&self, span: &Self::Span) -> Result<Vec<SyzygyRow<Self::Hom>>, KernelError>;

    fn express(
        &self,
        span: &Self::Span,
        target: &HomogeneousComponent<HomVector<Self::Hom>>,
    ) -> Result<Option<Vec<Self::Hom>>, KernelError>;

    fn h_syzygies(
        &self,
        module: &ShiftedFreeModule,
        gens: &[HomogeneousComponent<HomVector<Self::Hom>>],
    ) -> Result<Vec<SyzygyRow<Self::Hom>>, KernelError> {
        let span = self.prepare(module, gens)?;
        self.syzygies(&span)
    }

    fn h_member_express(
        &self,
        module: &ShiftedFreeModule,
        target: &HomogeneousComponent<HomVector<Self::Hom>>,
        gens: &[HomogeneousComponent<HomVector<Self::Hom>>],
    ) -> Result<Option<Vec<Self::Hom>>, KernelError> {
        let span = self.prepare(module, gens)?;
        self.express(&span, target)
    }

    /// Lexicographic comparison of homogeneous vectors entry by entry.
    fn compare_vectors(&self, a: &HomVector<Self::Hom>, b: &HomVector<Self::Hom>) -> Ordering {
        for (x, y) in a.entries.iter().zip(&b.entries) {
            match self.compare(x, y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        a.len().cmp(&b.len())
    }

    /// Compares graded elements from the top component down.
    fn compare_elements(
        &self,
        a: &ModuleVector<Self::Hom>,
        b: &ModuleVector<Self::Hom>,
    ) -> Ordering {
        let mut left = a.components().rev();
        let mut right = b.components().rev();
        loop {
            match (left.next(), right.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((da, ca)), Some((db, cb))) => {
                    let ord = da.cmp(&db).then_with(|| self.compare_vectors(ca, cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

/// `c · v` for a homogeneous ring element `c` and homogeneous vector `v`.
pub fn scale_vector<K: HomogeneousKernel>(
    kernel: &K,
    c: &K::Hom,
    v: &HomVector<K::Hom>,
) -> HomVector<K::Hom> {
    HomVector::new(v.entries.iter().map(|e| kernel.mul(c, e)).collect())
}

pub fn ring_mul<K: HomogeneousKernel>(
    kernel: &K,
    a: &RingElement<K::Hom>,
    b: &RingElement<K::Hom>,
) -> RingElement<K::Hom> {
    let mut out = GradedElement::zero();
    for (da, ca) in a.components() {
        for (db, cb) in b.components() {
            out.add_component(da + db, &kernel.mul(ca, cb));
        }
    }
    out
}

/// `a · v` for a graded ring element acting on a module vector.
pub fn scale<K: HomogeneousKernel>(
    kernel: &K,
    a: &RingElement<K::Hom>,
    v: &ModuleVector<K::Hom>,
) -> ModuleVector<K::Hom> {
    let mut out = GradedElement::zero();
    for (da, ca) in a.components() {
        for (dv, cv) in v.components() {
            out.add_component(da + dv, &scale_vector(kernel, ca, cv));
        }
    }
    out
}

/// `Σ a_i x_i`.
pub fn combine<K: HomogeneousKernel>(
    kernel: &K,
    coefficients: &[RingElement<K::Hom>],
    xs: &[ModuleVector<K::Hom>],
) -> ModuleVector<K::Hom> {
    let mut out = GradedElement::zero();
    for (a, x) in coefficients.iter().zip(xs) {
        out.add_assign(&scale(kernel, a, x));
    }
    out
}

/// One summand `a·x` of an expression.
pub type ExpressionTerm<H> = (RingElement<H>, ModuleVector<H>);

/// Whether `y = Σ a_i x_i` exactly with `deg(a_i) + deg(x_i) <= deg(y)` for
/// every nonzero `a_i`.
pub fn is_reduced_expression<K: HomogeneousKernel>(
    kernel: &K,
    y: &ModuleVector<K::Hom>,
    terms: &[ExpressionTerm<K::Hom>],
) -> bool {
    let Ok(bound) = y.degree() else {
        return false;
    };
    let mut sum = GradedElement::zero();
    for (a, x) in terms {
        if a.is_zero() {
            continue;
        }
        let (Ok(da), Ok(dx)) = (a.degree(), x.degree()) else {
            return false;
        };
        if da + dx > bound {
            return false;
        }
        sum.add_assign(&scale(kernel, a, x));
    }
    sum == *y
}
