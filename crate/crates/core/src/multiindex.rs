//! Multi-indices over ℕ^d and (ℕ ∪ {∞})^d, the componentwise order, and
//! downward-closed index sets ("staircases").
//!
//! A [`LowerSet`] is stored as a finite union of initial sections `[n]`
//! whose corners may carry `∞` entries. Every downward-closed subset of ℕ^d
//! has such a representation because the complement is an upward-closed set
//! with finitely many minimal elements (Dickson's lemma).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

/// An exponent vector `α ∈ ℕ^d`.
///
/// `Ord` is the graded-lexicographic order: total degree first, then
/// lexicographic with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// # Panics
    /// If `entries` is empty; the ambient dimension is at least one.
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "multi-index must have dimension >= 1");
        MultiIndex(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex::new(vec![0; dim])
    }

    /// The unit vector `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut entries = vec![0; dim];
        entries[axis] = 1;
        MultiIndex::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|α| = α_1 + … + α_d`.
    pub fn order(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `α! = α_1! ⋯ α_d!`.
    pub fn factorial(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &a| {
            (1..=a).fold(acc, |acc, k| acc * BigUint::from(k))
        })
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &MultiIndex) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise sum.
    ///
    /// # Panics
    /// On dimension mismatch.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// All `β` with `β ≤ self`, in enumeration order (see [`simplex`]).
    pub fn initial_section(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |b| {
                        let mut v = prefix.clone();
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
        out.sort_by(enumeration_order);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<u32>::deserialize(deserializer)?;
        if entries.is_empty() {
            return Err(serde::de::Error::custom("multi-index must be non-empty"));
        }
        Ok(MultiIndex(entries))
    }
}

/// Order used when enumerating finite index sets: total degree ascending,
/// then lexicographically descending within a degree, so `(1,0)` precedes
/// `(0,1)`.
pub fn enumeration_order(a: &MultiIndex, b: &MultiIndex) -> Ordering {
    a.order().cmp(&b.order()).then_with(|| b.0.cmp(&a.0))
}

/// All `β ∈ ℕ^dim` with `|β| ≤ degree`, in [`enumeration_order`].
pub fn simplex(dim: usize, degree: u32) -> Vec<MultiIndex> {
    fn compositions(dim: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(total);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(dim, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=degree {
        compositions(dim, total, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

/// An entry of ℕ ∪ {∞}. `Infinite` compares above every finite value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Extent {
    Finite(u32),
    Infinite,
}

impl Extent {
    fn admits(self, value: u32) -> bool {
        match self {
            Extent::Finite(n) => value <= n,
            Extent::Infinite => true,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(n) => serializer.serialize_u32(*n),
            Extent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => Ok(Extent::Finite(n)),
            Raw::Str(s) if s == "inf" => Ok(Extent::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a natural number or \"inf\", found {s:?}"
            ))),
        }
    }
}

/// A point of (ℕ ∪ {∞})^d.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtendedMultiIndex(Vec<Extent>);

impl ExtendedMultiIndex {
    pub fn new(entries: Vec<Extent>) -> Self {
        assert!(!entries.is_empty(), "multi-index must have dimension >= 1");
        ExtendedMultiIndex(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Extent] {
        &self.0
    }

    pub fn leq(&self, other: &ExtendedMultiIndex) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.leq_unchecked(other))
    }

    fn leq_unchecked(&self, other: &ExtendedMultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Whether the finite index `a` lies in the initial section `[self]`.
    pub fn dominates(&self, a: &MultiIndex) -> bool {
        self.0.iter().zip(a.entries()).all(|(n, &v)| n.admits(v))
    }

    fn sort_key(&self) -> (usize, u64) {
        let infinite = self.0.iter().filter(|e| **e == Extent::Infinite).count();
        let finite = self
            .0
            .iter()
            .map(|e| match e {
                Extent::Finite(n) => u64::from(*n),
                Extent::Infinite => 0,
            })
            .sum();
        (infinite, finite)
    }
}

impl From<&MultiIndex> for ExtendedMultiIndex {
    fn from(a: &MultiIndex) -> Self {
        ExtendedMultiIndex(a.entries().iter().map(|&v| Extent::Finite(v)).collect())
    }
}

/// Graded order: number of infinite entries, then the sum of the finite
/// ones, then lexicographic.
impl Ord for ExtendedMultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExtendedMultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedMultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A downward-closed subset of ℕ^d, stored as the union of the initial
/// sections of its generators.
///
/// Generators are kept normalized: no generator is `≤` another, and they are
/// sorted in the graded order of [`ExtendedMultiIndex`]. Structural equality
/// is therefore set equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawLowerSet", into = "RawLowerSet")]
pub struct LowerSet {
    dim: usize,
    generators: Vec<ExtendedMultiIndex>,
}

#[derive(Serialize, Deserialize)]
struct RawLowerSet {
    d: usize,
    generators: Vec<ExtendedMultiIndex>,
}

impl TryFrom<RawLowerSet> for LowerSet {
    type Error = Error;

    fn try_from(raw: RawLowerSet) -> Result<Self> {
        LowerSet::from_generators(raw.d, raw.generators)
    }
}

impl From<LowerSet> for RawLowerSet {
    fn from(set: LowerSet) -> Self {
        RawLowerSet {
            d: set.dim,
            generators: set.generators,
        }
    }
}

impl LowerSet {
    /// The empty set, which indexes the zero space.
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        LowerSet {
            dim,
            generators: Vec::new(),
        }
    }

    /// All of ℕ^d.
    pub fn full(dim: usize) -> Self {
        LowerSet::from_normalized(dim, vec![ExtendedMultiIndex(vec![Extent::Infinite; dim])])
    }

    pub fn from_generators(dim: usize, generators: Vec<ExtendedMultiIndex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be >= 1".into()));
        }
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        Ok(LowerSet::from_normalized(dim, generators))
    }

    fn from_normalized(dim: usize, mut generators: Vec<ExtendedMultiIndex>) -> Self {
        generators.sort();
        generators.dedup();
        let maximal = generators
            .iter()
            .filter(|g| !generators.iter().any(|h| h != *g && g.leq_unchecked(h)))
            .cloned()
            .collect();
        LowerSet {
            dim,
            generators: maximal,
        }
    }

    /// The smallest lower set containing every index of `indices`.
    pub fn downward_closure(indices: &[MultiIndex], dim: usize) -> Result<Self> {
        for a in indices {
            check_dim(dim, a.dim())?;
        }
        Ok(LowerSet::from_normalized(
            dim,
            indices.iter().map(ExtendedMultiIndex::from).collect(),
        ))
    }

    /// `{β : β_axis ≤ bound}`; axes are 0-based.
    pub fn slab(axis: usize, bound: u32, dim: usize) -> Result<Self> {
        if axis >= dim {
            return Err(Error::InvalidAxis { axis, dim });
        }
        let mut corner = vec![Extent::Infinite; dim];
        corner[axis] = Extent::Finite(bound);
        Ok(LowerSet::from_normalized(
            dim,
            vec![ExtendedMultiIndex(corner)],
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExtendedMultiIndex] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether every generator is finite, i.e. the set itself is finite.
    pub fn is_finite(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.entries().iter().all(|e| *e != Extent::Infinite))
    }

    pub fn contains(&self, a: &MultiIndex) -> Result<bool> {
        check_dim(self.dim, a.dim())?;
        Ok(self.contains_unchecked(a))
    }

    pub(crate) fn contains_unchecked(&self, a: &MultiIndex) -> bool {
        self.generators.iter().any(|g| g.dominates(a))
    }

    pub fn union(&self, other: &LowerSet) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let generators = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Ok(LowerSet::from_normalized(self.dim, generators))
    }

    /// The union of the slabs `{β : β_k < a_k}` over all axes with
    /// `a_k ≥ 1`. It contains `self` and excludes `a`, which must lie
    /// outside `self`.
    pub fn enveloping_slabs(&self, a: &MultiIndex) -> Result<Self> {
        if self.contains(a)? {
            return Err(Error::IndexInLowerSet(a.clone()));
        }
        let mut out = LowerSet::empty(self.dim);
        for (axis, &bound) in a.entries().iter().enumerate() {
            if bound >= 1 {
                out = out.union(&LowerSet::slab(axis, bound - 1, self.dim)?)?;
            }
        }
        Ok(out)
    }

    /// `{β ∈ self : |β| ≤ degree}` in [`enumeration_order`].
    pub fn truncate(&self, degree: u32) -> Vec<MultiIndex> {
        if self.is_empty() {
            return Vec::new();
        }
        simplex(self.dim, degree)
            .into_iter()
            .filter(|b| self.contains_unchecked(b))
            .collect()
    }

    /// Minimal elements of the complement ℕ^d \ self, in
    /// [`enumeration_order`].
    pub fn minimal_outside(&self) -> Vec<MultiIndex> {
        // The complement of [n] is the union of the cones above (n_k + 1)·e_k
        // over finite n_k; intersecting such unions pairs generators by join.
        let mut corners = vec![MultiIndex::zeros(self.dim)];
        for g in &self.generators {
            let cones: Vec<MultiIndex> = g
                .entries()
                .iter()
                .enumerate()
                .filter_map(|(axis, e)| match e {
                    Extent::Finite(n) => {
                        let mut v = vec![0; self.dim];
                        v[axis] = n + 1;
                        Some(MultiIndex(v))
                    }
                    Extent::Infinite => None,
                })
                .collect();
            let mut next: Vec<MultiIndex> = corners
                .iter()
                .flat_map(|m| cones.iter().map(move |c| m.join(c)))
                .collect();
            next.sort();
            next.dedup();
            corners = next
                .iter()
                .filter(|m| !next.iter().any(|o| o != *m && o.leq_unchecked(m)))
                .cloned()
                .collect();
        }
        corners.sort_by(enumeration_order);
        corners
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lower set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let position = text
                .lines()
                .take(e.line().saturating_sub(1))
                .map(|l| l.len() + 1)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            Error::parse(position, e.to_string())
        })
    }
}

impl fmt::Display for LowerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
