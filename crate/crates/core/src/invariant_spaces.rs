//! Finite-dimensional polynomial subspaces and the translation, dilation and
//! translation-dilation orbits of a single polynomial.
//!
//! A [`PolySpace`] keeps its basis in reduced row-echelon form with respect
//! to the graded-lex order: every row is monic at its leading monomial (the
//! pivot), and no pivot monomial appears in any other row. That form is
//! unique for a given span, so `==` on `PolySpace` is span equality.
//!
//! Translation-dilation invariant spaces are never stored as a `PolySpace`;
//! they are monomial spans over a [`LowerSet`], which may be infinite.

use num_traits::Zero;

use crate::error::{check_dim, Result};
use crate::multiindex::{LowerSet, MultiIndex};
use crate::operators::partial;
use crate::polynomial::{Polynomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolySpace {
    dim: usize,
    /// Sorted by pivot, descending.
    rows: Vec<Polynomial>,
}

impl PolySpace {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        PolySpace {
            dim,
            rows: Vec::new(),
        }
    }

    /// Row-reduced basis of the linear span of `gens`.
    pub fn span<'a>(dim: usize, gens: impl IntoIterator<Item = &'a Polynomial>) -> Result<Self> {
        let mut space = PolySpace::zero(dim);
        for g in gens {
            space.insert(g)?;
        }
        Ok(space)
    }

    /// `span{x^β : β ∈ indices}`.
    pub fn monomial_span(dim: usize, indices: &[MultiIndex]) -> Result<Self> {
        let monomials = indices
            .iter()
            .map(|a| check_dim(dim, a.dim()).map(|_| Polynomial::monomial(a)))
            .collect::<Result<Vec<_>>>()?;
        PolySpace::span(dim, &monomials)
    }

    /// Ambient number of variables.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the space as a vector space.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The reduced basis, by pivot descending.
    pub fn basis(&self) -> &[Polynomial] {
        &self.rows
    }

    /// Pivot monomial of each basis row.
    pub fn pivots(&self) -> Vec<MultiIndex> {
        self.rows.iter().map(|r| lead(r).clone()).collect()
    }

    /// Monomials occurring in some element of the space, graded-lex
    /// descending.
    pub fn support(&self) -> Vec<MultiIndex> {
        let mut support: Vec<MultiIndex> = self.rows.iter().flat_map(Polynomial::support).collect();
        support.sort_by(|a, b| b.cmp(a));
        support.dedup();
        support
    }

    /// The basis as a dense matrix over [`PolySpace::support`].
    pub fn matrix(&self) -> (Vec<MultiIndex>, Vec<Vec<Rational>>) {
        let support = self.support();
        let rows = self
            .rows
            .iter()
            .map(|r| support.iter().map(|a| r.coefficient(a)).collect())
            .collect();
        (support, rows)
    }

    /// Remainder of `p` after eliminating every pivot monomial.
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut rest = p.clone();
        for row in &self.rows {
            let c = rest.coefficient(lead(row));
            if !c.is_zero() {
                rest.sub_scaled(&c, row);
            }
        }
        rest
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        check_dim(self.dim, p.dim())?;
        Ok(self.reduce(p).is_zero())
    }

    /// Adds `p` to the span; returns whether the rank grew.
    pub fn insert(&mut self, p: &Polynomial) -> Result<bool> {
        check_dim(self.dim, p.dim())?;
        let rest = self.reduce(p);
        let Some((pivot, c)) = rest.leading() else {
            return Ok(false);
        };
        let pivot = pivot.clone();
        let row = rest.scale(&c.recip());
        for other in &mut self.rows {
            let c = other.coefficient(&pivot);
            if !c.is_zero() {
                other.sub_scaled(&c, &row);
            }
        }
        let at = self.rows.partition_point(|r| *lead(r) > pivot);
        self.rows.insert(at, row);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &PolySpace) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        Ok(self.rows.iter().all(|r| other.reduce(r).is_zero()))
    }

    /// One canonical polynomial string per basis row.
    pub fn to_lines(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }

    /// Reads one polynomial per non-blank line and spans them. Lines starting
    /// with `#` are ignored.
    pub fn from_lines(text: &str, dim: Option<usize>) -> Result<Self> {
        let polys = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| Polynomial::parse(l, dim))
            .collect::<Result<Vec<_>>>()?;
        let dim = dim.unwrap_or_else(|| polys.iter().map(Polynomial::dim).max().unwrap_or(1));
        let polys = polys.into_iter().map(|p| widen(p, dim)).collect::<Vec<_>>();
        PolySpace::span(dim, &polys)
    }
}

fn lead(row: &Polynomial) -> &MultiIndex {
    row.leading().expect("basis rows are nonzero").0
}

/// Re-embeds `p` into `dim ≥ p.dim()` variables.
fn widen(p: Polynomial, dim: usize) -> Polynomial {
    if p.dim() == dim {
        return p;
    }
    Polynomial::from_terms(
        dim,
        p.terms().map(|(a, c)| {
            let mut e = a.entries().to_vec();
            e.resize(dim, 0);
            (MultiIndex::new(e), c.clone())
        }),
    )
}

pub fn span_basis(dim: usize, gens: &[Polynomial]) -> Result<PolySpace> {
    PolySpace::span(dim, gens)
}

pub fn space_contains(space: &PolySpace, p: &Polynomial) -> Result<bool> {
    space.contains(p)
}

/// Builds the span of the distinct monomials `{q_α : α ∈ S}` and checks that
/// its dimension equals `|S|`.
pub fn monomial_rank_check(indices: &[MultiIndex], dim: usize) -> Result<bool> {
    let mut distinct = indices.to_vec();
    distinct.sort();
    distinct.dedup();
    Ok(PolySpace::monomial_span(dim, &distinct)?.rank() == distinct.len())
}

/// `τ(p)`: the span of all partial derivatives `∂^α p`, with `α` bounded by
/// the per-variable degree vector of `p`.
pub fn tau_orbit(p: &Polynomial) -> PolySpace {
    let Some(bound) = p.degree_vector() else {
        return PolySpace::zero(p.dim());
    };
    let derivatives: Vec<Polynomial> = bound
        .initial_section()
        .iter()
        .map(|a| partial(p, a).expect("same dimension"))
        .filter(|d| !d.is_zero())
        .collect();
    PolySpace::span(p.dim(), &derivatives).expect("same dimension")
}

/// `σ(p)`: the span of the monomials `x^α` with `∂^α p(0) ≠ 0`, which are
/// exactly the monomials in the support of `p`.
pub fn sigma_orbit(p: &Polynomial) -> PolySpace {
    PolySpace::monomial_span(p.dim(), &p.support()).expect("same dimension")
}

/// `τσ(p)` as the lower set generated by the support of `p`.
pub fn tausigma_orbit(p: &Polynomial) -> LowerSet {
    LowerSet::downward_closure(&p.support(), p.dim()).expect("same dimension")
}

/// `Ω_V = {α : x^α ∈ V}`, scanning only the box bounded by the
/// per-variable degrees of `V`'s support. Graded-lex ascending.
pub fn omega_of_space(space: &PolySpace) -> Vec<MultiIndex> {
    let support = space.support();
    let Some(first) = support.first() else {
        return Vec::new();
    };
    let bound = support.iter().fold(first.clone(), |acc, a| acc.join(a));
    let mut omega: Vec<MultiIndex> = bound
        .initial_section()
        .into_iter()
        .filter(|a| space.reduce(&Polynomial::monomial(a)).is_zero())
        .collect();
    omega.sort();
    omega
}

/// Closed under every `∂_k`, which by the Taylor formula is equivalent to
/// invariance under all translations.
pub fn is_translation_invariant(space: &PolySpace) -> bool {
    let dim = space.dim();
    space.basis().iter().all(|row| {
        (0..dim).all(|k| {
            let d = partial(row, &MultiIndex::unit(dim, k)).expect("same dimension");
            space.reduce(&d).is_zero()
        })
    })
}

/// Admits a monomial basis: every monomial of every basis row lies in the
/// space.
pub fn is_dilation_invariant(space: &PolySpace) -> bool {
    space
        .support()
        .iter()
        .all(|a| space.reduce(&Polynomial::monomial(a)).is_zero())
}

/// The smallest translation-dilation invariant space containing `gens`, as
/// a lower set.
pub fn tdi_closure(dim: usize, gens: &[Polynomial]) -> Result<LowerSet> {
    let mut support = Vec::new();
    for g in gens {
        check_dim(dim, g.dim())?;
        support.extend(g.support());
    }
    LowerSet::downward_closure(&support, dim)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Membership {
    pub member: bool,
    /// Graded-lex smallest index of the support outside the lower set.
    pub witness: Option<MultiIndex>,
}

/// Whether `p` lies in the monomial span over `omega`.
pub fn lowerset_member(p: &Polynomial, omega: &LowerSet) -> Result<Membership> {
    check_dim(omega.dim(), p.dim())?;
    let witness = p
        .terms()
        .map(|(a, _)| a)
        .find(|a| !omega.contains_unchecked(a))
        .cloned();
    Ok(Membership {
        member: witness.is_none(),
        witness,
    })
}
