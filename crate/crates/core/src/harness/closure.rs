//! Desk-scale demonstrator for the closure property of translation-dilation
//! invariant spaces.
//!
//! Pointwise convergence on all of ℝ^d cannot be certified from finite data,
//! so [`check_closure`] only checks the claimed convergence on a finite grid
//! and then reports whether the limit lies in the monomial span over the
//! lower set. When it does not, the verdict carries the reduction data of
//! the argument: a violating index `α` and the union of slabs
//! `{β : β_k < α_k}` that contains the lower set but not `α`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::invariant_spaces::lowerset_member;
use crate::multiindex::{simplex, LowerSet, MultiIndex};
use crate::operators::difference;
use crate::polynomial::{parse_rational, Point, Polynomial, Rational};

/// `Δ^N p` together with, per axis, whether it is divisible by `x_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaPower {
    pub result: Polynomial,
    pub divisible: Vec<bool>,
}

pub fn delta_power(p: &Polynomial, n: &MultiIndex) -> Result<DeltaPower> {
    let result = difference(p, n)?;
    let divisible = (0..p.dim())
        .map(|k| result.terms().all(|(a, _)| a.get(k) >= 1))
        .collect();
    Ok(DeltaPower { result, divisible })
}

/// Outcome of [`check_closure`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub member: bool,
    pub witness: Option<MultiIndex>,
    /// The slab union `Ω̃` built from the witness.
    pub enveloping: Option<LowerSet>,
    /// Largest absolute deviation from the limit on the grid, per sequence
    /// element.
    pub residuals: Vec<Rational>,
    /// Whether the last sequence element is within the tolerance of the
    /// limit at every grid point (vacuously true for an empty sequence).
    pub within_tolerance: bool,
}

impl Verdict {
    /// Whenever the limit is rejected, `omega ⊆ Ω̃` on the degree-`degree`
    /// truncation and the witness lies outside `Ω̃`.
    pub fn is_consistent(&self, omega: &LowerSet, degree: u32) -> bool {
        match (self.member, &self.witness, &self.enveloping) {
            (true, None, None) => true,
            (false, Some(witness), Some(env)) => {
                !env.contains_unchecked(witness)
                    && !omega.contains_unchecked(witness)
                    && omega
                        .truncate(degree)
                        .iter()
                        .all(|b| env.contains_unchecked(b))
            }
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            member: bool,
            witness: Option<&'a MultiIndex>,
            enveloping: Option<&'a LowerSet>,
            within_tolerance: bool,
            notes: Vec<String>,
        }
        serde_json::to_string(&Out {
            member: self.member,
            witness: self.witness.as_ref(),
            enveloping: self.enveloping.as_ref(),
            within_tolerance: self.within_tolerance,
            notes: self
                .residuals
                .iter()
                .enumerate()
                .map(|(i, r)| format!("element {}: max grid residual {r}", i + 1))
                .collect(),
        })
        .expect("verdict serializes")
    }
}

fn max_residual(p: &Polynomial, limit: &Polynomial, grid: &[Point]) -> Result<Rational> {
    let mut worst = Rational::zero();
    for x in grid {
        let r = (p.eval(x)? - limit.eval(x)?).abs();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// Checks that every sequence element lies in the span over `omega`,
/// measures how far each element is from `limit` on `grid` (the last one is
/// compared against `tolerance`), and decides whether `limit` lies in the
/// span.
pub fn check_closure(
    omega: &LowerSet,
    sequence: &[Polynomial],
    limit: &Polynomial,
    grid: &[Point],
    tolerance: &Rational,
) -> Result<Verdict> {
    let dim = omega.dim();
    check_dim(dim, limit.dim())?;
    for p in sequence {
        check_dim(dim, p.dim())?;
    }
    for (i, x) in grid.iter().enumerate() {
        check_dim(dim, x.dim())?;
        if grid[..i].contains(x) {
            return Err(Error::Precondition(format!("grid point {x} is repeated")));
        }
    }
    for (index, p) in sequence.iter().enumerate() {
        if let Some(witness) = lowerset_member(p, omega)?.witness {
            return Err(Error::SequenceNotInSpace { index, witness });
        }
    }
    let residuals = sequence
        .iter()
        .map(|p| max_residual(p, limit, grid))
        .collect::<Result<Vec<_>>>()?;
    let within_tolerance = residuals.last().is_none_or(|last| last <= tolerance);
    let membership = lowerset_member(limit, omega)?;
    let enveloping = membership
        .witness
        .as_ref()
        .map(|w| omega.enveloping_slabs(w))
        .transpose()?;
    Ok(Verdict {
        member: membership.member,
        witness: membership.witness,
        enveloping,
        residuals,
        within_tolerance,
    })
}

/// Fits a polynomial supported in `truncate(omega, degree)` to the value
/// table. [`Error::Inconsistent`] means no such polynomial matches the data.
pub fn limit_fit(table: &[(Point, Rational)], omega: &LowerSet, degree: u32) -> Result<Polynomial> {
    let support = omega.truncate(degree);
    if table.len() < support.len() {
        return Err(Error::Precondition(format!(
            "{} values cannot determine {} coefficients",
            table.len(),
            support.len()
        )));
    }
    let (points, values): (Vec<Point>, Vec<Rational>) = table.iter().cloned().unzip();
    Polynomial::fit_from_values(&points, &values, &support, omega.dim())
}

/// An integer grid `{0, …, side-1}^dim`, handy for building value tables.
pub fn integer_grid(dim: usize, side: u32) -> Vec<Point> {
    assert!(side >= 1);
    simplex(dim, (side - 1) * dim as u32)
        .into_iter()
        .filter(|a| a.entries().iter().all(|&e| e < side))
        .map(|a| {
            Point::new(
                a.entries()
                    .iter()
                    .map(|&e| Rational::from_integer(e.into()))
                    .collect(),
            )
        })
        .collect()
}

/// A closure scenario read from a file.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub omega: LowerSet,
    pub sequence: Vec<Polynomial>,
    pub limit: Polynomial,
    pub grid: Vec<Point>,
    pub tolerance: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    omega: LowerSet,
    sequence: Vec<String>,
    limit: String,
    grid: Vec<Vec<RawNumber>>,
    tolerance: RawNumber,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

impl RawNumber {
    fn parse(&self) -> Result<Rational> {
        match self {
            RawNumber::Int(n) => Ok(Rational::from_integer((*n).into())),
            RawNumber::Text(s) => parse_rational(s),
        }
    }
}

impl Scenario {
    /// Parses the JSON scenario form:
    /// `{"omega": <lower set>, "sequence": [<poly>...], "limit": <poly>,
    ///   "grid": [[<rational>...]...], "tolerance": <rational>}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })?;
        let dim = Some(raw.omega.dim());
        Ok(Scenario {
            sequence: raw
                .sequence
                .iter()
                .map(|s| Polynomial::parse(s, dim))
                .collect::<Result<_>>()?,
            limit: Polynomial::parse(&raw.limit, dim)?,
            grid: raw
                .grid
                .iter()
                .map(|row| {
                    if row.is_empty() {
                        return Err(Error::Precondition("empty grid point".into()));
                    }
                    Ok(Point::new(
                        row.iter().map(RawNumber::parse).collect::<Result<_>>()?,
                    ))
                })
                .collect::<Result<_>>()?,
            tolerance: raw.tolerance.parse()?,
            omega: raw.omega,
        })
    }

    pub fn run(&self) -> Result<Verdict> {
        check_closure(
            &self.omega,
            &self.sequence,
            &self.limit,
            &self.grid,
            &self.tolerance,
        )
    }
}
