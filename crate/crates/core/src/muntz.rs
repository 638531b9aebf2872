//! Least-squares approximation of `x^M` on `[0, 1]` by monomials whose
//! exponents are `0`, the primes, and twice the primes.
//!
//! The span of such monomials is dilation invariant and, by Müntz's theorem,
//! dense in `C[0, 1]`, yet it never contains `x^8`. Fitting on a fixed grid
//! shows the error shrinking as more exponents are admitted while the target
//! stays outside the span. This is grid least squares, not uniform best
//! approximation, and it is the only floating-point code in the crate.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Diagonal entries of `R` at or below this (columns have unit grid norm)
/// count as rank deficiency.
pub const RANK_TOLERANCE: f64 = f64::EPSILON;

/// Sorted, distinct exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentSet(Vec<u32>);

impl ExponentSet {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        exponents.sort_unstable();
        exponents.dedup();
        ExponentSet(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

/// `{0} ∪ {p ≤ bound} ∪ {2p ≤ bound}` over primes `p`.
pub fn muntz_exponents(bound: u32) -> ExponentSet {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut exponents = vec![0];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for multiple in (p * p..=n).step_by(p) {
            composite[multiple] = true;
        }
        exponents.push(p as u32);
        if 2 * p <= n {
            exponents.push(2 * p as u32);
        }
    }
    ExponentSet::new(exponents)
}

#[derive(Clone, PartialEq, Debug)]
pub struct FitReport {
    pub exponent_bound: u32,
    pub exponents: Vec<u32>,
    pub coefficients: Vec<f64>,
    pub sum_sq_residual: f64,
    pub sup_grid_error: f64,
    pub grid_size: usize,
}

/// `grid_size` equally spaced points of `[0, 1]`, endpoints included.
pub fn grid(grid_size: usize) -> Vec<f64> {
    let last = (grid_size - 1) as f64;
    (0..grid_size).map(|i| i as f64 / last).collect()
}

/// `Σ_j c_j x^{e_j} − x^target` at each grid point.
pub fn residual_vector(
    exponents: &[u32],
    coefficients: &[f64],
    target: u32,
    grid_size: usize,
) -> Vec<f64> {
    grid(grid_size)
        .into_iter()
        .map(|x| {
            let fit: f64 = exponents
                .iter()
                .zip(coefficients)
                .map(|(&e, c)| c * x.powi(e as i32))
                .sum();
            fit - x.powi(target as i32)
        })
        .collect()
}

/// Minimizes `Σ_i (Σ_j c_j x_i^{e_j} − x_i^target)²` over the grid with a
/// Householder QR factorization of the column-normalized design matrix.
pub fn least_squares_fit(set: &ExponentSet, target: u32, grid_size: usize) -> Result<FitReport> {
    if set.contains(target) {
        return Err(Error::TargetInSet(target));
    }
    let cols = set.len();
    if cols == 0 || grid_size < cols + 1 || grid_size < 2 {
        return Err(Error::RankDeficient);
    }
    let xs = grid(grid_size);

    // Column-major design matrix, each column scaled to unit norm.
    let mut a: Vec<Vec<f64>> = set
        .exponents()
        .iter()
        .map(|&e| xs.iter().map(|x| x.powi(e as i32)).collect())
        .collect();
    let norms: Vec<f64> = a
        .iter_mut()
        .map(|col| {
            let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                col.iter_mut().for_each(|v| *v /= norm);
            }
            norm
        })
        .collect();
    let mut b: Vec<f64> = xs.iter().map(|x| x.powi(target as i32)).collect();

    for k in 0..cols {
        let alpha = {
            let tail = &a[k][k..];
            let norm = tail.iter().map(|v| v * v).sum::<f64>().sqrt();
            if tail[0] > 0.0 {
                -norm
            } else {
                norm
            }
        };
        if alpha.abs() <= RANK_TOLERANCE {
            return Err(Error::RankDeficient);
        }
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        let reflect = |col: &mut [f64]| {
            let dot: f64 = v.iter().zip(col.iter()).map(|(p, q)| p * q).sum();
            let s = 2.0 * dot / vnorm2;
            col.iter_mut().zip(&v).for_each(|(c, p)| *c -= s * p);
        };
        for col in a.iter_mut().skip(k + 1) {
            reflect(&mut col[k..]);
        }
        reflect(&mut b[k..]);
        a[k][k] = alpha;
        a[k][k + 1..].iter_mut().for_each(|t| *t = 0.0);
    }

    let mut scaled = vec![0.0; cols];
    for k in (0..cols).rev() {
        let tail: f64 = (k + 1..cols).map(|j| a[j][k] * scaled[j]).sum();
        scaled[k] = (b[k] - tail) / a[k][k];
    }
    let coefficients: Vec<f64> = scaled.iter().zip(&norms).map(|(c, n)| c / n).collect();

    let residuals = residual_vector(set.exponents(), &coefficients, target, grid_size);
    Ok(FitReport {
        exponent_bound: set.exponents().last().copied().unwrap_or(0),
        exponents: set.exponents().to_vec(),
        sum_sq_residual: residuals.iter().map(|r| r * r).sum(),
        sup_grid_error: residuals.iter().fold(0.0, |m, r| m.max(r.abs())),
        coefficients,
        grid_size,
    })
}

/// One fit per bound, with exponent set `muntz_exponents(bound)`.
pub fn run_demo(target: u32, bounds: &[u32], grid_size: usize) -> Result<Vec<FitReport>> {
    if bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "bounds must be strictly increasing".into(),
        ));
    }
    if let Some(&max) = bounds.last() {
        if muntz_exponents(max).contains(target) {
            return Err(Error::TargetInSet(target));
        }
    }
    bounds
        .par_iter()
        .map(|&bound| {
            least_squares_fit(&muntz_exponents(bound), target, grid_size).map(|r| FitReport {
                exponent_bound: bound,
                ..r
            })
        })
        .collect()
}

/// `bound | #exponents | sum_sq_residual | sup_grid_error`, six significant
/// digits.
pub fn render_table(reports: &[FitReport]) -> String {
    let mut out = String::from("bound | #exponents | sum_sq_residual | sup_grid_error\n");
    for r in reports {
        writeln!(
            out,
            "{} | {} | {:.5e} | {:.5e}",
            r.exponent_bound,
            r.exponents.len(),
            r.sum_sq_residual,
            r.sup_grid_error
        )
        .unwrap();
    }
    out
}
