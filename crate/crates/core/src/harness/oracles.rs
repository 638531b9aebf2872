//! Brute-force orbit oracles: spans of random translates and dilates,
//! grown batch by batch until two consecutive batches add nothing.
//!
//! Batch `b` draws its points from `SplitMix64::new(seed + b)`.

use crate::invariant_spaces::PolySpace;
use crate::operators::{dilate, translate};
use crate::polynomial::{Point, Polynomial};

use super::random::{SplitMix64, TrialConfig};

/// Adds batches from `batch(rng, space)` until two consecutive batches leave
/// the rank unchanged.
fn stabilize(
    start: PolySpace,
    cfg: &TrialConfig,
    mut batch: impl FnMut(&mut SplitMix64, &PolySpace) -> Vec<Polynomial>,
) -> PolySpace {
    let mut space = start;
    let mut idle = 0;
    let mut round = 0u64;
    while idle < 2 {
        let mut rng = SplitMix64::new(cfg.seed.wrapping_add(round));
        let before = space.rank();
        for q in batch(&mut rng, &space) {
            space.insert(&q).expect("same dimension");
        }
        idle = if space.rank() == before { idle + 1 } else { 0 };
        round += 1;
    }
    space
}

fn random_points(rng: &mut SplitMix64, cfg: &TrialConfig, dim: usize) -> Vec<Point> {
    (0..cfg.trials)
        .map(|_| rng.point(dim, cfg.coefficient_height))
        .collect()
}

/// Span of `τ_y p` over random rational points `y`.
pub fn oracle_tau(p: &Polynomial, cfg: &TrialConfig) -> PolySpace {
    stabilize(PolySpace::zero(p.dim()), cfg, |rng, _| {
        random_points(rng, cfg, p.dim())
            .iter()
            .map(|y| translate(p, y).expect("same dimension"))
            .collect()
    })
}

/// Span of `σ_λ p` over random nonzero rational points `λ`.
pub fn oracle_sigma(p: &Polynomial, cfg: &TrialConfig) -> PolySpace {
    stabilize(PolySpace::zero(p.dim()), cfg, |rng, _| {
        random_points(rng, cfg, p.dim())
            .iter()
            .map(|l| dilate(p, l).expect("same dimension"))
            .collect()
    })
}

/// Least fixed point of `V ↦ span(V ∪ τ_y V ∪ σ_λ V)` starting from
/// `span{p}`: each round adds random translates and dilates of every
/// current basis row.
pub fn oracle_tausigma(p: &Polynomial, cfg: &TrialConfig) -> PolySpace {
    let start = PolySpace::span(p.dim(), [p]).expect("same dimension");
    stabilize(start, cfg, |rng, space| {
        let mut out = Vec::new();
        for row in space.basis() {
            for y in random_points(rng, cfg, p.dim()) {
                out.push(translate(row, &y).expect("same dimension"));
                out.push(dilate(row, &y).expect("same dimension"));
            }
        }
        out
    })
}
