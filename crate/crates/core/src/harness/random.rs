//! Deterministic test-case generation.
//!
//! The generator is SplitMix64 so that any implementation can reproduce the
//! exact same trials from a seed. Bounded draws use `next_u64() % n`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multiindex::{simplex, LowerSet};
use crate::polynomial::{Point, Polynomial, Rational};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Numerator uniform in `[-height, height] \ {0}`, denominator uniform in
    /// `[1, height]`, reduced.
    pub fn rational(&mut self, height: u64) -> Rational {
        let h = height as i64;
        let k = self.below(2 * height) as i64;
        let numer = if k < h { k - h } else { k - h + 1 };
        let denom = 1 + self.below(height) as i64;
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// A point with nonzero coordinates drawn by [`SplitMix64::rational`].
    pub fn point(&mut self, dim: usize, height: u64) -> Point {
        Point::new((0..dim).map(|_| self.rational(height)).collect())
    }
}

/// Parameters of a seeded randomized run.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub degree_bound: u32,
    pub coefficient_height: u64,
}

impl TrialConfig {
    pub fn new(
        seed: u64,
        trials: usize,
        dim: usize,
        degree_bound: u32,
        coefficient_height: u64,
    ) -> Result<Self> {
        let cfg = TrialConfig {
            seed,
            trials,
            dim,
            degree_bound,
            coefficient_height,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be >= 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::Precondition("dimension must be >= 1".into()));
        }
        if self.coefficient_height == 0 {
            return Err(Error::Precondition(
                "coefficient height must be >= 1".into(),
            ));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        TrialConfig { seed, ..*self }
    }
}

/// A pseudo-random polynomial determined by `cfg`: the number of terms is
/// uniform in `1..=|candidates|`, the support is a uniform sample of that
/// size from `omega` (or the full simplex) truncated to `degree_bound`, and
/// coefficients are nonzero rationals of bounded height.
pub fn random_polynomial(cfg: &TrialConfig, omega: Option<&LowerSet>) -> Polynomial {
    let mut candidates = match omega {
        Some(omega) => omega.truncate(cfg.degree_bound),
        None => simplex(cfg.dim, cfg.degree_bound),
    };
    let dim = omega.map_or(cfg.dim, LowerSet::dim);
    if candidates.is_empty() {
        return Polynomial::zero(dim);
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let count = 1 + rng.below(candidates.len() as u64) as usize;
    for i in 0..count {
        let j = i + rng.below((candidates.len() - i) as u64) as usize;
        candidates.swap(i, j);
    }
    candidates.truncate(count);
    let terms: Vec<_> = candidates
        .into_iter()
        .map(|a| {
            let c = rng.rational(cfg.coefficient_height);
            (a, c)
        })
        .collect();
    Polynomial::from_terms(dim, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;
    use crate::polynomial::rational;
    use num_traits::{Signed, Zero};

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of SplitMix64 seeded with 0.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn rationals_respect_height() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let q = rng.rational(3);
            assert!(!q.is_zero());
            assert!(q.numer().magnitude() <= &3u32.into());
            assert!(q.denom() <= &BigInt::from(3));
        }
        assert_eq!(SplitMix64::new(1).rational(1).abs(), rational(1, 1));
    }

    #[test]
    fn random_polynomial_examples() {
        let cfg = TrialConfig::new(42, 1, 2, 3, 9).unwrap();
        assert_eq!(random_polynomial(&cfg, None), random_polynomial(&cfg, None));
        assert!(random_polynomial(&cfg, Some(&LowerSet::empty(2))).is_zero());

        let constant = TrialConfig::new(5, 1, 3, 0, 9).unwrap();
        let p = random_polynomial(&constant, None);
        assert_eq!(p.support(), vec![MultiIndex::zeros(3)]);

        let omega = LowerSet::slab(0, 0, 2).unwrap();
        for seed in 0..50 {
            let q = random_polynomial(&cfg.with_seed(seed), Some(&omega));
            assert!(!q.is_zero());
            assert!(q.support().iter().all(|a| a.get(0) == 0 && a.order() <= 3));
        }
    }

    #[test]
    fn config_validation() {
        assert!(TrialConfig::new(0, 0, 2, 3, 9).is_err());
        assert!(TrialConfig::new(0, 1, 0, 3, 9).is_err());
        assert!(TrialConfig::new(0, 1, 2, 3, 0).is_err());
    }
}
