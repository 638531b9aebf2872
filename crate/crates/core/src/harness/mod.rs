//! Independent oracles for the orbit formulas and the closure demonstrator.

mod closure;
mod oracles;
mod random;
pub mod suites;

pub use closure::{
    check_closure, delta_power, integer_grid, limit_fit, DeltaPower, Scenario, Verdict,
};
pub use oracles::{oracle_sigma, oracle_tau, oracle_tausigma};
pub use random::{random_polynomial, SplitMix64, TrialConfig};
