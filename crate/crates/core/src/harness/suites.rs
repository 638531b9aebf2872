//! Seeded oracle-equivalence suites behind `tdi verify`.
//!
//! Case `i` of a run uses seed `seed + i` for its polynomial and a salted
//! copy of it for oracle sample points. Cases run in parallel; results are
//! collected in case order, so reports equal the sequential ones.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Error;
use crate::invariant_spaces::{sigma_orbit, tau_orbit, tausigma_orbit, PolySpace};
use crate::multiindex::{simplex, MultiIndex};
use crate::operators::{difference, partial, translate};
use crate::polynomial::{from_biguint, Point, Polynomial};

use super::oracles::{oracle_sigma, oracle_tau, oracle_tausigma};
use super::random::{random_polynomial, SplitMix64, TrialConfig};

const ORACLE_SALT: u64 = 0x5DEE_CE66_D1CE_5EED;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Suite {
    Lemma2,
    Lemma3,
    Corollary6,
    Taylor,
    Delta,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Corollary6,
        Suite::Taylor,
        Suite::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Corollary6 => "corollary6",
            Suite::Taylor => "taylor",
            Suite::Delta => "delta",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>, Error> {
        if text == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![text.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    /// Fixed dimension, or `None` to cycle through 1, 2, 3.
    pub dim: Option<usize>,
    pub degree_bound: u32,
    pub coefficient_height: u64,
    /// Sample points per oracle batch.
    pub batch: usize,
}

impl SuiteConfig {
    pub fn case(&self, index: usize) -> TrialConfig {
        TrialConfig {
            seed: self.seed.wrapping_add(index as u64),
            trials: self.batch,
            dim: self.dim.unwrap_or(1 + index % 3),
            degree_bound: self.degree_bound,
            coefficient_height: self.coefficient_height,
        }
    }

    pub fn case_polynomial(&self, index: usize) -> Polynomial {
        random_polynomial(&self.case(index), None)
    }

    fn oracle_config(&self, index: usize) -> TrialConfig {
        let case = self.case(index);
        case.with_seed(case.seed ^ ORACLE_SALT)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: usize,
    /// Indices of failing cases.
    pub failed: Vec<usize>,
}

impl SuiteOutcome {
    pub fn total(&self) -> usize {
        self.passed + self.failed.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failed.is_empty()
    }
}

/// `Σ_{|α| ≤ deg p} (1/α!) q_α(y) ∂^α p`.
pub fn taylor_expansion(p: &Polynomial, y: &Point) -> Polynomial {
    let Some(degree) = p.total_degree() else {
        return Polynomial::zero(p.dim());
    };
    let mut sum = Polynomial::zero(p.dim());
    for alpha in simplex(p.dim(), degree as u32) {
        let weight = y.power(&alpha) / from_biguint(alpha.factorial());
        if weight.is_zero() {
            continue;
        }
        let d = partial(p, &alpha).expect("same dimension");
        sum = &sum + &d.scale(&weight);
    }
    sum
}

fn lemma2_case(cfg: &SuiteConfig, i: usize) -> bool {
    let p = cfg.case_polynomial(i);
    tau_orbit(&p) == oracle_tau(&p, &cfg.oracle_config(i))
}

fn lemma3_case(cfg: &SuiteConfig, i: usize) -> bool {
    let p = cfg.case_polynomial(i);
    let formula = sigma_orbit(&p);
    formula.rank() == p.num_terms() && formula == oracle_sigma(&p, &cfg.oracle_config(i))
}

fn corollary6_case(cfg: &SuiteConfig, i: usize) -> bool {
    let p = cfg.case_polynomial(i);
    let degree = p.total_degree().unwrap_or(0) as u32;
    let formula = PolySpace::monomial_span(p.dim(), &tausigma_orbit(&p).truncate(degree))
        .expect("same dimension");
    formula == oracle_tausigma(&p, &cfg.oracle_config(i))
}

fn taylor_case(cfg: &SuiteConfig, i: usize) -> bool {
    let p = cfg.case_polynomial(i);
    let oracle = cfg.oracle_config(i);
    let y = SplitMix64::new(oracle.seed).point(p.dim(), oracle.coefficient_height);
    translate(&p, &y).expect("same dimension") == taylor_expansion(&p, &y)
}

fn delta_case(cfg: &SuiteConfig, i: usize) -> bool {
    let p = cfg.case_polynomial(i);
    let dim = p.dim();
    let mut rng = SplitMix64::new(cfg.oracle_config(i).seed);
    let indices = simplex(dim, 3);
    let mut pick = || indices[rng.below(indices.len() as u64) as usize].clone();
    let (a, b) = (pick(), pick());
    let diff = |q: &Polynomial, n: &MultiIndex| difference(q, n).expect("same dimension");

    let composed = diff(&diff(&p, &a), &b);
    let commuted = diff(&diff(&p, &b), &a);
    let joint = diff(&p, &a.add(&b));
    let factorial = Polynomial::constant(dim, from_biguint(a.factorial()));
    let on_monomial = diff(&Polynomial::monomial(&a), &a);
    let vanishes = match p.degree_vector() {
        None => true,
        Some(deg) => (0..dim).all(|k| {
            let mut over = vec![0; dim];
            over[k] = deg.get(k) + 1;
            diff(&p, &MultiIndex::new(over)).is_zero()
        }),
    };
    composed == joint && commuted == joint && on_monomial == factorial && vanishes
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteOutcome {
    let check: fn(&SuiteConfig, usize) -> bool = match suite {
        Suite::Lemma2 => lemma2_case,
        Suite::Lemma3 => lemma3_case,
        Suite::Corollary6 => corollary6_case,
        Suite::Taylor => taylor_case,
        Suite::Delta => delta_case,
    };
    let results: Vec<bool> = (0..cfg.cases)
        .into_par_iter()
        .map(|i| check(cfg, i))
        .collect();
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect();
    SuiteOutcome {
        suite,
        passed: results.len() - failed.len(),
        failed,
    }
}

pub fn render_report(cfg: &SuiteConfig, outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    let dim = cfg
        .dim
        .map_or_else(|| "1..3".to_string(), |d| d.to_string());
    writeln!(
        out,
        "verify seed={} cases={} d={} deg={} height={} batch={}",
        cfg.seed, cfg.cases, dim, cfg.degree_bound, cfg.coefficient_height, cfg.batch
    )
    .unwrap();
    for o in outcomes {
        write!(
            out,
            "{:<12}{}/{} passed",
            o.suite.name(),
            o.passed,
            o.total()
        )
        .unwrap();
        if !o.failed.is_empty() {
            let cases: Vec<String> = o.failed.iter().map(usize::to_string).collect();
            write!(out, "  failing cases: {}", cases.join(",")).unwrap();
        }
        out.push('\n');
    }
    let passed: usize = outcomes.iter().map(|o| o.passed).sum();
    let total: usize = outcomes.iter().map(SuiteOutcome::total).sum();
    let status = if passed == total { "PASS" } else { "FAIL" };
    writeln!(out, "{status} {passed}/{total}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            seed: 3,
            cases: 6,
            dim: None,
            degree_bound: 3,
            coefficient_height: 9,
            batch: 4,
        }
    }

    #[test]
    fn every_suite_passes_on_a_small_run() {
        for suite in Suite::ALL {
            let outcome = run_suite(suite, &small());
            assert!(outcome.all_passed(), "{suite:?}: {outcome:?}");
            assert_eq!(outcome.total(), 6);
        }
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = small();
        let run = || {
            let outcomes: Vec<_> = Suite::ALL.iter().map(|s| run_suite(*s, &cfg)).collect();
            render_report(&cfg, &outcomes)
        };
        let first = run();
        assert_eq!(first, run());
        assert!(first.ends_with("PASS 30/30\n"));
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 5);
        assert_eq!(Suite::parse_list("taylor").unwrap(), vec![Suite::Taylor]);
        assert!(Suite::parse_list("lemma9").is_err());
    }

    #[test]
    fn taylor_expansion_of_a_cubic() {
        let p: Polynomial = "x^3".parse().unwrap();
        let y = Point::from_integers(&[2]);
        assert_eq!(
            taylor_expansion(&p, &y),
            "x^3 + 6*x^2 + 12*x + 8".parse().unwrap()
        );
    }
}
