//! Census engines: exhaustive enumeration and Monte Carlo sampling of
//! structured polynomial populations, with exact outcome histograms.

mod binomial;
mod pairs;
pub mod parallel;
mod result;
mod unlucky;
mod zn;

use serde::{Deserialize, Serialize};

pub use binomial::{binomial_reference, binomial_reference_trials};
pub use pairs::{fq_pair_census, mv_census, pair_evaluations};
pub use result::{
    estimate, exact_stats, moments, rat_plain, rat_rounded, CensusResult, Estimate, Experiment, Stats,
};
pub use unlucky::{unlucky_sim, Cofactors, SliceReport, UnluckyConfig, UnluckyReport};
pub use zn::zn_root_census;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    MonteCarlo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::MonteCarlo => "montecarlo",
        }
    }
}

pub const DEFAULT_BUDGET: u128 = 1 << 31;

/// Run parameters shared by the census engines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub mode: Mode,
    /// Monte Carlo sample count.
    pub samples: u64,
    /// Monte Carlo master seed.
    pub seed: u64,
    pub workers: usize,
    /// Cap on the number of gcd evaluations (objects times points).
    pub budget: u128,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { mode: Mode::Exhaustive, samples: 100_000, seed: 1, workers: 1, budget: DEFAULT_BUDGET }
    }
}

impl CensusConfig {
    pub fn exhaustive(workers: usize) -> Self {
        CensusConfig { workers, ..CensusConfig::default() }
    }

    pub fn monte_carlo(samples: u64, seed: u64, workers: usize) -> Self {
        CensusConfig { mode: Mode::MonteCarlo, samples, seed, workers, ..CensusConfig::default() }
    }

    pub(crate) fn check_budget(&self, needed: u128) -> crate::Result<()> {
        if needed > self.budget {
            Err(crate::Error::BudgetExceeded { needed, budget: self.budget })
        } else {
            Ok(())
        }
    }
}
