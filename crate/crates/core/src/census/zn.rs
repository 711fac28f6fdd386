use std::ops::Range;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::parallel::{run_exhaustive, ExhaustiveEngine};
use super::result::{exact_stats, CensusResult, Experiment, Stats};
use super::{CensusConfig, Mode};
use crate::algebra::{theory_var_zn, Ring};
use crate::error::{Error, Result};

/// Every monic degree-`m` polynomial over Z_n, indexed by its lower
/// coefficients read as base-`n` digits (constant term least significant).
struct ZnRoots {
    ring: Ring,
    m: usize,
    count: u64,
}

impl ExhaustiveEngine for ZnRoots {
    fn bins(&self) -> usize {
        self.ring.cardinality() as usize + 1
    }

    fn units(&self) -> u64 {
        self.count
    }

    fn accumulate(&self, range: Range<u64>, freq: &mut [u64]) {
        let r = &self.ring;
        let n = r.cardinality();
        let mut lower = vec![0u64; self.m];
        for idx in range {
            let mut rest = idx;
            for c in lower.iter_mut() {
                *c = rest % n;
                rest /= n;
            }
            let roots = r
                .elements()
                .filter(|&a| {
                    // Horner on x^m + lower
                    let v = lower.iter().rev().fold(1, |acc, &c| r.add(r.mul(acc, a), c));
                    v == 0
                })
                .count();
            freq[roots] += 1;
        }
    }
}

/// Exhaustive histogram of distinct-root counts over all `n^m` monic
/// polynomials of degree `m` in Z_n[x].
pub fn zn_root_census(n: u64, m: usize, config: &CensusConfig) -> Result<CensusResult> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if config.mode != Mode::Exhaustive {
        return Err(Error::InvalidConfig("the Z_n root census is exhaustive only".into()));
    }
    let ring = Ring::integers_mod(n)?;
    let count = (n as u128).checked_pow(m as u32).filter(|&c| c <= u64::MAX as u128);
    let needed = count.map_or(u128::MAX, |c| c.saturating_mul(n as u128));
    if needed > config.budget {
        return Err(Error::BudgetExceeded { needed, budget: config.budget });
    }
    let count = count.expect("within budget") as u64;
    let engine = ZnRoots { ring, m, count };
    let freq = run_exhaustive(&engine, config.workers)?;
    let (mean, variance) = exact_stats(&freq)?;
    let theory_var = if m == 1 { BigRational::zero() } else { theory_var_zn(n)? };
    Ok(CensusResult {
        experiment: Experiment::ZnRoots { n, m },
        mode: Mode::Exhaustive,
        population: count,
        max_outcome: n,
        freq,
        stats: Stats::Exact { mean, variance },
        theory_mean: BigRational::one(),
        theory_var,
        seed: None,
        samples: None,
        binomial_ref: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::UniPoly;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quadratics_mod_2() {
        let res = zn_root_census(2, 2, &CensusConfig::default()).unwrap();
        assert_eq!(res.freq, vec![1, 2, 1]);
        assert_eq!(res.population, 4);
        assert_eq!(res.stats, Stats::Exact { mean: rat(1, 1), variance: rat(1, 2) });
        assert!(res.theory_agrees());
    }

    #[test]
    fn linear_is_degenerate() {
        for n in 2..12 {
            let res = zn_root_census(n, 1, &CensusConfig::default()).unwrap();
            assert_eq!(res.freq[1], n);
            assert!(res.theory_agrees());
        }
    }

    #[test]
    fn matches_unipoly_root_counts() {
        let z6 = Ring::integers_mod(6).unwrap();
        let mut freq = vec![0u64; 7];
        for idx in 0..216u64 {
            let lower = [idx % 6, idx / 6 % 6, idx / 36];
            freq[UniPoly::monic_from_lower(&z6, &lower).count_distinct_roots().unwrap()] += 1;
        }
        let res = zn_root_census(6, 3, &CensusConfig::default()).unwrap();
        assert_eq!(res.freq, freq);
        assert_eq!(res.stats, Stats::Exact { mean: rat(1, 1), variance: rat(3, 2) });
    }

    #[test]
    fn errors() {
        let cfg = CensusConfig::default();
        assert!(zn_root_census(1, 2, &cfg).is_err());
        assert_eq!(zn_root_census(5, 0, &cfg).unwrap_err(), Error::ZeroDegree);
        let tight = CensusConfig { budget: 100, ..CensusConfig::default() };
        assert!(matches!(zn_root_census(5, 3, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
