use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::Mode;
use crate::error::{Error, Result};

/// Which population was counted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    /// Distinct roots of monic degree-`m` polynomials over Z_n.
    ZnRoots { n: u64, m: usize },
    /// Points `y` in F_q with `gcd(f(x, y), g(x, y)) != 1`, bivariate pairs.
    FqPairs { q: u64, deg_f: usize, deg_g: usize },
    /// Points in F_q^(nvars-1) with a nontrivial specialized gcd.
    Multivariate { q: u64, nvars: usize, deg_f: usize, deg_g: usize },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::ZnRoots { .. } => "zn-roots",
            Experiment::FqPairs { .. } => "fq-pairs",
            Experiment::Multivariate { .. } => "multivariate",
        }
    }
}

/// Monte Carlo summary; all values are floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// `s / sqrt(N)`
    pub stderr_mean: f64,
    /// Delete-one jackknife standard error of the sample variance.
    pub stderr_variance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stats {
    Exact { mean: BigRational, variance: BigRational },
    Estimated(Estimate),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusResult {
    pub experiment: Experiment,
    pub mode: Mode,
    /// Objects enumerated (with symmetry weights) or sampled.
    pub population: u64,
    /// Largest possible outcome; `freq` has `max_outcome + 1` bins.
    pub max_outcome: u64,
    pub freq: Vec<u64>,
    pub stats: Stats,
    pub theory_mean: BigRational,
    pub theory_var: BigRational,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    /// Binomial reference counts `B_k`, when the experiment has one.
    pub binomial_ref: Option<Vec<BigRational>>,
}

/// `(sum k f_k, sum k^2 f_k)`
pub fn moments(freq: &[u64]) -> (u128, u128) {
    freq.iter().enumerate().fold((0, 0), |(s1, s2), (k, &f)| {
        let (k, f) = (k as u128, f as u128);
        (s1 + k * f, s2 + k * k * f)
    })
}

/// Exact population mean and variance of a frequency vector.
pub fn exact_stats(freq: &[u64]) -> Result<(BigRational, BigRational)> {
    let n: u128 = freq.iter().map(|&f| f as u128).sum();
    if n == 0 {
        return Err(Error::InvalidConfig("empty population".into()));
    }
    let (s1, s2) = moments(freq);
    let (n, s1, s2) = (BigInt::from(n), BigInt::from(s1), BigInt::from(s2));
    let mean = BigRational::new(s1.clone(), n.clone());
    let variance = BigRational::new(&n * s2 - &s1 * &s1, &n * &n);
    Ok((mean, variance))
}

/// Sample statistics of a frequency vector of `N >= 3` observations.
pub fn estimate(freq: &[u64]) -> Result<Estimate> {
    let n_int: u128 = freq.iter().map(|&f| f as u128).sum();
    if n_int < 3 {
        return Err(Error::InvalidConfig("need at least 3 samples".into()));
    }
    let (s1, s2) = moments(freq);
    let big_n = BigInt::from(n_int);
    let mean_q = BigRational::new(BigInt::from(s1), big_n.clone());
    // (N S2 - S1^2) / (N (N - 1)), exactly, then rounded once
    let var_q = BigRational::new(
        &big_n * BigInt::from(s2) - BigInt::from(s1) * BigInt::from(s1),
        &big_n * (&big_n - 1),
    );
    let mean = mean_q.to_f64().unwrap_or(f64::NAN);
    let variance = var_q.to_f64().unwrap_or(f64::NAN);
    let n = n_int as f64;
    // leave-one-out variance with value k differs from s^2 by
    // (s^2 (N-1) - N (k - mean)^2) / ((N-1)(N-2))
    let jack: f64 = freq
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| {
            let d = k as f64 - mean;
            let delta = (variance * (n - 1.0) - n * d * d) / ((n - 1.0) * (n - 2.0));
            c as f64 * delta * delta
        })
        .sum();
    Ok(Estimate {
        mean,
        variance,
        stderr_mean: (variance / n).sqrt(),
        stderr_variance: ((n - 1.0) / n * jack).sqrt(),
    })
}

fn rat_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// Integer if the value is integral, otherwise `num/den`.
pub fn rat_plain(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest integer, ties away from zero.
pub fn rat_rounded(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

impl CensusResult {
    pub fn moments(&self) -> (u128, u128) {
        moments(&self.freq)
    }

    /// Mean outcome divided by the number of points, an estimate of the
    /// per-point probability.
    pub fn per_point_frequency(&self) -> f64 {
        let mean = match &self.stats {
            Stats::Exact { mean, .. } => mean.to_f64().unwrap_or(f64::NAN),
            Stats::Estimated(e) => e.mean,
        };
        mean / self.max_outcome as f64
    }

    /// Exact equality in exhaustive mode; in Monte Carlo mode the mean must
    /// lie within 3 standard errors and the variance within 4.
    pub fn theory_agrees(&self) -> bool {
        match &self.stats {
            Stats::Exact { mean, variance } => *mean == self.theory_mean && *variance == self.theory_var,
            Stats::Estimated(e) => {
                let tm = self.theory_mean.to_f64().unwrap_or(f64::NAN);
                let tv = self.theory_var.to_f64().unwrap_or(f64::NAN);
                (e.mean - tm).abs() <= 3.0 * e.stderr_mean
                    && (e.variance - tv).abs() <= 4.0 * e.stderr_variance
            }
        }
    }

    /// For bivariate pairs with `deg_f * deg_g < q`: no pair can have an
    /// outcome strictly between the resultant degree bound and `q`.
    /// `None` when the check does not apply.
    pub fn resultant_gap_holds(&self) -> Option<bool> {
        match self.experiment {
            Experiment::FqPairs { q, deg_f, deg_g } if ((deg_f * deg_g) as u64) < q => {
                let bound = deg_f * deg_g;
                Some(self.freq[bound + 1..q as usize].iter().all(|&f| f == 0))
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "experiment": self.experiment,
            "mode": self.mode,
            "population": self.population.to_string(),
            "max_outcome": self.max_outcome.to_string(),
            "freq": self.freq.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "theory_mean": rat_json(&self.theory_mean),
            "theory_var": rat_json(&self.theory_var),
            "theory_agrees": self.theory_agrees(),
        });
        let map = obj.as_object_mut().expect("object literal");
        match &self.stats {
            Stats::Exact { mean, variance } => {
                map.insert("mean".into(), rat_json(mean));
                map.insert("variance".into(), rat_json(variance));
            }
            Stats::Estimated(e) => {
                map.insert("mean".into(), json!(e.mean));
                map.insert("variance".into(), json!(e.variance));
                map.insert("stderr_mean".into(), json!(e.stderr_mean));
                map.insert("stderr_variance".into(), json!(e.stderr_variance));
            }
        }
        if let Some(seed) = self.seed {
            map.insert("seed".into(), json!(seed.to_string()));
        }
        if let Some(samples) = self.samples {
            map.insert("samples".into(), json!(samples.to_string()));
        }
        map.insert("per_point_frequency".into(), json!(self.per_point_frequency()));
        if let Some(gap) = self.resultant_gap_holds() {
            map.insert("resultant_gap_holds".into(), json!(gap));
        }
        if let Some(b) = &self.binomial_ref {
            let rows: Vec<Value> = b
                .iter()
                .map(|r| {
                    let mut v = rat_json(r);
                    v["rounded"] = json!(rat_rounded(r).to_string());
                    v
                })
                .collect();
            map.insert("binomial_ref".into(), Value::Array(rows));
        }
        obj
    }

    /// Columns `k,freq,binomial_ref`; the reference is exact (`num/den` when
    /// not an integer) and empty when the experiment has none.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,freq,binomial_ref\n");
        for (k, f) in self.freq.iter().enumerate() {
            let b = self
                .binomial_ref
                .as_ref()
                .and_then(|b| b.get(k))
                .map(rat_plain)
                .unwrap_or_default();
            writeln!(out, "{k},{f},{b}").expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_stats_small() {
        let (m, v) = exact_stats(&[1, 2, 1]).unwrap();
        assert_eq!((m, v), (rat(1, 1), rat(1, 2)));
        assert!(exact_stats(&[0, 0]).is_err());
    }

    #[test]
    fn estimate_matches_direct_formulas() {
        let freq = [5u64, 9, 3, 0, 2];
        let xs: Vec<f64> = freq
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat(k as f64).take(c as usize))
            .collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        // brute-force jackknife
        let loo: Vec<f64> = (0..xs.len())
            .map(|i| {
                let rest: Vec<f64> =
                    xs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
                let m = rest.iter().sum::<f64>() / (n - 1.0);
                rest.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 2.0)
            })
            .collect();
        let bar = loo.iter().sum::<f64>() / n;
        let jack = ((n - 1.0) / n * loo.iter().map(|t| (t - bar).powi(2)).sum::<f64>()).sqrt();
        let e = estimate(&freq).unwrap();
        assert!((e.mean - mean).abs() < 1e-12);
        assert!((e.variance - var).abs() < 1e-12);
        assert!((e.stderr_mean - (var / n).sqrt()).abs() < 1e-12);
        assert!((e.stderr_variance - jack).abs() < 1e-12, "{} vs {jack}", e.stderr_variance);
    }

    #[test]
    fn rational_text() {
        assert_eq!(rat_plain(&rat(343, 1)), "343");
        assert_eq!(rat_plain(&rat(3, 2)), "3/2");
        assert_eq!(rat_rounded(&rat(5, 2)), BigInt::from(3));
    }
}
