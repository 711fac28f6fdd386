//! Unlucky evaluation points for sparse GCD interpolation.
//!
//! With `A = G Â` and `B = G B̂` monic in `x0`, a point `α` for the remaining
//! variables is unlucky when `Â(α)` and `B̂(α)` share a factor, so that the
//! image `gcd(A(α), B(α))` is strictly larger than `G(α)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::parallel::{run_sampling, SamplingEngine};
use crate::algebra::{is_prime, Elem, Ring};
use crate::error::{Error, Result};
use crate::polyring::{parse_poly, resultant_in_main, resultant_poly, MultiPoly, Shape, ShapedMultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Cofactors {
    /// Fresh uniform shaped `G`, `Â`, `B̂` for every sample.
    Random { deg_g: usize, deg_a: usize, deg_b: usize },
    /// Fixed polynomials in `x0..x{nvars-1}` notation; `g` defaults to 1.
    Fixed { a: String, b: String, g: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnluckyConfig {
    pub p: u64,
    pub nvars: usize,
    pub cofactors: Cofactors,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Also report points with `x_var = value`.
    pub slice: Option<(usize, Elem)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceReport {
    pub var: usize,
    pub value: Elem,
    pub points: u64,
    pub unlucky: u64,
    pub frequency: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnluckyReport {
    pub config: UnluckyConfig,
    /// Total degrees of `Â` and `B̂`.
    pub deg_a: usize,
    pub deg_b: usize,
    pub unlucky: u64,
    pub frequency: f64,
    pub stderr: f64,
    pub reference: BigRational,
    /// `deg Â deg B̂ / p`
    pub bound: BigRational,
    /// Samples whose cofactors are coprime.
    pub coprime_draws: u64,
    pub coprime_unlucky: u64,
    /// Points where `deg gcd(A(α), B(α)) != deg G + deg gcd(Â(α), B̂(α))`.
    pub image_mismatches: u64,
    pub slice: Option<SliceReport>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl UnluckyReport {
    pub fn coprime_frequency(&self) -> Option<f64> {
        ratio(self.coprime_unlucky, self.coprime_draws)
    }

    /// `|frequency - 1/p| <= k * stderr`
    pub fn within_reference(&self, k: f64) -> bool {
        (self.frequency - 1.0 / self.config.p as f64).abs() <= k * self.stderr
    }

    pub fn to_json(&self) -> Value {
        let rat = |r: &BigRational| json!({ "num": r.numer().to_string(), "den": r.denom().to_string() });
        json!({
            "config": self.config,
            "deg_a": self.deg_a,
            "deg_b": self.deg_b,
            "samples": self.config.samples.to_string(),
            "seed": self.config.seed.to_string(),
            "unlucky": self.unlucky.to_string(),
            "frequency": self.frequency,
            "stderr": self.stderr,
            "reference": rat(&self.reference),
            "bound": rat(&self.bound),
            "coprime_draws": self.coprime_draws.to_string(),
            "coprime_unlucky": self.coprime_unlucky.to_string(),
            "coprime_frequency": self.coprime_frequency(),
            "image_mismatches": self.image_mismatches.to_string(),
            "slice": self.slice.as_ref().map(|s| json!({
                "var": s.var,
                "value": s.value.to_string(),
                "points": s.points.to_string(),
                "unlucky": s.unlucky.to_string(),
                "frequency": s.frequency,
            })),
        })
    }
}

const DRAWS: usize = 0;
const UNLUCKY: usize = 1;
const COPRIME: usize = 2;
const COPRIME_UNLUCKY: usize = 3;
const SLICE: usize = 4;
const SLICE_UNLUCKY: usize = 5;
const MISMATCH: usize = 6;
const COUNTERS: usize = 7;

struct Fixed<'r> {
    a: MultiPoly<'r>,
    b: MultiPoly<'r>,
    g: MultiPoly<'r>,
    coprime: bool,
}

enum Source<'r> {
    Random { g: Arc<Shape>, a: Arc<Shape>, b: Arc<Shape> },
    Fixed(Fixed<'r>),
}

struct Engine<'r> {
    ring: &'r Ring,
    source: Source<'r>,
    slice: Option<(usize, Elem)>,
}

impl Engine<'_> {
    fn record(&self, f: &Fixed<'_>, point: &[Elem], freq: &mut [u64]) {
        let a = f.a.eval_rest(point).expect("arity checked");
        let b = f.b.eval_rest(point).expect("arity checked");
        let image = a.gcd(&b).expect("monic over a field");
        let unlucky = !image.is_one();
        let big_a = f.g.mul(&f.a).eval_rest(point).expect("arity checked");
        let big_b = f.g.mul(&f.b).eval_rest(point).expect("arity checked");
        let full = big_a.gcd(&big_b).expect("monic over a field");
        let deg_g = f.g.degree_in(0).unwrap_or(0);
        freq[DRAWS] += 1;
        freq[UNLUCKY] += unlucky as u64;
        freq[COPRIME] += f.coprime as u64;
        freq[COPRIME_UNLUCKY] += (f.coprime && unlucky) as u64;
        freq[MISMATCH] += (full.degree() != Some(deg_g + image.degree().unwrap_or(0))) as u64;
        if let Some((var, value)) = self.slice {
            if point[var - 1] == value {
                freq[SLICE] += 1;
                freq[SLICE_UNLUCKY] += unlucky as u64;
            }
        }
    }
}

impl SamplingEngine for Engine<'_> {
    fn bins(&self) -> usize {
        COUNTERS
    }

    fn sample(&self, rng: &mut ChaCha8Rng, freq: &mut [u64]) {
        let q = self.ring.cardinality();
        match &self.source {
            Source::Random { g, a, b } => {
                let g = ShapedMultiPoly::random(self.ring, g.clone(), rng);
                let a = ShapedMultiPoly::random(self.ring, a.clone(), rng);
                let b = ShapedMultiPoly::random(self.ring, b.clone(), rng);
                let coprime = !resultant_poly(&a, &b).expect("positive degrees").is_zero();
                let fixed = Fixed { a: a.to_multi(), b: b.to_multi(), g: g.to_multi(), coprime };
                let point: Vec<Elem> = (1..a.nvars()).map(|_| rng.gen_range(0..q)).collect();
                self.record(&fixed, &point, freq);
            }
            Source::Fixed(f) => {
                let point: Vec<Elem> = (1..f.a.nvars()).map(|_| rng.gen_range(0..q)).collect();
                self.record(f, &point, freq);
            }
        }
    }
}

fn parse_monic<'r>(ring: &'r Ring, nvars: usize, text: &str, positive: bool) -> Result<MultiPoly<'r>> {
    let p = parse_poly(ring, nvars, text)?;
    if !p.is_monic_in_main() {
        return Err(Error::NonMonic);
    }
    if positive && p.degree_in(0).unwrap_or(0) == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(p)
}

/// Samples evaluation points (and, for random cofactors, fresh cofactors)
/// and classifies each point as lucky or unlucky.
pub fn unlucky_sim(config: &UnluckyConfig) -> Result<UnluckyReport> {
    let p = config.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let nvars = config.nvars;
    if nvars < 2 {
        return Err(Error::InvalidConfig("need at least 2 variables".into()));
    }
    if let Some((var, value)) = config.slice {
        if var == 0 || var >= nvars || value >= p {
            return Err(Error::InvalidConfig(format!("slice x{var} = {value} is out of range")));
        }
    }
    let ring = Ring::prime_field(p)?;
    let (source, deg_a, deg_b) = match &config.cofactors {
        Cofactors::Random { deg_g, deg_a, deg_b } => {
            if *deg_a == 0 || *deg_b == 0 {
                return Err(Error::ZeroDegree);
            }
            let shape = |d| Shape::new(nvars, d).map(Arc::new);
            (Source::Random { g: shape(*deg_g)?, a: shape(*deg_a)?, b: shape(*deg_b)? }, *deg_a, *deg_b)
        }
        Cofactors::Fixed { a, b, g } => {
            let a = parse_monic(&ring, nvars, a, true)?;
            let b = parse_monic(&ring, nvars, b, true)?;
            let g = match g {
                Some(text) => parse_monic(&ring, nvars, text, false)?,
                None => MultiPoly::one(&ring, nvars),
            };
            let coprime = !resultant_in_main(&a, &b)?.is_zero();
            let (da, db) = (a.total_degree().unwrap_or(0), b.total_degree().unwrap_or(0));
            (Source::Fixed(Fixed { a, b, g, coprime }), da, db)
        }
    };
    let engine = Engine { ring: &ring, source, slice: config.slice };
    let c = run_sampling(&engine, config.samples, config.seed, config.workers)?;
    let n = c[DRAWS];
    let frequency = ratio(c[UNLUCKY], n).unwrap_or(f64::NAN);
    Ok(UnluckyReport {
        config: config.clone(),
        deg_a,
        deg_b,
        unlucky: c[UNLUCKY],
        frequency,
        stderr: (frequency * (1.0 - frequency) / n as f64).sqrt(),
        reference: BigRational::new(BigInt::from(1), BigInt::from(p)),
        bound: BigRational::new(BigInt::from(deg_a * deg_b), BigInt::from(p)),
        coprime_draws: c[COPRIME],
        coprime_unlucky: c[COPRIME_UNLUCKY],
        image_mismatches: c[MISMATCH],
        slice: config.slice.map(|(var, value)| SliceReport {
            var,
            value,
            points: c[SLICE],
            unlucky: c[SLICE_UNLUCKY],
            frequency: ratio(c[SLICE_UNLUCKY], c[SLICE]),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(a: &str, b: &str) -> Cofactors {
        Cofactors::Fixed { a: a.into(), b: b.into(), g: None }
    }

    fn config(p: u64, cofactors: Cofactors, samples: u64) -> UnluckyConfig {
        UnluckyConfig { p, nvars: 3, cofactors, samples, seed: 5, workers: 2, slice: None }
    }

    #[test]
    fn equal_cofactors_always_unlucky() {
        let r = unlucky_sim(&config(7, fixed("x0^2 + x1*x2", "x0^2 + x1*x2"), 500)).unwrap();
        assert_eq!(r.unlucky, 500);
        assert_eq!(r.frequency, 1.0);
        assert_eq!(r.coprime_draws, 0);
    }

    #[test]
    fn pathological_slice() {
        let mut cfg = config(11, fixed("x0^2 + x2", "x0^2 + x2 + x1 - 1"), 5000);
        cfg.slice = Some((1, 1));
        let r = unlucky_sim(&cfg).unwrap();
        let s = r.slice.clone().unwrap();
        assert!(s.points > 0);
        assert_eq!(s.unlucky, s.points);
        // unlucky exactly on the slice
        assert_eq!(r.unlucky, s.points);
        assert_eq!(r.coprime_draws, 5000);
        assert_eq!(r.image_mismatches, 0);
    }

    #[test]
    fn random_cofactors_with_common_factor() {
        let cfg = config(5, Cofactors::Random { deg_g: 1, deg_a: 2, deg_b: 1 }, 3000);
        let r = unlucky_sim(&cfg).unwrap();
        assert_eq!(r.image_mismatches, 0);
        assert!(r.within_reference(4.0), "{} +- {}", r.frequency, r.stderr);
        assert!(r.coprime_unlucky <= r.unlucky);
        assert_eq!(r.bound, BigRational::new(2.into(), 5.into()));
        assert_eq!(unlucky_sim(&cfg).unwrap(), r);
    }

    #[test]
    fn errors() {
        assert_eq!(unlucky_sim(&config(9, fixed("x0", "x0 + 1"), 10)).unwrap_err(), Error::NotPrime(9));
        assert_eq!(unlucky_sim(&config(7, fixed("2*x0", "x0 + 1"), 10)).unwrap_err(), Error::NonMonic);
        assert_eq!(unlucky_sim(&config(7, fixed("x1", "x0 + 1"), 10)).unwrap_err(), Error::NonMonic);
        let mut cfg = config(7, fixed("x0", "x0 + 1"), 10);
        cfg.slice = Some((3, 0));
        assert!(unlucky_sim(&cfg).is_err());
    }
}
