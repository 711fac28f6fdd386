use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::binomial::{binomial_reference, binomial_reference_trials};
use super::parallel::{run_exhaustive, run_sampling, ExhaustiveEngine, SamplingEngine};
use super::result::{estimate, exact_stats, CensusResult, Experiment, Stats};
use super::{CensusConfig, Mode};
use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};
use crate::polyring::{Shape, UniPoly};

/// Largest memo table of specialized gcd outcomes.
const MAX_TABLE: u64 = 1 << 22;
/// Largest number of evaluation points (and histogram bins).
const MAX_POINTS: u64 = 1 << 24;

/// Everything needed to decide, at each point of F_q^(v-1), whether the
/// specializations of two shaped polynomials share a factor.
struct Specializer {
    ring: Ring,
    f: Shape,
    g: Shape,
    /// Monomial values of each shape at every point.
    values_f: Vec<Vec<Elem>>,
    values_g: Vec<Vec<Elem>>,
    /// `q^deg_g`, stride of the table.
    stride: u64,
    /// `table[code_f * stride + code_g]`: the monic polynomials with these
    /// lower coefficients (base-`q` digits) have a nontrivial gcd.
    table: Option<Vec<bool>>,
}

impl Specializer {
    fn new(ring: Ring, f: Shape, g: Shape, evaluations: u128) -> Result<Self> {
        let q = ring.cardinality();
        let dims = f.nvars() - 1;
        let npts = q
            .checked_pow(dims as u32)
            .filter(|&n| n <= MAX_POINTS)
            .ok_or_else(|| Error::InvalidConfig(format!("q^{dims} evaluation points is too many")))?;
        let mut point = vec![0; dims];
        let mut values_f = Vec::with_capacity(npts as usize);
        let mut values_g = Vec::with_capacity(npts as usize);
        for idx in 0..npts {
            let mut rest = idx;
            for c in point.iter_mut() {
                *c = rest % q;
                rest /= q;
            }
            values_f.push(f.monomial_values(&ring, &point)?);
            values_g.push(g.monomial_values(&ring, &point)?);
        }
        let stride = q.checked_pow(g.main_deg() as u32);
        let entries = q.checked_pow(f.main_deg() as u32).zip(stride).and_then(|(a, b)| a.checked_mul(b));
        let mut spec = Specializer { ring, f, g, values_f, values_g, stride: stride.unwrap_or(0), table: None };
        if let Some(entries) = entries.filter(|&e| e <= MAX_TABLE && e as u128 <= evaluations) {
            let (df, dg) = (spec.f.main_deg(), spec.g.main_deg());
            let mut lf = vec![0; df];
            let mut lg = vec![0; dg];
            let table = (0..entries)
                .map(|e| {
                    spec.decode(e / spec.stride, &mut lf);
                    spec.decode(e % spec.stride, &mut lg);
                    spec.direct(&lf, &lg)
                })
                .collect();
            spec.table = Some(table);
        }
        Ok(spec)
    }

    fn points(&self) -> usize {
        self.values_f.len()
    }

    fn decode(&self, mut code: u64, out: &mut [Elem]) {
        let q = self.ring.cardinality();
        for c in out.iter_mut() {
            *c = code % q;
            code /= q;
        }
    }

    fn encode(&self, lower: &[Elem]) -> u64 {
        let q = self.ring.cardinality();
        lower.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn direct(&self, lf: &[Elem], lg: &[Elem]) -> bool {
        let a = UniPoly::monic_from_lower(&self.ring, lf);
        let b = UniPoly::monic_from_lower(&self.ring, lg);
        !a.gcd(&b).expect("monic inputs over a field").is_one()
    }

    fn lookup(&self, cf: u64, cg: u64, lf: &mut [Elem], lg: &mut [Elem]) -> bool {
        match &self.table {
            Some(t) => t[(cf * self.stride + cg) as usize],
            None => {
                self.decode(cf, lf);
                self.decode(cg, lg);
                self.direct(lf, lg)
            }
        }
    }

    /// Specialization codes of one polynomial at every point.
    fn codes(&self, shape: &Shape, values: &[Vec<Elem>], coeffs: &[Elem], out: &mut Vec<u64>) {
        let mut lower = vec![0; shape.main_deg()];
        for v in values {
            shape.specialize_into(&self.ring, coeffs, v, &mut lower);
            out.push(self.encode(&lower));
        }
    }

    /// Number of points where the pair has a nontrivial specialized gcd.
    fn count(&self, cf: &[Elem], cg: &[Elem]) -> usize {
        let mut lf = vec![0; self.f.main_deg()];
        let mut lg = vec![0; self.g.main_deg()];
        (0..self.points())
            .filter(|&p| {
                self.f.specialize_into(&self.ring, cf, &self.values_f[p], &mut lf);
                self.g.specialize_into(&self.ring, cg, &self.values_g[p], &mut lg);
                match &self.table {
                    Some(t) => t[(self.encode(&lf) * self.stride + self.encode(&lg)) as usize],
                    None => self.direct(&lf, &lg),
                }
            })
            .count()
    }
}

/// All pairs. With equal shapes only `j >= i` is visited, weighting
/// off-diagonal pairs by 2.
struct PairEnum {
    spec: Specializer,
    nf: u64,
    ng: u64,
    symmetric: bool,
    codes_f: Vec<u64>,
    codes_g: Vec<u64>,
}

impl PairEnum {
    fn new(spec: Specializer, nf: u64, ng: u64) -> Self {
        let symmetric = spec.f == spec.g;
        let q = spec.ring.cardinality() as u128;
        let all_codes = |shape: &Shape, values: &[Vec<Elem>], n: u64| {
            let mut out = Vec::with_capacity(n as usize * values.len());
            let mut coeffs = vec![0; shape.coeff_count()];
            for idx in 0..n as u128 {
                let mut rest = idx;
                for c in coeffs.iter_mut() {
                    *c = (rest % q) as Elem;
                    rest /= q;
                }
                spec.codes(shape, values, &coeffs, &mut out);
            }
            out
        };
        let codes_f = all_codes(&spec.f, &spec.values_f, nf);
        let codes_g = if symmetric { Vec::new() } else { all_codes(&spec.g, &spec.values_g, ng) };
        PairEnum { nf, ng, symmetric, codes_f, codes_g, spec }
    }
}

impl ExhaustiveEngine for PairEnum {
    fn bins(&self) -> usize {
        self.spec.points() + 1
    }

    fn units(&self) -> u64 {
        self.nf
    }

    fn accumulate(&self, range: Range<u64>, freq: &mut [u64]) {
        let npts = self.spec.points();
        let mut lf = vec![0; self.spec.f.main_deg()];
        let mut lg = vec![0; self.spec.g.main_deg()];
        let codes_g = if self.symmetric { &self.codes_f } else { &self.codes_g };
        for i in range {
            let cf = &self.codes_f[i as usize * npts..][..npts];
            let start = if self.symmetric { i } else { 0 };
            for j in start..self.ng {
                let cg = &codes_g[j as usize * npts..][..npts];
                let hits = match &self.spec.table {
                    Some(t) => {
                        let s = self.spec.stride;
                        cf.iter().zip(cg).filter(|(&a, &b)| t[(a * s + b) as usize]).count()
                    }
                    None => cf
                        .iter()
                        .zip(cg)
                        .filter(|(&a, &b)| self.spec.lookup(a, b, &mut lf, &mut lg))
                        .count(),
                };
                freq[hits] += if self.symmetric && j != i { 2 } else { 1 };
            }
        }
    }
}

struct PairSample {
    spec: Specializer,
}

impl SamplingEngine for PairSample {
    fn bins(&self) -> usize {
        self.spec.points() + 1
    }

    fn sample(&self, rng: &mut ChaCha8Rng, freq: &mut [u64]) {
        let q = self.spec.ring.cardinality();
        let cf: Vec<Elem> = (0..self.spec.f.coeff_count()).map(|_| rng.gen_range(0..q)).collect();
        let cg: Vec<Elem> = (0..self.spec.g.coeff_count()).map(|_| rng.gen_range(0..q)).collect();
        freq[self.spec.count(&cf, &cg)] += 1;
    }
}

fn pair_census(
    q: u64,
    nvars: usize,
    deg_f: usize,
    deg_g: usize,
    config: &CensusConfig,
) -> Result<(Vec<u64>, u64, u64, Stats)> {
    if deg_f == 0 || deg_g == 0 {
        return Err(Error::ZeroDegree);
    }
    if nvars < 2 {
        return Err(Error::InvalidConfig("need at least 2 variables".into()));
    }
    let ring = Ring::finite_field(q)?;
    let (f, g) = (Shape::new(nvars, deg_f)?, Shape::new(nvars, deg_g)?);
    let npts = (q as u128).pow(nvars as u32 - 1);
    match config.mode {
        Mode::Exhaustive => {
            let too_big = || Error::BudgetExceeded { needed: u128::MAX, budget: config.budget };
            let nf = f.population(q).filter(|&n| n <= u64::MAX as u128).ok_or_else(too_big)?;
            let ng = g.population(q).filter(|&n| n <= u64::MAX as u128).ok_or_else(too_big)?;
            let population = nf.checked_mul(ng).filter(|&n| n <= u64::MAX as u128).ok_or_else(too_big)?;
            let needed = pair_evaluations(q, nvars, deg_f, deg_g, config).unwrap_or(u128::MAX);
            config.check_budget(needed)?;
            let spec = Specializer::new(ring, f, g, needed)?;
            let engine = PairEnum::new(spec, nf as u64, ng as u64);
            let freq = run_exhaustive(&engine, config.workers)?;
            let (mean, variance) = exact_stats(&freq)?;
            Ok((freq, population as u64, npts as u64, Stats::Exact { mean, variance }))
        }
        Mode::MonteCarlo => {
            let needed = pair_evaluations(q, nvars, deg_f, deg_g, config).unwrap_or(u128::MAX);
            config.check_budget(needed)?;
            let spec = Specializer::new(ring, f, g, needed)?;
            let freq = run_sampling(&PairSample { spec }, config.samples, config.seed, config.workers)?;
            let est = estimate(&freq)?;
            Ok((freq, config.samples, npts as u64, Stats::Estimated(est)))
        }
    }
}

/// Gcd evaluations a pair census would perform (pairs visited times
/// points), or `None` if the count does not fit.
pub fn pair_evaluations(q: u64, nvars: usize, deg_f: usize, deg_g: usize, config: &CensusConfig) -> Option<u128> {
    let (f, g) = (Shape::new(nvars, deg_f).ok()?, Shape::new(nvars, deg_g).ok()?);
    let npts = (q as u128).checked_pow(nvars.checked_sub(1)? as u32)?;
    let visited = match config.mode {
        Mode::Exhaustive => {
            let (nf, ng) = (f.population(q)?, g.population(q)?);
            if f == g {
                nf.checked_mul(nf + 1)? / 2
            } else {
                nf.checked_mul(ng)?
            }
        }
        Mode::MonteCarlo => config.samples as u128,
    };
    visited.checked_mul(npts)
}

fn with_mode(config: &CensusConfig) -> (Option<u64>, Option<u64>) {
    match config.mode {
        Mode::Exhaustive => (None, None),
        Mode::MonteCarlo => (Some(config.seed), Some(config.samples)),
    }
}

/// Number of `y` in F_q with `gcd(f(x, y), g(x, y)) != 1` over monic-in-`x`
/// pairs of total degrees `deg_f`, `deg_g`, counted over all ordered pairs
/// (exhaustive) or over uniform random pairs (Monte Carlo).
pub fn fq_pair_census(q: u64, deg_f: usize, deg_g: usize, config: &CensusConfig) -> Result<CensusResult> {
    let (freq, population, npts, stats) = pair_census(q, 2, deg_f, deg_g, config)?;
    let (seed, samples) = with_mode(config);
    Ok(CensusResult {
        experiment: Experiment::FqPairs { q, deg_f, deg_g },
        mode: config.mode,
        population,
        max_outcome: npts,
        freq,
        stats,
        theory_mean: BigRational::one(),
        theory_var: BigRational::new(BigInt::from(q - 1), BigInt::from(q)),
        seed,
        samples,
        binomial_ref: Some(binomial_reference(q, population)),
    })
}

/// As [`fq_pair_census`] in `nvars` variables: counts points of
/// F_q^(nvars-1) with a nontrivial specialized gcd.
pub fn mv_census(q: u64, nvars: usize, deg_f: usize, deg_g: usize, config: &CensusConfig) -> Result<CensusResult> {
    let (freq, population, npts, stats) = pair_census(q, nvars, deg_f, deg_g, config)?;
    let (seed, samples) = with_mode(config);
    let scale = BigInt::from(q).pow(nvars as u32 - 2);
    Ok(CensusResult {
        experiment: Experiment::Multivariate { q, nvars, deg_f, deg_g },
        mode: config.mode,
        population,
        max_outcome: npts,
        freq,
        stats,
        theory_mean: BigRational::from_integer(scale.clone()),
        theory_var: BigRational::new(scale * (q - 1), BigInt::from(q)),
        seed,
        samples,
        binomial_ref: Some(binomial_reference_trials(q, npts, population)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{resultant_poly, ShapedMultiPoly};
    use std::sync::Arc;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Ordered-pair brute force through the polynomial API.
    fn naive(q: u64, nvars: usize, l: usize, m: usize) -> Vec<u64> {
        let ring = Ring::finite_field(q).unwrap();
        let (sf, sg) = (Arc::new(Shape::new(nvars, l).unwrap()), Arc::new(Shape::new(nvars, m).unwrap()));
        let npts = q.pow(nvars as u32 - 1);
        let points: Vec<Vec<Elem>> = (0..npts)
            .map(|i| (0..nvars - 1).map(|j| i / q.pow(j as u32) % q).collect())
            .collect();
        let mut freq = vec![0; npts as usize + 1];
        for i in 0..sf.population(q).unwrap() {
            let f = ShapedMultiPoly::from_index(&ring, sf.clone(), i);
            for j in 0..sg.population(q).unwrap() {
                let g = ShapedMultiPoly::from_index(&ring, sg.clone(), j);
                let hits = points
                    .iter()
                    .filter(|p| !f.eval(p).unwrap().gcd(&g.eval(p).unwrap()).unwrap().is_one())
                    .count();
                freq[hits] += 1;
            }
        }
        freq
    }

    #[test]
    fn engine_matches_naive() {
        for (q, v, l, m) in [(2, 2, 1, 1), (3, 2, 1, 2), (2, 2, 2, 2), (4, 2, 1, 1), (2, 3, 1, 1), (3, 3, 1, 1)] {
            let cfg = CensusConfig::exhaustive(2);
            let res = mv_census(q, v, l, m, &cfg).unwrap();
            assert_eq!(res.freq, naive(q, v, l, m), "q={q} v={v} l={l} m={m}");
        }
    }

    #[test]
    fn quadratics_over_f2() {
        let res = fq_pair_census(2, 2, 2, &CensusConfig::default()).unwrap();
        assert_eq!(res.population, 1024);
        assert_eq!(res.freq.iter().sum::<u64>(), 1024);
        assert_eq!(res.stats, Stats::Exact { mean: rat(1, 1), variance: rat(1, 2) });
        assert!(res.theory_agrees());
    }

    #[test]
    fn small_field_theory() {
        for q in [2, 3, 4, 5] {
            for (l, m) in [(1, 1), (1, 2), (2, 1)] {
                let res = fq_pair_census(q, l, m, &CensusConfig::default()).unwrap();
                assert!(res.theory_agrees(), "q={q} l={l} m={m}: {:?}", res.stats);
                assert_eq!(res.resultant_gap_holds(), if l * m < q as usize { Some(true) } else { None });
            }
        }
    }

    #[test]
    fn non_coprime_pairs_hit_every_point() {
        // freq[q] counts exactly the pairs with a zero resultant
        for (q, l, m) in [(3, 1, 2), (5, 1, 1), (4, 1, 2)] {
            let ring = Ring::finite_field(q).unwrap();
            let (sf, sg) = (Arc::new(Shape::new(2, l).unwrap()), Arc::new(Shape::new(2, m).unwrap()));
            let mut zero = 0;
            for i in 0..sf.population(q).unwrap() {
                let f = ShapedMultiPoly::from_index(&ring, sf.clone(), i);
                for j in 0..sg.population(q).unwrap() {
                    let g = ShapedMultiPoly::from_index(&ring, sg.clone(), j);
                    zero += resultant_poly(&f, &g).unwrap().is_zero() as u64;
                }
            }
            let res = fq_pair_census(q, l, m, &CensusConfig::default()).unwrap();
            assert_eq!(res.freq[q as usize], zero);
            // a single point is unlucky with probability exactly 1/q
            let Stats::Exact { mean, .. } = &res.stats else { unreachable!() };
            assert_eq!(mean / rat(q as i64, 1), rat(1, q as i64));
        }
    }

    #[test]
    fn worker_count_does_not_matter() {
        let one = fq_pair_census(3, 2, 2, &CensusConfig::exhaustive(1)).unwrap();
        let four = fq_pair_census(3, 2, 2, &CensusConfig::exhaustive(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn monte_carlo_reproducible() {
        let cfg = CensusConfig::monte_carlo(2000, 9, 3);
        let a = mv_census(3, 3, 1, 2, &cfg).unwrap();
        assert_eq!(a, mv_census(3, 3, 1, 2, &cfg).unwrap());
        assert_eq!(a.population, 2000);
        assert_eq!(a.samples, Some(2000));
    }

    #[test]
    fn errors() {
        let cfg = CensusConfig::default();
        assert_eq!(fq_pair_census(6, 1, 1, &cfg).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(fq_pair_census(5, 0, 1, &cfg).unwrap_err(), Error::ZeroDegree);
        assert!(mv_census(5, 1, 1, 1, &cfg).is_err());
        assert!(matches!(fq_pair_census(7, 3, 3, &cfg), Err(Error::BudgetExceeded { .. })));
    }
}
