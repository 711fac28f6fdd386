//! Deterministic data-parallel drivers.
//!
//! Exhaustive runs split the index space into contiguous chunks whose count
//! does not depend on the worker count; each chunk fills a private frequency
//! vector and the vectors are summed, so the result is identical for any
//! number of workers. Sampling runs give worker `w` its own ChaCha stream
//! `w` under the master seed and a contiguous share of the sample count.

use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

const MAX_CHUNKS: u64 = 4096;

pub trait ExhaustiveEngine: Sync {
    /// Number of outcome bins.
    fn bins(&self) -> usize;
    /// Size of the work index space.
    fn units(&self) -> u64;
    /// Adds the outcomes of work units in `range` to `freq`.
    fn accumulate(&self, range: Range<u64>, freq: &mut [u64]);
}

pub trait SamplingEngine: Sync {
    fn bins(&self) -> usize;
    /// Draws one object and records its outcome.
    fn sample(&self, rng: &mut ChaCha8Rng, freq: &mut [u64]);
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidConfig("worker count must be >= 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

fn merge(parts: Vec<Vec<u64>>, bins: usize) -> Result<Vec<u64>> {
    let mut total = vec![0u64; bins];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t = t.checked_add(p).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

/// Contiguous range `i` of `parts` near-equal ranges covering `0..len`.
pub fn split_range(len: u64, parts: u64, i: u64) -> Range<u64> {
    let lo = (len as u128 * i as u128 / parts as u128) as u64;
    let hi = (len as u128 * (i + 1) as u128 / parts as u128) as u64;
    lo..hi
}

pub fn run_exhaustive<E: ExhaustiveEngine>(engine: &E, workers: usize) -> Result<Vec<u64>> {
    let units = engine.units();
    let bins = engine.bins();
    let chunks = units.clamp(1, MAX_CHUNKS);
    let parts = pool(workers)?.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut freq = vec![0u64; bins];
                engine.accumulate(split_range(units, chunks, c), &mut freq);
                freq
            })
            .collect::<Vec<_>>()
    });
    merge(parts, bins)
}

pub fn run_sampling<E: SamplingEngine>(
    engine: &E,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<u64>> {
    let bins = engine.bins();
    let w = workers as u64;
    let parts = pool(workers)?.install(|| {
        (0..w)
            .into_par_iter()
            .map(|i| {
                let mut rng = worker_rng(seed, i);
                let mut freq = vec![0u64; bins];
                for _ in split_range(samples, w, i) {
                    engine.sample(&mut rng, &mut freq);
                }
                freq
            })
            .collect::<Vec<_>>()
    });
    merge(parts, bins)
}

pub fn worker_rng(seed: u64, worker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    struct Digits;
    impl ExhaustiveEngine for Digits {
        fn bins(&self) -> usize {
            10
        }
        fn units(&self) -> u64 {
            12_345
        }
        fn accumulate(&self, range: Range<u64>, freq: &mut [u64]) {
            for i in range {
                freq[(i * 7 % 10) as usize] += 1;
            }
        }
    }

    struct Dice;
    impl SamplingEngine for Dice {
        fn bins(&self) -> usize {
            6
        }
        fn sample(&self, rng: &mut ChaCha8Rng, freq: &mut [u64]) {
            freq[rng.gen_range(0..6)] += 1;
        }
    }

    #[test]
    fn ranges_cover_exactly() {
        for (len, parts) in [(0, 3), (10, 3), (12_345, 4096), (7, 7)] {
            let mut next = 0;
            for i in 0..parts {
                let r = split_range(len, parts, i);
                assert_eq!(r.start, next);
                next = r.end;
            }
            assert_eq!(next, len);
        }
    }

    #[test]
    fn exhaustive_is_worker_independent() {
        let one = run_exhaustive(&Digits, 1).unwrap();
        assert_eq!(one.iter().sum::<u64>(), 12_345);
        for w in [2, 3, 8] {
            assert_eq!(run_exhaustive(&Digits, w).unwrap(), one);
        }
        assert!(run_exhaustive(&Digits, 0).is_err());
    }

    #[test]
    fn sampling_is_seed_reproducible() {
        let a = run_sampling(&Dice, 10_001, 42, 4).unwrap();
        assert_eq!(a.iter().sum::<u64>(), 10_001);
        assert_eq!(run_sampling(&Dice, 10_001, 42, 4).unwrap(), a);
        assert_ne!(run_sampling(&Dice, 10_001, 43, 4).unwrap(), a);
    }
}
