//! Intersection sums `t_k` and exact-membership counts `b_k` of a finite set
//! system, the conversion between them, and the first two moment identities.
//!
//! For sets `A_0 .. A_{n-1}` in a universe `U`, `t_k` sums `|A_{i1} ∩ .. ∩
//! A_{ik}|` over all k-subsets of indices and `b_k` counts elements lying in
//! exactly `k` sets (`b_0` counts elements in none).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Each set is sorted and deduplicated; every index must be below
    /// `universe_size`.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<SetSystem> {
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&e| e >= universe_size) {
                return Err(Error::InvalidSetSystem(format!(
                    "set {i} contains {bad}, universe size is {universe_size}"
                )));
            }
            clean.push(s);
        }
        Ok(SetSystem { universe_size, sets: clean })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_sets: usize, max_universe: usize) -> SetSystem {
        let n = rng.gen_range(1..=max_sets);
        let u = rng.gen_range(0..=max_universe);
        let density: f64 = rng.gen();
        let sets = (0..n)
            .map(|_| (0..u).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        SetSystem { universe_size: u, sets }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn membership(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.universe_size];
        for s in &self.sets {
            for &e in s {
                count[e] += 1;
            }
        }
        count
    }
}

/// Text format: first line `universe_size n`, then one line per set with
/// its whitespace-separated indices (an empty line is the empty set).
impl FromStr for SetSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<SetSystem> {
        let bad = |msg: &str| Error::InvalidSetSystem(msg.to_string());
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| bad("missing header line"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("header must be two integers")))
            .collect::<Result<_>>()?;
        let [universe, n] = nums[..] else {
            return Err(bad("header must be `universe_size n`"));
        };
        let mut sets = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines.next().unwrap_or("");
            let set = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("set indices must be integers")))
                .collect::<Result<Vec<usize>>>()?;
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("set indices must be strictly increasing"));
            }
            sets.push(set);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(bad("more set lines than declared"));
        }
        SetSystem::new(universe, sets)
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.universe_size, self.sets.len())?;
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `t_1 .. t_n` by direct enumeration of index subsets.
pub fn t_vector(sys: &SetSystem) -> Vec<u64> {
    let n = sys.len();
    let mut t = vec![0u64; n];
    assert!(n < 32, "t_vector enumerates 2^n subsets");
    let u = sys.universe_size;
    let masks: Vec<Vec<bool>> = sys
        .sets
        .iter()
        .map(|s| {
            let mut m = vec![false; u];
            for &e in s {
                m[e] = true;
            }
            m
        })
        .collect();
    for subset in 1u32..(1 << n) {
        let k = subset.count_ones() as usize;
        let members: Vec<&Vec<bool>> =
            (0..n).filter(|i| subset & (1 << i) != 0).map(|i| &masks[i]).collect();
        let size = (0..u).filter(|&e| members.iter().all(|m| m[e])).count();
        t[k - 1] += size as u64;
    }
    t
}

/// `b_0 .. b_n` from the membership histogram.
pub fn b_direct(sys: &SetSystem) -> Vec<u64> {
    let mut b = vec![0u64; sys.len() + 1];
    for c in sys.membership() {
        b[c] += 1;
    }
    b
}

/// `b_0 .. b_n` from `t_1 .. t_n` and the universe size (`t_0`), by both the
/// closed alternating-sum form and the top-down recursion; the two must agree.
pub fn b_from_t(t: &[u64], universe_size: u64) -> Result<Vec<u64>> {
    let closed = b_closed_form(t, universe_size);
    let recursive = b_recursive(t, universe_size);
    assert_eq!(closed, recursive, "closed and recursive forms disagree for t = {t:?}");
    closed
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if v.is_negative() {
                return Err(Error::InconsistentT { k, value: v.to_i128().unwrap_or(i128::MIN) });
            }
            v.to_u64().ok_or(Error::Overflow)
        })
        .collect()
}

fn t_ext(t: &[u64], universe_size: u64) -> Vec<BigInt> {
    std::iter::once(universe_size).chain(t.iter().copied()).map(BigInt::from).collect()
}

/// `b_{n-k} = sum_{i=0}^{k} (-1)^i C(n-k+i, i) t_{n-k+i}`
pub fn b_closed_form(t: &[u64], universe_size: u64) -> Vec<BigInt> {
    let n = t.len();
    let t = t_ext(t, universe_size);
    (0..=n)
        .map(|j| {
            (0..=n - j).fold(BigInt::zero(), |acc, i| {
                let term = binomial((j + i) as u64, i as u64) * &t[j + i];
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// `b_{n-k} = t_{n-k} - sum_{i=1}^{k} C(n-k+i, i) b_{n-k+i}`, from `b_n = t_n`
/// downward.
pub fn b_recursive(t: &[u64], universe_size: u64) -> Vec<BigInt> {
    let n = t.len();
    let t = t_ext(t, universe_size);
    let mut b = vec![BigInt::zero(); n + 1];
    for j in (0..=n).rev() {
        let mut v = t[j].clone();
        for i in 1..=n - j {
            v -= binomial((j + i) as u64, i as u64) * &b[j + i];
        }
        b[j] = v;
    }
    b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    /// `sum i b_i`
    pub first_lhs: u128,
    /// `t_1`
    pub first_rhs: u128,
    /// `sum i^2 b_i`
    pub second_lhs: u128,
    /// `t_1 + 2 t_2`
    pub second_rhs: u128,
}

impl MomentReport {
    pub fn passed(&self) -> bool {
        self.first_lhs == self.first_rhs && self.second_lhs == self.second_rhs
    }
}

/// First and second moment identities: `sum i b_i = t_1` and
/// `sum i^2 b_i = t_1 + 2 t_2` (missing `t_k` count as zero).
pub fn moment_check(b: &[u64], t: &[u64]) -> MomentReport {
    let t1 = t.first().copied().unwrap_or(0) as u128;
    let t2 = t.get(1).copied().unwrap_or(0) as u128;
    let (mut first, mut second) = (0u128, 0u128);
    for (i, &bi) in b.iter().enumerate() {
        first += i as u128 * bi as u128;
        second += (i * i) as u128 * bi as u128;
    }
    MomentReport { first_lhs: first, first_rhs: t1, second_lhs: second, second_rhs: t1 + 2 * t2 }
}

/// Result of running every check on one set system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemCheck {
    pub universe_size: u64,
    pub t: Vec<u64>,
    pub b_direct: Vec<u64>,
    pub b_from_t: Result<Vec<u64>>,
    pub moments: MomentReport,
}

impl SystemCheck {
    pub fn passed(&self) -> bool {
        let total: u64 = self.b_direct.iter().sum();
        self.b_from_t.as_ref() == Ok(&self.b_direct)
            && self.moments.passed()
            && total == self.universe_size
    }
}

pub fn check_system(sys: &SetSystem) -> SystemCheck {
    let t = t_vector(sys);
    let b = b_direct(sys);
    let from_t = b_from_t(&t, sys.universe_size as u64);
    let moments = moment_check(&b, &t);
    SystemCheck { universe_size: sys.universe_size as u64, t, b_direct: b, b_from_t: from_t, moments }
}
