use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::binomial;

/// `B_k = population * C(q, k) (1/q)^k (1 - 1/q)^(q-k)` for `k = 0..=q`:
/// expected counts if the `q` points were independent trials with success
/// probability `1/q`.
pub fn binomial_reference(q: u64, population: u64) -> Vec<BigRational> {
    binomial_reference_trials(q, q, population)
}

/// As [`binomial_reference`] with `trials` points of probability `1/q` each.
pub fn binomial_reference_trials(q: u64, trials: u64, population: u64) -> Vec<BigRational> {
    let q_big = BigInt::from(q);
    let denom = num_traits::pow(q_big.clone(), trials as usize);
    let pop = BigInt::from(population);
    let fail: BigInt = q_big - 1u32;
    (0..=trials)
        .map(|k| {
            let numer = &pop * binomial(trials, k) * num_traits::pow(fail.clone(), (trials - k) as usize);
            BigRational::new(numer, denom.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::rat_rounded;
    use num_traits::Zero;

    #[test]
    fn sums_to_population() {
        for q in 1..10 {
            let b = binomial_reference(q, 12_345);
            assert_eq!(b.len(), q as usize + 1);
            let s = b.iter().fold(BigRational::zero(), |a, x| a + x);
            assert_eq!(s, BigRational::from_integer(12_345.into()));
        }
    }

    #[test]
    fn q7_ends() {
        let b = binomial_reference(7, 7u64.pow(10));
        assert_eq!(b[7], BigRational::from_integer(343.into()));
        assert_eq!(b[0], BigRational::from_integer(96_018_048.into()));
        assert_eq!(rat_rounded(&b[6]), BigInt::from(14_406));
    }

    #[test]
    fn degenerate() {
        // one point, always hit
        assert_eq!(binomial_reference(1, 5)[1], BigRational::from_integer(5.into()));
        assert_eq!(binomial_reference_trials(3, 0, 9).len(), 1);
    }
}
