//! Integer helpers behind the divisor-sum variance formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn gcd_int(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, k)` with `n = p^k`, `k >= 1`.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidConfig("totient(0) is undefined".into()));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// `a(n) = sum_{k=1}^{n-1} gcd(n, k)`, OEIS A006579.
pub fn a006579(n: u64) -> u64 {
    (1..n).map(|k| gcd_int(n, k)).sum()
}

/// Variance of the number of distinct roots of a random monic polynomial of
/// degree at least 2 over Z_n, as `sum_{d | n, d != n} (d/n) phi(n/d)`.
///
/// The equivalent form `sum_{d | n} ((d-1)/n) phi(n/d)` is computed as well
/// and the two are required to agree.
pub fn theory_var_zn(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidRing(format!("Z_{n} needs n >= 2")));
    }
    let big_n = BigInt::from(n);
    let mut proper = BigInt::zero();
    let mut shifted = BigInt::zero();
    for d in divisors(n) {
        let phi = BigInt::from(totient(n / d)?);
        if d != n {
            proper += BigInt::from(d) * &phi;
        }
        shifted += BigInt::from(d - 1) * &phi;
    }
    let a = BigRational::new(proper, big_n.clone());
    let b = BigRational::new(shifted, big_n);
    assert_eq!(a, b, "divisor-sum forms disagree at n = {n}");
    Ok(a)
}

/// `k (p - 1) / p` for `n = p^k`.
pub fn prime_power_var(p: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::from(k) * BigInt::from(p - 1), BigInt::from(p))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|&i| gcd_int(i, n) == 1).count() as u64
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(brute_totient(12), 4);
        assert_eq!(totient(12).unwrap(), 4);
        assert!(totient(0).is_err());
        for n in 1..500 {
            assert_eq!(totient(n).unwrap(), brute_totient(n), "n = {n}");
        }
    }

    #[test]
    fn gauss_divisor_sum() {
        for n in 1..=1000u64 {
            let s: u64 = divisors(n).iter().map(|d| totient(n / d).unwrap()).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn divisor_and_prime_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert_eq!(is_prime_power(16), Some((2, 4)));
        assert_eq!(is_prime_power(7), Some((7, 1)));
        assert_eq!(is_prime_power(6), None);
        assert_eq!(is_prime_power(1), None);
        assert_eq!(gcd_int(0, 7), 7);
        assert_eq!(gcd_int(12, 18), 6);
        assert!(is_prime(2) && is_prime(101) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn variance_table_entries() {
        assert_eq!(theory_var_zn(6).unwrap(), rat(3, 2));
        assert_eq!(theory_var_zn(16).unwrap(), rat(2, 1));
        assert_eq!(theory_var_zn(16).unwrap(), prime_power_var(2, 4));
        assert_eq!(theory_var_zn(12).unwrap(), rat(7, 3));
        assert!(theory_var_zn(1).is_err());
    }

    #[test]
    fn a006579_values() {
        assert_eq!(a006579(1), 0);
        assert_eq!(a006579(2), 1);
        assert_eq!(a006579(12), 28);
        let expected = [1, 2, 4, 4, 9, 6, 12, 12, 17, 10, 28, 12, 25, 30, 32];
        for (i, &a) in expected.iter().enumerate() {
            assert_eq!(a006579(i as u64 + 2), a);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
