//! Finite rings Z_n, F_p, GF(p^k) and the number theory the variance
//! formulas need.

mod numtheory;
mod ring;

pub use numtheory::{
    a006579, binomial, divisors, factorize, gcd_int, is_prime, is_prime_power, prime_power_var,
    theory_var_zn, totient,
};
pub use ring::{Elem, Ring, RingSpec, MAX_CARDINALITY};
