use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("reduction polynomial is not a monic irreducible of degree {0}")]
    ReducibleModulus(u32),
    #[error("{0} is not a unit")]
    NotUnit(u64),
    #[error("operation requires a field")]
    NotAField,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("divisor must be monic over a ring that is not a field")]
    NonMonicDivisor,
    #[error("polynomial must be monic in the main variable")]
    NonMonic,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial does not fit the shape: {0}")]
    ShapeMismatch(String),
    #[error("resultant degree {degree} exceeds the Bezout bound {bound}")]
    BezoutViolation { degree: usize, bound: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inconsistent t vector: b_{k} = {value} is negative")]
    InconsistentT { k: usize, value: i128 },
    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("counter overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
