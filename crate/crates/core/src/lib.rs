//! Polynomial arithmetic over Z_n and GF(q), Sylvester resultants,
//! inclusion-exclusion counting, and exhaustive / Monte Carlo census engines
//! for root counts and unlucky evaluation points.

pub mod algebra;
pub mod census;
pub mod error;
pub mod incexc;
pub mod polyring;

pub use error::{Error, Result};
