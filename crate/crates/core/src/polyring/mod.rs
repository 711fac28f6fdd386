//! Univariate and shaped multivariate polynomials: arithmetic, GCD, root
//! counting, Sylvester matrices and resultants.

mod multi;
mod notation;
mod resultant;
mod shaped;
mod uni;

pub use multi::{Monomial, MultiPoly, MAX_VARS};
pub use notation::{format_poly, parse_poly};
pub use resultant::{
    resultant_det, resultant_in_main, resultant_poly, resultant_poly_bivariate,
    resultant_specialized_det, resultant_specialized_uni, resultant_uni, sylvester_matrix,
    CoeffRing, PolyCoeffs, SylvesterMatrix,
};
pub use shaped::{Shape, ShapedMultiPoly};
pub use uni::UniPoly;
