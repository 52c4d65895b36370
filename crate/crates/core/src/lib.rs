//! Exact computations with constant-coefficient differential operators on
//! polynomial spaces.
//!
//! * [`algebra`]: rationals, multi-indices, truncated series and polynomials.
//! * [`liegroup`]: product, inverse, `exp`, `log`, dilation and the matrix
//!   representation of truncated operators.
//! * [`moments`]: sequence/operator correspondence, convolution and exact
//!   moment-matrix certificates.
//! * [`measures`]: finite atomic measures and their action on polynomials.
//! * [`levy`]: semigroup generators from Lévy triplets and refutation probes.
//! * [`evolve`]: exact polynomial evolution and nonnegativity checks.
//! * [`json`]: the JSON wire formats.

pub mod algebra;
pub mod error;
pub mod evolve;
pub mod json;
pub mod levy;
pub mod liegroup;
pub mod measures;
pub mod moments;

pub use algebra::{
    Graded, Matrix, MomentSequence, MultiIndex, Polynomial, Scalar, TruncatedSeries,
};
pub use error::{Error, Result};
pub use levy::LevyTriplet;
pub use measures::AtomicMeasure;
pub use moments::{MomentMatrix, PsdVerdict};
