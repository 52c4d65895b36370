//! Exact scalars, multi-indices and the truncated coefficient containers the
//! other modules share.

mod graded;
mod matrix;
mod multi_index;
mod scalar;

pub use graded::{
    Graded, Kind, MomentKind, MomentSequence, PolyKind, Polynomial, SeriesKind, TruncatedSeries,
};
pub use matrix::Matrix;
pub use multi_index::MultiIndex;
pub use scalar::{
    binomial, factorial, format_scalar, int, parse_scalar, pow, ratio, to_f64, Scalar,
};

/// Exact evaluation of a polynomial at a rational point.
pub fn eval(p: &Polynomial, x: &[Scalar]) -> crate::Result<Scalar> {
    p.eval(x)
}

/// `p(· + y)`.
pub fn shift(p: &Polynomial, y: &[Scalar]) -> crate::Result<Polynomial> {
    p.shift(y)
}

/// Coefficientwise sum under the min-truncation rule.
pub fn add<K: Kind>(a: &Graded<K>, b: &Graded<K>) -> crate::Result<Graded<K>> {
    a.add(b)
}
