//! Deterministic inputs for the benchmarks.

use posgen_core::algebra::{MultiIndex, Scalar};
use posgen_core::TruncatedSeries;

/// Dense operator with every coefficient of degree `1..=d` set to a small
/// rational, plus `constant` as the constant term.
pub fn dense(n: usize, d: u32, constant: i64) -> TruncatedSeries {
    let terms = MultiIndex::all_up_to(n, d)
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let c = if a.is_zero() {
                Scalar::from_integer(constant.into())
            } else {
                let i = i as i64;
                Scalar::new(((i * 7) % 11 - 5).into(), (i % 5 + 1).into())
            };
            (a, c)
        });
    TruncatedSeries::from_terms(n, d, terms).expect("indices in range")
}

/// `(n, d)` shapes covered by the benchmarks.
pub const SHAPES: [(usize, u32); 4] = [(1, 8), (2, 6), (3, 4), (3, 6)];
