#![allow(dead_code)]

use num::{BigInt, BigRational, One, Zero};
use posgen_core::algebra::{Graded, Kind, MultiIndex, Scalar};
use posgen_core::{AtomicMeasure, TruncatedSeries};
use proptest::prelude::*;

pub fn rat() -> impl Strategy<Value = Scalar> + Clone {
    (-100i64..=100, 1i64..=100)
        .prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn small_rat() -> impl Strategy<Value = Scalar> + Clone {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn nonneg_rat() -> impl Strategy<Value = Scalar> + Clone {
    (0i64..=8, 1i64..=4).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Sparse element with up to `max_terms` random coefficients.
pub fn graded<K: Kind>(
    n: usize,
    d: u32,
    max_terms: usize,
    coeff: impl Strategy<Value = Scalar> + Clone,
) -> impl Strategy<Value = Graded<K>> {
    let basis = MultiIndex::all_up_to(n, d);
    let len = basis.len();
    prop::collection::vec((0..len, coeff), 0..=max_terms).prop_map(move |terms| {
        Graded::from_terms(n, d, terms.into_iter().map(|(i, c)| (basis[i].clone(), c))).unwrap()
    })
}

/// Random `(n, d)` with `n ≤ max_n`, `d ≤ max_d`.
pub fn dims(max_n: usize, max_d: u32) -> impl Strategy<Value = (usize, u32)> {
    (1..=max_n, 0..=max_d)
}

/// Algebra element (zero constant term).
pub fn algebra_element(
    n: usize,
    d: u32,
    max_terms: usize,
) -> impl Strategy<Value = TruncatedSeries> {
    graded::<posgen_core::algebra::SeriesKind>(n, d, max_terms, small_rat()).prop_map(move |g| {
        g.sub(&TruncatedSeries::monomial(n, d, MultiIndex::zero(n), g.constant_term()).unwrap())
            .unwrap()
    })
}

/// Group element (unit constant term).
pub fn group_element(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = TruncatedSeries> {
    algebra_element(n, d, max_terms)
        .prop_map(move |a| a.add(&TruncatedSeries::one(n, d).unwrap()).unwrap())
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Scalar>> + Clone {
    prop::collection::vec(small_rat(), n)
}

pub fn measure(n: usize, max_atoms: usize, signed: bool) -> impl Strategy<Value = AtomicMeasure> {
    let w = if signed {
        small_rat().boxed()
    } else {
        nonneg_rat().boxed()
    };
    prop::collection::vec((point(n), w), 0..=max_atoms)
        .prop_map(move |atoms| AtomicMeasure::new(n, atoms).unwrap())
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// Valid triplet: `Σ = L Lᵀ`, nonnegative `ν` with at most `max_atoms` atoms off the origin.
pub fn triplet(n: usize, max_atoms: usize) -> impl Strategy<Value = posgen_core::LevyTriplet> {
    let atom = (point(n), nonneg_rat()).prop_map(|(mut y, w)| {
        if y.iter().all(Zero::is_zero) {
            y[0] = Scalar::one();
        }
        (y, w)
    });
    (
        point(n),
        prop::collection::vec(small_rat(), n * n),
        prop::collection::vec(atom, 0..=max_atoms),
    )
        .prop_map(move |(b, l, atoms)| {
            let mut sigma = posgen_core::Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    sigma[(i, j)] = (0..n).map(|k| &l[i * n + k] * &l[j * n + k]).sum();
                }
            }
            let nu = AtomicMeasure::new(n, atoms).unwrap();
            posgen_core::LevyTriplet::new(b, sigma, nu).unwrap()
        })
}
