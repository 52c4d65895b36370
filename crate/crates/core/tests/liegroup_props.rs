mod common;

use common::*;
use num::{One, Zero};
use posgen_core::algebra::{pow, Matrix, MultiIndex, PolyKind, Scalar};
use posgen_core::liegroup::{
    self, apply, coordinates, dilate, exp, inverse, log, matrix_rep, mul, power,
};
use posgen_core::{Polynomial, TruncatedSeries};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    dims(3, 6).prop_flat_map(|(n, d)| {
        (
            group_element(n, d, 6),
            group_element(n, d, 6),
            group_element(n, d, 6),
        )
    })
}

fn algebra_pair() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries)> {
    dims(3, 6).prop_flat_map(|(n, d)| (algebra_element(n, d, 6), algebra_element(n, d, 6)))
}

/// `∂_i p` by differentiating each monomial.
fn partial(p: &Polynomial, i: usize) -> Polynomial {
    let terms = p.terms().filter(|(a, _)| a.entries()[i] > 0).map(|(a, c)| {
        let mut e = a.entries().to_vec();
        let k = e[i];
        e[i] -= 1;
        (MultiIndex::new(e), c * Scalar::from_integer(k.into()))
    });
    Polynomial::from_terms(p.n(), p.d(), terms).unwrap()
}

/// `Σ q_α ∂^α p` via repeated first-order derivatives.
fn apply_oracle(a: &TruncatedSeries, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.n(), p.d()).unwrap();
    for (alpha, q) in a.terms() {
        let mut dp = p.clone();
        for (i, &e) in alpha.entries().iter().enumerate() {
            for _ in 0..e {
                dp = partial(&dp, i);
            }
        }
        out = out.add(&dp.scale(q)).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_commutative_and_associative((a, b, c) in triple()) {
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
        prop_assert_eq!(
            mul(&mul(&a, &b).unwrap(), &c).unwrap(),
            mul(&a, &mul(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in triple()) {
        let b = inverse(&a).unwrap();
        let one = TruncatedSeries::one(a.n(), a.d()).unwrap();
        prop_assert_eq!(mul(&a, &b).unwrap(), one.clone());
        prop_assert_eq!(mul(&b, &a).unwrap(), one);
        prop_assert_eq!(inverse(&b).unwrap(), a);
    }

    #[test]
    fn exp_and_log_are_inverse((a, _) in algebra_pair(), (t, _, _) in triple()) {
        prop_assert_eq!(log(&exp(&a).unwrap()).unwrap(), a);
        prop_assert_eq!(exp(&log(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn exp_turns_sums_into_products((a, b) in algebra_pair()) {
        let lhs = exp(&a.add(&b).unwrap()).unwrap();
        let rhs = mul(&exp(&a).unwrap(), &exp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn algebra_elements_are_nilpotent((a, _) in algebra_pair()) {
        prop_assert!(power(&a, a.d() + 1).unwrap().is_zero());
    }

    #[test]
    fn matrix_rep_is_a_homomorphism((a, b, _) in triple()) {
        let d = a.d();
        let lhs = matrix_rep(&mul(&a, &b).unwrap(), d).unwrap();
        let rhs = matrix_rep(&a, d).unwrap().mul(&matrix_rep(&b, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_rep_is_unipotent((a, _, _) in triple()) {
        let d = a.d();
        let m = matrix_rep(&a, d).unwrap();
        let id = Matrix::identity(m.rows());
        for i in 0..m.rows() {
            prop_assert!(m[(i, i)].is_one());
            for j in 0..i {
                prop_assert!(m[(i, j)].is_zero());
            }
        }
        prop_assert!(m.sub(&id).unwrap().pow(d + 1).unwrap().is_zero());
    }

    #[test]
    fn apply_agrees_with_derivatives_and_matrix(
        (a, p) in dims(3, 6).prop_flat_map(|(n, d)| {
            (graded(n, d, 8, small_rat()), graded::<PolyKind>(n, d, 8, small_rat()))
        })
    ) {
        let ap = apply(&a, &p).unwrap();
        prop_assert_eq!(&ap, &apply_oracle(&a, &p));
        prop_assert!(ap.degree().unwrap_or(0) <= p.degree().unwrap_or(0));
        let d = a.d();
        let coords = matrix_rep(&a, d).unwrap().mul_vec(&coordinates(&p, d)).unwrap();
        prop_assert_eq!(coordinates(&ap, d), coords);
    }

    #[test]
    fn dilation_is_conjugation_by_scaling(
        (a, p) in dims(2, 5).prop_flat_map(|(n, d)| {
            (algebra_element(n, d, 6), graded::<PolyKind>(n, d, 6, small_rat()))
        }),
        lam in (1i64..=5, 1i64..=5),
        extra in 0u32..=2,
    ) {
        let lambda = Scalar::new(lam.0.into(), lam.1.into());
        let k = a.d() + extra;
        let lhs = apply(&dilate(&a, &lambda, k).unwrap(), &p).unwrap();
        let inner = p.dilate_argument(&(Scalar::one() / &lambda));
        let rhs = apply(&a, &inner).unwrap().dilate_argument(&lambda).scale(&pow(&lambda, k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilation_by_one_is_identity((a, _) in algebra_pair()) {
        prop_assert_eq!(dilate(&a, &one(), a.d()).unwrap(), a);
    }

    #[test]
    fn dilation_by_zero_keeps_top_degree((a, _) in algebra_pair()) {
        let k = a.d();
        let z = dilate(&a, &zero(), k).unwrap();
        for (alpha, c) in z.terms() {
            prop_assert_eq!(alpha.degree(), k);
            prop_assert_eq!(c, &a.coeff(alpha));
        }
        prop_assert_eq!(z.nnz(), a.terms().filter(|(al, _)| al.degree() == k).count());
    }
}

#[test]
fn one_maps_to_identity_matrix() {
    for n in 1..=3 {
        for d in 0..=4 {
            let m = liegroup::matrix_rep(&TruncatedSeries::one(n, d).unwrap(), d).unwrap();
            assert_eq!(m, Matrix::identity(m.rows()));
        }
    }
}
