mod common;

use std::collections::BTreeSet;

use common::*;
use num::Zero;
use posgen_core::algebra::{MomentKind, MultiIndex, PolyKind, Scalar};
use posgen_core::liegroup::{apply, mul};
use posgen_core::measures::{apply_measure, convolve, measure_moments};
use posgen_core::moments::{d_inv, d_map, moment_matrix, psd_check, seq_convolve};
use posgen_core::{AtomicMeasure, MomentSequence, Polynomial, PsdVerdict};
use proptest::prelude::*;

fn seq_triple() -> impl Strategy<Value = (MomentSequence, MomentSequence, MomentSequence)> {
    dims(3, 6).prop_flat_map(|(n, d)| {
        (
            graded::<MomentKind>(n, d, 8, rat()),
            graded::<MomentKind>(n, d, 8, rat()),
            graded::<MomentKind>(n, d, 8, rat()),
        )
    })
}

fn measure_triple(
    signed: bool,
) -> impl Strategy<Value = (AtomicMeasure, AtomicMeasure, AtomicMeasure)> {
    (1usize..=2).prop_flat_map(move |n| {
        (
            measure(n, 4, signed),
            measure(n, 4, signed),
            measure(n, 4, signed),
        )
    })
}

fn measure_and_poly() -> impl Strategy<Value = (AtomicMeasure, Polynomial)> {
    dims(2, 6).prop_flat_map(|(n, d)| {
        (
            measure(n, 4, true),
            graded::<PolyKind>(n, d, 8, small_rat()),
        )
    })
}

/// Direct binomial formula over all `α ≤ γ`.
fn binomial_oracle(s: &MomentSequence, t: &MomentSequence) -> MomentSequence {
    let d = s.d().min(t.d());
    let terms = MultiIndex::all_up_to(s.n(), d).into_iter().map(|gamma| {
        let v: Scalar = gamma
            .lower_set()
            .into_iter()
            .map(|alpha| {
                let beta = gamma.checked_sub(&alpha).unwrap();
                Scalar::from_integer(gamma.binomial(&alpha)) * s.coeff(&alpha) * t.coeff(&beta)
            })
            .sum();
        (gamma, v)
    });
    MomentSequence::from_terms(s.n(), d, terms).unwrap()
}

fn unit_sequence(n: usize, d: u32) -> MomentSequence {
    MomentSequence::one(n, d).unwrap()
}

fn psd_levels(s: &MomentSequence) -> Vec<PsdVerdict> {
    (0..=s.d() / 2)
        .map(|k| psd_check(&moment_matrix(s, k).unwrap()).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_map_is_a_bijection((s, _, _) in seq_triple()) {
        prop_assert_eq!(d_inv(&d_map(&s)), s.clone());
        let t = d_map(&s);
        prop_assert_eq!(d_map(&d_inv(&t)), t);
    }

    #[test]
    fn d_map_is_a_homomorphism((s, t, _) in seq_triple()) {
        let lhs = d_map(&seq_convolve(&s, &t).unwrap());
        prop_assert_eq!(lhs, mul(&d_map(&s), &d_map(&t)).unwrap());
    }

    #[test]
    fn sequence_convolution_laws((s, t, u) in seq_triple()) {
        let st = seq_convolve(&s, &t).unwrap();
        prop_assert_eq!(&st, &binomial_oracle(&s, &t));
        prop_assert_eq!(&st, &seq_convolve(&t, &s).unwrap());
        prop_assert_eq!(
            seq_convolve(&st, &u).unwrap(),
            seq_convolve(&s, &seq_convolve(&t, &u).unwrap()).unwrap()
        );
        prop_assert_eq!(seq_convolve(&s, &unit_sequence(s.n(), s.d())).unwrap(), s);
    }

    #[test]
    fn nonnegative_measures_pass_every_level(
        (m, d) in (1usize..=3).prop_flat_map(|n| (measure(n, 5, false), 0u32..=6))
    ) {
        for v in psd_levels(&measure_moments(&m, d)) {
            prop_assert!(!v.is_violated(), "{v:?}");
        }
    }

    #[test]
    fn witnesses_are_sound((s, _, _) in seq_triple()) {
        for k in 0..=s.d() / 2 {
            let m = moment_matrix(&s, k).unwrap();
            if let PsdVerdict::ViolatedAt { witness, .. } = psd_check(&m).unwrap() {
                prop_assert!(m.entries().quadratic_form(&witness).unwrap() < Scalar::zero());
            }
        }
    }

    #[test]
    fn passing_sequences_form_a_convex_set(
        (a, b) in (1usize..=2).prop_flat_map(|n| (measure(n, 4, true), measure(n, 4, true))),
        w in (0i64..=10),
    ) {
        let d = 4;
        let s = measure_moments(&a, d);
        let t = measure_moments(&b, d);
        let c = Scalar::new(w.into(), 10.into());
        let mix = s.scale(&c).add(&t.scale(&(one() - &c))).unwrap();
        for k in 0..=d / 2 {
            let ps = !psd_check(&moment_matrix(&s, k).unwrap()).unwrap().is_violated();
            let pt = !psd_check(&moment_matrix(&t, k).unwrap()).unwrap().is_violated();
            if ps && pt {
                prop_assert!(!psd_check(&moment_matrix(&mix, k).unwrap()).unwrap().is_violated());
            }
        }
    }

    #[test]
    fn measure_convolution_laws((a, b, c) in measure_triple(true)) {
        let ab = convolve(&a, &b).unwrap();
        prop_assert_eq!(&ab, &convolve(&b, &a).unwrap());
        prop_assert_eq!(
            convolve(&ab, &c).unwrap(),
            convolve(&a, &convolve(&b, &c).unwrap()).unwrap()
        );
        let delta = AtomicMeasure::dirac(vec![Scalar::zero(); a.n()]).unwrap();
        prop_assert_eq!(convolve(&a, &delta).unwrap(), a);
    }

    #[test]
    fn nonnegative_support_is_minkowski_sum((a, b, _) in measure_triple(false)) {
        let ab = convolve(&a, &b).unwrap();
        let support: BTreeSet<Vec<Scalar>> = ab.atoms().map(|(y, _)| y.clone()).collect();
        let mut minkowski = BTreeSet::new();
        for (x, _) in a.atoms() {
            for (y, _) in b.atoms() {
                minkowski.insert(x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<_>>());
            }
        }
        prop_assert_eq!(support, minkowski);
    }

    #[test]
    fn measure_moments_convolve((a, b, _) in measure_triple(true), d in 0u32..=6) {
        let lhs = measure_moments(&convolve(&a, &b).unwrap(), d);
        let sa = measure_moments(&a, d);
        let sb = measure_moments(&b, d);
        prop_assert_eq!(&lhs, &seq_convolve(&sa, &sb).unwrap());
        prop_assert_eq!(&lhs, &d_inv(&mul(&d_map(&sa), &d_map(&sb)).unwrap()));
    }

    #[test]
    fn measure_action_matches_operator((m, p) in measure_and_poly()) {
        let s = measure_moments(&m, p.d());
        prop_assert_eq!(apply_measure(&m, &p).unwrap(), apply(&d_map(&s), &p).unwrap());
    }

    #[test]
    fn measure_action_composes(((a, b, _), p) in (1usize..=2).prop_flat_map(|n| {
        ((measure(n, 3, true), measure(n, 3, true), Just(())), graded::<PolyKind>(n, 5, 8, small_rat()))
    })) {
        let lhs = apply_measure(&convolve(&a, &b).unwrap(), &p).unwrap();
        let rhs = apply_measure(&a, &apply_measure(&b, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// Determinant by fraction-field Gaussian elimination with row swaps.
fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut d = one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest {
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(pivot_row).skip(c) {
                *x -= &f * p;
            }
        }
    }
    d
}

/// PSD iff every principal minor is nonnegative.
fn psd_by_minors(m: &posgen_core::Matrix) -> bool {
    let n = m.rows();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        det(idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[(i, j)].clone()).collect())
            .collect())
            >= zero()
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = posgen_core::Matrix> {
    let entry = (-2i64..=2).prop_map(|v| Scalar::from_integer(v.into()));
    prop_oneof![
        // generic symmetric
        prop::collection::vec(entry.clone(), n * n).prop_map(move |v| {
            let mut m = posgen_core::Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    m[(i, j)] = v[i * n + j].clone();
                    m[(j, i)] = v[i * n + j].clone();
                }
            }
            m
        }),
        // B Bᵀ with B of rank ≤ 2, so often singular PSD
        prop::collection::vec(entry, n * 2).prop_map(move |v| {
            let mut m = posgen_core::Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = (0..2).map(|k| &v[i * 2 + k] * &v[j * 2 + k]).sum();
                }
            }
            m
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn psd_decision_matches_principal_minors(m in (1usize..=5).prop_flat_map(symmetric)) {
        use posgen_core::moments::psd::{decide, Definiteness};
        match decide(&m).unwrap() {
            Definiteness::Psd { pivots } => {
                prop_assert!(psd_by_minors(&m));
                prop_assert!(pivots.iter().all(|p| p > &zero()));
            }
            Definiteness::Indefinite { witness, value } => {
                prop_assert!(value < zero());
                prop_assert_eq!(m.quadratic_form(&witness).unwrap(), value);
                prop_assert!(!psd_by_minors(&m));
            }
        }
    }
}
