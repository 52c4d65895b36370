//! Exact positive-semidefiniteness decisions over ℚ.
//!
//! Symmetric Gaussian elimination with diagonal pivoting. The congruence
//! `E M Eᵀ` is tracked explicitly so that an indefinite step in reduced
//! coordinates maps back to a witness `v = Eᵀ y` for the original matrix.

use num::{Signed, Zero};

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Outcome of [`decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    /// `M` is congruent to `diag(pivots, 0, …)` with every pivot positive.
    Psd { pivots: Vec<Scalar> },
    /// `vᵀ M v = value < 0`.
    Indefinite { witness: Vec<Scalar>, value: Scalar },
}

impl Definiteness {
    pub fn is_psd(&self) -> bool {
        matches!(self, Definiteness::Psd { .. })
    }
}

/// Decides whether a symmetric rational matrix is PSD.
///
/// At every step, in this order: a negative diagonal entry yields the witness
/// `e_i`; a zero diagonal entry with a nonzero entry in its row yields a
/// two-coordinate witness on that 2×2 block; otherwise the first positive
/// diagonal entry is eliminated. A remaining block with zero diagonal and no
/// off-diagonal entries is zero, hence PSD.
pub fn decide(m: &Matrix) -> Result<Definiteness> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let size = m.rows();
    let mut a = m.clone();
    let mut e = Matrix::identity(size);
    let mut active: Vec<usize> = (0..size).collect();
    let mut pivots = Vec::new();

    loop {
        if let Some(&i) = active.iter().find(|&&i| a[(i, i)].is_negative()) {
            return Ok(lift(m, &e, &[(i, Scalar::from_integer(1.into()))]));
        }
        let mut block = None;
        'search: for &i in &active {
            if !a[(i, i)].is_zero() {
                continue;
            }
            for &j in &active {
                if j != i && !a[(i, j)].is_zero() {
                    block = Some((i, j));
                    break 'search;
                }
            }
        }
        if let Some((i, j)) = block {
            // v = e_i + s e_j, vᵀAv = 2 s a_ij + s² a_jj with a_jj ≥ 0
            let aij = a[(i, j)].clone();
            let ajj = a[(j, j)].clone();
            let two_abs = aij.abs() * Scalar::from_integer(2.into());
            let s = if ajj < two_abs {
                -aij.signum()
            } else {
                -(&aij / &ajj)
            };
            return Ok(lift(m, &e, &[(i, Scalar::from_integer(1.into())), (j, s)]));
        }
        let Some(pos) = active.iter().position(|&i| a[(i, i)].is_positive()) else {
            return Ok(Definiteness::Psd { pivots });
        };
        let p = active.remove(pos);
        let pivot = a[(p, p)].clone();
        for &r in &active {
            let factor = &a[(r, p)] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for &c in &active {
                let delta = &factor * &a[(p, c)];
                a[(r, c)] -= delta;
            }
            for c in 0..size {
                let delta = &factor * &e[(p, c)];
                e[(r, c)] -= delta;
            }
        }
        for &r in &active {
            a[(r, p)] = Scalar::zero();
            a[(p, r)] = Scalar::zero();
        }
        pivots.push(pivot);
    }
}

fn lift(m: &Matrix, e: &Matrix, y: &[(usize, Scalar)]) -> Definiteness {
    let size = m.rows();
    let mut v = vec![Scalar::zero(); size];
    for (row, coeff) in y {
        for (c, slot) in v.iter_mut().enumerate() {
            *slot += coeff * &e[(*row, c)];
        }
    }
    let value = m.quadratic_form(&v).expect("square");
    debug_assert!(value.is_negative());
    Definiteness::Indefinite { witness: v, value }
}
