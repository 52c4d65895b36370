//! Generators of positivity-preserving semigroups from Lévy triplets, and
//! refutation probes for candidate generators.
//!
//! For a triplet `(b, Σ, ν)` the generator is `A = Σ_{1≤|α|≤d} (a_α/α!) ∂^α`
//! with
//!
//! ```text
//! a_{e_i}       = b_i + ∫_{‖x‖₂≥1} x_i dν
//! a_{e_i+e_j}   = σ_ij + ∫ x_i x_j dν
//! a_α           = ∫ x^α dν            (|α| ≥ 3)
//! ```
//!
//! `ν` is a finite nonnegative atomic measure away from the origin, so every
//! integral is a finite sum and the indicator `‖x‖₂ ≥ 1` is decided exactly
//! via `Σ xᵢ² ≥ 1`.

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Matrix, MultiIndex, Scalar, TruncatedSeries};
use crate::error::{Error, Result};
use crate::liegroup;
use crate::measures::AtomicMeasure;
use crate::moments::{check_preserver, psd, PsdVerdict};

/// Drift, covariance and Lévy measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevyTriplet {
    b: Vec<Scalar>,
    sigma: Matrix,
    nu: AtomicMeasure,
}

impl LevyTriplet {
    pub fn new(b: Vec<Scalar>, sigma: Matrix, nu: AtomicMeasure) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(Error::InvalidTriplet("empty drift vector".into()));
        }
        if sigma.rows() != n || sigma.cols() != n {
            return Err(Error::InvalidTriplet(format!(
                "covariance is {}x{}, expected {n}x{n}",
                sigma.rows(),
                sigma.cols()
            )));
        }
        if nu.n() != n {
            return Err(Error::InvalidTriplet(format!(
                "Lévy measure lives in dimension {}, expected {n}",
                nu.n()
            )));
        }
        if !sigma.is_symmetric() {
            return Err(Error::InvalidTriplet("covariance is not symmetric".into()));
        }
        if !psd::decide(&sigma)?.is_psd() {
            return Err(Error::InvalidTriplet(
                "covariance is not positive semidefinite".into(),
            ));
        }
        if !nu.is_nonnegative() {
            return Err(Error::InvalidTriplet(
                "Lévy measure has a negative weight".into(),
            ));
        }
        if nu.atoms().any(|(y, _)| y.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidTriplet(
                "Lévy measure has an atom at the origin".into(),
            ));
        }
        Ok(LevyTriplet { b, sigma, nu })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn drift(&self) -> &[Scalar] {
        &self.b
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn nu(&self) -> &AtomicMeasure {
        &self.nu
    }

    /// `c₁ T₁ + c₂ T₂` componentwise, for `c₁, c₂ ≥ 0`.
    pub fn conic_combination(&self, c1: &Scalar, other: &Self, c2: &Scalar) -> Result<Self> {
        if c1.is_negative() || c2.is_negative() {
            return Err(Error::InvalidArgument(
                "conic weights must be nonnegative".into(),
            ));
        }
        crate::error::check_dims(self.n(), other.n())?;
        let n = self.n();
        let b = self
            .b
            .iter()
            .zip(&other.b)
            .map(|(x, y)| c1 * x + c2 * y)
            .collect();
        let mut sigma = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                sigma[(i, j)] = c1 * &self.sigma[(i, j)] + c2 * &other.sigma[(i, j)];
            }
        }
        let nu = self.nu.scale(c1).add(&other.nu.scale(c2))?;
        LevyTriplet::new(b, sigma, nu)
    }
}

/// Builds the generator of degree `≤ d` for a triplet.
pub fn generator_from_triplet(t: &LevyTriplet, d: u32) -> Result<TruncatedSeries> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "generator degree must be at least 1".into(),
        ));
    }
    let n = t.n();
    let far: Vec<(&Vec<Scalar>, &Scalar)> =
        t.nu.atoms()
            .filter(|(y, _)| y.iter().map(|v| v * v).sum::<Scalar>() >= Scalar::one())
            .collect();
    let mut a = TruncatedSeries::zero(n, d)?;
    for alpha in MultiIndex::all_up_to(n, d).into_iter().skip(1) {
        let mut coeff = match alpha.degree() {
            1 => {
                let i = alpha
                    .entries()
                    .iter()
                    .position(|&e| e == 1)
                    .expect("unit index");
                &t.b[i] + far.iter().map(|(y, w)| *w * &y[i]).sum::<Scalar>()
            }
            2 => {
                let idx: Vec<usize> = alpha
                    .entries()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                    .collect();
                &t.sigma[(idx[0], idx[1])] + t.nu.integrate_monomial(&alpha)
            }
            _ => t.nu.integrate_monomial(&alpha),
        };
        coeff /= Scalar::from_integer(alpha.factorial());
        a.set(alpha, coeff);
    }
    Ok(a)
}

/// `check_preserver(exp(t·A), level)` for every `t`, in input order.
///
/// A violation at any `t` proves `A` generates no positivity-preserving
/// semigroup; all-consistent results are evidence only.
pub fn check_generator_grid(
    a: &TruncatedSeries,
    ts: &[Scalar],
    level: u32,
) -> Result<Vec<PsdVerdict>> {
    if !a.constant_term().is_zero() {
        return Err(Error::NotAlgebraElement(a.constant_term().to_string()));
    }
    if 2 * level > a.d() {
        return Err(Error::InsufficientTruncation {
            needed: 2 * level,
            available: a.d(),
        });
    }
    if let Some(t) = ts.iter().find(|t| t.is_negative()) {
        return Err(Error::InvalidArgument(format!("time {t} is negative")));
    }
    ts.par_iter()
        .map(|t| check_preserver(&liegroup::exp(&a.scale(t))?, level))
        .collect()
}

/// `check_preserver(exp(A_λ), level)` for the univariate dilation family
/// `A_λ = Σ λ^{k−j} a_j ∂^j`, in input order.
pub fn scaled_family_probe(
    a: &TruncatedSeries,
    k: u32,
    lambdas: &[Scalar],
    level: u32,
) -> Result<Vec<PsdVerdict>> {
    if a.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: a.n(),
        });
    }
    if !a.constant_term().is_zero() {
        return Err(Error::NotAlgebraElement(a.constant_term().to_string()));
    }
    lambdas
        .par_iter()
        .map(|lambda| check_preserver(&liegroup::exp(&liegroup::dilate(a, lambda, k)?)?, level))
        .collect()
}
