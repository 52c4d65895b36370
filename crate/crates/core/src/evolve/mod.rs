//! Exact solutions `p_t = exp(tA) p₀` of `∂ₜ p = A p`, and nonnegativity checks
//! for the evolved polynomials.

pub mod sturm;

use num::{Signed, Zero};

use crate::algebra::{MultiIndex, Polynomial, Scalar, TruncatedSeries};
use crate::error::{check_dims, Error, Result};
use crate::liegroup;

use sturm::{isolate_real_roots, UniPoly};

/// `exp(t·A) p₀`. Only the part of `A` up to `deg p₀` matters.
pub fn evolve(a: &TruncatedSeries, p0: &Polynomial, t: &Scalar) -> Result<Polynomial> {
    check_dims(a.n(), p0.n())?;
    if !a.constant_term().is_zero() {
        return Err(Error::NotAlgebraElement(a.constant_term().to_string()));
    }
    let deg = p0.degree().unwrap_or(0);
    let a = a.truncate(deg)?;
    liegroup::apply(&liegroup::exp(&a.scale(t))?, p0)
}

/// `evolve` at each time of a nondecreasing, nonnegative list.
pub fn trajectory(a: &TruncatedSeries, p0: &Polynomial, ts: &[Scalar]) -> Result<Vec<Polynomial>> {
    if let Some(t) = ts.iter().find(|t| t.is_negative()) {
        return Err(Error::InvalidArgument(format!("time {t} is negative")));
    }
    if ts.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("times must be nondecreasing".into()));
    }
    use rayon::prelude::*;
    ts.par_iter().map(|t| evolve(a, p0, t)).collect()
}

/// Column label of a monomial: `1`, `x^2` for one variable, `x1*x2^3` otherwise.
pub fn monomial_name(alpha: &MultiIndex) -> String {
    if alpha.is_zero() {
        return "1".into();
    }
    let n = alpha.len();
    alpha
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let var = if n == 1 {
                "x".to_string()
            } else {
                format!("x{}", i + 1)
            };
            if e == 1 {
                var
            } else {
                format!("{var}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Header and rows of the trajectory table: `t`, then every coefficient in
/// graded-lex order up to the bound of the polynomials.
pub fn trajectory_table(ts: &[Scalar], polys: &[Polynomial]) -> (Vec<String>, Vec<Vec<String>>) {
    let Some(first) = polys.first() else {
        return (vec!["t".into()], Vec::new());
    };
    let basis = MultiIndex::all_up_to(first.n(), first.d());
    let header = std::iter::once("t".to_string())
        .chain(basis.iter().map(monomial_name))
        .collect();
    let rows = ts
        .iter()
        .zip(polys)
        .map(|(t, p)| {
            std::iter::once(t.to_string())
                .chain(basis.iter().map(|b| p.coeff(b).to_string()))
                .collect()
        })
        .collect();
    (header, rows)
}

/// Why a univariate polynomial is or is not nonnegative on ℝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegReason {
    ZeroPolynomial,
    /// No real root of odd multiplicity and positive leading coefficient.
    NoSignChange {
        distinct_real_roots: usize,
    },
    OddDegree,
    NegativeLeadingCoefficient,
    /// `p(lo)` and `p(hi)` have opposite signs around an isolated root.
    SignChange {
        lo: Scalar,
        hi: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegCertificate {
    pub nonnegative: bool,
    pub reason: NonnegReason,
    /// A point with `p(x) < 0` when `nonnegative` is false.
    pub witness: Option<Scalar>,
}

/// Exact decision of `p ≥ 0` on ℝ for univariate `p`.
///
/// The real roots of the square-free part are isolated with Sturm sequences;
/// every open region between consecutive roots contains an interval endpoint,
/// so `p` is nonnegative iff it is nonnegative at all endpoints (or at `0` when
/// there is no real root).
pub fn nonneg_univariate(p: &Polynomial) -> Result<NonnegCertificate> {
    check_dims(1, p.n())?;
    let up = UniPoly::new(
        (0..=p.degree().unwrap_or(0))
            .map(|k| p.coeff(&MultiIndex::univariate(k)))
            .collect(),
    );
    let Some(deg) = up.degree() else {
        return Ok(NonnegCertificate {
            nonnegative: true,
            reason: NonnegReason::ZeroPolynomial,
            witness: None,
        });
    };
    let roots = isolate_real_roots(&up);
    let mut samples: Vec<Scalar> = roots
        .iter()
        .flat_map(|(lo, hi)| [lo.clone(), hi.clone()])
        .collect();
    if samples.is_empty() {
        samples.push(Scalar::zero());
    }
    let witness = samples.iter().find(|x| up.eval(x).is_negative()).cloned();
    let Some(witness) = witness else {
        return Ok(NonnegCertificate {
            nonnegative: true,
            reason: NonnegReason::NoSignChange {
                distinct_real_roots: roots.len(),
            },
            witness: None,
        });
    };
    let reason = if deg % 2 == 1 {
        NonnegReason::OddDegree
    } else if up.leading().is_some_and(Signed::is_negative) {
        NonnegReason::NegativeLeadingCoefficient
    } else {
        let (lo, hi) = roots
            .iter()
            .find(|(lo, hi)| up.eval(lo).is_negative() != up.eval(hi).is_negative())
            .cloned()
            .expect("negative value of a positive-leading even polynomial needs a sign change");
        NonnegReason::SignChange { lo, hi }
    };
    Ok(NonnegCertificate {
        nonnegative: false,
        reason,
        witness: Some(witness),
    })
}

/// Axis-aligned box `∏ [loᵢ, hiᵢ]`.
pub type SampleBox = Vec<(Scalar, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridVerdict {
    /// No negative value on the grid. Necessary only.
    NoViolationFound,
    Violated {
        point: Vec<Scalar>,
        value: Scalar,
    },
}

/// Evaluates `p` on the uniform rational grid with `per_axis` points per side.
pub fn nonneg_grid(p: &Polynomial, bounds: &SampleBox, per_axis: u32) -> Result<GridVerdict> {
    check_dims(p.n(), bounds.len())?;
    if per_axis < 2 {
        return Err(Error::InvalidArgument(
            "at least 2 grid points per axis".into(),
        ));
    }
    if bounds.is_empty() || bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::EmptyBox);
    }
    let axes: Vec<Vec<Scalar>> = bounds
        .iter()
        .map(|(lo, hi)| {
            let step = (hi - lo) / Scalar::from_integer((per_axis - 1).into());
            (0..per_axis)
                .map(|i| lo + &step * Scalar::from_integer(i.into()))
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; axes.len()];
    loop {
        let point: Vec<Scalar> = idx
            .iter()
            .zip(&axes)
            .map(|(&i, ax)| ax[i].clone())
            .collect();
        let value = p.eval(&point)?;
        if value.is_negative() {
            return Ok(GridVerdict::Violated { point, value });
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(GridVerdict::NoViolationFound);
            }
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
