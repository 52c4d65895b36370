//! The commutative group of truncated constant-coefficient operators with unit
//! constant term, its Lie algebra (zero constant term), and their action on
//! polynomials.
//!
//! Every product is truncated at `min(d_a, d_b)` while it is formed, so
//! `exp` and `log` are finite sums: an algebra element raised to the power
//! `d + 1` vanishes at truncation `d`.

use num::{One, Zero};

use crate::algebra::{pow, Matrix, MultiIndex, Polynomial, Scalar, TruncatedSeries};
use crate::error::{check_dims, Error, Result};

fn require_group(a: &TruncatedSeries) -> Result<()> {
    let c = a.constant_term();
    if c.is_one() {
        Ok(())
    } else {
        Err(Error::NotGroupElement(c.to_string()))
    }
}

fn require_algebra(a: &TruncatedSeries) -> Result<()> {
    let c = a.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::NotAlgebraElement(c.to_string()))
    }
}

/// Composition `AB`: the Cauchy product `c_γ = Σ_{α+β=γ} a_α b_β` on `|γ| ≤ min(d_a, d_b)`.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_dims(a.n(), b.n())?;
    let d = a.d().min(b.d());
    let mut out = TruncatedSeries::zero(a.n(), d)?;
    for (alpha, x) in a.terms() {
        let da = alpha.degree();
        if da > d {
            break;
        }
        for (beta, y) in b.terms() {
            if beta.degree() > d - da {
                break;
            }
            out.add_to(alpha.plus(beta), x * y);
        }
    }
    Ok(out)
}

/// Truncated power `A^k` by repeated truncated multiplication.
pub fn power(a: &TruncatedSeries, k: u32) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(a.n(), a.d())?;
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = mul(&acc, a)?;
    }
    Ok(acc)
}

/// The unique `B` with `AB = 𝟙`, solved degree by degree:
/// `b_γ = −Σ_{0≠α⪯γ} a_α b_{γ−α}`.
pub fn inverse(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_group(a)?;
    let n = a.n();
    let mut b = TruncatedSeries::one(n, a.d())?;
    let zero = MultiIndex::zero(n);
    for gamma in MultiIndex::all_up_to(n, a.d()).into_iter().skip(1) {
        let mut acc = Scalar::zero();
        for (alpha, x) in a.terms() {
            if alpha.degree() > gamma.degree() {
                break;
            }
            if *alpha == zero {
                continue;
            }
            if let Some(rest) = gamma.checked_sub(alpha) {
                if let Some(y) = b.coeff_ref(&rest) {
                    acc += x * y;
                }
            }
        }
        b.set(gamma, -acc);
    }
    Ok(b)
}

/// `exp(A) = Σ_{k=0}^{d} A^k / k!` for `A` with zero constant term.
pub fn exp(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_algebra(a)?;
    let mut result = TruncatedSeries::one(a.n(), a.d())?;
    let mut term = result.clone();
    for k in 1..=a.d() {
        term = mul(&term, a)?;
        if term.is_zero() {
            break;
        }
        // A^k / k!
        term = term.scale(&Scalar::new(One::one(), k.into()));
        result = result.add(&term)?;
    }
    Ok(result)
}

/// `log(A) = −Σ_{k=1}^{d} (𝟙 − A)^k / k` for `A` with unit constant term.
pub fn log(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_group(a)?;
    let nil = TruncatedSeries::one(a.n(), a.d())?.sub(a)?;
    let mut result = TruncatedSeries::zero(a.n(), a.d())?;
    let mut p = TruncatedSeries::one(a.n(), a.d())?;
    for k in 1..=a.d() {
        p = mul(&p, &nil)?;
        if p.is_zero() {
            break;
        }
        result = result.sub(&p.scale(&Scalar::new(One::one(), k.into())))?;
    }
    Ok(result)
}

/// Rescaled operator `a_α ↦ λ^{k−|α|} a_α`.
///
/// `k` is the normalization degree and must be at least the top degree of `a`.
/// At `λ = 0` only the degree-`k` part survives.
pub fn dilate(a: &TruncatedSeries, lambda: &Scalar, k: u32) -> Result<TruncatedSeries> {
    if lambda < &Scalar::zero() {
        return Err(Error::InvalidArgument(format!(
            "dilation factor {lambda} is negative"
        )));
    }
    let top = a.top_degree().unwrap_or(0);
    if k < top {
        return Err(Error::InvalidNormalization { k, top });
    }
    Ok(a.map_coeffs(|alpha, c| c * pow(lambda, k - alpha.degree())))
}

/// `Σ q_α ∂^α p`, computed exactly. The operator must be known up to the degree of `p`.
pub fn apply(a: &TruncatedSeries, p: &Polynomial) -> Result<Polynomial> {
    check_dims(a.n(), p.n())?;
    let deg = p.degree().unwrap_or(0);
    if deg > a.d() {
        return Err(Error::InsufficientTruncation {
            needed: deg,
            available: a.d(),
        });
    }
    let mut out = Polynomial::zero(p.n(), p.d())?;
    for (beta, c) in p.terms() {
        for (alpha, q) in a.terms() {
            if alpha.degree() > beta.degree() {
                break;
            }
            if let Some(rest) = beta.checked_sub(alpha) {
                let ff = Scalar::from_integer(beta.falling_factorial(alpha));
                out.add_to(rest, q * c * ff);
            }
        }
    }
    Ok(out)
}

/// Matrix of `p ↦ A p` on polynomials of degree `≤ d` in the graded-lex
/// monomial basis; column `j` holds the coordinates of `A x^{β_j}`.
pub fn matrix_rep(a: &TruncatedSeries, d: u32) -> Result<Matrix> {
    if a.d() < d {
        return Err(Error::InsufficientTruncation {
            needed: d,
            available: a.d(),
        });
    }
    let basis = MultiIndex::all_up_to(a.n(), d);
    let index: std::collections::HashMap<&MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (j, beta) in basis.iter().enumerate() {
        for (alpha, q) in a.terms() {
            if let Some(rest) = beta.checked_sub(alpha) {
                let ff = Scalar::from_integer(beta.falling_factorial(alpha));
                m[(index[&rest], j)] += q * ff;
            }
        }
    }
    Ok(m)
}

/// Coordinates of `p` in the graded-lex monomial basis of degree `≤ d`.
pub fn coordinates(p: &Polynomial, d: u32) -> Vec<Scalar> {
    MultiIndex::all_up_to(p.n(), d)
        .iter()
        .map(|b| p.coeff(b))
        .collect()
}
