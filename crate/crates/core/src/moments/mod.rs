//! Moment sequences, their correspondence with operators, and exact
//! moment-matrix certificates.
//!
//! The correspondence is `q_α = s_α / α!`: an operator with representing
//! measure `μ` has `s_α = ∫ y^α dμ(y)`, and composition of operators is
//! binomial convolution of sequences. A sequence whose moment matrix fails to
//! be PSD at some level is not a moment sequence, which proves that the
//! operator is not a positivity preserver. A passing check is only evidence.

pub mod psd;

use num::Zero;

use crate::algebra::{Matrix, MomentSequence, MultiIndex, Scalar, TruncatedSeries};
use crate::error::{check_dims, Error, Result};

pub use psd::Definiteness;

/// Operator `Σ (s_α / α!) ∂^α` of a sequence.
pub fn d_map(s: &MomentSequence) -> TruncatedSeries {
    s.map_coeffs(|a, v| v / Scalar::from_integer(a.factorial()))
        .recast()
}

/// Sequence `s_α = α! q_α` of an operator.
pub fn d_inv(t: &TruncatedSeries) -> MomentSequence {
    t.map_coeffs(|a, v| v * Scalar::from_integer(a.factorial()))
        .recast()
}

/// `(s*t)_γ = Σ_{α+β=γ} C(γ, α) s_α t_β` on `|γ| ≤ min(d_s, d_t)`.
pub fn seq_convolve(s: &MomentSequence, t: &MomentSequence) -> Result<MomentSequence> {
    check_dims(s.n(), t.n())?;
    let d = s.d().min(t.d());
    let mut out = MomentSequence::zero(s.n(), d)?;
    for (alpha, x) in s.terms() {
        let da = alpha.degree();
        if da > d {
            break;
        }
        for (beta, y) in t.terms() {
            if beta.degree() > d - da {
                break;
            }
            let gamma = alpha.plus(beta);
            let c = Scalar::from_integer(gamma.binomial(alpha));
            out.add_to(gamma, c * x * y);
        }
    }
    Ok(out)
}

/// Hankel-type matrix `M[α, β] = s_{α+β}` over `|α|, |β| ≤ level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix {
    level: u32,
    basis: Vec<MultiIndex>,
    entries: Matrix,
}

impl MomentMatrix {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.basis.iter().position(|b| b == alpha)
    }
}

pub fn moment_matrix(s: &MomentSequence, level: u32) -> Result<MomentMatrix> {
    if 2 * level > s.d() {
        return Err(Error::InsufficientTruncation {
            needed: 2 * level,
            available: s.d(),
        });
    }
    let basis = MultiIndex::all_up_to(s.n(), level);
    let mut entries = Matrix::zeros(basis.len(), basis.len());
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let v = s.coeff(&a.plus(b));
            if !v.is_zero() {
                entries[(j, i)] = v.clone();
                entries[(i, j)] = v;
            }
        }
    }
    Ok(MomentMatrix {
        level,
        basis,
        entries,
    })
}

/// Verdict of a moment-matrix check at a given level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    /// `witnessᵀ M witness < 0`: the sequence is not a moment sequence.
    ViolatedAt { level: u32, witness: Vec<Scalar> },
    /// The moment matrix is PSD. Necessary only.
    ConsistentUpTo { level: u32 },
}

impl PsdVerdict {
    pub fn level(&self) -> u32 {
        match self {
            PsdVerdict::ViolatedAt { level, .. } | PsdVerdict::ConsistentUpTo { level } => *level,
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, PsdVerdict::ViolatedAt { .. })
    }

    pub fn witness(&self) -> Option<&[Scalar]> {
        match self {
            PsdVerdict::ViolatedAt { witness, .. } => Some(witness),
            PsdVerdict::ConsistentUpTo { .. } => None,
        }
    }
}

pub fn psd_check(m: &MomentMatrix) -> Result<PsdVerdict> {
    Ok(match psd::decide(&m.entries)? {
        Definiteness::Psd { .. } => PsdVerdict::ConsistentUpTo { level: m.level },
        Definiteness::Indefinite { witness, .. } => PsdVerdict::ViolatedAt {
            level: m.level,
            witness,
        },
    })
}

/// Moment-matrix test of the sequence `α! q_α` of `t` at `level`.
/// A violation proves `t` is not a positivity preserver.
pub fn check_preserver(t: &TruncatedSeries, level: u32) -> Result<PsdVerdict> {
    psd_check(&moment_matrix(&d_inv(t), level)?)
}
