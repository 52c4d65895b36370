//! Finite atomic measures on ℚⁿ, possibly signed.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::algebra::{MomentSequence, MultiIndex, Polynomial, Scalar, TruncatedSeries};
use crate::error::{check_dims, Error, Result};
use crate::{liegroup, moments};

pub type Point = Vec<Scalar>;

/// `Σ wᵢ δ_{yᵢ}` with pairwise distinct atoms and nonzero weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    n: usize,
    atoms: BTreeMap<Point, Scalar>,
}

impl AtomicMeasure {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "variable count must be at least 1".into(),
            ));
        }
        Ok(AtomicMeasure {
            n,
            atoms: BTreeMap::new(),
        })
    }

    /// Merges repeated atoms and drops zero weights.
    pub fn new<I>(n: usize, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Scalar)>,
    {
        let mut m = Self::zero(n)?;
        for (y, w) in atoms {
            check_dims(n, y.len())?;
            m.add_atom(y, w);
        }
        Ok(m)
    }

    pub fn dirac(y: Point) -> Result<Self> {
        Self::new(y.len(), [(y, Scalar::one())])
    }

    fn add_atom(&mut self, y: Point, w: Scalar) {
        if w.is_zero() {
            return;
        }
        match self.atoms.entry(y) {
            Entry::Vacant(e) => {
                e.insert(w);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += w;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Atoms in lexicographic point order.
    pub fn atoms(&self) -> impl Iterator<Item = (&Point, &Scalar)> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.values().all(|w| !w.is_negative())
    }

    pub fn total_mass(&self) -> Scalar {
        self.atoms.values().sum()
    }

    pub fn weight_at(&self, y: &[Scalar]) -> Scalar {
        self.atoms.get(y).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AtomicMeasure::new(self.n, self.atoms.iter().map(|(y, w)| (y.clone(), w * c)))
            .expect("same dimension")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        AtomicMeasure::new(
            self.n,
            self.atoms
                .iter()
                .chain(other.atoms.iter())
                .map(|(y, w)| (y.clone(), w.clone())),
        )
    }

    /// `∫ x^α dμ`.
    pub fn integrate_monomial(&self, alpha: &MultiIndex) -> Scalar {
        self.atoms
            .iter()
            .map(|(y, w)| w * alpha.monomial_at(y))
            .sum()
    }
}

/// Truncated moments `s_α = Σᵢ wᵢ yᵢ^α`, `|α| ≤ d`.
pub fn measure_moments(m: &AtomicMeasure, d: u32) -> MomentSequence {
    MomentSequence::from_terms(
        m.n,
        d,
        MultiIndex::all_up_to(m.n, d).into_iter().map(|a| {
            let v = m.integrate_monomial(&a);
            (a, v)
        }),
    )
    .expect("indices generated in range")
}

/// `μ * ν`: atoms `x + y` with weights `w_x w_y`, merged on collision.
pub fn convolve(a: &AtomicMeasure, b: &AtomicMeasure) -> Result<AtomicMeasure> {
    check_dims(a.n, b.n)?;
    let mut out = AtomicMeasure::zero(a.n)?;
    for (x, wx) in &a.atoms {
        for (y, wy) in &b.atoms {
            let z = x.iter().zip(y).map(|(p, q)| p + q).collect();
            out.add_atom(z, wx * wy);
        }
    }
    Ok(out)
}

/// `μ^{*k}`, with `μ^{*0} = δ₀`.
pub fn power_convolve(a: &AtomicMeasure, k: i64) -> Result<AtomicMeasure> {
    if k < 0 {
        return Err(Error::NegativePower(k));
    }
    let mut acc = AtomicMeasure::dirac(vec![Scalar::zero(); a.n])?;
    let mut base = a.clone();
    let mut e = k as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = convolve(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = convolve(&base, &base)?;
        }
    }
    Ok(acc)
}

/// `(Tp)(x) = ∫ p(x + y) dμ(y) = Σᵢ wᵢ p(x + yᵢ)`.
pub fn apply_measure(m: &AtomicMeasure, p: &Polynomial) -> Result<Polynomial> {
    check_dims(m.n, p.n())?;
    let mut out = Polynomial::zero(p.n(), p.d())?;
    for (y, w) in &m.atoms {
        out = out.add(&p.shift(y)?.scale(w))?;
    }
    Ok(out)
}

/// Moments of the centred Gaussian with covariance `sigma` (row-major, `n×n`),
/// `s = D⁻¹ exp(½ Σ σᵢⱼ ∂ᵢ∂ⱼ)`.
pub fn gaussian_moments(sigma: &crate::algebra::Matrix, d: u32) -> Result<MomentSequence> {
    if !sigma.is_square() {
        return Err(Error::InvalidArgument("covariance must be square".into()));
    }
    if !sigma.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = sigma.rows();
    let half = Scalar::new(1.into(), 2.into());
    let mut gen = TruncatedSeries::zero(n, d)?;
    if d >= 2 {
        for i in 0..n {
            for j in 0..n {
                let alpha = MultiIndex::unit(n, i).plus(&MultiIndex::unit(n, j));
                gen.add_to(alpha, &sigma[(i, j)] * &half);
            }
        }
    }
    Ok(moments::d_inv(&liegroup::exp(&gen)?))
}

/// Moments of `Σ_k e^{−λ} λ^k / k! · δ_{k c}`, the Poisson(λ) law on the lattice `ℕ c`:
/// `s = D⁻¹ exp(λ (D(moments δ_c) − 𝟙))`.
pub fn poisson_moments(lambda: &Scalar, c: &[Scalar], d: u32) -> Result<MomentSequence> {
    let jump = measure_moments(&AtomicMeasure::dirac(c.to_vec())?, d);
    let gen = moments::d_map(&jump)
        .sub(&TruncatedSeries::one(c.len(), d)?)?
        .scale(lambda);
    Ok(moments::d_inv(&liegroup::exp(&gen)?))
}
