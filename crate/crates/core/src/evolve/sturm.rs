//! Dense univariate polynomials over ℚ, square-free parts and Sturm-sequence
//! real-root isolation.

use num::{Signed, Zero};

use crate::algebra::Scalar;

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.0.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Euclidean division `self = q·other + r`.
    pub fn div_rem(&self, other: &UniPoly) -> (UniPoly, UniPoly) {
        let dv = other.degree().expect("division by zero polynomial");
        let lead = other.leading().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![Scalar::zero(); self.0.len().saturating_sub(dv)];
        while rem.len() > dv && !rem.is_empty() {
            let shift = rem.len() - 1 - dv;
            let factor = rem.last().unwrap() / lead;
            for (i, c) in other.0.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => UniPoly(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same distinct roots, each simple.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Strict upper bound on the modulus of every root (Cauchy).
    pub fn root_bound(&self) -> Scalar {
        let lead = self.leading().expect("nonzero").abs();
        let n = self.0.len() - 1;
        let max = self.0[..n]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Scalar::zero);
        max + Scalar::from_integer(1.into())
    }
}

/// Sturm chain `p₀ = p, p₁ = p', p_{k+1} = −rem(p_{k−1}, p_k)`.
pub struct SturmChain(Vec<UniPoly>);

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = UniPoly::new(r.0.into_iter().map(|c| -c).collect());
        }
        SturmChain(chain)
    }

    fn variations_at(&self, x: &Scalar) -> usize {
        let signs: Vec<i8> = self
            .0
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Scalar, hi: &Scalar) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }
}

/// Disjoint intervals `(lo, hi)`, each holding exactly one real root of the
/// square-free `p`, with rational endpoints that are not roots. Sorted.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<(Scalar, Scalar)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.square_free();
    let chain = SturmChain::new(&sf);
    let bound = sf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = split_point(&sf, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    out
}

/// A point strictly inside `(lo, hi)` near the midpoint that is not a root.
fn split_point(p: &UniPoly, lo: &Scalar, hi: &Scalar) -> Scalar {
    let width = hi - lo;
    let mut denom = 2i64;
    loop {
        for num in [denom / 2, denom / 2 + 1, denom / 2 - 1] {
            if num <= 0 || num >= denom {
                continue;
            }
            let m = lo + &width * Scalar::new(num.into(), denom.into());
            if !p.eval(&m).is_zero() {
                return m;
            }
        }
        denom *= 3;
    }
}
