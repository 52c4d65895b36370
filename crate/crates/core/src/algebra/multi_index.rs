use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One};

use super::scalar::{factorial, Scalar};

/// Exponent vector `(α₁, …, αₙ)`.
///
/// Ordered graded-lexicographically: by total degree first, then
/// lexicographically with larger leading exponents first, so for two
/// variables the order is `1, x₁, x₂, x₁², x₁x₂, x₂², …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn univariate(k: u32) -> Self {
        MultiIndex(vec![k])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Componentwise `self ⪰ other`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !self.dominates(other) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α! = α₁!⋯αₙ!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// `∏ αᵢ! / (αᵢ − βᵢ)!`, the constant produced by `∂^β x^α`.
    /// Zero unless `self ⪰ beta`.
    pub fn falling_factorial(&self, beta: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&beta.0) {
            if b > a {
                return BigInt::from(0);
            }
            for j in (a - b + 1)..=a {
                acc *= BigInt::from(j);
            }
        }
        acc
    }

    /// Multinomial-style binomial `C(α, β) = ∏ C(αᵢ, βᵢ)`.
    pub fn binomial(&self, beta: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&beta.0)
            .map(|(&a, &b)| super::scalar::binomial(a, b))
            .product()
    }

    /// `x^α` at a point.
    pub fn monomial_at(&self, x: &[Scalar]) -> Scalar {
        self.0.iter().zip(x).fold(Scalar::one(), |acc, (&a, xi)| {
            acc * super::scalar::pow(xi, a)
        })
    }

    /// All indices `β ⪯ self`.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(self.len()))];
        for &a in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for prefix in &out {
                for b in 0..=a {
                    let mut v = prefix.0.clone();
                    v.push(b);
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Indices of total degree exactly `m` in `n` variables, in canonical order.
    pub fn of_degree(n: usize, m: u32) -> Vec<MultiIndex> {
        fn fill(n: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(m);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=m).rev() {
                prefix.push(first);
                fill(n, m - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        fill(n, m, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Indices with `|α| ≤ d` in canonical graded-lex order; there are `C(n+d, n)` of them.
    pub fn all_up_to(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|m| Self::of_degree(n, m)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
