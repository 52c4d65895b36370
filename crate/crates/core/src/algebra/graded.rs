//! Sparse coefficient arrays indexed by multi-indices of bounded total degree.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num::{One, Signed, Zero};

use super::multi_index::MultiIndex;
use super::scalar::Scalar;
use crate::error::{check_dims, Error, Result};

/// Interpretation of a [`Graded`] coefficient array.
pub trait Kind: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// Value of the `"kind"` field in the JSON form.
    const TAG: &'static str;
}

/// Operator `Σ q_α ∂^α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesKind;

/// Polynomial `Σ c_α x^α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyKind;

/// Truncated real sequence `(s_α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentKind;

impl Kind for SeriesKind {
    const TAG: &'static str = "series";
}
impl Kind for PolyKind {
    const TAG: &'static str = "poly";
}
impl Kind for MomentKind {
    const TAG: &'static str = "moments";
}

/// Coefficients on `{α ∈ ℕⁿ : |α| ≤ d}` with implicit zeros.
///
/// Canonical: no stored zero, every key has length `n` and degree `≤ d`.
/// Two values are equal iff `n`, `d` and every coefficient agree.
#[derive(Clone, PartialEq, Eq)]
pub struct Graded<K: Kind> {
    n: usize,
    d: u32,
    terms: BTreeMap<MultiIndex, Scalar>,
    kind: PhantomData<K>,
}

pub type TruncatedSeries = Graded<SeriesKind>;
pub type Polynomial = Graded<PolyKind>;
pub type MomentSequence = Graded<MomentKind>;

impl<K: Kind> Graded<K> {
    /// The zero element.
    pub fn zero(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "variable count must be at least 1".into(),
            ));
        }
        Ok(Graded {
            n,
            d,
            terms: BTreeMap::new(),
            kind: PhantomData,
        })
    }

    /// Constant `1` (the unit operator `𝟙`, the unit sequence, or the polynomial 1).
    pub fn one(n: usize, d: u32) -> Result<Self> {
        let mut g = Self::zero(n, d)?;
        g.terms.insert(MultiIndex::zero(n), Scalar::one());
        Ok(g)
    }

    /// Builds from `(α, c)` pairs, summing repeated indices.
    pub fn from_terms<I>(n: usize, d: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut g = Self::zero(n, d)?;
        for (alpha, c) in terms {
            check_dims(n, alpha.len())?;
            if alpha.degree() > d {
                return Err(Error::InvalidArgument(format!(
                    "index {alpha} exceeds truncation degree {d}"
                )));
            }
            g.add_to(alpha, c);
        }
        Ok(g)
    }

    /// Univariate constructor from coefficients of degree `0, 1, …`.
    pub fn univariate(coeffs: &[Scalar], d: u32) -> Result<Self> {
        Self::from_terms(
            1,
            d,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (MultiIndex::univariate(k as u32), c.clone())),
        )
    }

    pub fn monomial(n: usize, d: u32, alpha: MultiIndex, c: Scalar) -> Result<Self> {
        Self::from_terms(n, d, [(alpha, c)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation degree.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff_ref(&self, alpha: &MultiIndex) -> Option<&Scalar> {
        self.terms.get(alpha)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&MultiIndex::zero(self.n))
    }

    /// Largest total degree carrying a nonzero coefficient.
    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Dense coefficient list over [`MultiIndex::all_up_to`].
    pub fn dense(&self) -> Vec<Scalar> {
        MultiIndex::all_up_to(self.n, self.d)
            .iter()
            .map(|a| self.coeff(a))
            .collect()
    }

    /// Drops every term of degree above `d` and lowers the bound to `d`.
    /// Raising the bound is rejected because the missing coefficients are unknown.
    pub fn truncate(&self, d: u32) -> Result<Self> {
        if d > self.d {
            return Err(Error::InsufficientTruncation {
                needed: d,
                available: self.d,
            });
        }
        Ok(self.truncated_to(d))
    }

    pub(crate) fn truncated_to(&self, d: u32) -> Self {
        Graded {
            n: self.n,
            d,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() <= d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
            kind: PhantomData,
        }
    }

    /// Coefficientwise sum on `|α| ≤ min(d_a, d_b)`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let d = self.d.min(other.d);
        let mut out = Self::zero(self.n, d)?;
        let zero = Scalar::zero();
        let keys: std::collections::BTreeSet<&MultiIndex> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|a| a.degree() <= d)
            .collect();
        for alpha in keys {
            let a = self.terms.get(alpha).unwrap_or(&zero);
            let b = other.terms.get(alpha).unwrap_or(&zero);
            let c = op(a, b);
            if !c.is_zero() {
                out.terms.insert(alpha.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Graded {
                n: self.n,
                d: self.d,
                terms: BTreeMap::new(),
                kind: PhantomData,
            };
        }
        self.map_coeffs(|_, v| v * c)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, v| -v)
    }

    /// Applies `f(α, c_α)` to every stored coefficient, dropping results that vanish.
    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiIndex, &Scalar) -> Scalar) -> Self {
        Graded {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter_map(|(a, c)| {
                    let v = f(a, c);
                    (!v.is_zero()).then(|| (a.clone(), v))
                })
                .collect(),
            kind: PhantomData,
        }
    }

    /// Reinterprets the same coefficients as another kind.
    pub(crate) fn recast<L: Kind>(self) -> Graded<L> {
        Graded {
            n: self.n,
            d: self.d,
            terms: self.terms,
            kind: PhantomData,
        }
    }

    /// Accumulates `c` into the coefficient at `alpha`; the caller guarantees the index fits.
    pub(crate) fn add_to(&mut self, alpha: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn set(&mut self, alpha: MultiIndex, c: Scalar) {
        if c.is_zero() {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, c);
        }
    }
}

impl Polynomial {
    /// Actual degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.top_degree()
    }

    /// Leading coefficient of a univariate polynomial.
    pub fn leading_coeff(&self) -> Option<Scalar> {
        self.terms.values().next_back().cloned()
    }

    /// Exact value `Σ c_α x^α`.
    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        check_dims(self.n, x.len())?;
        Ok(self
            .terms
            .iter()
            .fold(Scalar::zero(), |acc, (a, c)| acc + c * a.monomial_at(x)))
    }

    /// `q(x) = p(x + y)` by binomial expansion of every monomial.
    pub fn shift(&self, y: &[Scalar]) -> Result<Polynomial> {
        check_dims(self.n, y.len())?;
        let mut out = Polynomial::zero(self.n, self.d)?;
        for (beta, c) in &self.terms {
            for alpha in beta.lower_set() {
                let rest = beta.checked_sub(&alpha).expect("lower set");
                let coeff = c * Scalar::from_integer(beta.binomial(&alpha)) * rest.monomial_at(y);
                out.add_to(alpha, coeff);
            }
        }
        Ok(out)
    }

    /// `p(λx)`, coefficient `c_α ↦ λ^{|α|} c_α`.
    pub fn dilate_argument(&self, lambda: &Scalar) -> Polynomial {
        self.map_coeffs(|a, c| c * super::scalar::pow(lambda, a.degree()))
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}, d={}]{{", K::TAG, self.n, self.d)?;
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if K::TAG == "poly" {
            "x"
        } else if K::TAG == "series" {
            "∂"
        } else {
            "s"
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let unit = a.is_zero();
            if !mag.is_one() || unit {
                write!(f, "{mag}")?;
            }
            if K::TAG == "moments" && !unit {
                write!(f, "·{sym}{a}")?;
                continue;
            }
            for (v, &e) in a.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = if self.n == 1 {
                    sym.to_string()
                } else {
                    format!("{sym}{}", v + 1)
                };
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
