//! Exact rational scalars.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational in canonical reduced form.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"` exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Scalar::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => BigInt::from_str(w).map_err(|_| bad())?,
        };
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = whole.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Scalar::new(num, scale));
    }
    BigInt::from_str(s)
        .map(Scalar::from_integer)
        .map_err(|_| bad())
}

/// Canonical text form: `"3"`, `"-1/2"`.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow(x: &Scalar, e: u32) -> Scalar {
    num::pow(x.clone(), e as usize)
}

/// Lossy conversion for diagnostics.
pub fn to_f64(x: &Scalar) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
