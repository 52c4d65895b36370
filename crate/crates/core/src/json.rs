//! JSON wire formats.
//!
//! Rationals are canonical strings (`"3"`, `"-1/2"`); terms appear in
//! graded-lex order and object keys in a fixed order, so equal values
//! serialize to identical bytes.
//!
//! ```text
//! series/poly/moments  {"kind": "series", "n": 1, "d": 4, "terms": [{"alpha": [2], "coeff": "1/2"}]}
//! measure              {"n": 1, "atoms": [["1"], ["-2"]], "weights": ["1/2", "1/2"]}
//! triplet              {"b": ["0"], "sigma": [["2"]], "nu": <measure>}
//! verdict              {"verdict": "violated", "level": 2, "witness": ["0", "1", "-1"]}
//! matrix               [["1", "0"], ["0", "1"]]
//! ```

use std::collections::BTreeSet;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_scalar, parse_scalar, Graded, Kind, Matrix, MultiIndex, Scalar};
use crate::error::{Error, Result};
use crate::evolve::{GridVerdict, NonnegCertificate, NonnegReason};
use crate::levy::LevyTriplet;
use crate::measures::AtomicMeasure;
use crate::moments::PsdVerdict;

/// A value with a JSON representation.
pub trait Wire: Sized {
    type Repr: Serialize + DeserializeOwned;

    fn to_repr(&self) -> Self::Repr;

    /// Structural problems map to [`Error::Parse`]; semantic invariant
    /// violations (e.g. a non-PSD covariance) keep their own error kind.
    fn from_repr(repr: Self::Repr) -> Result<Self>;
}

/// Pretty-printed JSON followed by a newline.
pub fn to_string<T: Wire>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(&value.to_repr()).expect("serializable");
    s.push('\n');
    s
}

pub fn from_str<T: Wire>(text: &str) -> Result<T> {
    let repr: T::Repr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    T::from_repr(repr)
}

fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermRepr {
    pub alpha: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GradedRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub n: usize,
    pub d: u32,
    pub terms: Vec<TermRepr>,
}

impl<K: Kind> Wire for Graded<K> {
    type Repr = GradedRepr;

    fn to_repr(&self) -> GradedRepr {
        GradedRepr {
            kind: Some(K::TAG.to_string()),
            n: self.n(),
            d: self.d(),
            terms: self
                .terms()
                .map(|(a, c)| TermRepr {
                    alpha: a.entries().to_vec(),
                    coeff: format_scalar(c),
                })
                .collect(),
        }
    }

    fn from_repr(repr: GradedRepr) -> Result<Self> {
        if let Some(kind) = &repr.kind {
            if kind != K::TAG {
                return Err(Error::Parse(format!(
                    "expected kind {:?}, found {kind:?}",
                    K::TAG
                )));
            }
        }
        if repr.n == 0 {
            return Err(Error::Parse("n must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let alpha = MultiIndex::new(t.alpha);
            if alpha.len() != repr.n {
                return Err(Error::Parse(format!(
                    "index {alpha} has length {}, expected {}",
                    alpha.len(),
                    repr.n
                )));
            }
            if alpha.degree() > repr.d {
                return Err(Error::Parse(format!(
                    "index {alpha} exceeds degree {}",
                    repr.d
                )));
            }
            if !seen.insert(alpha.clone()) {
                return Err(Error::Parse(format!("duplicate index {alpha}")));
            }
            terms.push((alpha, parse_scalar(&t.coeff)?));
        }
        Graded::from_terms(repr.n, repr.d, terms)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MeasureRepr {
    pub n: usize,
    pub atoms: Vec<Vec<String>>,
    pub weights: Vec<String>,
}

impl Wire for AtomicMeasure {
    type Repr = MeasureRepr;

    fn to_repr(&self) -> MeasureRepr {
        let (atoms, weights) = self
            .atoms()
            .map(|(y, w)| (scalars(y), format_scalar(w)))
            .unzip();
        MeasureRepr {
            n: self.n(),
            atoms,
            weights,
        }
    }

    fn from_repr(repr: MeasureRepr) -> Result<Self> {
        if repr.atoms.len() != repr.weights.len() {
            return Err(Error::Parse(format!(
                "{} atoms but {} weights",
                repr.atoms.len(),
                repr.weights.len()
            )));
        }
        if repr.n == 0 {
            return Err(Error::Parse("n must be at least 1".into()));
        }
        let mut atoms = Vec::with_capacity(repr.atoms.len());
        for (y, w) in repr.atoms.iter().zip(&repr.weights) {
            if y.len() != repr.n {
                return Err(Error::Parse(format!(
                    "atom of length {}, expected {}",
                    y.len(),
                    repr.n
                )));
            }
            atoms.push((parse_all(y)?, parse_scalar(w)?));
        }
        AtomicMeasure::new(repr.n, atoms)
    }
}

impl Wire for Matrix {
    type Repr = Vec<Vec<String>>;

    fn to_repr(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| scalars(r)).collect()
    }

    fn from_repr(repr: Vec<Vec<String>>) -> Result<Self> {
        Matrix::from_rows(repr.iter().map(|r| parse_all(r)).collect::<Result<_>>()?)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TripletRepr {
    pub b: Vec<String>,
    pub sigma: Vec<Vec<String>>,
    pub nu: MeasureRepr,
}

impl Wire for LevyTriplet {
    type Repr = TripletRepr;

    fn to_repr(&self) -> TripletRepr {
        TripletRepr {
            b: scalars(self.drift()),
            sigma: self.sigma().to_repr(),
            nu: self.nu().to_repr(),
        }
    }

    fn from_repr(repr: TripletRepr) -> Result<Self> {
        let b = parse_all(&repr.b)?;
        let sigma = Matrix::from_repr(repr.sigma)?;
        let nu = AtomicMeasure::from_repr(repr.nu)?;
        LevyTriplet::new(b, sigma, nu)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VerdictRepr {
    pub verdict: String,
    pub level: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl Wire for PsdVerdict {
    type Repr = VerdictRepr;

    fn to_repr(&self) -> VerdictRepr {
        match self {
            PsdVerdict::ViolatedAt { level, witness } => VerdictRepr {
                verdict: "violated".into(),
                level: *level,
                witness: Some(scalars(witness)),
            },
            PsdVerdict::ConsistentUpTo { level } => VerdictRepr {
                verdict: "consistent".into(),
                level: *level,
                witness: None,
            },
        }
    }

    fn from_repr(repr: VerdictRepr) -> Result<Self> {
        match (repr.verdict.as_str(), repr.witness) {
            ("violated", Some(w)) => Ok(PsdVerdict::ViolatedAt {
                level: repr.level,
                witness: parse_all(&w)?,
            }),
            ("consistent", None) => Ok(PsdVerdict::ConsistentUpTo { level: repr.level }),
            (v, _) => Err(Error::Parse(format!(
                "invalid verdict {v:?} or witness presence"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NonnegRepr {
    pub nonnegative: bool,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_roots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Wire for NonnegCertificate {
    type Repr = NonnegRepr;

    fn to_repr(&self) -> NonnegRepr {
        let mut repr = NonnegRepr {
            nonnegative: self.nonnegative,
            reason: String::new(),
            real_roots: None,
            interval: None,
            witness: self.witness.as_ref().map(|w| vec![format_scalar(w)]),
            value: None,
        };
        repr.reason = match &self.reason {
            NonnegReason::ZeroPolynomial => "zero_polynomial".into(),
            NonnegReason::NoSignChange {
                distinct_real_roots,
            } => {
                repr.real_roots = Some(*distinct_real_roots);
                "no_sign_change".into()
            }
            NonnegReason::OddDegree => "odd_degree".into(),
            NonnegReason::NegativeLeadingCoefficient => "negative_leading_coefficient".into(),
            NonnegReason::SignChange { lo, hi } => {
                repr.interval = Some([format_scalar(lo), format_scalar(hi)]);
                "sign_change".into()
            }
        };
        repr
    }

    fn from_repr(repr: NonnegRepr) -> Result<Self> {
        let reason = match repr.reason.as_str() {
            "zero_polynomial" => NonnegReason::ZeroPolynomial,
            "no_sign_change" => NonnegReason::NoSignChange {
                distinct_real_roots: repr.real_roots.unwrap_or(0),
            },
            "odd_degree" => NonnegReason::OddDegree,
            "negative_leading_coefficient" => NonnegReason::NegativeLeadingCoefficient,
            "sign_change" => {
                let [lo, hi] = repr
                    .interval
                    .ok_or_else(|| Error::Parse("sign_change without interval".into()))?;
                NonnegReason::SignChange {
                    lo: parse_scalar(&lo)?,
                    hi: parse_scalar(&hi)?,
                }
            }
            other => return Err(Error::Parse(format!("unknown reason {other:?}"))),
        };
        let witness = match repr.witness {
            Some(w) if w.len() == 1 => Some(parse_scalar(&w[0])?),
            Some(_) => {
                return Err(Error::Parse(
                    "univariate witness must have one coordinate".into(),
                ))
            }
            None => None,
        };
        Ok(NonnegCertificate {
            nonnegative: repr.nonnegative,
            reason,
            witness,
        })
    }
}

impl Wire for GridVerdict {
    type Repr = NonnegRepr;

    fn to_repr(&self) -> NonnegRepr {
        match self {
            GridVerdict::NoViolationFound => NonnegRepr {
                nonnegative: true,
                reason: "no_violation_found".into(),
                real_roots: None,
                interval: None,
                witness: None,
                value: None,
            },
            GridVerdict::Violated { point, value } => NonnegRepr {
                nonnegative: false,
                reason: "negative_grid_value".into(),
                real_roots: None,
                interval: None,
                witness: Some(scalars(point)),
                value: Some(format_scalar(value)),
            },
        }
    }

    fn from_repr(repr: NonnegRepr) -> Result<Self> {
        match (repr.reason.as_str(), repr.witness, repr.value) {
            ("no_violation_found", None, None) => Ok(GridVerdict::NoViolationFound),
            ("negative_grid_value", Some(p), Some(v)) => Ok(GridVerdict::Violated {
                point: parse_all(&p)?,
                value: parse_scalar(&v)?,
            }),
            (r, _, _) => Err(Error::Parse(format!("invalid grid verdict {r:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio, MomentSequence, Polynomial, TruncatedSeries};

    #[test]
    fn series_layout_is_canonical() {
        let s = TruncatedSeries::univariate(&[int(1), int(0), ratio(-1, 2)], 4).unwrap();
        let text = to_string(&s);
        let expected = r#"{
  "kind": "series",
  "n": 1,
  "d": 4,
  "terms": [
    {
      "alpha": [
        0
      ],
      "coeff": "1"
    },
    {
      "alpha": [
        2
      ],
      "coeff": "-1/2"
    }
  ]
}
"#;
        assert_eq!(text, expected);
        assert_eq!(from_str::<TruncatedSeries>(&text).unwrap(), s);
    }

    #[test]
    fn kind_is_checked_but_optional() {
        let s = r#"{"n":1,"d":2,"terms":[{"alpha":[1],"coeff":"6/4"}]}"#;
        let p: Polynomial = from_str(s).unwrap();
        assert_eq!(p.coeff(&MultiIndex::univariate(1)), ratio(3, 2));
        let m = r#"{"kind":"moments","n":1,"d":2,"terms":[]}"#;
        assert!(from_str::<TruncatedSeries>(m).unwrap_err().is_parse());
        assert!(from_str::<MomentSequence>(m).unwrap().is_zero());
    }

    #[test]
    fn malformed_graded_inputs() {
        for bad in [
            r#"{"n":1,"d":2,"terms":[{"alpha":[3],"coeff":"1"}]}"#,
            r#"{"n":2,"d":2,"terms":[{"alpha":[1],"coeff":"1"}]}"#,
            r#"{"n":1,"d":2,"terms":[{"alpha":[1],"coeff":"x"}]}"#,
            r#"{"n":1,"d":2,"terms":[{"alpha":[1],"coeff":"1"},{"alpha":[1],"coeff":"2"}]}"#,
            r#"{"n":0,"d":2,"terms":[]}"#,
            r#"{"n":1,"d":2}"#,
            r#"{"n":1,"d":2,"terms":[],"extra":1}"#,
            "not json",
        ] {
            assert!(
                from_str::<TruncatedSeries>(bad).unwrap_err().is_parse(),
                "{bad}"
            );
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let s = r#"{"n":1,"d":2,"terms":[{"alpha":[1],"coeff":"0"}]}"#;
        let t: TruncatedSeries = from_str(s).unwrap();
        assert!(t.is_zero());
        assert!(!to_string(&t).contains("alpha"));
    }

    #[test]
    fn measure_roundtrip_and_merge() {
        let text = r#"{"n":1,"atoms":[["1"],["1"],["-2"]],"weights":["1/4","1/4","1/2"]}"#;
        let m: AtomicMeasure = from_str(text).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(from_str::<AtomicMeasure>(&to_string(&m)).unwrap(), m);
        assert!(from_str::<AtomicMeasure>(r#"{"n":1,"atoms":[["1"]],"weights":[]}"#).is_err());
        assert!(from_str::<AtomicMeasure>(r#"{"n":2,"atoms":[["1"]],"weights":["1"]}"#).is_err());
    }

    #[test]
    fn triplet_semantic_errors_are_not_parse_errors() {
        let bad = r#"{"b":["0"],"sigma":[["-1"]],"nu":{"n":1,"atoms":[],"weights":[]}}"#;
        assert!(matches!(
            from_str::<LevyTriplet>(bad),
            Err(Error::InvalidTriplet(_))
        ));
        let ok = r#"{"b":["0"],"sigma":[["2"]],"nu":{"n":1,"atoms":[["1"]],"weights":["3"]}}"#;
        let t: LevyTriplet = from_str(ok).unwrap();
        assert_eq!(from_str::<LevyTriplet>(&to_string(&t)).unwrap(), t);
    }

    #[test]
    fn verdict_forms() {
        let v = PsdVerdict::ViolatedAt {
            level: 2,
            witness: vec![int(0), int(1), int(-1)],
        };
        let compact = serde_json::to_string(&v.to_repr()).unwrap();
        assert_eq!(
            compact,
            r#"{"verdict":"violated","level":2,"witness":["0","1","-1"]}"#
        );
        let c = PsdVerdict::ConsistentUpTo { level: 3 };
        assert_eq!(
            serde_json::to_string(&c.to_repr()).unwrap(),
            r#"{"verdict":"consistent","level":3}"#
        );
        assert_eq!(from_str::<PsdVerdict>(&to_string(&v)).unwrap(), v);
        assert!(
            from_str::<PsdVerdict>(r#"{"verdict":"consistent","level":1,"witness":[]}"#).is_err()
        );
    }

    #[test]
    fn matrix_rows() {
        let m =
            Matrix::from_rows(vec![vec![int(1), ratio(1, 2)], vec![ratio(1, 2), int(0)]]).unwrap();
        assert_eq!(
            serde_json::to_string(&m.to_repr()).unwrap(),
            r#"[["1","1/2"],["1/2","0"]]"#
        );
        assert_eq!(from_str::<Matrix>(&to_string(&m)).unwrap(), m);
    }
}
