//! Machine-readable reports shared by the runner and the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::interval::{IntervalVerdict, WeightFn};
use crate::semihilbert::DouglasReport;

pub const REPORT_VERSION: u32 = 1;

/// Residuals that may be infinite: finite values are plain numbers, the rest
/// are the strings `"inf"`, `"-inf"` and `"nan"`.
pub mod residual_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number, \"inf\", \"-inf\" or \"nan\", got \"{other}\""
                ))),
            },
        }
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super")] f64);

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

/// Something worth recording that is not a failure, such as a split between
/// matrix and criterion verdicts for a weight with zeros.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl Finding {
    pub fn new(kind: &str, message: impl Into<String>, data: serde_json::Value) -> Self {
        Self {
            kind: kind.to_string(),
            message: message.into(),
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub tol: f64,
    /// Wall-clock time; omitted unless requested so that reports stay
    /// byte-for-byte reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Meta {
    pub fn new(tol: f64) -> Self {
        Self {
            tool: "compop".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            tol,
            timing_ms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Matrix,
    Formula,
    #[default]
    Both,
}

impl Mode {
    pub fn matrix(self) -> bool {
        self != Mode::Formula
    }

    pub fn formula(self) -> bool {
        self != Mode::Matrix
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "matrix" => Ok(Mode::Matrix),
            "formula" => Ok(Mode::Formula),
            "both" => Ok(Mode::Both),
            other => Err(crate::Error::Input(format!(
                "mode: expected matrix, formula or both, got '{other}'"
            ))),
        }
    }
}

/// One requested property of a scenario.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub property: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_verdict: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula_verdict: Option<bool>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "residual_serde::option"
    )]
    pub matrix_residual: Option<f64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "residual_serde::option"
    )]
    pub formula_residual: Option<f64>,
    pub witness: String,
    /// Present exactly when both verdicts are.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub components: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub v: u32,
    pub kind: String,
    pub meta: Meta,
    pub mode: Mode,
    pub n: usize,
    pub records: Vec<CheckRecord>,
    #[serde(default)]
    pub findings: Vec<Finding>,
}

impl CheckReport {
    pub fn disagreements(&self) -> usize {
        self.records.iter().filter(|r| r.agree == Some(false)).count()
    }
}

/// A map whose matrix and formula verdicts differ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub map_index: usize,
    pub phi: Vec<usize>,
    pub matrix_verdict: bool,
    pub formula_verdict: bool,
    #[serde(with = "residual_serde")]
    pub matrix_residual: f64,
    #[serde(with = "residual_serde")]
    pub formula_residual: f64,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub v: u32,
    pub kind: String,
    pub meta: Meta,
    pub n: usize,
    pub property: String,
    pub mu: Vec<f64>,
    pub u: Vec<f64>,
    pub total_maps: usize,
    pub matrix_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula_count: Option<usize>,
    /// Indices of the maps in the class by the matrix test; map `k` sends
    /// atom `i` to digit `i` of `k` in base `n`.
    pub members: Vec<usize>,
    pub representatives: Vec<Vec<usize>>,
    pub disagreements: Vec<Disagreement>,
    /// Whether disagreements count as failures (weight strictly positive).
    pub strict: bool,
    #[serde(default)]
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub v: u32,
    pub kind: String,
    pub meta: Meta,
    pub name: String,
    pub u: WeightFn,
    pub grid: usize,
    pub results: Vec<IntervalVerdict>,
    #[serde(default)]
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouglasTrial {
    pub index: usize,
    pub n: usize,
    pub rank_a: usize,
    pub columns_b: usize,
    pub constructed_inclusion: bool,
    pub check: DouglasReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_residual: Option<f64>,
    /// Largest entry of `W − A†B` with `A†` from an independent SVD.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_vs_svd: Option<f64>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouglasRunReport {
    pub v: u32,
    pub kind: String,
    pub meta: Meta,
    pub seed: u64,
    pub trials: Vec<DouglasTrial>,
    pub violations: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Probe {
        #[serde(with = "residual_serde")]
        r: f64,
        #[serde(with = "residual_serde::option", default)]
        o: Option<f64>,
    }

    #[test]
    fn infinite_residuals_round_trip() {
        let p = Probe { r: f64::INFINITY, o: Some(f64::NEG_INFINITY) };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"r":"inf","o":"-inf"}"#);
        assert_eq!(serde_json::from_str::<Probe>(&s).unwrap(), p);
        let q = Probe { r: 0.125, o: None };
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<Probe>(&s).unwrap(), q);
        assert!(serde_json::from_str::<Probe>(r#"{"r":"big"}"#).is_err());
    }
}
