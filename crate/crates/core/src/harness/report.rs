use serde::{Deserialize, Serialize};

use crate::problem::Problem;
use crate::rational::{serde_ratio, serde_rational, Rational, SymmetricRatio};
use crate::tas::PhaseRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(with = "serde_rational")]
    pub alg: Rational,
    #[serde(with = "serde_rational::option")]
    pub opt: Option<Rational>,
    #[serde(with = "serde_ratio")]
    pub ratio: Option<SymmetricRatio>,
    pub late_ops: usize,
    pub cumulative_type1: usize,
    #[serde(with = "serde_rational")]
    pub cumulative_type2: Rational,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub switched: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    pub potential: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    pub monitor: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, with = "serde_rational::option")]
    pub t: Option<Rational>,
    #[serde(default)]
    pub l: Option<usize>,
    #[serde(default, with = "serde_rational::option")]
    pub t_star: Option<Rational>,
    #[serde(default)]
    pub yardstick: Option<String>,
    #[serde(default, with = "serde_rational::option")]
    pub alpha: Option<Rational>,
    #[serde(with = "serde_rational")]
    pub w_min: Rational,
    #[serde(with = "serde_rational")]
    pub w_max: Rational,
    pub monitor: bool,
    #[serde(default)]
    pub tie_break: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub events: usize,
    pub elements: usize,
    #[serde(with = "serde_rational")]
    pub alg: Rational,
    #[serde(with = "serde_rational::option")]
    pub opt: Option<Rational>,
    #[serde(with = "serde_ratio")]
    pub ratio: Option<SymmetricRatio>,
    #[serde(with = "serde_ratio")]
    pub max_ratio: Option<SymmetricRatio>,
    /// False when some prefix exceeded the oracle cap.
    pub oracle_complete: bool,
    pub type1_total: usize,
    #[serde(with = "serde_rational")]
    pub type2_total: Rational,
    #[serde(with = "serde_rational::option")]
    pub amortized_type1: Option<Rational>,
    #[serde(with = "serde_rational::option")]
    pub amortized_type2: Option<Rational>,
    #[serde(default, with = "serde_rational::option")]
    pub max_monitor: Option<Rational>,
    #[serde(default)]
    pub switches: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub label: String,
    pub algorithm: String,
    pub problem: Problem,
    pub params: Params,
    pub steps: Vec<StepRecord>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phases: Option<Vec<PhaseRecord>>,
    /// Monitor or assertion failures raised during the run.
    #[serde(default)]
    pub violations: Vec<String>,
    /// Informational observations that are not bound checks.
    #[serde(default)]
    pub findings: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
