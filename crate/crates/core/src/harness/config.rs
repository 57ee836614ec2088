use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::{DEFAULT_ORACLE_CAP, MAX_ORACLE_CAP};
use crate::problem::Problem;
use crate::rational::{serde_rational, Rational};
use crate::stream::ArrivalModel;
use crate::vertexcover::TieBreak;

pub const ORACLE_CAP_ENV: &str = "RECOURSE_LAB_ORACLE_CAP";

/// Oracle cap from `RECOURSE_LAB_ORACLE_CAP`, or the default.
pub fn oracle_cap_from_env() -> Result<usize> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(text) => {
            let cap: usize = text
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("{ORACLE_CAP_ENV}={text} is not a vertex count")))?;
            if cap > MAX_ORACLE_CAP {
                return Err(Error::Parameter(format!(
                    "{ORACLE_CAP_ENV}={cap} exceeds {MAX_ORACLE_CAP}"
                )));
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YardstickKind {
    Exact,
    Greedy,
}

impl YardstickKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(YardstickKind::Exact),
            "greedy" => Ok(YardstickKind::Greedy),
            _ => Err(Error::Parameter(format!("unknown yardstick `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algo", rename_all = "kebab-case")]
pub enum AlgorithmSpec {
    Tas {
        problem: Problem,
        #[serde(with = "serde_rational")]
        t: Rational,
        yardstick: YardstickKind,
    },
    Lgreedy {
        l: usize,
    },
    Dh {
        tie_break: TieBreak,
    },
    /// Arrival-time greedy values only; `t` is the ratio it is checked
    /// against.
    Greedy {
        problem: Problem,
        #[serde(with = "serde_rational")]
        t: Rational,
    },
}

impl AlgorithmSpec {
    pub fn problem(&self) -> Problem {
        match self {
            AlgorithmSpec::Tas { problem, .. } | AlgorithmSpec::Greedy { problem, .. } => *problem,
            AlgorithmSpec::Lgreedy { .. } => Problem::Matching,
            AlgorithmSpec::Dh { .. } => Problem::VertexCover,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmSpec::Tas { t, problem, yardstick } => {
                if *t <= Rational::from_integer(1) {
                    return Err(Error::Parameter(format!("t must exceed 1, got {t}")));
                }
                if *yardstick == YardstickKind::Greedy && !matches!(problem, Problem::Matching | Problem::VertexCover) {
                    return Err(Error::Parameter(format!("greedy yardstick does not support {problem}")));
                }
                Ok(())
            }
            AlgorithmSpec::Greedy { t, .. } if *t <= Rational::from_integer(1) => {
                Err(Error::Parameter(format!("t must exceed 1, got {t}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// Adaptive; the stream depends on the algorithm.
    BipartiteIs {
        #[serde(with = "serde_rational")]
        t: Rational,
        switches: usize,
        budget: usize,
    },
    Path {
        n: usize,
    },
    VcGadget {
        rounds: usize,
    },
    TriangleFan {
        k: usize,
    },
    Random {
        model: ArrivalModel,
        n: usize,
        p: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmSpec,
    pub source: InstanceSource,
    pub oracle_cap: usize,
    pub monitor: bool,
    /// Skip per-prefix oracle calls entirely.
    pub skip_oracle: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(algorithm: AlgorithmSpec, source: InstanceSource) -> Self {
        ExperimentConfig {
            algorithm,
            source,
            oracle_cap: DEFAULT_ORACLE_CAP,
            monitor: true,
            skip_oracle: false,
            output: None,
        }
    }

    pub fn generated(algorithm: AlgorithmSpec, generator: GeneratorSpec) -> Self {
        Self::new(algorithm, InstanceSource::Generator(generator))
    }

    pub fn validate(&self) -> Result<()> {
        self.algorithm.validate()?;
        if self.oracle_cap > MAX_ORACLE_CAP {
            return Err(Error::Parameter(format!(
                "oracle cap {} exceeds {MAX_ORACLE_CAP}",
                self.oracle_cap
            )));
        }
        if let InstanceSource::File(path) = &self.source {
            if !path.exists() {
                return Err(Error::Parameter(format!(
                    "instance file {} does not exist",
                    path.display()
                )));
            }
        }
        Ok(())
    }
}
