use serde::{Deserialize, Serialize};

use super::report::RunReport;
use crate::matching::{ratio_bound as matching_ratio_bound, recourse_bound};
use crate::problem::Problem;
use crate::rational::{serde_rational, Rational, SymmetricRatio};
use crate::tas::{independent_set_bound, ratio_bound as tas_ratio_bound, type1_bound, type2_bound};
use crate::vertexcover::{ratio_bound as dh_ratio_bound, MONITOR_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    /// Closed form of the bound.
    pub bound: String,
    #[serde(with = "serde_rational::option")]
    pub bound_value: Option<Rational>,
    /// Measured value, `inf` for an unbounded ratio.
    pub measured: Option<String>,
    pub status: CheckStatus,
    #[serde(with = "serde_rational::option")]
    pub slack: Option<Rational>,
}

impl BoundCheck {
    fn rational(name: &str, bound: String, limit: Rational, measured: Option<Rational>) -> Self {
        match measured {
            None => Self::skipped(name, bound),
            Some(m) => BoundCheck {
                name: name.into(),
                bound,
                bound_value: Some(limit),
                measured: Some(m.to_string()),
                status: if m <= limit {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                slack: Some(limit - m),
            },
        }
    }

    fn ratio(name: &str, bound: String, limit: Rational, measured: Option<SymmetricRatio>) -> Self {
        match measured {
            None => Self::skipped(name, bound),
            Some(SymmetricRatio::Finite(r)) => Self::rational(name, bound, limit, Some(r)),
            Some(SymmetricRatio::Unbounded) => BoundCheck {
                name: name.into(),
                bound,
                bound_value: Some(limit),
                measured: Some("inf".into()),
                status: CheckStatus::Fail,
                slack: None,
            },
        }
    }

    fn skipped(name: &str, bound: String) -> Self {
        BoundCheck {
            name: name.into(),
            bound,
            bound_value: None,
            measured: None,
            status: CheckStatus::Skipped,
            slack: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

fn max_ratio(report: &RunReport) -> Option<SymmetricRatio> {
    report
        .steps
        .iter()
        .filter_map(|s| s.ratio)
        .fold(None, |acc, r| match (acc, r) {
            (None, r) => Some(r),
            (Some(SymmetricRatio::Unbounded), _) | (_, SymmetricRatio::Unbounded) => Some(SymmetricRatio::Unbounded),
            (Some(SymmetricRatio::Finite(a)), SymmetricRatio::Finite(b)) => Some(SymmetricRatio::Finite(a.max(b))),
        })
}

fn tas_checks(report: &RunReport, t: Rational, alpha: Rational, out: &mut Vec<BoundCheck>) {
    let s = &report.summary;
    let p = &report.params;
    out.push(BoundCheck::ratio(
        "ratio",
        format!("t * alpha = {t} * {alpha}"),
        tas_ratio_bound(t, alpha),
        max_ratio(report),
    ));
    out.push(BoundCheck::rational(
        "amortized type-2",
        "w_max (t+1)/(t-1)".into(),
        type2_bound(t, p.w_max),
        s.amortized_type2,
    ));
    if report.problem.is_binary() {
        out.push(BoundCheck::rational(
            "amortized recourse",
            "(t+1)/(t-1)".into(),
            type2_bound(t, Rational::from_integer(1)),
            s.amortized_type1,
        ));
    } else {
        out.push(BoundCheck::rational(
            "amortized type-1",
            "(t+1)/(w_min (t-1))".into(),
            type1_bound(t, p.w_min),
            s.amortized_type1,
        ));
    }
    if report.problem == Problem::IndependentSet {
        out.push(BoundCheck::rational(
            "amortized independent set",
            "t/(t-1)".into(),
            independent_set_bound(t),
            s.amortized_type1,
        ));
    }
    if let (Some(phases), Some(amortized)) = (&report.phases, s.amortized_type1) {
        let best = phases.iter().filter_map(|ph| ph.ratio).max();
        if let Some(best) = best {
            out.push(BoundCheck::rational(
                "phase sum-max",
                "max phase TR_i/|X_i|".into(),
                best,
                Some(amortized),
            ));
        }
    }
}

/// Evaluates every bound that applies to the report's algorithm.
pub fn verify(report: &RunReport) -> Vec<BoundCheck> {
    let mut out = Vec::new();
    let s = &report.summary;
    let p = &report.params;
    let name = report.algorithm.as_str();
    if name.starts_with("tas") || name == "greedy" {
        let t = p.t.expect("t recorded for tas and greedy runs");
        let alpha = p.alpha.unwrap_or_else(|| Rational::from_integer(1));
        tas_checks(report, t, alpha, &mut out);
    } else if name.starts_with("lgreedy") {
        let l = p.l.expect("L recorded");
        out.push(BoundCheck::ratio(
            "ratio",
            format!("(L+2)/(L+1), L = {l}"),
            matching_ratio_bound(l),
            max_ratio(report),
        ));
        let t_star = p.t_star.expect("t* recorded");
        out.push(BoundCheck::rational(
            "amortized recourse",
            format!("(2-t*)/((t*-1)(3-t*)) + (t*-1)/(3-t*), t* = {t_star}"),
            recourse_bound(t_star),
            s.amortized_type1,
        ));
    } else if name == "dh" {
        // Worst prefix relative to its own OPT-dependent bound.
        let worst = report
            .steps
            .iter()
            .filter_map(|st| Some((st.alg, st.opt?)))
            .map(|(alg, opt)| {
                let limit = dh_ratio_bound(opt) * opt;
                (alg - limit, alg, limit)
            })
            .max_by(|a, b| a.0.cmp(&b.0));
        out.push(match worst {
            None => BoundCheck::skipped("ratio", "|A| <= max(1, 2-2/OPT) OPT".into()),
            Some((_, alg, limit)) => {
                BoundCheck::rational("ratio", "|A| <= max(1, 2-2/OPT) OPT".into(), limit, Some(alg))
            }
        });
        let ten_thirds = Rational::new(MONITOR_BOUND.0, MONITOR_BOUND.1);
        out.push(BoundCheck::rational(
            "amortized recourse",
            "10/3".into(),
            ten_thirds,
            s.amortized_type1,
        ));
        if p.monitor {
            out.push(BoundCheck::rational(
                "potential monitor",
                "LO + dPhi <= 10/3".into(),
                ten_thirds,
                s.max_monitor,
            ));
            let n = report.violations.len() as i64;
            out.push(BoundCheck::rational(
                "structural assertions",
                "no violations".into(),
                Rational::from_integer(0),
                Some(Rational::from_integer(n)),
            ));
        } else {
            out.push(BoundCheck::skipped("potential monitor", "LO + dPhi <= 10/3".into()));
        }
    }
    out
}

/// `0` when nothing failed, `1` otherwise.
pub fn exit_status(checks: &[BoundCheck]) -> i32 {
    if checks.iter().all(BoundCheck::passed) {
        0
    } else {
        1
    }
}

/// Plain-text table of checks.
pub fn render(checks: &[BoundCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        out.push_str(&format!(
            "{status:<5} {:<26} measured {:<12} bound {:<10} [{}]\n",
            c.name,
            c.measured.as_deref().unwrap_or("-"),
            c.bound_value.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
            c.bound
        ));
    }
    out
}
