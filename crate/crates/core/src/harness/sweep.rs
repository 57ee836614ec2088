use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::run::run;
use super::verify::{exit_status, verify};
use crate::error::Result;
use crate::rational::to_f64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub label: String,
    pub algorithm: String,
    pub problem: String,
    pub t: String,
    pub l: String,
    pub events: usize,
    pub elements: usize,
    pub type1_total: usize,
    pub type2_total: String,
    pub amortized: String,
    pub amortized_f64: Option<f64>,
    pub max_ratio: String,
    pub checks_pass: bool,
    pub error: String,
}

fn row(config: &ExperimentConfig) -> SweepRow {
    match run(config) {
        Ok(report) => {
            let checks = verify(&report);
            let s = &report.summary;
            SweepRow {
                label: report.label.clone(),
                algorithm: report.algorithm.clone(),
                problem: report.problem.name().into(),
                t: report.params.t.map(|t| t.to_string()).unwrap_or_default(),
                l: report.params.l.map(|l| l.to_string()).unwrap_or_default(),
                events: s.events,
                elements: s.elements,
                type1_total: s.type1_total,
                type2_total: s.type2_total.to_string(),
                amortized: s.amortized_type1.map(|a| a.to_string()).unwrap_or_default(),
                amortized_f64: s.amortized_type1.map(to_f64),
                max_ratio: s.max_ratio.map(|r| r.to_string()).unwrap_or_default(),
                checks_pass: exit_status(&checks) == 0,
                error: String::new(),
            }
        }
        Err(e) => SweepRow {
            label: String::new(),
            algorithm: format!("{:?}", config.algorithm),
            problem: config.algorithm.problem().name().into(),
            t: String::new(),
            l: String::new(),
            events: 0,
            elements: 0,
            type1_total: 0,
            type2_total: String::new(),
            amortized: String::new(),
            amortized_f64: None,
            max_ratio: String::new(),
            checks_pass: false,
            error: e.to_string(),
        },
    }
}

/// One row per configuration, in input order. Failures are recorded in the
/// row rather than aborting the sweep.
pub fn sweep(configs: &[ExperimentConfig], parallel: bool) -> Vec<SweepRow> {
    if parallel {
        configs.par_iter().map(row).collect()
    } else {
        configs.iter().map(row).collect()
    }
}

pub fn write_csv(rows: &[SweepRow], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
