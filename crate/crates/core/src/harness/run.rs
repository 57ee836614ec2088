use std::fs::File;
use std::io::BufReader;
use std::sync::Arc;

use num_traits::Zero;

use super::config::{AlgorithmSpec, ExperimentConfig, GeneratorSpec, InstanceSource, YardstickKind};
use super::report::{Params, RunReport, StepRecord, Summary};
use crate::adversaries::{self, AdaptiveAdversary, BipartiteIsAdversary};
use crate::algorithm::OnlineAlgorithm;
use crate::error::{Error, OracleError, Result};
use crate::ledger::{amortized_recourse, RecourseType};
use crate::matching::{t_star_for, LGreedy};
use crate::oracles::{ExactOracle, GreedyYardstick, Yardstick};
use crate::rational::{Rational, SymmetricRatio};
use crate::stream::{ArrivalEvent, EventStream};
use crate::tas::{GreedyOnly, PhaseRecord, Tas};
use crate::vertexcover::DuoHalve;

enum Runner {
    Tas(Tas),
    Lgreedy(LGreedy),
    Dh(DuoHalve),
    Greedy(GreedyOnly),
}

impl Runner {
    fn algo(&mut self) -> &mut dyn OnlineAlgorithm {
        match self {
            Runner::Tas(a) => a,
            Runner::Lgreedy(a) => a,
            Runner::Dh(a) => a,
            Runner::Greedy(a) => a,
        }
    }

    fn view(&self) -> &dyn OnlineAlgorithm {
        match self {
            Runner::Tas(a) => a,
            Runner::Lgreedy(a) => a,
            Runner::Dh(a) => a,
            Runner::Greedy(a) => a,
        }
    }
}

fn build(config: &ExperimentConfig, oracle: &ExactOracle) -> Result<(Runner, Params)> {
    let problem = config.algorithm.problem();
    let (w_min, w_max) = problem.value_range();
    let mut params = Params {
        w_min,
        w_max,
        monitor: config.monitor,
        ..Params::default()
    };
    let runner = match &config.algorithm {
        AlgorithmSpec::Tas { problem, t, yardstick } => {
            let y: Arc<dyn Yardstick> = match yardstick {
                YardstickKind::Exact => Arc::new(oracle.clone()),
                YardstickKind::Greedy => Arc::new(GreedyYardstick),
            };
            params.t = Some(*t);
            params.yardstick = Some(y.name().to_string());
            params.alpha = Some(y.alpha());
            Runner::Tas(Tas::new(*problem, *t, y)?)
        }
        AlgorithmSpec::Lgreedy { l } => {
            params.l = Some(*l);
            params.t_star = Some(t_star_for(*l));
            Runner::Lgreedy(LGreedy::new(*l))
        }
        AlgorithmSpec::Dh { tie_break } => {
            params.tie_break = Some(format!("{tie_break:?}"));
            Runner::Dh(DuoHalve::new().with_tie_break(*tie_break).with_monitor(config.monitor))
        }
        AlgorithmSpec::Greedy { problem, t } => {
            params.t = Some(*t);
            Runner::Greedy(GreedyOnly::new(*problem))
        }
    };
    Ok((runner, params))
}

/// Fixed stream for a source, or `None` for adaptive generators.
pub fn load_stream(source: &InstanceSource) -> Result<Option<EventStream>> {
    let stream = match source {
        InstanceSource::File(path) => {
            let file = File::open(path)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            EventStream::read_jsonl(BufReader::new(file), label)?
        }
        InstanceSource::Generator(g) => match g {
            GeneratorSpec::BipartiteIs { .. } => return Ok(None),
            GeneratorSpec::Path { n } => adversaries::gen_matching_path(*n)?,
            GeneratorSpec::VcGadget { rounds } => adversaries::gen_vc_repeating_gadget(*rounds),
            GeneratorSpec::TriangleFan { k } => adversaries::gen_vc_triangle_fan(*k)?,
            GeneratorSpec::Random { model, n, p, seed } => adversaries::gen_random(*model, *n, *p, *seed)?,
        },
    };
    Ok(Some(stream))
}

struct Recorder<'a> {
    oracle: &'a ExactOracle,
    skip_oracle: bool,
    steps: Vec<StepRecord>,
    oracle_complete: bool,
}

impl Recorder<'_> {
    fn step(&mut self, runner: &mut Runner, event: &ArrivalEvent) -> Result<()> {
        let info = runner.algo().step(event)?;
        let algo = runner.view();
        let problem = algo.problem();
        let opt = if self.skip_oracle {
            None
        } else {
            match self.oracle.value(problem, algo.graph()) {
                Ok(v) => Some(v),
                Err(OracleError::Scale { .. }) => None,
                Err(e) => return Err(e.into()),
            }
        };
        if opt.is_none() {
            self.oracle_complete = false;
        }
        let alg = algo.value();
        self.steps.push(StepRecord {
            step: self.steps.len(),
            alg,
            opt,
            ratio: opt.map(|o| SymmetricRatio::of(alg, o)),
            late_ops: info.late_ops,
            cumulative_type1: algo.ledger().type1_total(),
            cumulative_type2: algo.ledger().type2_total(),
            switched: info.switched,
            state: info.state_label,
            potential: info.potential,
            monitor: info.monitor,
        });
        Ok(())
    }
}

fn worst(a: Option<SymmetricRatio>, b: Option<SymmetricRatio>) -> Option<SymmetricRatio> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(SymmetricRatio::Unbounded), _) | (_, Some(SymmetricRatio::Unbounded)) => Some(SymmetricRatio::Unbounded),
        (Some(SymmetricRatio::Finite(x)), Some(SymmetricRatio::Finite(y))) => Some(SymmetricRatio::Finite(x.max(y))),
    }
}

/// Replays the configured instance through the configured algorithm.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let oracle = ExactOracle::new(config.oracle_cap)?;
    let (mut runner, params) = build(config, &oracle)?;
    let mut rec = Recorder {
        oracle: &oracle,
        skip_oracle: config.skip_oracle,
        steps: Vec::new(),
        oracle_complete: !config.skip_oracle,
    };
    let label = match load_stream(&config.source)? {
        Some(stream) => {
            for ev in &stream.events {
                rec.step(&mut runner, ev)?;
            }
            stream.label
        }
        None => {
            let InstanceSource::Generator(GeneratorSpec::BipartiteIs { t, switches, budget }) = &config.source else {
                unreachable!("only the adaptive family has no fixed stream");
            };
            let mut adversary = BipartiteIsAdversary::new(*t, *switches, *budget)?;
            let mut events = 0;
            while let Some(ev) = adversary.next_event(runner.view().graph(), runner.view().assignment()) {
                rec.step(&mut runner, &ev)?;
                events += 1;
            }
            format!("bipartite-is-i{switches}-{events}")
        }
    };
    Ok(finish(runner, params, rec, label))
}

fn finish(runner: Runner, params: Params, rec: Recorder<'_>, label: String) -> RunReport {
    let algo = runner.view();
    let problem = algo.problem();
    let elements = problem.element_count(algo.graph());
    let ledger = algo.ledger();
    let last = rec.steps.last();
    let max_ratio = rec.steps.iter().fold(None, |acc, s| worst(acc, s.ratio));
    let max_monitor = rec.steps.iter().filter_map(|s| s.monitor).max();
    let (phases, switches, mut findings, violations) = match &runner {
        Runner::Tas(t) => (Some(t.phase_report()), Some(t.switches()), Vec::new(), Vec::new()),
        Runner::Dh(d) => (None, None, d.table_findings().to_vec(), d.violations().to_vec()),
        _ => (None, None, Vec::new(), Vec::new()),
    };
    if !rec.oracle_complete && !rec.skip_oracle {
        findings.push("some prefixes exceeded the oracle cap; their ratio fields are unavailable".into());
    }
    let summary = Summary {
        events: algo.events_seen(),
        elements,
        alg: algo.value(),
        opt: last.and_then(|s| s.opt).or(if rec.steps.is_empty() {
            Some(Rational::zero())
        } else {
            None
        }),
        ratio: last.map_or(Some(SymmetricRatio::of(Rational::zero(), Rational::zero())), |s| {
            s.ratio
        }),
        max_ratio: if rec.steps.is_empty() {
            Some(SymmetricRatio::Finite(Rational::from_integer(1)))
        } else {
            max_ratio
        },
        oracle_complete: rec.oracle_complete,
        type1_total: ledger.type1_total(),
        type2_total: ledger.type2_total(),
        amortized_type1: amortized(ledger, elements, RecourseType::Count),
        amortized_type2: amortized(ledger, elements, RecourseType::Amount),
        max_monitor,
        switches,
    };
    RunReport {
        label,
        algorithm: algo.name(),
        problem,
        params,
        steps: rec.steps,
        summary,
        phases: phases.map(|p: Vec<PhaseRecord>| p),
        violations,
        findings,
    }
}

fn amortized(ledger: &crate::ledger::RecourseLedger, elements: usize, kind: RecourseType) -> Option<Rational> {
    match amortized_recourse(ledger, elements, kind) {
        Ok(r) => Some(r),
        Err(Error::UndefinedMetric) if ledger.type1_total() == 0 => Some(Rational::zero()),
        Err(_) => None,
    }
}
