use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recourse_lab::adversaries::{self, play, BipartiteIsAdversary};
use recourse_lab::harness::{
    self, exit_status, oracle_cap_from_env, render, verify, AlgorithmSpec, ExperimentConfig, GeneratorSpec,
    InstanceSource, RunReport, YardstickKind,
};
use recourse_lab::matching::l_from_t;
use recourse_lab::oracles::ExactOracle;
use recourse_lab::rational::{int, parse_rational};
use recourse_lab::tas::Tas;
use recourse_lab::vertexcover::TieBreak;
use recourse_lab::{ArrivalModel, Error, EventStream, Problem, Rational};

/// Online graph algorithms under recourse: generate instances, run
/// algorithms and check their bounds.
#[derive(Parser)]
#[command(name = "recourse-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance stream as JSON lines.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        /// Algorithm the adaptive family plays against.
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm on an instance and check its bounds.
    Run {
        #[command(flatten)]
        algo: AlgoArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Where to write the JSON report.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the bounds recorded in a saved report.
    Verify { report: PathBuf },
    /// Run a parameter grid and write one CSV row per run.
    Sweep {
        #[command(flatten)]
        algo: AlgoArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Tas,
    Lgreedy,
    Dh,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Is,
    Vc,
    Matching,
    Fvc,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Is => Problem::IndependentSet,
            ProblemArg::Vc => Problem::VertexCover,
            ProblemArg::Matching => Problem::Matching,
            ProblemArg::Fvc => Problem::FractionalVertexCover,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum YardstickArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreakArg {
    Me1First,
    RecourseFirst,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    BipartiteIs,
    Path,
    VcGadget,
    TriangleFan,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arrival {
    Vertex,
    Edge,
}

#[derive(Args, Clone)]
struct AlgoArgs {
    #[arg(long, value_enum, default_value = "tas")]
    algo: Algo,
    #[arg(long, value_enum, default_value = "is")]
    problem: ProblemArg,
    /// Ratio target, as a decimal or fraction (`1.5`, `3/2`).
    #[arg(long)]
    t: Option<String>,
    /// Longest eliminated augmenting path is 2L+1 edges.
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    yardstick: YardstickArg,
    #[arg(long, value_enum, default_value = "me1-first")]
    tie_break: TieBreakArg,
    /// Potential monitor for dh.
    #[arg(long, value_enum, default_value = "on")]
    monitor: Switch,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Stream file (JSON lines). Overrides --family.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Vertex count (random) or path parameter (path).
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, value_enum)]
    arrival: Option<Arrival>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    rounds: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Switches the bipartite adversary waits for.
    #[arg(long, default_value_t = 8)]
    switches: usize,
    /// Event budget of the bipartite adversary.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// Largest prefix (in vertices) handed to the exact IS/VC oracle.
    #[arg(long)]
    oracle_cap: Option<usize>,
    /// Skip per-prefix oracle values.
    #[arg(long)]
    skip_oracle: bool,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Ratio targets to sweep, comma separated.
    #[arg(long = "ts", value_delimiter = ',')]
    ts: Vec<String>,
    /// Path lengths to sweep (L = n for lgreedy).
    #[arg(long = "ns", value_delimiter = ',')]
    ns: Vec<usize>,
    /// Gadget repetitions to sweep.
    #[arg(long = "rounds-list", value_delimiter = ',')]
    rounds_list: Vec<usize>,
    /// Number of seeds per cell, starting at --seed.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Run rows one at a time.
    #[arg(long)]
    serial: bool,
}

fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

fn parse_t(t: &Option<String>) -> Result<Option<Rational>, Error> {
    t.as_deref().map(parse_rational).transpose()
}

impl AlgoArgs {
    fn spec(&self) -> Result<AlgorithmSpec, Error> {
        let t = parse_t(&self.t)?;
        let problem: Problem = self.problem.into();
        Ok(match self.algo {
            Algo::Tas => AlgorithmSpec::Tas {
                problem,
                t: t.ok_or_else(|| param("tas needs --t"))?,
                yardstick: match self.yardstick {
                    YardstickArg::Exact => YardstickKind::Exact,
                    YardstickArg::Greedy => YardstickKind::Greedy,
                },
            },
            Algo::Greedy => AlgorithmSpec::Greedy {
                problem,
                t: t.ok_or_else(|| param("greedy needs --t to check against"))?,
            },
            Algo::Lgreedy => {
                let l = match (self.l, t) {
                    (Some(l), _) => l,
                    (None, Some(t)) => l_from_t(t)?.0,
                    (None, None) => return Err(param("lgreedy needs --L or --t")),
                };
                AlgorithmSpec::Lgreedy { l }
            }
            Algo::Dh => AlgorithmSpec::Dh {
                tie_break: match self.tie_break {
                    TieBreakArg::Me1First => TieBreak::Me1First,
                    TieBreakArg::RecourseFirst => TieBreak::RecourseFirst,
                },
            },
        })
    }

    fn default_arrival(&self) -> ArrivalModel {
        match (self.algo, self.problem) {
            (Algo::Lgreedy, _) | (Algo::Tas | Algo::Greedy, ProblemArg::Matching) => ArrivalModel::EdgeArrival,
            _ => ArrivalModel::VertexArrival,
        }
    }
}

impl SourceArgs {
    fn generator(&self, family: Family, arrival: ArrivalModel, t: Option<Rational>) -> GeneratorSpec {
        match family {
            Family::BipartiteIs => GeneratorSpec::BipartiteIs {
                t: t.unwrap_or(int(2)),
                switches: self.switches,
                budget: self.budget,
            },
            Family::Path => GeneratorSpec::Path { n: self.n },
            Family::VcGadget => GeneratorSpec::VcGadget { rounds: self.rounds },
            Family::TriangleFan => GeneratorSpec::TriangleFan { k: self.k },
            Family::Random => GeneratorSpec::Random {
                model: arrival,
                n: self.n,
                p: self.p,
                seed: self.seed,
            },
        }
    }

    fn source(&self, algo: &AlgoArgs) -> Result<InstanceSource, Error> {
        if let Some(path) = &self.input {
            return Ok(InstanceSource::File(path.clone()));
        }
        let family = self.family.ok_or_else(|| param("give --input or --family"))?;
        Ok(InstanceSource::Generator(self.generator(
            family,
            self.arrival(algo),
            parse_t(&algo.t)?,
        )))
    }

    fn arrival(&self, algo: &AlgoArgs) -> ArrivalModel {
        match self.arrival {
            Some(Arrival::Vertex) => ArrivalModel::VertexArrival,
            Some(Arrival::Edge) => ArrivalModel::EdgeArrival,
            None => algo.default_arrival(),
        }
    }
}

fn config(algo: &AlgoArgs, source: InstanceSource, oracle: &OracleArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::new(algo.spec()?, source);
    cfg.oracle_cap = match oracle.oracle_cap {
        Some(cap) => cap,
        None => oracle_cap_from_env()?,
    };
    cfg.skip_oracle = oracle.skip_oracle;
    cfg.monitor = algo.monitor == Switch::On;
    Ok(cfg)
}

fn write_out(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn gen(source: &SourceArgs, algo: &AlgoArgs, out: &Option<PathBuf>) -> Result<(), Error> {
    let family = source.family.ok_or_else(|| param("gen needs --family"))?;
    let arrival = source.arrival(algo);
    let stream: EventStream = match family {
        Family::BipartiteIs => {
            let t = parse_t(&algo.t)?.unwrap_or(int(2));
            let mut adversary = BipartiteIsAdversary::new(t, source.switches, source.budget)?;
            let mut tas = Tas::new(
                Problem::IndependentSet,
                t,
                Arc::new(ExactOracle::new(oracle_cap_from_env()?)?),
            )?;
            play(&mut adversary, &mut tas, &format!("bipartite-is-i{}", source.switches))?
        }
        Family::Path => adversaries::gen_matching_path(source.n)?,
        Family::VcGadget => adversaries::gen_vc_repeating_gadget(source.rounds),
        Family::TriangleFan => adversaries::gen_vc_triangle_fan(source.k)?,
        Family::Random => adversaries::gen_random(arrival, source.n, source.p, source.seed)?,
    };
    write_out(out, stream.to_jsonl().as_bytes())
}

fn report_and_check(report: &RunReport) -> u8 {
    let checks = verify(report);
    let s = &report.summary;
    eprintln!(
        "{} on {}: {} events, {} elements, value {}, late ops {}, amortized {}",
        report.algorithm,
        report.label,
        s.events,
        s.elements,
        s.alg,
        s.type1_total,
        s.amortized_type1.map(|a| a.to_string()).unwrap_or_else(|| "-".into()),
    );
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    eprint!("{}", render(&checks));
    exit_status(&checks) as u8
}

fn sweep_configs(
    algo: &AlgoArgs,
    source: &SourceArgs,
    oracle: &OracleArgs,
    grid: &GridArgs,
) -> Result<Vec<ExperimentConfig>, Error> {
    let ts: Vec<Option<String>> = if grid.ts.is_empty() {
        vec![algo.t.clone()]
    } else {
        grid.ts.iter().cloned().map(Some).collect()
    };
    let mut configs = Vec::new();
    for t in ts {
        let mut a = algo.clone();
        a.t = t;
        if let Some(path) = &source.input {
            configs.push(config(&a, InstanceSource::File(path.clone()), oracle)?);
            continue;
        }
        let family = source.family.ok_or_else(|| param("give --input or --family"))?;
        let mut variants: Vec<SourceArgs> = Vec::new();
        match family {
            Family::Path if !grid.ns.is_empty() => {
                variants.extend(grid.ns.iter().map(|&n| SourceArgs { n, ..source.clone() }));
            }
            Family::VcGadget if !grid.rounds_list.is_empty() => {
                variants.extend(grid.rounds_list.iter().map(|&rounds| SourceArgs {
                    rounds,
                    ..source.clone()
                }));
            }
            Family::Random => {
                variants.extend((0..grid.seeds).map(|i| SourceArgs {
                    seed: source.seed + i,
                    ..source.clone()
                }));
            }
            _ => variants.push(source.clone()),
        }
        for v in variants {
            let mut a = a.clone();
            if matches!(a.algo, Algo::Lgreedy) && matches!(family, Family::Path) && a.l.is_none() && a.t.is_none() {
                a.l = Some(v.n);
            }
            let src = v.source(&a)?;
            configs.push(config(&a, src, oracle)?);
        }
    }
    Ok(configs)
}

fn execute(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gen { source, algo, out } => {
            gen(&source, &algo, &out)?;
            Ok(0)
        }
        Command::Run {
            algo,
            source,
            oracle,
            out,
        } => {
            let cfg = config(&algo, source.source(&algo)?, &oracle)?;
            let report = harness::run(&cfg)?;
            let code = report_and_check(&report);
            write_out(&out, report.to_json().as_bytes())?;
            Ok(code)
        }
        Command::Verify { report } => {
            let text = fs::read_to_string(&report)?;
            let report = RunReport::from_json(&text)?;
            Ok(report_and_check(&report))
        }
        Command::Sweep {
            algo,
            source,
            oracle,
            grid,
            out,
        } => {
            let configs = sweep_configs(&algo, &source, &oracle, &grid)?;
            if configs.is_empty() {
                return Err(param("empty grid"));
            }
            let rows = harness::sweep(&configs, !grid.serial);
            let mut buf = Vec::new();
            harness::write_csv(&rows, &mut buf)?;
            write_out(&out, &buf)?;
            Ok(if rows.iter().all(|r| r.checks_pass && r.error.is_empty()) {
                0
            } else {
                1
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
