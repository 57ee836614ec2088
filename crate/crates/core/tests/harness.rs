use recourse_lab::harness::{
    exit_status, run, sweep, verify, write_csv, AlgorithmSpec, CheckStatus, ExperimentConfig, GeneratorSpec,
    InstanceSource, RunReport, YardstickKind,
};
use recourse_lab::rational::{frac, int};
use recourse_lab::vertexcover::TieBreak;
use recourse_lab::{ArrivalEvent, ArrivalModel, EventStream, Problem, SymmetricRatio};

fn write_stream(stream: &EventStream, name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("recourse-lab-harness-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, stream.to_jsonl()).unwrap();
    path
}

#[test]
fn triangle_fan_summary() {
    let cfg = ExperimentConfig::generated(
        AlgorithmSpec::Dh {
            tie_break: TieBreak::Me1First,
        },
        GeneratorSpec::TriangleFan { k: 3 },
    );
    let report = run(&cfg).unwrap();
    assert_eq!(report.summary.alg, int(6));
    assert_eq!(report.summary.opt, Some(int(4)));
    assert_eq!(report.summary.ratio, Some(SymmetricRatio::Finite(frac(3, 2))));
    assert_eq!(exit_status(&verify(&report)), 0);
}

#[test]
fn empty_stream_is_zero_filled() {
    let path = write_stream(&EventStream::new(ArrivalModel::VertexArrival, "empty"), "empty.jsonl");
    let cfg = ExperimentConfig::new(
        AlgorithmSpec::Tas {
            problem: Problem::IndependentSet,
            t: int(2),
            yardstick: YardstickKind::Exact,
        },
        InstanceSource::File(path),
    );
    let report = run(&cfg).unwrap();
    assert!(report.steps.is_empty());
    assert_eq!(report.summary.events, 0);
    assert_eq!(report.summary.type1_total, 0);
    assert_eq!(report.summary.amortized_type1, Some(int(0)));
    assert_eq!(report.summary.ratio, Some(SymmetricRatio::Finite(int(1))));
    assert_eq!(exit_status(&verify(&report)), 0);
}

#[test]
fn path_two_with_matching_length() {
    let cfg = ExperimentConfig::generated(AlgorithmSpec::Lgreedy { l: 2 }, GeneratorSpec::Path { n: 2 });
    let report = run(&cfg).unwrap();
    assert_eq!(report.summary.elements, 5);
    assert_eq!(report.summary.type1_total, 6);
    assert_eq!(report.summary.amortized_type1, Some(frac(6, 5)));
    assert_eq!(exit_status(&verify(&report)), 0);
}

#[test]
fn greedy_only_fails_its_ratio_check() {
    // Center first: greedy keeps it and rejects every leaf.
    let events = (0..6)
        .map(|v| {
            if v == 0 {
                ArrivalEvent::vertex(0, vec![])
            } else {
                ArrivalEvent::vertex(v, vec![0])
            }
        })
        .collect();
    let stream = EventStream::with_events(ArrivalModel::VertexArrival, "star", events);
    let path = write_stream(&stream, "star.jsonl");
    let cfg = ExperimentConfig::new(
        AlgorithmSpec::Greedy {
            problem: Problem::IndependentSet,
            t: int(2),
        },
        InstanceSource::File(path),
    );
    let report = run(&cfg).unwrap();
    let checks = verify(&report);
    let ratio = checks.iter().find(|c| c.name == "ratio").unwrap();
    assert_eq!(ratio.status, CheckStatus::Fail);
    assert_eq!(exit_status(&checks), 1);
}

#[test]
fn tas_star_reports_phase() {
    let events = (0..4)
        .map(|v| {
            if v == 0 {
                ArrivalEvent::vertex(0, vec![])
            } else {
                ArrivalEvent::vertex(v, vec![0])
            }
        })
        .collect();
    let stream = EventStream::with_events(ArrivalModel::VertexArrival, "star3", events);
    let path = write_stream(&stream, "star3.jsonl");
    let cfg = ExperimentConfig::new(
        AlgorithmSpec::Tas {
            problem: Problem::IndependentSet,
            t: int(2),
            yardstick: YardstickKind::Exact,
        },
        InstanceSource::File(path),
    );
    let report = run(&cfg).unwrap();
    let late: Vec<usize> = report.steps.iter().map(|s| s.late_ops).collect();
    assert_eq!(late, vec![0, 0, 0, 3]);
    assert_eq!(report.summary.switches, Some(1));
    let phase = &report.phases.as_ref().unwrap()[0];
    assert_eq!((phase.elements, phase.type1), (4, 3));
    assert_eq!(exit_status(&verify(&report)), 0);
}

#[test]
fn oracle_cap_marks_ratio_skipped() {
    let mut cfg = ExperimentConfig::generated(
        AlgorithmSpec::Tas {
            problem: Problem::VertexCover,
            t: int(2),
            yardstick: YardstickKind::Greedy,
        },
        GeneratorSpec::Random {
            model: ArrivalModel::VertexArrival,
            n: 12,
            p: 0.4,
            seed: 3,
        },
    );
    cfg.oracle_cap = 0;
    let report = run(&cfg).unwrap();
    // Bipartite prefixes still get a value through the König fallback.
    assert!(!report.summary.oracle_complete);
    let checks = verify(&report);
    let ratio = checks.iter().find(|c| c.name == "ratio").unwrap();
    assert!(ratio.status == CheckStatus::Skipped || ratio.status == CheckStatus::Pass);
    assert_eq!(exit_status(&checks), 0);
}

#[test]
fn adaptive_adversary_runs_through_harness() {
    let cfg = ExperimentConfig::generated(
        AlgorithmSpec::Tas {
            problem: Problem::IndependentSet,
            t: int(2),
            yardstick: YardstickKind::Exact,
        },
        GeneratorSpec::BipartiteIs {
            t: int(2),
            switches: 3,
            budget: 200,
        },
    );
    let report = run(&cfg).unwrap();
    assert_eq!(report.summary.switches, Some(3));
    assert_eq!(exit_status(&verify(&report)), 0);
}

#[test]
fn report_roundtrips_through_json() {
    let cfg = ExperimentConfig::generated(
        AlgorithmSpec::Dh {
            tie_break: TieBreak::Me1First,
        },
        GeneratorSpec::VcGadget { rounds: 2 },
    );
    let report = run(&cfg).unwrap();
    let back = RunReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn sweep_keeps_order_and_errors() {
    let configs: Vec<ExperimentConfig> = vec![
        ExperimentConfig::generated(AlgorithmSpec::Lgreedy { l: 1 }, GeneratorSpec::Path { n: 1 }),
        ExperimentConfig::generated(
            AlgorithmSpec::Tas {
                problem: Problem::IndependentSet,
                t: int(1),
                yardstick: YardstickKind::Exact,
            },
            GeneratorSpec::Path { n: 1 },
        ),
        ExperimentConfig::generated(
            AlgorithmSpec::Dh {
                tie_break: TieBreak::Me1First,
            },
            GeneratorSpec::TriangleFan { k: 2 },
        ),
    ];
    let par = sweep(&configs, true);
    assert_eq!(par, sweep(&configs, false));
    assert_eq!(par[0].amortized, "2/3");
    assert!(!par[1].error.is_empty());
    assert!(par[2].checks_pass);
    let mut buf = Vec::new();
    write_csv(&par, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn greedy_fails_against_bipartite_adversary() {
    let cfg = ExperimentConfig::generated(
        AlgorithmSpec::Greedy {
            problem: Problem::IndependentSet,
            t: int(2),
        },
        GeneratorSpec::BipartiteIs {
            t: int(2),
            switches: 2,
            budget: 40,
        },
    );
    let report = run(&cfg).unwrap();
    let checks = verify(&report);
    assert_eq!(
        checks.iter().find(|c| c.name == "ratio").unwrap().status,
        CheckStatus::Fail
    );
    assert_eq!(exit_status(&checks), 1);
}

#[test]
fn path_sweep_meets_the_lower_bound() {
    let configs: Vec<ExperimentConfig> = (1..=6)
        .map(|n| ExperimentConfig::generated(AlgorithmSpec::Lgreedy { l: n }, GeneratorSpec::Path { n }))
        .collect();
    for (n, row) in (1i64..).zip(sweep(&configs, true)) {
        assert_eq!(row.amortized, frac(n * (n + 1), 2 * n + 1).to_string());
        assert!(row.checks_pass);
    }
}

#[test]
fn gadget_sweep_climbs_towards_five_halves() {
    let configs: Vec<ExperimentConfig> = (0..=50)
        .map(|rounds| {
            ExperimentConfig::generated(
                AlgorithmSpec::Dh {
                    tie_break: TieBreak::Me1First,
                },
                GeneratorSpec::VcGadget { rounds },
            )
        })
        .collect();
    let values: Vec<f64> = sweep(&configs, true).iter().map(|r| r.amortized_f64.unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!(values.iter().all(|&v| v < 2.5));
    assert_eq!(values[50], 257.0 / 106.0);
}

#[test]
fn random_is_sweep_respects_refined_bound() {
    let ts = [frac(5, 4), frac(3, 2), int(2), frac(2598, 1000)];
    let mut configs = Vec::new();
    for t in ts {
        for seed in 0..40 {
            configs.push(ExperimentConfig::generated(
                AlgorithmSpec::Tas {
                    problem: Problem::IndependentSet,
                    t,
                    yardstick: YardstickKind::Exact,
                },
                GeneratorSpec::Random {
                    model: ArrivalModel::VertexArrival,
                    n: 20,
                    p: 0.2,
                    seed,
                },
            ));
        }
    }
    for row in sweep(&configs, true) {
        assert!(row.checks_pass, "{row:?}");
        if row.t == "1299/500" {
            assert!(row.amortized_f64.unwrap() <= 1.626);
        }
    }
}
