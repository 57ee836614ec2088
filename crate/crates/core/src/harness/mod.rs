//! Running algorithms on instances, checking bounds and sweeping grids.

mod config;
mod report;
mod run;
mod sweep;
mod verify;

pub use config::{
    oracle_cap_from_env, AlgorithmSpec, ExperimentConfig, GeneratorSpec, InstanceSource, YardstickKind, ORACLE_CAP_ENV,
};
pub use report::{Params, RunReport, StepRecord, Summary};
pub use run::{load_stream, run};
pub use sweep::{sweep, write_csv, SweepRow};
pub use verify::{exit_status, render, verify, BoundCheck, CheckStatus};
