//! Online graph algorithms with bounded recourse.

pub mod adversaries;
pub mod algorithm;
pub mod assignment;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ledger;
pub mod matching;
pub mod oracles;
pub mod problem;
pub mod rational;
pub mod stream;
pub mod tas;
pub mod vertexcover;

pub use algorithm::{OnlineAlgorithm, StepInfo};
pub use assignment::Assignment;
pub use error::{Error, OracleError, Result, StreamError};
pub use graph::{Edge, Graph, GraphKey};
pub use ledger::{amortized_recourse, EntryPhase, LedgerEntry, RecourseLedger, RecourseType};
pub use problem::{ElementDomain, Objective, Problem};
pub use rational::{Rational, SymmetricRatio};
pub use stream::{ArrivalEvent, ArrivalModel, ElementId, EventStream};
