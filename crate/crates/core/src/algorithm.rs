use crate::assignment::Assignment;
use crate::error::Result;
use crate::graph::Graph;
use crate::ledger::RecourseLedger;
use crate::problem::Problem;
use crate::rational::Rational;
use crate::stream::ArrivalEvent;

/// Per-event output of an online algorithm.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepInfo {
    pub late_ops: usize,
    pub switched: bool,
    /// Duo-Halve matching state (1..=6) after the event.
    pub state_label: Option<u8>,
    pub potential: Option<Rational>,
    /// Late operations plus potential change for the event.
    pub monitor: Option<Rational>,
}

pub trait OnlineAlgorithm {
    fn name(&self) -> String;
    fn problem(&self) -> Problem;
    fn graph(&self) -> &Graph;
    fn assignment(&self) -> &Assignment;
    fn ledger(&self) -> &RecourseLedger;

    /// Number of events processed so far.
    fn events_seen(&self) -> usize;

    fn step(&mut self, event: &ArrivalEvent) -> Result<StepInfo>;

    fn value(&self) -> Rational {
        self.assignment().total()
    }
}
