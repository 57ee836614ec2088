//! Target-and-Switch.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algorithm::{OnlineAlgorithm, StepInfo};
use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ledger::RecourseLedger;
use crate::oracles::Yardstick;
use crate::problem::Problem;
use crate::rational::{serde_rational, Rational, SymmetricRatio};
use crate::stream::{ArrivalEvent, ElementId};

/// Competitive ratio guaranteed with an `alpha`-approximate incremental
/// yardstick.
pub fn ratio_bound(t: Rational, alpha: Rational) -> Rational {
    t * alpha
}

/// Amortized amount of change: `w_max (t + 1) / (t - 1)`.
pub fn type2_bound(t: Rational, w_max: Rational) -> Rational {
    w_max * (t + Rational::one()) / (t - Rational::one())
}

/// Amortized number of changes: `(t + 1) / (w_min (t - 1))`.
pub fn type1_bound(t: Rational, w_min: Rational) -> Rational {
    (t + Rational::one()) / (w_min * (t - Rational::one()))
}

/// Amortized recourse for independent set: `t / (t - 1)`.
pub fn independent_set_bound(t: Rational) -> Rational {
    t / (t - Rational::one())
}

/// Recourse attributed to one phase: the events after one switch up to and
/// including the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub phase: usize,
    pub elements: usize,
    pub type1: usize,
    #[serde(with = "serde_rational")]
    pub type2: Rational,
    /// `type1 / elements`, absent for a phase with no elements.
    #[serde(with = "serde_rational::option")]
    pub ratio: Option<Rational>,
}

pub struct Tas {
    problem: Problem,
    t: Rational,
    yardstick: Arc<dyn Yardstick>,
    graph: Graph,
    assignment: Assignment,
    ledger: RecourseLedger,
    events: usize,
    switches: usize,
    ref_i: Rational,
    tas_i: Rational,
    phases: Vec<PhaseRecord>,
}

fn check_t(t: Rational) -> Result<()> {
    if t <= Rational::one() {
        return Err(Error::Parameter(format!("target ratio t must exceed 1, got {t}")));
    }
    Ok(())
}

fn check_model(problem: Problem, event: &ArrivalEvent) -> Result<()> {
    if !problem.supports(event.model()) {
        return Err(Error::Parameter(format!(
            "{problem} cannot run on {} streams",
            event.model().name()
        )));
    }
    Ok(())
}

impl Tas {
    pub fn new(problem: Problem, t: Rational, yardstick: Arc<dyn Yardstick>) -> Result<Self> {
        check_t(t)?;
        if !yardstick.supports(problem) {
            return Err(crate::OracleError::Unsupported {
                yardstick: yardstick.name(),
                problem: problem.name(),
            }
            .into());
        }
        Ok(Tas {
            problem,
            t,
            yardstick,
            graph: Graph::new(),
            assignment: problem.empty_assignment(),
            ledger: RecourseLedger::new(),
            events: 0,
            switches: 0,
            ref_i: Rational::zero(),
            tas_i: Rational::zero(),
            phases: vec![PhaseRecord {
                phase: 1,
                elements: 0,
                type1: 0,
                type2: Rational::zero(),
                ratio: None,
            }],
        })
    }

    pub fn t(&self) -> Rational {
        self.t
    }

    pub fn yardstick(&self) -> &dyn Yardstick {
        self.yardstick.as_ref()
    }

    /// Number of switches so far.
    pub fn switches(&self) -> usize {
        self.switches
    }

    /// Yardstick value at the last switch.
    pub fn ref_at_switch(&self) -> Rational {
        self.ref_i
    }

    /// Algorithm value right after the last switch.
    pub fn value_at_switch(&self) -> Rational {
        self.tas_i
    }

    /// Elements released in the current (unfinished) phase.
    pub fn phase_elements(&self) -> usize {
        self.phases.last().map_or(0, |p| p.elements)
    }

    /// Replaces the assignment with `target`. Elements in `arriving` take
    /// their value for free; every other changed element is a late
    /// operation. Returns the number of late operations.
    pub fn switch(&mut self, target: &Assignment, arriving: &[ElementId]) -> Result<usize> {
        if !self.problem.feasible(&self.graph, target) {
            return Err(Error::Infeasible(format!("switch target for {}", self.problem)));
        }
        let event = self.events;
        let mut late = 0;
        for (x, old, new) in self.assignment.diff(target) {
            self.assignment.set(x, new)?;
            if arriving.contains(&x) {
                self.ledger.record_arrival(event, x, new);
            } else {
                self.ledger.record_late(event, x, old, new);
                late += 1;
            }
        }
        Ok(late)
    }

    pub fn phase_report(&self) -> Vec<PhaseRecord> {
        self.phases
            .iter()
            .map(|p| PhaseRecord {
                ratio: (p.elements > 0).then(|| Rational::new(p.type1 as i64, p.elements as i64)),
                ..p.clone()
            })
            .collect()
    }

    fn close_phase(&mut self, late: usize, amount: Rational) {
        let p = self.phases.last_mut().expect("at least one phase");
        p.type1 = late;
        p.type2 = amount;
        let next = p.phase + 1;
        self.phases.push(PhaseRecord {
            phase: next,
            elements: 0,
            type1: 0,
            type2: Rational::zero(),
            ratio: None,
        });
    }
}

impl OnlineAlgorithm for Tas {
    fn name(&self) -> String {
        format!("tas(t={})", self.t)
    }

    fn problem(&self) -> Problem {
        self.problem
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    fn ledger(&self) -> &RecourseLedger {
        &self.ledger
    }

    fn events_seen(&self) -> usize {
        self.events
    }

    fn step(&mut self, event: &ArrivalEvent) -> Result<StepInfo> {
        check_model(self.problem, event)?;
        let index = self.events;
        let arrival = self.graph.apply(index, event)?;
        let arriving = self.problem.new_elements(&arrival);
        self.phases.last_mut().expect("phase").elements += arriving.len();

        let greedy = self.problem.greedy(&self.graph, &self.assignment, &arrival);
        let g: Rational = greedy.iter().map(|(_, v)| *v).sum();
        let candidate = self.assignment.total() + g;
        let reference = self.yardstick.value(self.problem, &self.graph)?;

        let mut info = StepInfo::default();
        if SymmetricRatio::of(candidate, reference).exceeds(self.t) {
            let witness = self.yardstick.solve(self.problem, &self.graph)?;
            let before = self.ledger.type2_total();
            let late = self.switch(&witness.assignment, &arriving)?;
            let amount = self.ledger.type2_total() - before;
            self.switches += 1;
            self.ref_i = witness.value;
            self.tas_i = self.assignment.total();
            self.close_phase(late, amount);
            info.late_ops = late;
            info.switched = true;
        } else {
            for (x, v) in greedy {
                if !v.is_zero() {
                    self.assignment.set(x, v)?;
                    self.ledger.record_arrival(index, x, v);
                }
            }
        }
        self.events += 1;
        Ok(info)
    }
}

/// Greedy values at arrival and nothing else. Used as a negative control.
pub struct GreedyOnly {
    problem: Problem,
    graph: Graph,
    assignment: Assignment,
    ledger: RecourseLedger,
    events: usize,
}

impl GreedyOnly {
    pub fn new(problem: Problem) -> Self {
        GreedyOnly {
            problem,
            graph: Graph::new(),
            assignment: problem.empty_assignment(),
            ledger: RecourseLedger::new(),
            events: 0,
        }
    }
}

impl OnlineAlgorithm for GreedyOnly {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn problem(&self) -> Problem {
        self.problem
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    fn ledger(&self) -> &RecourseLedger {
        &self.ledger
    }

    fn events_seen(&self) -> usize {
        self.events
    }

    fn step(&mut self, event: &ArrivalEvent) -> Result<StepInfo> {
        check_model(self.problem, event)?;
        let arrival = self.graph.apply(self.events, event)?;
        for (x, v) in self.problem.greedy(&self.graph, &self.assignment, &arrival) {
            if !v.is_zero() {
                self.assignment.set(x, v)?;
                self.ledger.record_arrival(self.events, x, v);
            }
        }
        self.events += 1;
        Ok(StepInfo::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::ExactOracle;
    use crate::rational::int;

    fn tas(problem: Problem, t: Rational) -> Tas {
        Tas::new(problem, t, Arc::new(ExactOracle::default())).unwrap()
    }

    #[test]
    fn closed_form_bounds() {
        let t = crate::rational::parse_rational("2.598").unwrap();
        assert_eq!(independent_set_bound(t), Rational::new(1299, 799));
        assert!(independent_set_bound(t) <= Rational::new(1626, 1000));
        assert_eq!(type1_bound(int(2), int(1)), int(3));
        assert_eq!(type1_bound(int(3), Rational::new(1, 2)), int(4));
        assert_eq!(type2_bound(int(3), int(1)), int(2));
    }

    #[test]
    fn rejects_t_at_most_one() {
        assert!(Tas::new(Problem::IndependentSet, int(1), Arc::new(ExactOracle::default())).is_err());
    }

    #[test]
    fn isolated_vertices_are_accepted_greedily() {
        let mut a = tas(Problem::IndependentSet, int(2));
        a.step(&ArrivalEvent::vertex(0, vec![])).unwrap();
        a.step(&ArrivalEvent::vertex(1, vec![])).unwrap();
        assert_eq!(a.value(), int(2));
        assert_eq!(a.switches(), 0);
        assert_eq!(a.phase_report().len(), 1);
        assert_eq!(a.phase_report()[0].type1, 0);
    }

    #[test]
    fn star_center_first_switches_on_third_leaf() {
        let mut a = tas(Problem::IndependentSet, int(2));
        let mut late = Vec::new();
        late.push(a.step(&ArrivalEvent::vertex(0, vec![])).unwrap().late_ops);
        for v in 1..=3 {
            late.push(a.step(&ArrivalEvent::vertex(v, vec![0])).unwrap().late_ops);
        }
        assert_eq!(late, vec![0, 0, 0, 3]);
        assert_eq!(a.switches(), 1);
        assert_eq!(a.assignment().accepted_vertices(), vec![1, 2, 3]);
        assert_eq!(a.ref_at_switch(), a.value_at_switch());
        let phases = a.phase_report();
        assert_eq!(phases[0].elements, 4);
        assert_eq!(phases[0].type1, 3);
        assert!(phases[0].ratio.unwrap() <= int(3));
    }

    #[test]
    fn single_edge_cover_without_switch() {
        let mut a = tas(Problem::VertexCover, Rational::new(3, 2));
        a.step(&ArrivalEvent::vertex(0, vec![])).unwrap();
        a.step(&ArrivalEvent::vertex(1, vec![0])).unwrap();
        assert_eq!(a.value(), int(1));
        assert_eq!(a.switches(), 0);
    }

    #[test]
    fn switch_to_current_is_free() {
        let mut a = tas(Problem::IndependentSet, int(2));
        a.step(&ArrivalEvent::vertex(0, vec![])).unwrap();
        let same = a.assignment().clone();
        assert_eq!(a.switch(&same, &[]).unwrap(), 0);
    }

    #[test]
    fn cover_switch_on_p3() {
        // Leaves 0 and 2 accepted; the middle alone is optimal.
        let mut a = tas(Problem::VertexCover, int(2));
        a.step(&ArrivalEvent::vertex(0, vec![])).unwrap();
        a.step(&ArrivalEvent::vertex(1, vec![0])).unwrap();
        a.step(&ArrivalEvent::vertex(2, vec![1])).unwrap();
        let mut ends = Problem::VertexCover.empty_assignment();
        ends.set(ElementId::Vertex(0), int(1)).unwrap();
        ends.set(ElementId::Vertex(2), int(1)).unwrap();
        a.switch(&ends, &[]).unwrap();
        let mut middle = Problem::VertexCover.empty_assignment();
        middle.set(ElementId::Vertex(1), int(1)).unwrap();
        assert_eq!(a.switch(&middle, &[]).unwrap(), 3);
    }

    #[test]
    fn infeasible_switch_target_is_an_error() {
        let mut a = tas(Problem::IndependentSet, int(2));
        a.step(&ArrivalEvent::vertex(0, vec![])).unwrap();
        a.step(&ArrivalEvent::vertex(1, vec![0])).unwrap();
        let mut both = Problem::IndependentSet.empty_assignment();
        both.set(ElementId::Vertex(0), int(1)).unwrap();
        both.set(ElementId::Vertex(1), int(1)).unwrap();
        assert!(matches!(a.switch(&both, &[]), Err(Error::Infeasible(_))));
    }
}
