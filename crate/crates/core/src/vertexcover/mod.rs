//! Duo-Halve: a maximal matching whose two most recent edges are kept half
//! accepted whenever the cover allows it.

mod potential;

pub use potential::{monitor_step, transition_bound, PotentialSnapshot, MONITOR_BOUND};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algorithm::{OnlineAlgorithm, StepInfo};
use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::ledger::RecourseLedger;
use crate::problem::Problem;
use crate::rational::Rational;
use crate::stream::{ArrivalEvent, ElementId};

/// Tie-break order inside HalveBoth once the number of half edges is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Fewer late operations, then fewer accepted endpoints in me1.
    RecourseFirst,
    /// Fewer accepted endpoints in me1, then fewer late operations. Keeps
    /// me1 half whenever some valid configuration allows it.
    #[default]
    Me1First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    /// Endpoint of me1 or me2.
    One,
    /// Saturated by an older matched edge.
    Two,
    /// Unmatched.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeState {
    Full,
    /// Exactly one endpoint accepted; the field is that endpoint.
    Half(usize),
    Uncovered,
}

/// Accept statuses chosen for the endpoints of me1 and me2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub endpoints: Vec<usize>,
    pub accepted: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct DuoHalve {
    graph: Graph,
    mate: Vec<Option<usize>>,
    matching: Vec<Edge>,
    me1: Option<Edge>,
    me2: Option<Edge>,
    accepted: Vec<bool>,
    assignment: Assignment,
    ledger: RecourseLedger,
    events: usize,
    tie_break: TieBreak,
    monitor: bool,
    last_potential: PotentialSnapshot,
    violations: Vec<String>,
    table_findings: Vec<String>,
}

impl Default for DuoHalve {
    fn default() -> Self {
        Self::new()
    }
}

impl DuoHalve {
    pub fn new() -> Self {
        DuoHalve {
            graph: Graph::new(),
            mate: Vec::new(),
            matching: Vec::new(),
            me1: None,
            me2: None,
            accepted: Vec::new(),
            assignment: Problem::VertexCover.empty_assignment(),
            ledger: RecourseLedger::new(),
            events: 0,
            tie_break: TieBreak::default(),
            monitor: true,
            last_potential: PotentialSnapshot::default(),
            violations: Vec::new(),
            table_findings: Vec::new(),
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_monitor(mut self, on: bool) -> Self {
        self.monitor = on;
        self
    }

    pub fn matching(&self) -> &[Edge] {
        &self.matching
    }

    pub fn me1(&self) -> Option<Edge> {
        self.me1
    }

    pub fn me2(&self) -> Option<Edge> {
        self.me2
    }

    pub fn is_accepted(&self, v: usize) -> bool {
        self.accepted.get(v).copied().unwrap_or(false)
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.mate.get(v).copied().flatten().is_some()
    }

    pub fn group(&self, v: usize) -> Group {
        let in_top = |e: Option<Edge>| e.is_some_and(|e| e.touches(v));
        if in_top(self.me1) || in_top(self.me2) {
            Group::One
        } else if self.is_saturated(v) {
            Group::Two
        } else {
            Group::Three
        }
    }

    pub fn edge_state(&self, e: Edge) -> EdgeState {
        match (self.is_accepted(e.u), self.is_accepted(e.v)) {
            (true, true) => EdgeState::Full,
            (true, false) => EdgeState::Half(e.u),
            (false, true) => EdgeState::Half(e.v),
            (false, false) => EdgeState::Uncovered,
        }
    }

    /// Monitor and assertion failures so far.
    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    /// Events whose `LO + ΔΦ` exceeded the per-transition table entry, or
    /// whose transition the table lists as impossible.
    pub fn table_findings(&self) -> &[String] {
        &self.table_findings
    }

    pub fn potential(&self) -> PotentialSnapshot {
        potential::snapshot(self)
    }

    /// Matching state label `1..=6`, or `None` with fewer than two matched
    /// edges.
    pub fn classify_state(&self) -> Option<u8> {
        let (me1, me2) = (self.me1?, self.me2?);
        // me1 = (p, v) with v revealed last; ids follow arrival order.
        let (p, v) = (self.is_accepted(me1.u), self.is_accepted(me1.v));
        let me2_full = self.is_accepted(me2.u) && self.is_accepted(me2.v);
        let me2_half = self.is_accepted(me2.u) != self.is_accepted(me2.v);
        match (me2_full, me2_half, p, v) {
            (true, _, true, false) => Some(1),
            (true, _, false, true) => Some(2),
            (true, _, true, true) => Some(3),
            (false, true, true, false) => Some(4),
            (false, true, false, true) => Some(5),
            (false, true, true, true) => Some(6),
            _ => None,
        }
    }

    fn status_outside(&self, x: usize) -> bool {
        self.is_saturated(x) && self.is_accepted(x)
    }

    fn top_endpoints(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(4);
        for e in [self.me1, self.me2].into_iter().flatten() {
            out.push(e.u);
            out.push(e.v);
        }
        out
    }

    /// Whether assigning `accepted` to `endpoints` (everything else as is)
    /// covers me1, me2 and every edge at a rejected endpoint.
    pub(crate) fn config_valid(&self, endpoints: &[usize], accepted: &[bool]) -> bool {
        let status = |x: usize| match endpoints.iter().position(|&y| y == x) {
            Some(i) => accepted[i],
            None => self.status_outside(x),
        };
        for e in [self.me1, self.me2].into_iter().flatten() {
            if !status(e.u) && !status(e.v) {
                return false;
            }
        }
        endpoints
            .iter()
            .zip(accepted)
            .filter(|(_, a)| !**a)
            .all(|(&x, _)| self.graph.neighbors(x).iter().all(|&y| status(y)))
    }

    /// Picks the endpoint configuration of me1 and me2. `start` holds the
    /// statuses at the beginning of the event and `fresh` the vertex that
    /// arrived in it.
    pub fn halve_both(&self, start: &[bool], fresh: usize) -> Option<Configuration> {
        self.me1?;
        let endpoints = self.top_endpoints();
        let k = endpoints.len();
        let me1_len = 2;
        let mut best: Option<(Vec<i64>, Vec<bool>)> = None;
        for mask in 0u32..(1 << k) {
            let accepted: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            if !self.config_valid(&endpoints, &accepted) {
                continue;
            }
            let halves = accepted.chunks(2).filter(|c| c[0] != c[1]).count() as i64;
            let late = endpoints
                .iter()
                .zip(&accepted)
                .filter(|(&x, &a)| x != fresh && start.get(x).copied().unwrap_or(false) != a)
                .count() as i64;
            let me1_acc = accepted[..me1_len].iter().filter(|a| **a).count() as i64;
            let fresh_rejected = endpoints.iter().zip(&accepted).any(|(&x, &a)| x == fresh && !a) as i64;
            let mut acc_ids: Vec<i64> = endpoints
                .iter()
                .zip(&accepted)
                .filter(|(_, a)| **a)
                .map(|(&x, _)| x as i64)
                .collect();
            acc_ids.sort_unstable();
            let mut key = vec![-halves];
            match self.tie_break {
                TieBreak::RecourseFirst => key.extend([late, me1_acc]),
                TieBreak::Me1First => key.extend([me1_acc, late]),
            }
            key.push(fresh_rejected);
            key.push(acc_ids.len() as i64);
            key.extend(acc_ids);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, accepted));
            }
        }
        best.map(|(_, accepted)| Configuration { endpoints, accepted })
    }

    fn late_accept(&mut self, x: usize) {
        self.accepted[x] = true;
    }

    fn check_cover(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|e| self.is_accepted(e.u) || self.is_accepted(e.v))
    }
}

impl OnlineAlgorithm for DuoHalve {
    fn name(&self) -> String {
        "dh".into()
    }

    fn problem(&self) -> Problem {
        Problem::VertexCover
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
        let ArrivalEvent::Vertex { v, .. } = event else {
            return Err(Error::Parameter("dh needs a vertex-arrival stream".into()));
        };
        let v = *v;
        let index = self.events;
        self.graph.apply(index, event)?;
        let n = self.graph.vertex_count();
        self.mate.resize(n, None);
        self.accepted.resize(n, false);

        let start = self.accepted.clone();
        let pre_state = self.classify_state();
        let pre_me1 = self.me1.map(|e| (e, self.edge_state(e)));
        let pre_phi = self.last_potential.clone();

        let partner = self.graph.neighbors(v).iter().copied().find(|&u| !self.is_saturated(u));
        let shifted = partner.is_some();
        let mut expired_accepts = 0;
        if let Some(p) = partner {
            let e = Edge::new(p, v);
            self.matching.push(e);
            self.mate[p] = Some(v);
            self.mate[v] = Some(p);
            self.me2 = self.me1;
            self.me1 = Some(e);
            let nbrs: Vec<usize> = self.graph.neighbors(v).to_vec();
            for u in nbrs {
                if self.group(u) == Group::Two && !self.is_accepted(u) {
                    self.late_accept(u);
                    expired_accepts += 1;
                }
            }
        } else {
            let nbrs: Vec<usize> = self.graph.neighbors(v).to_vec();
            for u in nbrs {
                if self.is_saturated(u) && !self.is_accepted(u) {
                    if self.group(u) == Group::Two {
                        expired_accepts += 1;
                    }
                    self.late_accept(u);
                }
            }
        }
        if let Some(cfg) = self.halve_both(&start, v) {
            for (&x, &a) in cfg.endpoints.iter().zip(&cfg.accepted) {
                self.accepted[x] = a;
            }
        } else if self.me1.is_some() {
            return Err(Error::Monitor(format!(
                "event {index}: no valid HalveBoth configuration"
            )));
        }

        let mut late = 0;
        for (x, &old) in start.iter().enumerate() {
            let new = self.accepted[x];
            if old == new {
                continue;
            }
            let (ov, nv) = (bool_value(old), bool_value(new));
            self.assignment.set(ElementId::Vertex(x), nv)?;
            if x == v {
                self.ledger.record_arrival(index, ElementId::Vertex(x), nv);
            } else {
                self.ledger.record_late(index, ElementId::Vertex(x), ov, nv);
                late += 1;
            }
        }
        self.events += 1;

        if !self.check_cover() {
            self.violations
                .push(format!("event {index}: accepted set is not a vertex cover"));
        }
        let mut info = StepInfo {
            late_ops: late,
            state_label: self.classify_state(),
            ..StepInfo::default()
        };
        if !self.monitor {
            return Ok(info);
        }

        let post_phi = self.potential();
        let value = Rational::from_integer(late as i64) + post_phi.value - pre_phi.value;
        if !monitor_step(&pre_phi, &post_phi, late, expired_accepts) {
            self.violations.push(format!(
                "event {index}: LO + ΔΦ = {value} > 10/3 (LO {late}, Φ {} -> {}, state {:?} -> {:?})",
                pre_phi.value, post_phi.value, pre_state, info.state_label
            ));
        }
        if let (Some(from), Some(to)) = (pre_state, info.state_label) {
            match transition_bound(from, to, shifted) {
                Some(b) if value > b => self.table_findings.push(format!(
                    "event {index}: {from} -> {to} (shift {shifted}) LO + ΔΦ = {value} > {b}"
                )),
                None => self.table_findings.push(format!(
                    "event {index}: transition {from} -> {to} (shift {shifted}) observed"
                )),
                _ => {}
            }
        }
        if shifted {
            if let (Some((old, before)), Some(me2)) = (pre_me1, self.me2) {
                debug_assert_eq!(old, me2);
                let after = self.edge_state(me2);
                let bad = match (before, after) {
                    (EdgeState::Half(_), EdgeState::Full) => Some("half -> full"),
                    (EdgeState::Half(a), EdgeState::Half(b)) if a != b => Some("flip"),
                    (EdgeState::Full, EdgeState::Full) | (EdgeState::Full, EdgeState::Half(_)) => None,
                    (EdgeState::Half(_), EdgeState::Half(_)) => None,
                    _ => Some("uncovered"),
                };
                if let Some(what) = bad {
                    self.violations
                        .push(format!("event {index}: shifted edge {me2} went {what}"));
                }
            }
        }
        if let Some(me1) = self.me1 {
            if self.edge_state(me1) == EdgeState::Full {
                for x in [me1.u, me1.v] {
                    let blocked = self
                        .graph
                        .neighbors(x)
                        .iter()
                        .any(|&y| self.group(y) == Group::Three && !self.is_accepted(y));
                    if !blocked {
                        self.violations.push(format!(
                            "event {index}: me1 {me1} is full but {x} has no rejected unmatched neighbour"
                        ));
                    }
                }
            }
        }
        info.potential = Some(post_phi.value);
        info.monitor = Some(value);
        self.last_potential = post_phi;
        Ok(info)
    }
}

fn bool_value(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `max(1, 2 - 2/OPT)`: the ratio bound, clamped where the formula falls
/// below one (OPT = 1).
pub fn ratio_bound(opt: Rational) -> Rational {
    if opt.is_zero() {
        return Rational::one();
    }
    let b = Rational::from_integer(2) - Rational::from_integer(2) / opt;
    b.max(Rational::one())
}

#[cfg(test)]
mod tests;
