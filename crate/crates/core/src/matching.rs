//! L-Greedy: greedy matching plus elimination of short augmenting paths.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algorithm::{OnlineAlgorithm, StepInfo};
use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::ledger::RecourseLedger;
use crate::problem::Problem;
use crate::rational::{Rational, SymmetricRatio};
use crate::stream::{ArrivalEvent, ElementId};

/// `(L, t*)` for a target ratio `t` in `(1, 2)`: `t* = 1 + 1/j` for the
/// smallest integer `j` with `t* <= t`, and `L = j - 1`.
pub fn l_from_t(t: Rational) -> Result<(usize, Rational)> {
    if t <= Rational::one() || t >= Rational::from_integer(2) {
        return Err(Error::Parameter(format!("t must lie in (1, 2), got {t}")));
    }
    let inv = (t - Rational::one()).recip();
    let j = inv.ceil().to_integer();
    Ok(((j - 1) as usize, Rational::one() + Rational::new(1, j)))
}

/// `t* = (L + 2) / (L + 1)`.
pub fn t_star_for(l: usize) -> Rational {
    Rational::new(l as i64 + 2, l as i64 + 1)
}

pub fn ratio_bound(l: usize) -> Rational {
    t_star_for(l)
}

/// Amortized recourse bound for a given `t*`.
pub fn recourse_bound(t_star: Rational) -> Rational {
    let one = Rational::one();
    let two = Rational::from_integer(2);
    let three = Rational::from_integer(3);
    (two - t_star) / ((t_star - one) * (three - t_star)) + (t_star - one) / (three - t_star)
}

/// `OPT / |M|`, with `0/0 = 1`.
pub fn lgreedy_ratio_check(matching_size: usize, oracle_value: Rational) -> SymmetricRatio {
    SymmetricRatio::of(Rational::from_integer(matching_size as i64), oracle_value)
}

fn canonical(path: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = path.iter().rev().copied().collect();
    if rev.as_slice() < path {
        rev
    } else {
        path.to_vec()
    }
}

/// Shortest augmenting path with at most `max_len` edges; among the
/// shortest, the lexicographically smallest vertex sequence (a path and
/// its reverse are the same path). The search is exhaustive.
pub fn find_augmenting_path(g: &Graph, mate: &[Option<usize>], max_len: usize) -> Option<Vec<usize>> {
    let free = |v: usize| mate.get(v).copied().flatten().is_none();
    let starts: Vec<usize> = g.vertices().filter(|&v| free(v) && g.degree(v) > 0).collect();
    let mut len = 1;
    while len <= max_len {
        let mut best: Option<Vec<usize>> = None;
        for &s in &starts {
            let mut path = vec![s];
            let mut on_path = vec![false; g.vertex_count()];
            on_path[s] = true;
            extend(g, mate, len, &mut path, &mut on_path, &mut best);
        }
        if best.is_some() {
            return best;
        }
        len += 2;
    }
    None
}

fn extend(
    g: &Graph,
    mate: &[Option<usize>],
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut Option<Vec<usize>>,
) {
    let x = *path.last().unwrap();
    for &w in g.neighbors(x) {
        if on_path[w] || mate[x] == Some(w) {
            continue;
        }
        let edges = path.len();
        match mate[w] {
            None => {
                if edges == len {
                    path.push(w);
                    let c = canonical(path);
                    if best.as_ref().is_none_or(|b| c < *b) {
                        *best = Some(c);
                    }
                    path.pop();
                }
            }
            Some(m) => {
                if edges + 2 <= len && !on_path[m] {
                    on_path[w] = true;
                    on_path[m] = true;
                    path.push(w);
                    path.push(m);
                    extend(g, mate, len, path, on_path, best);
                    path.pop();
                    path.pop();
                    on_path[w] = false;
                    on_path[m] = false;
                }
            }
        }
    }
}

pub struct LGreedy {
    l: usize,
    graph: Graph,
    assignment: Assignment,
    mate: Vec<Option<usize>>,
    ledger: RecourseLedger,
    events: usize,
}

impl LGreedy {
    pub fn new(l: usize) -> Self {
        LGreedy {
            l,
            graph: Graph::new(),
            assignment: Problem::Matching.empty_assignment(),
            mate: Vec::new(),
            ledger: RecourseLedger::new(),
            events: 0,
        }
    }

    pub fn from_t(t: Rational) -> Result<Self> {
        Ok(Self::new(l_from_t(t)?.0))
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t_star(&self) -> Rational {
        t_star_for(self.l)
    }

    pub fn max_path_len(&self) -> usize {
        2 * self.l + 1
    }

    pub fn mate(&self) -> &[Option<usize>] {
        &self.mate
    }

    pub fn matching_size(&self) -> usize {
        self.assignment.accepted_edges().len()
    }

    fn set_edge(&mut self, e: Edge, on: bool, arriving: &BTreeSet<Edge>) -> Result<()> {
        let x = ElementId::Edge(e);
        let old = self.assignment.get(x);
        let new = if on { Rational::one() } else { Rational::zero() };
        self.assignment.set(x, new)?;
        if arriving.contains(&e) {
            self.ledger.record_arrival_change(self.events, x, old, new);
        } else {
            self.ledger.record_late(self.events, x, old, new);
        }
        Ok(())
    }

    /// Flips an augmenting path, logging every changed edge.
    fn flip(&mut self, path: &[usize], arriving: &BTreeSet<Edge>) -> Result<usize> {
        let before = self.ledger.type1_total();
        for (i, w) in path.windows(2).enumerate() {
            self.set_edge(Edge::new(w[0], w[1]), i % 2 == 0, arriving)?;
        }
        for w in path.windows(2).step_by(2) {
            self.mate[w[0]] = Some(w[1]);
            self.mate[w[1]] = Some(w[0]);
        }
        Ok(self.ledger.type1_total() - before)
    }
}

impl OnlineAlgorithm for LGreedy {
    fn name(&self) -> String {
        format!("lgreedy(L={})", self.l)
    }

    fn problem(&self) -> Problem {
        Problem::Matching
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
        let arrival = self.graph.apply(self.events, event)?;
        self.mate.resize(self.graph.vertex_count(), None);
        let arriving: BTreeSet<Edge> = arrival.edges.iter().copied().collect();
        for (x, v) in Problem::Matching.greedy(&self.graph, &self.assignment, &arrival) {
            if let (ElementId::Edge(e), true) = (x, v.is_one()) {
                self.set_edge(e, true, &arriving)?;
                self.mate[e.u] = Some(e.v);
                self.mate[e.v] = Some(e.u);
            }
        }
        let mut late = 0;
        while let Some(path) = find_augmenting_path(&self.graph, &self.mate, self.max_path_len()) {
            late += self.flip(&path, &arriving)?;
        }
        self.events += 1;
        Ok(StepInfo {
            late_ops: late,
            ..StepInfo::default()
        })
    }
}

/// Recourse attributed to one connected component of the union of the
/// algorithm's and an optimal matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub edges: usize,
    pub recourse: usize,
}

/// Splits late operations by component of `alg ∪ opt`. The second value is
/// the recourse on edges outside that union.
pub fn component_accounting(alg: &[Edge], opt: &[Edge], ledger: &RecourseLedger) -> (Vec<ComponentRecord>, usize) {
    let union: BTreeSet<Edge> = alg.iter().chain(opt).copied().collect();
    let mut parent: HashMap<usize, usize> = HashMap::new();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let up = *p.entry(x).or_insert(x);
        if up == x {
            return x;
        }
        let r = find(p, up);
        p.insert(x, r);
        r
    }
    for e in &union {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let mut comps: HashMap<usize, ComponentRecord> = HashMap::new();
    for e in &union {
        let r = find(&mut parent, e.u);
        comps
            .entry(r)
            .or_insert(ComponentRecord { edges: 0, recourse: 0 })
            .edges += 1;
    }
    let mut outside = 0;
    for entry in ledger.late_entries() {
        if let ElementId::Edge(e) = entry.element {
            if union.contains(&e) {
                let r = find(&mut parent, e.u);
                comps.get_mut(&r).expect("component").recourse += 1;
            } else {
                outside += 1;
            }
        }
    }
    let mut out: Vec<(usize, ComponentRecord)> = comps.into_iter().collect();
    out.sort_by_key(|(r, _)| *r);
    (out.into_iter().map(|(_, c)| c).collect(), outside)
}

/// Closed form `(1 + n(n+1)) / (2n + 1)` for the per-component bound with
/// paths of up to `2n + 1` edges eliminated.
pub fn component_bound(l: usize) -> Rational {
    let n = l as i64;
    Rational::new(1 + n * (n + 1), 2 * n + 1)
}
