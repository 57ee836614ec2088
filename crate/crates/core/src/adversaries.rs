//! Instance generators: fixed lower-bound streams, an adaptive adversary and
//! random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::OnlineAlgorithm;
use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::stream::{ArrivalEvent, ArrivalModel, EventStream};

/// Chooses the next event from the revealed graph and the algorithm's
/// current assignment, or stops.
pub trait AdaptiveAdversary {
    fn model(&self) -> ArrivalModel;
    fn next_event(&mut self, graph: &Graph, assignment: &Assignment) -> Option<ArrivalEvent>;
}

/// Builds a complete bipartite graph, always growing the side that does not
/// hold the algorithm's solution. Stops right after the solution has moved
/// sides `switches` times, or after `budget` events.
#[derive(Debug, Clone)]
pub struct BipartiteIsAdversary {
    switches: usize,
    budget: usize,
    side: Vec<bool>,
    holding: Option<bool>,
    seen: usize,
}

impl BipartiteIsAdversary {
    pub fn new(t: Rational, switches: usize, budget: usize) -> Result<Self> {
        if t <= Rational::from_integer(1) || t > Rational::from_integer(2) {
            return Err(Error::Parameter(format!("adversary needs 1 < t <= 2, got {t}")));
        }
        Ok(BipartiteIsAdversary {
            switches,
            budget,
            side: Vec::new(),
            holding: None,
            seen: 0,
        })
    }

    /// Sides of the revealed vertices (`false` for the first side).
    pub fn sides(&self) -> &[bool] {
        &self.side
    }

    pub fn switches_seen(&self) -> usize {
        self.seen
    }
}

impl AdaptiveAdversary for BipartiteIsAdversary {
    fn model(&self) -> ArrivalModel {
        ArrivalModel::VertexArrival
    }

    fn next_event(&mut self, _graph: &Graph, assignment: &Assignment) -> Option<ArrivalEvent> {
        let held = assignment.accepted_vertices().first().map(|&v| self.side[v]);
        if let (Some(before), Some(now)) = (self.holding, held) {
            if before != now {
                self.seen += 1;
            }
        }
        if held.is_some() {
            self.holding = held;
        }
        if self.seen >= self.switches || self.side.len() >= self.budget {
            return None;
        }
        let side = !self.holding.unwrap_or(true);
        let v = self.side.len();
        let adj: Vec<usize> = (0..v).filter(|&u| self.side[u] != side).collect();
        self.side.push(side);
        Some(ArrivalEvent::vertex(v, adj))
    }
}

/// Drives `algorithm` with `adversary` and returns the emitted stream.
pub fn play(
    adversary: &mut dyn AdaptiveAdversary,
    algorithm: &mut dyn OnlineAlgorithm,
    label: &str,
) -> Result<EventStream> {
    let mut stream = EventStream::new(adversary.model(), label);
    while let Some(ev) = adversary.next_event(algorithm.graph(), algorithm.assignment()) {
        algorithm.step(&ev)?;
        stream.events.push(ev);
    }
    Ok(stream)
}

/// Path with `2n + 1` edges, revealed from the middle edge outwards,
/// alternating left and right.
pub fn gen_matching_path(n: usize) -> Result<EventStream> {
    if n == 0 {
        return Err(Error::Parameter("path instance needs n >= 1".into()));
    }
    let mut events = vec![ArrivalEvent::edge(n, n + 1)];
    for k in 1..=n {
        events.push(ArrivalEvent::edge(n - k, n - k + 1));
        events.push(ArrivalEvent::edge(n + k, n + k + 1));
    }
    Ok(EventStream::with_events(
        ArrivalModel::EdgeArrival,
        format!("path-{n}"),
        events,
    ))
}

/// Six-vertex vertex-cover prefix followed by `rounds` repeated pairs.
pub fn gen_vc_repeating_gadget(rounds: usize) -> EventStream {
    let mut events = vec![
        ArrivalEvent::vertex(0, vec![]),
        ArrivalEvent::vertex(1, vec![0]),
        ArrivalEvent::vertex(2, vec![0]),
        ArrivalEvent::vertex(3, vec![2]),
        ArrivalEvent::vertex(4, vec![1, 2]),
        ArrivalEvent::vertex(5, vec![4, 0]),
    ];
    // me2 = (p, q) with p accepted, me1 = (r, s) with s accepted.
    let (mut p, mut q, mut r, mut s) = (2, 3, 4, 5);
    for _ in 0..rounds {
        let x = events.len();
        let y = x + 1;
        events.push(ArrivalEvent::vertex(x, vec![q, r]));
        events.push(ArrivalEvent::vertex(y, vec![x, p]));
        (p, q, r, s) = (r, s, x, y);
    }
    EventStream::with_events(ArrivalModel::VertexArrival, format!("vc-gadget-{rounds}"), events)
}

/// `k` disjoint edges revealed endpoint by endpoint, then an apex adjacent
/// to all of them.
pub fn gen_vc_triangle_fan(k: usize) -> Result<EventStream> {
    if k == 0 {
        return Err(Error::Parameter("triangle fan needs k >= 1".into()));
    }
    let mut events = Vec::with_capacity(2 * k + 1);
    for i in 0..k {
        events.push(ArrivalEvent::vertex(2 * i, vec![]));
        events.push(ArrivalEvent::vertex(2 * i + 1, vec![2 * i]));
    }
    events.push(ArrivalEvent::vertex(2 * k, (0..2 * k).collect::<Vec<_>>()));
    Ok(EventStream::with_events(
        ArrivalModel::VertexArrival,
        format!("triangle-fan-{k}"),
        events,
    ))
}

/// G(n, p) in a uniformly random arrival order.
pub fn gen_random(model: ArrivalModel, n: usize, p: f64, seed: u64) -> Result<EventStream> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let label = format!("random-n{n}-p{p}-s{seed}");
    match model {
        ArrivalModel::VertexArrival => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let mut adj = vec![Vec::new(); n];
            for (a, b) in edges {
                let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                adj[y].push(x);
            }
            let events = adj
                .into_iter()
                .enumerate()
                .map(|(v, mut ns)| {
                    ns.sort_unstable();
                    ArrivalEvent::vertex(v, ns)
                })
                .collect();
            Ok(EventStream::with_events(model, label, events))
        }
        ArrivalModel::EdgeArrival => {
            edges.shuffle(&mut rng);
            let events = edges.into_iter().map(|(a, b)| ArrivalEvent::edge(a, b)).collect();
            Ok(EventStream::with_events(model, label, events))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_order_grows_outwards() {
        let s = gen_matching_path(2).unwrap();
        let edges: Vec<_> = s
            .events
            .iter()
            .map(|e| match e {
                ArrivalEvent::Edge { e } => (e[0], e[1]),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(edges, vec![(2, 3), (1, 2), (3, 4), (0, 1), (4, 5)]);
        assert_eq!(s.final_graph().unwrap().edge_count(), 5);
    }

    #[test]
    fn gadget_sizes() {
        assert_eq!(gen_vc_repeating_gadget(0).len(), 6);
        assert_eq!(gen_vc_repeating_gadget(3).len(), 12);
        gen_vc_repeating_gadget(10).validate().unwrap();
    }

    #[test]
    fn random_edge_cases() {
        let s = gen_random(ArrivalModel::VertexArrival, 5, 0.0, 1).unwrap();
        assert_eq!(s.final_graph().unwrap().edge_count(), 0);
        let k4 = gen_random(ArrivalModel::VertexArrival, 4, 1.0, 9).unwrap();
        assert_eq!(k4.final_graph().unwrap().edge_count(), 6);
        assert_eq!(
            gen_random(ArrivalModel::EdgeArrival, 12, 0.3, 5).unwrap(),
            gen_random(ArrivalModel::EdgeArrival, 12, 0.3, 5).unwrap()
        );
        assert!(gen_random(ArrivalModel::EdgeArrival, 3, 1.5, 0).is_err());
    }
}
