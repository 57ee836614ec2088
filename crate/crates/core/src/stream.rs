//! Online instances: arrival events, streams, replay and the JSON Lines
//! instance format.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Result, StreamError};
use crate::graph::{Edge, Graph};

/// An element that can carry a value: a vertex (by arrival ordinal) or a
/// canonical edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ElementId {
    Vertex(usize),
    Edge(Edge),
}

impl std::fmt::Display for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElementId::Vertex(v) => write!(f, "v{v}"),
            ElementId::Edge(e) => write!(f, "e{e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrivalModel {
    VertexArrival,
    EdgeArrival,
}

impl ArrivalModel {
    pub fn name(&self) -> &'static str {
        match self {
            ArrivalModel::VertexArrival => "vertex-arrival",
            ArrivalModel::EdgeArrival => "edge-arrival",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArrivalEvent {
    /// A new vertex together with its edges to earlier vertices.
    Vertex { v: usize, adj: Vec<usize> },
    /// A new edge; unseen endpoints are revealed implicitly.
    Edge { e: [usize; 2] },
}

impl ArrivalEvent {
    pub fn vertex(v: usize, adj: impl Into<Vec<usize>>) -> Self {
        ArrivalEvent::Vertex { v, adj: adj.into() }
    }

    pub fn edge(u: usize, v: usize) -> Self {
        ArrivalEvent::Edge { e: [u, v] }
    }

    pub fn model(&self) -> ArrivalModel {
        match self {
            ArrivalEvent::Vertex { .. } => ArrivalModel::VertexArrival,
            ArrivalEvent::Edge { .. } => ArrivalModel::EdgeArrival,
        }
    }
}

/// What one event added to the graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Arrival {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Graph {
    /// Applies `event` (the `index`-th of its stream), validating it first;
    /// on error the graph is left untouched.
    pub fn apply(&mut self, index: usize, event: &ArrivalEvent) -> Result<Arrival, StreamError> {
        match event {
            ArrivalEvent::Vertex { v, adj } => {
                let expected = self.vertex_count();
                if *v != expected {
                    return Err(StreamError::OutOfOrderVertex {
                        event: index,
                        expected,
                        got: *v,
                    });
                }
                let mut seen = std::collections::HashSet::new();
                for &u in adj {
                    if u == *v {
                        return Err(StreamError::SelfLoop {
                            event: index,
                            vertex: u,
                        });
                    }
                    if !self.is_revealed(u) {
                        return Err(StreamError::UnknownNeighbor {
                            event: index,
                            neighbor: u,
                        });
                    }
                    if !seen.insert(u) {
                        return Err(StreamError::DuplicateEdge {
                            event: index,
                            u: u.min(*v),
                            v: u.max(*v),
                        });
                    }
                }
                self.reveal(*v);
                let mut edges: Vec<Edge> = adj.iter().map(|&u| Edge::new(u, *v)).collect();
                edges.sort_unstable();
                for e in &edges {
                    self.insert_edge(*e);
                }
                Ok(Arrival {
                    vertices: vec![*v],
                    edges,
                })
            }
            ArrivalEvent::Edge { e: [a, b] } => {
                if a == b {
                    return Err(StreamError::SelfLoop {
                        event: index,
                        vertex: *a,
                    });
                }
                let e = Edge::new(*a, *b);
                if self.has_edge(e.u, e.v) {
                    return Err(StreamError::DuplicateEdge {
                        event: index,
                        u: e.u,
                        v: e.v,
                    });
                }
                let mut vertices = Vec::new();
                for x in [e.u, e.v] {
                    if !self.is_revealed(x) {
                        self.reveal(x);
                        vertices.push(x);
                    }
                }
                self.insert_edge(e);
                Ok(Arrival {
                    vertices,
                    edges: vec![e],
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventStream {
    pub model: ArrivalModel,
    pub events: Vec<ArrivalEvent>,
    pub label: String,
}

impl EventStream {
    pub fn new(model: ArrivalModel, label: impl Into<String>) -> Self {
        EventStream {
            model,
            events: Vec::new(),
            label: label.into(),
        }
    }

    pub fn with_events(model: ArrivalModel, label: impl Into<String>, events: Vec<ArrivalEvent>) -> Self {
        EventStream {
            model,
            events,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Checks every event against the model and replays the stream.
    pub fn validate(&self) -> Result<Graph, StreamError> {
        let mut g = Graph::new();
        for (i, ev) in self.events.iter().enumerate() {
            self.check_model(i, ev)?;
            g.apply(i, ev)?;
        }
        Ok(g)
    }

    pub(crate) fn check_model(&self, index: usize, ev: &ArrivalEvent) -> Result<(), StreamError> {
        if ev.model() != self.model {
            return Err(StreamError::MixedModel {
                event: index,
                model: self.model.name(),
                found: ev.model().name(),
            });
        }
        Ok(())
    }

    pub fn final_graph(&self) -> Result<Graph, StreamError> {
        self.validate()
    }

    /// Reads a JSON Lines instance. The model is taken from the first
    /// event; blank lines are skipped.
    pub fn read_jsonl(reader: impl BufRead, label: impl Into<String>) -> Result<Self> {
        let mut events = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let ev: ArrivalEvent = serde_json::from_str(trimmed).map_err(|e| StreamError::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            events.push(ev);
        }
        let model = events.first().map(|e| e.model()).unwrap_or(ArrivalModel::VertexArrival);
        let stream = EventStream::with_events(model, label, events);
        stream.validate()?;
        Ok(stream)
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        for ev in &self.events {
            serde_json::to_writer(&mut out, ev)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }
}

/// The revealed graph after every prefix of `stream`.
pub fn replay(stream: &EventStream) -> Result<Vec<Graph>, StreamError> {
    let mut g = Graph::new();
    let mut out = Vec::with_capacity(stream.len());
    for (i, ev) in stream.events.iter().enumerate() {
        stream.check_model(i, ev)?;
        g.apply(i, ev)?;
        out.push(g.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stream_replays_to_nothing() {
        let s = EventStream::new(ArrivalModel::VertexArrival, "empty");
        assert!(replay(&s).unwrap().is_empty());
    }

    #[test]
    fn two_vertex_stream() {
        let s = EventStream::with_events(
            ArrivalModel::VertexArrival,
            "k2",
            vec![ArrivalEvent::vertex(0, []), ArrivalEvent::vertex(1, [0])],
        );
        let gs = replay(&s).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!((gs[0].revealed_count(), gs[0].edge_count()), (1, 0));
        assert_eq!((gs[1].revealed_count(), gs[1].edge_count()), (2, 1));
        assert!(gs[1].has_edge(0, 1));
    }

    #[test]
    fn edge_stream_builds_p3() {
        let s = EventStream::with_events(
            ArrivalModel::EdgeArrival,
            "p3",
            vec![ArrivalEvent::edge(0, 1), ArrivalEvent::edge(1, 2)],
        );
        let g = s.final_graph().unwrap();
        assert_eq!(g.revealed_count(), 3);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn malformed_streams_are_rejected() {
        let dup = EventStream::with_events(
            ArrivalModel::EdgeArrival,
            "dup",
            vec![ArrivalEvent::edge(0, 1), ArrivalEvent::edge(1, 0)],
        );
        assert_eq!(dup.validate(), Err(StreamError::DuplicateEdge { event: 1, u: 0, v: 1 }));

        let unknown = EventStream::with_events(
            ArrivalModel::VertexArrival,
            "unknown",
            vec![ArrivalEvent::vertex(0, []), ArrivalEvent::vertex(1, [4])],
        );
        assert_eq!(
            unknown.validate(),
            Err(StreamError::UnknownNeighbor { event: 1, neighbor: 4 })
        );

        let mixed = EventStream::with_events(
            ArrivalModel::VertexArrival,
            "mixed",
            vec![ArrivalEvent::vertex(0, []), ArrivalEvent::edge(0, 1)],
        );
        assert!(matches!(
            mixed.validate(),
            Err(StreamError::MixedModel { event: 1, .. })
        ));

        let skip = EventStream::with_events(ArrivalModel::VertexArrival, "skip", vec![ArrivalEvent::vertex(1, [])]);
        assert!(matches!(skip.validate(), Err(StreamError::OutOfOrderVertex { .. })));
    }

    #[test]
    fn jsonl_round_trip() {
        let text = "{\"v\":0,\"adj\":[]}\n{\"v\":1,\"adj\":[0]}\n\n{\"v\":2,\"adj\":[0,1]}\n";
        let s = EventStream::read_jsonl(text.as_bytes(), "tri").unwrap();
        assert_eq!(s.model, ArrivalModel::VertexArrival);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_jsonl(), text.replace("\n\n", "\n"));

        let edges = "{\"e\":[0,1]}\n{\"e\":[2,1]}\n";
        let s = EventStream::read_jsonl(edges.as_bytes(), "p3").unwrap();
        assert_eq!(s.model, ArrivalModel::EdgeArrival);
        assert_eq!(s.to_jsonl(), edges);
    }

    #[test]
    fn jsonl_reports_the_bad_line() {
        let text = "{\"v\":0,\"adj\":[]}\n{\"w\":1}\n";
        let err = EventStream::read_jsonl(text.as_bytes(), "bad").unwrap_err();
        assert!(matches!(err, crate::Error::Stream(StreamError::Parse { line: 2, .. })));
    }
}
