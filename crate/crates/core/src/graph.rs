use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

/// Undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonical edge between `a` and `b`. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop ({a}, {a})");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Memo key for per-prefix oracle calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphKey {
    pub vertices: usize,
    pub edges: usize,
    pub digest: u64,
}

/// Simple undirected graph that only grows.
///
/// Vertex ids are dense indices. In edge-arrival streams an id may be
/// reserved before it is mentioned; such vertices are kept isolated and
/// marked unrevealed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    revealed: Vec<bool>,
    edges: Vec<Edge>,
    edge_set: HashSet<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `n` revealed vertices with the given edges (test and
    /// generator convenience; duplicate edges are ignored).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.reveal(v);
        }
        for (a, b) in edges {
            let e = Edge::new(a, b);
            if !g.has_edge(e.u, e.v) {
                g.insert_edge(e);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn revealed_count(&self) -> usize {
        self.revealed.iter().filter(|r| **r).count()
    }

    pub fn is_revealed(&self, v: usize) -> bool {
        self.revealed.get(v).copied().unwrap_or(false)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_set.contains(&Edge::new(a, b))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|v| self.revealed[*v])
    }

    /// Marks `v` revealed, growing the id space if needed.
    pub fn reveal(&mut self, v: usize) {
        if v >= self.adj.len() {
            self.adj.resize_with(v + 1, Vec::new);
            self.revealed.resize(v + 1, false);
        }
        self.revealed[v] = true;
    }

    /// Inserts an edge between revealed vertices. Callers validate
    /// duplicates and self-loops.
    pub(crate) fn insert_edge(&mut self, e: Edge) {
        debug_assert!(self.is_revealed(e.u) && self.is_revealed(e.v));
        let pos = self.adj[e.u].binary_search(&e.v).unwrap_err();
        self.adj[e.u].insert(pos, e.v);
        let pos = self.adj[e.v].binary_search(&e.u).unwrap_err();
        self.adj[e.v].insert(pos, e.u);
        self.edges.push(e);
        self.edge_set.insert(e);
    }

    /// Edges sorted canonically.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut es = self.edges.clone();
        es.sort_unstable();
        es
    }

    pub fn key(&self) -> GraphKey {
        let mut h = DefaultHasher::new();
        self.adj.len().hash(&mut h);
        for (v, r) in self.revealed.iter().enumerate() {
            if *r {
                v.hash(&mut h);
            }
        }
        for e in self.sorted_edges() {
            e.hash(&mut h);
        }
        GraphKey {
            vertices: self.adj.len(),
            edges: self.edges.len(),
            digest: h.finish(),
        }
    }

    /// Two-colouring of the graph, if it is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for &y in &self.adj[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_stays_sorted() {
        let g = Graph::from_edges(4, [(3, 0), (0, 1), (2, 0)]);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.edges()[0], Edge::new(0, 3));
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn key_ignores_insertion_order() {
        let a = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let b = Graph::from_edges(3, [(1, 2), (0, 1)]);
        assert_eq!(a.key(), b.key());
        let c = Graph::from_edges(3, [(0, 1), (0, 2)]);
        assert_ne!(a.key(), c.key());
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            .bipartition()
            .is_some());
        assert!(Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).bipartition().is_none());
    }
}
