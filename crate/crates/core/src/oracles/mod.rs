//! Exact offline solvers and the yardstick interface.

mod bipartite;
mod blossom;
mod branch;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::assignment::Assignment;
use crate::error::{Error, OracleError, Result};
use crate::graph::{Edge, Graph, GraphKey};
use crate::problem::Problem;
use crate::rational::{frac, Rational};
use crate::stream::{ElementId, EventStream};

pub const DEFAULT_ORACLE_CAP: usize = 40;
pub const MAX_ORACLE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YardstickResult {
    pub value: Rational,
    pub assignment: Assignment,
}

impl YardstickResult {
    fn new(problem: Problem, values: impl IntoIterator<Item = (ElementId, Rational)>) -> Self {
        let mut assignment = problem.empty_assignment();
        for (x, v) in values {
            assignment.set(x, v).expect("oracle values lie in the problem range");
        }
        YardstickResult {
            value: assignment.total(),
            assignment,
        }
    }
}

/// Revealed vertices renumbered densely.
struct Local {
    ids: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Local {
    fn of(g: &Graph) -> Self {
        let ids: Vec<usize> = g.vertices().collect();
        let mut index = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).iter().map(|&w| index[w]).collect())
            .collect();
        Local { ids, adj }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    /// König cover of a bipartite graph, in local ids.
    fn konig(&self, side: &[bool]) -> Vec<bool> {
        let left: Vec<usize> = (0..self.n()).filter(|&v| !side[v]).collect();
        let right: Vec<usize> = (0..self.n()).filter(|&v| side[v]).collect();
        let mut pos = vec![0; self.n()];
        for (i, &v) in right.iter().enumerate() {
            pos[v] = i;
        }
        let left_adj: Vec<Vec<usize>> = left
            .iter()
            .map(|&l| self.adj[l].iter().map(|&r| pos[r]).collect())
            .collect();
        let (cl, cr) = bipartite::konig_cover(&left_adj, right.len());
        let mut cover = vec![false; self.n()];
        for (i, &l) in left.iter().enumerate() {
            cover[l] = cl[i];
        }
        for (i, &r) in right.iter().enumerate() {
            cover[r] = cr[i];
        }
        cover
    }
}

/// Whether the exact branch-and-bound route is used for a graph of this
/// size, or the bipartite fallback.
fn bitmask_route(n: usize, cap: usize, g: &Graph) -> Result<Option<Vec<bool>>, OracleError> {
    if n <= cap {
        return Ok(None);
    }
    let local = Local::of(g);
    match local_bipartition(&local) {
        Some(side) => Ok(Some(side)),
        None => Err(OracleError::Scale { vertices: n, cap }),
    }
}

fn local_bipartition(local: &Local) -> Option<Vec<bool>> {
    let g = Graph::from_edges(
        local.n(),
        local
            .adj
            .iter()
            .enumerate()
            .flat_map(|(v, ns)| ns.iter().filter(move |&&w| v < w).map(move |&w| (v, w))),
    );
    g.bipartition()
}

fn ones(ids: impl IntoIterator<Item = usize>) -> impl Iterator<Item = (ElementId, Rational)> {
    ids.into_iter().map(|v| (ElementId::Vertex(v), Rational::one()))
}

fn mis_with_cap(g: &Graph, cap: usize, witness: bool) -> Result<YardstickResult, OracleError> {
    let local = Local::of(g);
    if let Some(side) = bitmask_route(local.n(), cap, g)? {
        let cover = local.konig(&side);
        let set = (0..local.n()).filter(|&v| !cover[v]).map(|v| local.ids[v]);
        return Ok(YardstickResult::new(Problem::IndependentSet, ones(set)));
    }
    let bg = branch::BitGraph::new(&local.adj);
    if !witness {
        let mut r = YardstickResult::new(Problem::IndependentSet, []);
        r.value = Rational::from_integer(bg.max_independent_set() as i64);
        return Ok(r);
    }
    let set = bg.lex_max_independent_set().into_iter().map(|v| local.ids[v]);
    Ok(YardstickResult::new(Problem::IndependentSet, ones(set)))
}

fn mvc_with_cap(g: &Graph, cap: usize, witness: bool) -> Result<YardstickResult, OracleError> {
    let local = Local::of(g);
    if let Some(side) = bitmask_route(local.n(), cap, g)? {
        let cover = local.konig(&side);
        let set = (0..local.n()).filter(|&v| cover[v]).map(|v| local.ids[v]);
        return Ok(YardstickResult::new(Problem::VertexCover, ones(set)));
    }
    let bg = branch::BitGraph::new(&local.adj);
    if !witness {
        let mut r = YardstickResult::new(Problem::VertexCover, []);
        r.value = Rational::from_integer(bg.min_vertex_cover() as i64);
        return Ok(r);
    }
    let set = bg.lex_min_vertex_cover().into_iter().map(|v| local.ids[v]);
    Ok(YardstickResult::new(Problem::VertexCover, ones(set)))
}

fn matching(g: &Graph, witness: bool) -> YardstickResult {
    let local = Local::of(g);
    if !witness {
        let mut r = YardstickResult::new(Problem::Matching, []);
        r.value = Rational::from_integer(blossom::matching_size(&local.adj) as i64);
        return r;
    }
    let edges = blossom::lex_maximum_matching(&local.adj)
        .into_iter()
        .map(|(a, b)| (ElementId::Edge(Edge::new(local.ids[a], local.ids[b])), Rational::one()));
    YardstickResult::new(Problem::Matching, edges)
}

fn fractional_cover(g: &Graph) -> YardstickResult {
    let local = Local::of(g);
    let (cl, cr) = bipartite::konig_cover(&local.adj, local.n());
    let values = (0..local.n()).filter_map(|v| {
        let k = cl[v] as i64 + cr[v] as i64;
        (k > 0).then(|| (ElementId::Vertex(local.ids[v]), frac(k, 2)))
    });
    YardstickResult::new(Problem::FractionalVertexCover, values)
}

/// Maximum independent set with the default cap.
pub fn max_independent_set(g: &Graph) -> Result<YardstickResult, OracleError> {
    mis_with_cap(g, DEFAULT_ORACLE_CAP, true)
}

/// Minimum vertex cover with the default cap.
pub fn min_vertex_cover(g: &Graph) -> Result<YardstickResult, OracleError> {
    mvc_with_cap(g, DEFAULT_ORACLE_CAP, true)
}

pub fn max_matching(g: &Graph) -> YardstickResult {
    matching(g, true)
}

/// Optimum of the vertex-cover LP relaxation (half-integral).
pub fn min_fractional_vertex_cover(g: &Graph) -> YardstickResult {
    fractional_cover(g)
}

/// Reference solution provider for Target-and-Switch.
pub trait Yardstick: Send + Sync {
    fn name(&self) -> &'static str;

    /// Approximation factor; exactly one for exact solvers.
    fn alpha(&self) -> Rational;

    fn supports(&self, problem: Problem) -> bool;

    fn solve(&self, problem: Problem, g: &Graph) -> Result<YardstickResult, OracleError>;

    fn value(&self, problem: Problem, g: &Graph) -> Result<Rational, OracleError> {
        Ok(self.solve(problem, g)?.value)
    }
}

type CacheKey = (Problem, GraphKey);

#[derive(Default)]
struct Cache {
    values: Mutex<HashMap<CacheKey, Rational>>,
    witnesses: Mutex<HashMap<CacheKey, YardstickResult>>,
}

/// Exact solvers behind a shared memo table. Clones share the cache.
#[derive(Clone)]
pub struct ExactOracle {
    cap: usize,
    cache: Arc<Cache>,
}

impl std::fmt::Debug for ExactOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExactOracle").field("cap", &self.cap).finish()
    }
}

impl Default for ExactOracle {
    fn default() -> Self {
        ExactOracle {
            cap: DEFAULT_ORACLE_CAP,
            cache: Arc::default(),
        }
    }
}

impl ExactOracle {
    pub fn new(cap: usize) -> Result<Self> {
        if cap > MAX_ORACLE_CAP {
            return Err(Error::Parameter(format!(
                "oracle cap {cap} exceeds the supported maximum {MAX_ORACLE_CAP}"
            )));
        }
        Ok(ExactOracle {
            cap,
            cache: Arc::default(),
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn compute(&self, problem: Problem, g: &Graph, witness: bool) -> Result<YardstickResult, OracleError> {
        match problem {
            Problem::IndependentSet => mis_with_cap(g, self.cap, witness),
            Problem::VertexCover => mvc_with_cap(g, self.cap, witness),
            Problem::Matching => Ok(matching(g, witness)),
            Problem::FractionalVertexCover => Ok(fractional_cover(g)),
        }
    }
}

impl Yardstick for ExactOracle {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn alpha(&self) -> Rational {
        Rational::one()
    }

    fn supports(&self, _: Problem) -> bool {
        true
    }

    fn solve(&self, problem: Problem, g: &Graph) -> Result<YardstickResult, OracleError> {
        let key = (problem, g.key());
        if let Some(r) = self.cache.witnesses.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let r = self.compute(problem, g, true)?;
        self.cache.values.lock().unwrap().insert(key, r.value);
        self.cache.witnesses.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    fn value(&self, problem: Problem, g: &Graph) -> Result<Rational, OracleError> {
        let key = (problem, g.key());
        if let Some(v) = self.cache.values.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = self.compute(problem, g, false)?.value;
        self.cache.values.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

/// Greedy maximal matching in edge insertion order: a 2-approximation for
/// matching, and its endpoints a 2-approximate vertex cover. Both values
/// only grow as the graph grows.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyYardstick;

impl GreedyYardstick {
    fn maximal_matching(g: &Graph) -> Vec<Edge> {
        let mut used = vec![false; g.vertex_count()];
        let mut out = Vec::new();
        for &e in g.edges() {
            if !used[e.u] && !used[e.v] {
                used[e.u] = true;
                used[e.v] = true;
                out.push(e);
            }
        }
        out
    }
}

impl Yardstick for GreedyYardstick {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn alpha(&self) -> Rational {
        Rational::from_integer(2)
    }

    fn supports(&self, problem: Problem) -> bool {
        matches!(problem, Problem::Matching | Problem::VertexCover)
    }

    fn solve(&self, problem: Problem, g: &Graph) -> Result<YardstickResult, OracleError> {
        let m = Self::maximal_matching(g);
        match problem {
            Problem::Matching => Ok(YardstickResult::new(
                problem,
                m.into_iter().map(|e| (ElementId::Edge(e), Rational::one())),
            )),
            Problem::VertexCover => Ok(YardstickResult::new(
                problem,
                ones(m.into_iter().flat_map(|e| [e.u, e.v])),
            )),
            _ => Err(OracleError::Unsupported {
                yardstick: "greedy",
                problem: problem.name(),
            }),
        }
    }
}

/// True iff the yardstick's value never decreases along the prefixes of
/// `stream`.
pub fn verify_incremental(y: &dyn Yardstick, problem: Problem, stream: &EventStream) -> Result<bool> {
    let mut g = Graph::new();
    let mut prev = Rational::zero();
    for (i, ev) in stream.events.iter().enumerate() {
        g.apply(i, ev)?;
        let v = y.value(problem, &g)?;
        if v < prev {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}
