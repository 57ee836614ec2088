//! The built-in monotone-sum problems: feasibility and greedy arrival rules.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rational::{frac, Rational};
use crate::stream::{Arrival, ArrivalModel, ElementId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Maximize,
    Minimize,
}

/// Which graph elements carry values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementDomain {
    Vertices,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    IndependentSet,
    VertexCover,
    Matching,
    /// Fractional vertex cover restricted to half-integral values
    /// (`w_min = 1/2`, `w_max = 1`); the LP optimum is always half-integral.
    FractionalVertexCover,
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::IndependentSet => "is",
            Problem::VertexCover => "vc",
            Problem::Matching => "matching",
            Problem::FractionalVertexCover => "fvc",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "is" | "independent-set" => Ok(Problem::IndependentSet),
            "vc" | "vertex-cover" => Ok(Problem::VertexCover),
            "matching" | "mcm" => Ok(Problem::Matching),
            "fvc" | "fractional-vertex-cover" => Ok(Problem::FractionalVertexCover),
            other => Err(Error::Parameter(format!("unknown problem `{other}`"))),
        }
    }

    pub fn objective(&self) -> Objective {
        match self {
            Problem::IndependentSet | Problem::Matching => Objective::Maximize,
            Problem::VertexCover | Problem::FractionalVertexCover => Objective::Minimize,
        }
    }

    pub fn domain(&self) -> ElementDomain {
        match self {
            Problem::Matching => ElementDomain::Edges,
            _ => ElementDomain::Vertices,
        }
    }

    /// `(w_min, w_max)`.
    pub fn value_range(&self) -> (Rational, Rational) {
        match self {
            Problem::FractionalVertexCover => (frac(1, 2), Rational::one()),
            _ => (Rational::one(), Rational::one()),
        }
    }

    pub fn is_binary(&self) -> bool {
        let (lo, hi) = self.value_range();
        lo == hi && hi == Rational::one()
    }

    pub fn empty_assignment(&self) -> Assignment {
        let (lo, hi) = self.value_range();
        Assignment::new(lo, hi).expect("built-in ranges are valid")
    }

    /// Vertex-valued problems only make sense when vertices arrive.
    pub fn supports(&self, model: ArrivalModel) -> bool {
        match self {
            Problem::Matching => true,
            _ => model == ArrivalModel::VertexArrival,
        }
    }

    /// Number of value-carrying elements of `g` (the amortization
    /// denominator).
    pub fn element_count(&self, g: &Graph) -> usize {
        match self.domain() {
            ElementDomain::Vertices => g.revealed_count(),
            ElementDomain::Edges => g.edge_count(),
        }
    }

    /// Value-carrying elements introduced by an arrival.
    pub fn new_elements(&self, arrival: &Arrival) -> Vec<ElementId> {
        match self.domain() {
            ElementDomain::Vertices => arrival.vertices.iter().map(|v| ElementId::Vertex(*v)).collect(),
            ElementDomain::Edges => arrival.edges.iter().map(|e| ElementId::Edge(*e)).collect(),
        }
    }

    pub fn feasible(&self, g: &Graph, a: &Assignment) -> bool {
        if a.iter().any(|(_, v)| !a.in_domain(v)) {
            return false;
        }
        let one = Rational::one();
        match self {
            Problem::IndependentSet => g.edges().iter().all(|e| a.vertex(e.u) + a.vertex(e.v) <= one),
            Problem::VertexCover | Problem::FractionalVertexCover => {
                g.edges().iter().all(|e| a.vertex(e.u) + a.vertex(e.v) >= one)
            }
            Problem::Matching => {
                let loads = matching_loads(g, a);
                loads.iter().all(|l| *l <= one)
                    && a.iter()
                        .all(|(x, v)| v.is_zero() || matches!(x, ElementId::Edge(e) if g.has_edge(e.u, e.v)))
            }
        }
    }

    /// Greedy values for the elements of `arrival` given the current
    /// assignment on the already-extended graph: the largest feasible value
    /// for maximization, the smallest feasible value for minimization.
    pub fn greedy(&self, g: &Graph, a: &Assignment, arrival: &Arrival) -> Vec<(ElementId, Rational)> {
        let one = Rational::one();
        match self {
            Problem::IndependentSet => arrival
                .vertices
                .iter()
                .map(|&v| {
                    let blocked = g.neighbors(v).iter().any(|&u| !a.vertex(u).is_zero());
                    (ElementId::Vertex(v), if blocked { Rational::zero() } else { one })
                })
                .collect(),
            Problem::VertexCover => arrival
                .vertices
                .iter()
                .map(|&v| {
                    let uncovered = g.neighbors(v).iter().any(|&u| a.vertex(u).is_zero());
                    (ElementId::Vertex(v), if uncovered { one } else { Rational::zero() })
                })
                .collect(),
            Problem::FractionalVertexCover => arrival
                .vertices
                .iter()
                .map(|&v| {
                    let need = g
                        .neighbors(v)
                        .iter()
                        .map(|&u| one - a.vertex(u))
                        .max()
                        .unwrap_or_else(Rational::zero)
                        .max(Rational::zero());
                    (ElementId::Vertex(v), need)
                })
                .collect(),
            Problem::Matching => {
                let loads = matching_loads(g, a);
                let free = |x: usize| loads.get(x).is_none_or(|l| l.is_zero());
                if arrival.edges.len() == 1 {
                    let e = arrival.edges[0];
                    let val = if free(e.u) && free(e.v) { one } else { Rational::zero() };
                    return vec![(ElementId::Edge(e), val)];
                }
                // Vertex arrival: match the newcomer to its smallest free neighbour.
                let Some(&v) = arrival.vertices.first() else {
                    return Vec::new();
                };
                let partner = arrival.edges.iter().map(|e| e.other(v)).filter(|&u| free(u)).min();
                arrival
                    .edges
                    .iter()
                    .map(|e| {
                        let val = if Some(e.other(v)) == partner {
                            one
                        } else {
                            Rational::zero()
                        };
                        (ElementId::Edge(*e), val)
                    })
                    .collect()
            }
        }
    }
}

/// Sum of incident edge values per vertex.
pub(crate) fn matching_loads(g: &Graph, a: &Assignment) -> Vec<Rational> {
    let mut loads = vec![Rational::zero(); g.vertex_count()];
    for (x, v) in a.iter() {
        if let ElementId::Edge(Edge { u, v: w }) = x {
            if u < loads.len() && w < loads.len() {
                loads[u] += v;
                loads[w] += v;
            }
        }
    }
    loads
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
