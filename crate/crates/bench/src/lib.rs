//! Benchmark fixtures.

use recourse_lab::adversaries::gen_random;
use recourse_lab::stream::replay;
use recourse_lab::{ArrivalModel, EventStream, Graph};

pub fn stream(model: ArrivalModel, n: usize, p: f64, seed: u64) -> EventStream {
    gen_random(model, n, p, seed).expect("valid probability")
}

pub fn graph(n: usize, p: f64, seed: u64) -> Graph {
    let s = stream(ArrivalModel::VertexArrival, n, p, seed);
    replay(&s).expect("generated streams replay").pop().unwrap_or_default()
}
