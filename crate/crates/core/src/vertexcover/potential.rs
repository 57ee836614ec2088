use num_traits::Zero;
use serde::Serialize;

use super::{DuoHalve, EdgeState};
use crate::rational::{frac, serde_rational, Rational};

/// Per-event bound on late operations plus potential change.
pub const MONITOR_BOUND: (i64, i64) = (10, 3);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PotentialSnapshot {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub expired_half: usize,
    pub accepted_top: usize,
    pub me2_free: bool,
    pub state: Option<u8>,
}

impl Default for PotentialSnapshot {
    fn default() -> Self {
        PotentialSnapshot {
            value: Rational::zero(),
            expired_half: 0,
            accepted_top: 0,
            me2_free: false,
            state: None,
        }
    }
}

pub(super) fn snapshot(dh: &DuoHalve) -> PotentialSnapshot {
    let top: Vec<_> = [dh.me1, dh.me2].into_iter().flatten().collect();
    let expired_half = dh
        .matching
        .iter()
        .filter(|e| !top.contains(e) && matches!(dh.edge_state(**e), EdgeState::Half(_)))
        .count();
    let accepted_top = dh.top_endpoints().iter().filter(|&&x| dh.is_accepted(x)).count();
    let me2_free = dh
        .me2
        .is_some_and(|e| matches!(dh.edge_state(e), EdgeState::Half(_)) && is_free(dh));
    let value = Rational::from_integer(expired_half as i64)
        + frac(accepted_top as i64, 3)
        + if me2_free { frac(2, 3) } else { Rational::zero() };
    PotentialSnapshot {
        value,
        expired_half,
        accepted_top,
        me2_free,
        state: dh.classify_state(),
    }
}

/// me2 can be halved by accepting either endpoint, for some choice on me1
/// and everything else fixed.
fn is_free(dh: &DuoHalve) -> bool {
    let endpoints = dh.top_endpoints();
    [(true, false), (false, true)].into_iter().all(|(a, b)| {
        [1u32, 2]
            .into_iter()
            .any(|m| dh.config_valid(&endpoints, &[m & 1 == 1, m & 2 == 2, a, b]))
    })
}

/// `lo + ΔΦ <= 10/3`. Late accepts of vertices on expired edges (`k`) cost
/// one each and lower Φ by one each, so they cancel.
pub fn monitor_step(pre: &PotentialSnapshot, post: &PotentialSnapshot, lo: usize, k: usize) -> bool {
    let lo = Rational::from_integer(lo as i64 - k as i64);
    let delta = post.value - pre.value + Rational::from_integer(k as i64);
    lo + delta <= frac(MONITOR_BOUND.0, MONITOR_BOUND.1)
}

/// Worst-case `LO + ΔΦ` for a transition between matching states, or
/// `None` if the transition cannot occur.
pub fn transition_bound(from: u8, to: u8, shift: bool) -> Option<Rational> {
    type Cell = Option<(i64, i64)>;
    const X: Cell = None;
    const fn r(n: i64, d: i64) -> Cell {
        Some((n, d))
    }
    // [from][to] = (without shift, with shift)
    const TABLE: [[(Cell, Cell); 6]; 6] = [
        [
            (r(0, 1), X),
            (r(2, 1), X),
            (r(4, 3), X),
            (r(4, 3), r(4, 3)),
            (r(10, 3), r(1, 3)),
            (X, X),
        ],
        [
            (r(2, 1), X),
            (r(0, 1), X),
            (r(4, 3), X),
            (r(10, 3), r(4, 3)),
            (r(4, 3), r(1, 3)),
            (X, X),
        ],
        [
            (r(2, 3), r(2, 3)),
            (r(2, 3), r(-1, 3)),
            (r(0, 1), X),
            (r(2, 1), r(2, 1)),
            (r(2, 1), r(1, 1)),
            (X, X),
        ],
        [
            (r(4, 3), X),
            (r(10, 3), X),
            (r(8, 3), X),
            (r(4, 3), r(8, 3)),
            (r(10, 3), r(5, 3)),
            (r(8, 3), X),
        ],
        [
            (r(10, 3), X),
            (r(4, 3), X),
            (r(8, 3), X),
            (r(10, 3), r(8, 3)),
            (r(4, 3), r(5, 3)),
            (r(8, 3), X),
        ],
        [
            (r(2, 1), r(2, 1)),
            (r(2, 1), r(1, 1)),
            (r(4, 3), X),
            (r(2, 1), r(10, 3)),
            (r(2, 1), r(7, 3)),
            (r(4, 3), X),
        ],
    ];
    if !(1..=6).contains(&from) || !(1..=6).contains(&to) {
        return None;
    }
    let (plain, shifted) = TABLE[from as usize - 1][to as usize - 1];
    let cell = if shift { shifted } else { plain };
    cell.map(|(n, d)| frac(n, d))
}
