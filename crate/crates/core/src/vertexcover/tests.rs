use super::*;
use crate::rational::{frac, int};

fn run(events: &[(usize, &[usize])]) -> (DuoHalve, Vec<StepInfo>) {
    let mut dh = DuoHalve::new();
    let infos = events
        .iter()
        .map(|&(v, adj)| dh.step(&ArrivalEvent::vertex(v, adj.to_vec())).unwrap())
        .collect();
    (dh, infos)
}

const GADGET: [(usize, &[usize]); 6] = [(0, &[]), (1, &[0]), (2, &[0]), (3, &[2]), (4, &[1, 2]), (5, &[4, 0])];

#[test]
fn isolated_vertex_is_rejected() {
    let (dh, infos) = run(&[(0, &[])]);
    assert!(!dh.is_accepted(0));
    assert!(dh.matching().is_empty());
    assert_eq!(infos[0].late_ops, 0);
}

#[test]
fn fresh_edge_accepts_the_newcomer() {
    let (dh, _) = run(&[(0, &[]), (1, &[0])]);
    assert_eq!(dh.me1(), Some(Edge::new(0, 1)));
    assert!(!dh.is_accepted(0));
    assert!(dh.is_accepted(1));
    assert_eq!(dh.potential().value, frac(1, 3));
}

#[test]
fn gadget_trace() {
    let (dh, infos) = run(&GADGET);
    let late: Vec<usize> = infos.iter().map(|i| i.late_ops).collect();
    assert_eq!(late, vec![0, 0, 2, 0, 4, 1]);
    assert_eq!(dh.ledger().type1_total(), 7);
    // Step 5 accepts b and c, rejects a and d.
    let step5: Vec<(usize, bool)> = dh
        .ledger()
        .late_entries()
        .filter(|e| e.event == 4)
        .map(|e| match e.element {
            ElementId::Vertex(x) => (x, e.new.is_one()),
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(step5, vec![(0, false), (1, true), (2, true), (3, false)]);
    // Step 6 matches (e, f), accepts f at arrival and late-accepts a.
    assert_eq!(dh.me1(), Some(Edge::new(4, 5)));
    assert!(dh.is_accepted(5));
    let step6: Vec<_> = dh
        .ledger()
        .late_entries()
        .filter(|e| e.event == 5)
        .map(|e| e.element)
        .collect();
    assert_eq!(step6, vec![ElementId::Vertex(0)]);
    assert_eq!(infos[4].monitor, Some(frac(10, 3)));
    assert_eq!(infos[5].monitor, Some(frac(5, 3)));
    assert!(dh.violations().is_empty(), "{:?}", dh.violations());
}

#[test]
fn two_disjoint_edges_are_both_halved() {
    let (dh, _) = run(&[(0, &[]), (1, &[0]), (2, &[]), (3, &[2])]);
    assert_eq!(dh.assignment().accepted_vertices(), vec![1, 3]);
    assert_eq!(dh.classify_state(), Some(5));
}

#[test]
fn blocked_endpoints_make_me1_full() {
    let (dh, _) = run(&[(0, &[]), (1, &[0]), (2, &[]), (3, &[2]), (4, &[2]), (5, &[3])]);
    let me1 = dh.me1().unwrap();
    assert_eq!(me1, Edge::new(2, 3));
    assert_eq!(dh.edge_state(me1), EdgeState::Full);
    assert_eq!(dh.group(4), Group::Three);
    assert_eq!(dh.group(5), Group::Three);
    assert_eq!(dh.classify_state(), Some(6));
    assert!(dh.violations().is_empty(), "{:?}", dh.violations());
}

#[test]
fn state_labels() {
    let (dh, _) = run(&[(0, &[]), (1, &[0])]);
    assert_eq!(dh.classify_state(), None);

    // me2 full, me1 half with v accepted.
    let (dh, _) = run(&[(0, &[]), (1, &[0]), (2, &[0]), (3, &[1]), (4, &[]), (5, &[4])]);
    assert_eq!(dh.edge_state(dh.me2().unwrap()), EdgeState::Full);
    assert_eq!(dh.classify_state(), Some(2));

    // All four accepted.
    let (dh, _) = run(&[
        (0, &[]),
        (1, &[0]),
        (2, &[0]),
        (3, &[1]),
        (4, &[]),
        (5, &[4]),
        (6, &[4]),
        (7, &[5]),
    ]);
    assert_eq!(dh.classify_state(), Some(3));
}

#[test]
fn potential_counts_expired_and_free_halves() {
    // Three disjoint edges, each halved on the newcomer: one expired half,
    // a free half me2 and a half me1.
    let (dh, _) = run(&[(0, &[]), (1, &[0]), (2, &[]), (3, &[2]), (4, &[]), (5, &[4])]);
    let phi = dh.potential();
    assert_eq!(phi.expired_half, 1);
    assert!(phi.me2_free);
    assert_eq!(phi.value, frac(7, 3));
}

#[test]
fn empty_graph_has_zero_potential() {
    assert_eq!(DuoHalve::new().potential().value, int(0));
}

#[test]
fn monitor_examples() {
    let quiet = PotentialSnapshot::default();
    assert!(monitor_step(&quiet, &quiet, 0, 0));
    let pre = PotentialSnapshot {
        value: frac(4, 3),
        ..PotentialSnapshot::default()
    };
    let post = PotentialSnapshot {
        value: frac(2, 3),
        ..PotentialSnapshot::default()
    };
    assert!(monitor_step(&pre, &post, 4, 0));
    assert!(!monitor_step(&pre, &post, 5, 0));
    assert_eq!(transition_bound(4, 5, false), Some(frac(10, 3)));
    assert_eq!(transition_bound(3, 2, true), Some(frac(-1, 3)));
    assert_eq!(transition_bound(1, 6, false), None);
}

#[test]
fn triangle_fan() {
    for k in 1..=6usize {
        let mut events: Vec<(usize, Vec<usize>)> = Vec::new();
        for i in 0..k {
            events.push((2 * i, vec![]));
            events.push((2 * i + 1, vec![2 * i]));
        }
        events.push((2 * k, (0..2 * k).collect()));
        let mut dh = DuoHalve::new();
        let mut last = StepInfo::default();
        for (v, adj) in events {
            last = dh.step(&ArrivalEvent::vertex(v, adj)).unwrap();
        }
        assert_eq!(dh.value(), int(2 * k as i64));
        assert_eq!(last.late_ops, k);
        assert!(dh.violations().is_empty());
    }
}

#[test]
fn ratio_bound_is_clamped_at_one() {
    assert_eq!(ratio_bound(int(1)), int(1));
    assert_eq!(ratio_bound(int(4)), frac(3, 2));
    assert_eq!(ratio_bound(int(11)), frac(20, 11));
}

#[test]
fn rejects_edge_streams() {
    let mut dh = DuoHalve::new();
    assert!(dh.step(&ArrivalEvent::edge(0, 1)).is_err());
}

#[test]
fn me1_first_keeps_me1_half() {
    let events: [(usize, &[usize]); 5] = [(0, &[]), (1, &[0]), (2, &[1]), (3, &[0, 1, 2]), (4, &[1, 2])];
    let mut me1_first = DuoHalve::new();
    let mut recourse_first = DuoHalve::new().with_tie_break(TieBreak::RecourseFirst);
    for &(v, adj) in &events {
        me1_first.step(&ArrivalEvent::vertex(v, adj.to_vec())).unwrap();
        recourse_first.step(&ArrivalEvent::vertex(v, adj.to_vec())).unwrap();
    }
    let me1 = Edge::new(2, 3);
    assert!(matches!(me1_first.edge_state(me1), EdgeState::Half(_)));
    assert!(me1_first.violations().is_empty(), "{:?}", me1_first.violations());
    // Recourse-first leaves me1 full although 3 has no unmatched neighbour.
    assert_eq!(recourse_first.edge_state(me1), EdgeState::Full);
    assert_eq!(recourse_first.violations().len(), 1);
}

#[test]
fn expired_accept_enabling_double_flip_exceeds_monitor() {
    let (dh, infos) = run(&[
        (0, &[]),
        (1, &[]),
        (2, &[1]),
        (3, &[0, 2]),
        (4, &[1, 3]),
        (5, &[4]),
        (6, &[0, 2]),
    ]);
    let late: Vec<usize> = infos.iter().map(|i| i.late_ops).collect();
    assert_eq!(late, vec![0, 0, 0, 0, 2, 0, 5]);
    // Both edges half is the only two-half configuration.
    assert_eq!((dh.me1(), dh.me2()), (Some(Edge::new(4, 5)), Some(Edge::new(0, 3))));
    assert_eq!(dh.edge_state(Edge::new(4, 5)), EdgeState::Half(4));
    assert_eq!(dh.edge_state(Edge::new(0, 3)), EdgeState::Half(0));
    assert_eq!(infos[5].potential, Some(frac(5, 3)));
    assert_eq!(infos[6].potential, Some(frac(2, 3)));
    assert_eq!(infos[6].monitor, Some(int(4)));
    assert_eq!(dh.violations().len(), 1);
    assert!(dh.check_cover());
}
