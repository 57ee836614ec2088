//! Hopcroft-Karp matching and König covers on bipartite graphs.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;
const INF: usize = usize::MAX;

/// Maximum matching of the bipartite graph whose left vertex `l` is adjacent
/// to right vertices `left_adj[l]`. Returns `(mate_left, mate_right)`.
pub(crate) fn hopcroft_karp(left_adj: &[Vec<usize>], right_count: usize) -> (Vec<usize>, Vec<usize>) {
    let nl = left_adj.len();
    let mut ml = vec![NONE; nl];
    let mut mr = vec![NONE; right_count];
    let mut dist = vec![INF; nl];

    for l in 0..nl {
        if let Some(&r) = left_adj[l].iter().find(|&&r| mr[r] == NONE) {
            ml[l] = r;
            mr[r] = l;
        }
    }

    loop {
        // Layer the free left vertices.
        let mut q = VecDeque::new();
        for l in 0..nl {
            if ml[l] == NONE {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = q.pop_front() {
            for &r in &left_adj[l] {
                let m = mr[r];
                if m == NONE {
                    found = true;
                } else if dist[m] == INF {
                    dist[m] = dist[l] + 1;
                    q.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; nl];
        for l in 0..nl {
            if ml[l] == NONE {
                augment(l, left_adj, &mut ml, &mut mr, &mut dist, &mut it);
            }
        }
    }
    (ml, mr)
}

/// Iterative layered DFS from free left vertex `start`.
fn augment(
    start: usize,
    left_adj: &[Vec<usize>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![start];
    while let Some(&l) = stack.last() {
        if it[l] == left_adj[l].len() {
            dist[l] = INF;
            stack.pop();
            continue;
        }
        let r = left_adj[l][it[l]];
        let m = mr[r];
        if m == NONE {
            // Flip the path recorded on the stack.
            let mut r = r;
            while let Some(l) = stack.pop() {
                let prev = ml[l];
                ml[l] = r;
                mr[r] = l;
                r = prev;
            }
            return true;
        }
        if dist[m] != INF && dist[m] == dist[l] + 1 {
            stack.push(m);
        } else {
            it[l] += 1;
        }
    }
    false
}

/// Minimum vertex cover from a maximum matching (König). Returns
/// `(cover_left, cover_right)` membership flags.
pub(crate) fn konig_cover(left_adj: &[Vec<usize>], right_count: usize) -> (Vec<bool>, Vec<bool>) {
    let (ml, mr) = hopcroft_karp(left_adj, right_count);
    let nl = left_adj.len();
    let mut zl = vec![false; nl];
    let mut zr = vec![false; right_count];
    let mut q: VecDeque<usize> = (0..nl).filter(|&l| ml[l] == NONE).collect();
    for &l in &q {
        zl[l] = true;
    }
    while let Some(l) = q.pop_front() {
        for &r in &left_adj[l] {
            if zr[r] || ml[l] == r {
                continue;
            }
            zr[r] = true;
            let m = mr[r];
            if m != NONE && !zl[m] {
                zl[m] = true;
                q.push_back(m);
            }
        }
    }
    (zl.iter().map(|z| !z).collect(), zr)
}
