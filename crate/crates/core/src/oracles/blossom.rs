//! Edmonds' blossom algorithm for maximum cardinality matching.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Search<'a> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Free vertex ending an augmenting path from `root`, if any.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

/// Maximum matching as a mate array.
pub(crate) fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut s = Search {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for (v, nbrs) in adj.iter().enumerate() {
        if s.mate[v] == NONE {
            if let Some(&w) = nbrs.iter().find(|&&w| s.mate[w] == NONE) {
                s.mate[v] = w;
                s.mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if s.mate[root] != NONE {
            continue;
        }
        let mut v = s.find_path(root);
        while v != NONE {
            let pv = s.parent[v];
            let ppv = s.mate[pv];
            s.mate[v] = pv;
            s.mate[pv] = v;
            v = ppv;
        }
    }
    s.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

pub(crate) fn matching_size(adj: &[Vec<usize>]) -> usize {
    maximum_matching(adj).iter().filter(|m| m.is_some()).count() / 2
}

/// Lexicographically smallest maximum matching, as sorted `(u, w)` pairs
/// with `u < w`.
pub(crate) fn lex_maximum_matching(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut alive = vec![true; n];
    let mut target = matching_size(adj);
    let mut out = Vec::new();
    let restricted = |alive: &[bool]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|v| {
                if alive[v] {
                    adj[v].iter().copied().filter(|&w| alive[w]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect()
    };
    let mut current = maximum_matching(adj);
    for u in 0..n {
        if target == 0 {
            break;
        }
        if !alive[u] {
            continue;
        }
        let mut nbrs: Vec<usize> = adj[u].iter().copied().filter(|&w| alive[w]).collect();
        nbrs.sort_unstable();
        let mut chosen = None;
        for w in nbrs {
            if current[u] == Some(w) {
                chosen = Some(w);
                break;
            }
            alive[u] = false;
            alive[w] = false;
            let sub = restricted(&alive);
            let sub_match = maximum_matching(&sub);
            let size = sub_match.iter().filter(|m| m.is_some()).count() / 2;
            alive[u] = true;
            alive[w] = true;
            if size + 1 == target {
                current = sub_match;
                current[u] = Some(w);
                current[w] = Some(u);
                chosen = Some(w);
                break;
            }
        }
        alive[u] = false;
        match chosen {
            Some(w) => {
                alive[w] = false;
                target -= 1;
                out.push((u, w));
            }
            None => {
                // u is unmatched in every remaining maximum matching, so the
                // current one stays maximum once u is dropped.
                if let Some(w) = current[u].take() {
                    current[w] = None;
                    let sub = restricted(&alive);
                    current = maximum_matching(&sub);
                }
            }
        }
    }
    out
}
