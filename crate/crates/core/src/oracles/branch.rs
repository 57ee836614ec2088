//! Bitmask branch-and-bound for maximum independent set and minimum vertex
//! cover on graphs with at most 64 vertices. The two searches are
//! deliberately independent of each other.

pub(crate) struct BitGraph {
    n: usize,
    adj: Vec<u64>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

impl BitGraph {
    pub(crate) fn new(adj: &[Vec<usize>]) -> Self {
        assert!(adj.len() <= 64);
        let adj: Vec<u64> = adj.iter().map(|ns| ns.iter().fold(0u64, |m, &w| m | bit(w))).collect();
        BitGraph { n: adj.len(), adj }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    fn deg(&self, v: usize, cand: u64) -> u32 {
        (self.adj[v] & cand).count_ones()
    }

    fn closed(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    /// Size of a greedy maximal matching inside `cand`.
    fn greedy_matching(&self, cand: u64) -> u32 {
        let mut free = cand;
        let mut size = 0;
        for v in bits(cand) {
            if free & bit(v) == 0 {
                continue;
            }
            let nb = self.adj[v] & free;
            if nb != 0 {
                free &= !(bit(v) | bit(nb.trailing_zeros() as usize));
                size += 1;
            }
        }
        size
    }

    /// Connected component of the lowest vertex of `cand`.
    fn component(&self, cand: u64) -> u64 {
        let start = cand & cand.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= cand & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub(crate) fn max_independent_set(&self) -> u32 {
        self.mis(self.all(), 0)
    }

    /// Exact when the optimum exceeds `lb`; otherwise some value ≤ `lb`.
    fn mis(&self, cand: u64, lb: u32) -> u32 {
        if cand == 0 {
            return 0;
        }
        let mut best_v = usize::MAX;
        let mut best_d = 0;
        for v in bits(cand) {
            let d = self.deg(v, cand);
            if d <= 1 {
                return 1 + self.mis(cand & !self.closed(v), lb.saturating_sub(1));
            }
            if best_v == usize::MAX || d > best_d {
                best_v = v;
                best_d = d;
            }
        }
        let comp = self.component(cand);
        if comp != cand {
            return self.mis(comp, 0) + self.mis(cand & !comp, 0);
        }
        let ub = cand.count_ones() - self.greedy_matching(cand);
        if ub <= lb {
            return ub;
        }
        let with = 1 + self.mis(cand & !self.closed(best_v), lb.saturating_sub(1));
        let without = self.mis(cand & !bit(best_v), lb.max(with));
        with.max(without)
    }

    /// Lexicographically smallest maximum independent set.
    pub(crate) fn lex_max_independent_set(&self) -> Vec<usize> {
        let mut cand = self.all();
        let mut target = self.max_independent_set();
        let mut out = Vec::new();
        for v in 0..self.n {
            if cand & bit(v) == 0 {
                continue;
            }
            let rest = cand & !self.closed(v);
            if self.exact_mis(rest) + 1 == target {
                out.push(v);
                target -= 1;
                cand = rest;
            } else {
                cand &= !bit(v);
            }
        }
        out
    }

    fn exact_mis(&self, cand: u64) -> u32 {
        self.mis(cand, 0)
    }

    pub(crate) fn min_vertex_cover(&self) -> u32 {
        self.vc(self.all(), u32::MAX)
    }

    /// Exact when the optimum is below `ub`; otherwise some value ≥ `ub`.
    fn vc(&self, cand: u64, ub: u32) -> u32 {
        // Drop isolated vertices; a leaf's neighbour joins the cover.
        let mut cand = cand;
        let mut forced = 0;
        loop {
            let mut changed = false;
            for v in bits(cand) {
                if cand & bit(v) == 0 {
                    continue;
                }
                match self.deg(v, cand) {
                    0 => {
                        cand &= !bit(v);
                        changed = true;
                    }
                    1 => {
                        let u = (self.adj[v] & cand).trailing_zeros() as usize;
                        cand &= !(bit(v) | bit(u));
                        forced += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if cand == 0 {
            return forced;
        }
        let budget = ub.saturating_sub(forced);
        let comp = self.component(cand);
        if comp != cand {
            return forced + self.vc(comp, u32::MAX) + self.vc(cand & !comp, u32::MAX);
        }
        let lb = self.greedy_matching(cand);
        if lb >= budget {
            return forced + lb;
        }
        let v = bits(cand)
            .max_by_key(|&v| (self.deg(v, cand), std::cmp::Reverse(v)))
            .unwrap();
        let d = self.deg(v, cand);
        let take_v = 1 + self.vc(cand & !bit(v), budget.saturating_sub(1));
        let take_nbrs = d + self.vc(cand & !self.closed(v), budget.min(take_v).saturating_sub(d));
        forced + take_v.min(take_nbrs)
    }

    fn exact_vc(&self, cand: u64) -> u32 {
        self.vc(cand, u32::MAX)
    }

    /// Lexicographically smallest minimum vertex cover.
    pub(crate) fn lex_min_vertex_cover(&self) -> Vec<usize> {
        let mut cand = self.all();
        let mut target = self.min_vertex_cover();
        let mut out = Vec::new();
        for v in 0..self.n {
            if cand & bit(v) == 0 {
                continue;
            }
            if self.deg(v, cand) == 0 {
                cand &= !bit(v);
                continue;
            }
            let rest = cand & !bit(v);
            if self.exact_vc(rest) + 1 == target {
                out.push(v);
                target -= 1;
                cand = rest;
            } else {
                let nbrs = self.adj[v] & cand;
                out.extend(bits(nbrs));
                target -= nbrs.count_ones();
                cand &= !self.closed(v);
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg(n: usize, edges: &[(usize, usize)]) -> BitGraph {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        BitGraph::new(&adj)
    }

    #[test]
    fn small_cases() {
        assert_eq!(bg(0, &[]).max_independent_set(), 0);
        assert_eq!(bg(0, &[]).min_vertex_cover(), 0);
        let c5 = bg(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.max_independent_set(), 2);
        assert_eq!(c5.min_vertex_cover(), 3);
        assert_eq!(c5.lex_max_independent_set(), vec![0, 2]);
        assert_eq!(c5.lex_min_vertex_cover(), vec![0, 1, 3]);
    }
}
