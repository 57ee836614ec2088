//! Enumeration oracles shared by the integration tests.
#![allow(dead_code)]

pub fn brute_mis(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut best = (0, Vec::new());
    for mask in 0u32..(1 << n) {
        if edges.iter().any(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if set.len() > best.0 || (set.len() == best.0 && set < best.1) {
            best = (set.len(), set);
        }
    }
    best
}

pub fn brute_vc(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut best = (usize::MAX, Vec::new());
    for mask in 0u32..(1 << n) {
        if edges.iter().any(|&(a, b)| mask >> a & 1 == 0 && mask >> b & 1 == 0) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if set.len() < best.0 || (set.len() == best.0 && set < best.1) {
            best = (set.len(), set);
        }
    }
    best
}

/// Largest set of pairwise disjoint edges, by subset enumeration.
pub fn brute_matching(edges: &[(usize, usize)]) -> usize {
    fn go(edges: &[(usize, usize)], used: u32) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(a, b), rest)) => {
                let skip = go(rest, used);
                if used >> a & 1 == 0 && used >> b & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << a | 1 << b))
                } else {
                    skip
                }
            }
        }
    }
    go(edges, 0)
}
