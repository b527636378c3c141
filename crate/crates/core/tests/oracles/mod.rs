//! Brute-force reference implementations used to validate the fast property
//! checkers. Deliberately naive: subset removal, edge-subset recursion and
//! permutation search.

use rand::Rng;
use rigraph::Graph;

/// k-connectivity by removing every vertex subset of size < k.
pub fn brute_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) >= k {
            continue;
        }
        if !connected_after_removal(g, mask) {
            return false;
        }
    }
    true
}

fn connected_after_removal(g: &Graph, removed: u32) -> bool {
    let n = g.n();
    let alive = (0..n).filter(|&v| removed & (1 << v) == 0).collect::<Vec<_>>();
    if alive.is_empty() {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![alive[0]];
    seen[alive[0]] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            let u = u as usize;
            if removed & (1 << u) == 0 && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Perfect matching by recursion on the lowest unmatched vertex.
pub fn brute_perfect_matching(g: &Graph) -> bool {
    let n = g.n();
    if !n.is_multiple_of(2) {
        return false;
    }
    fn rec(g: &Graph, matched: u32, n: usize) -> bool {
        let v = match (0..n).find(|&v| matched & (1 << v) == 0) {
            Some(v) => v,
            None => return true,
        };
        for &u in g.neighbors(v) {
            if matched & (1 << u) == 0 && rec(g, matched | (1 << v) | (1 << u), n) {
                return true;
            }
        }
        false
    }
    rec(g, 0, n)
}

/// Hamiltonicity by permutation search over cycles anchored at vertex 0.
pub fn brute_hamilton(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn rec(g: &Graph, path: &mut Vec<u32>, visited: u32, n: usize) -> bool {
        if path.len() == n {
            return g.has_edge(*path.last().unwrap(), 0);
        }
        let cur = *path.last().unwrap();
        for &u in g.neighbors(cur as usize) {
            if visited & (1 << u) == 0 {
                path.push(u);
                if rec(g, path, visited | (1 << u), n) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    rec(g, &mut vec![0], 1, n)
}

/// All 2^C(n,2) graphs on n labeled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .collect();
    let e = pairs.len();
    (0u64..(1 << e)).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// A uniformly random edge set with each pair present with probability 1/2.
pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let edges = (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect::<Vec<_>>();
    Graph::from_edges(n, edges).unwrap()
}
