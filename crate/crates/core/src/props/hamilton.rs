//! Three-tier Hamilton cycle solver: necessary-condition rejects, a Pósa
//! rotation–extension heuristic with restarts, then exact backtracking for
//! small graphs. Verdicts are never wrong; when neither the heuristic nor
//! the exact solver applies the answer is `Unresolved`, reported separately
//! in all downstream statistics.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RigError};
use crate::graph::Graph;
use crate::props::is_connected;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonStatus {
    Yes,
    No,
    Unresolved,
}

/// Witness for a `No` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoWitness {
    Disconnected,
    MinDegreeBelowTwo,
    /// Only the exact solver emits this.
    ExhaustedSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonVerdict {
    pub status: HamiltonStatus,
    /// Hamilton cycle as a vertex sequence when status is `Yes`.
    pub certificate: Option<Vec<u32>>,
    pub witness: Option<NoWitness>,
}

impl HamiltonVerdict {
    fn yes(cycle: Vec<u32>) -> Self {
        HamiltonVerdict {
            status: HamiltonStatus::Yes,
            certificate: Some(cycle),
            witness: None,
        }
    }

    fn no(witness: NoWitness) -> Self {
        HamiltonVerdict {
            status: HamiltonStatus::No,
            certificate: None,
            witness: Some(witness),
        }
    }

    fn unresolved() -> Self {
        HamiltonVerdict {
            status: HamiltonStatus::Unresolved,
            certificate: None,
            witness: None,
        }
    }
}

/// Search budget for [`hamilton_solve`]. The rotation budget per restart is
/// `rotation_factor * n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonBudget {
    pub restarts: usize,
    pub rotation_factor: usize,
    /// Exact backtracking is attempted when `n <= exact_n`.
    pub exact_n: usize,
    /// Seed for the heuristic's internal randomness; the solve is a pure
    /// function of `(graph, budget)`.
    pub seed: u64,
}

impl Default for HamiltonBudget {
    fn default() -> Self {
        HamiltonBudget {
            restarts: 20,
            rotation_factor: 100,
            exact_n: 28,
            seed: 0,
        }
    }
}

/// True iff `cycle` is a Hamilton cycle of `g` (linear time).
pub fn verify_hamilton_cycle(g: &Graph, cycle: &[u32]) -> bool {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v as usize >= n || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    cycle
        .windows(2)
        .all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[n - 1], cycle[0])
}

/// Decide Hamiltonicity within the given budget.
pub fn hamilton_solve(g: &Graph, budget: &HamiltonBudget) -> Result<HamiltonVerdict> {
    let n = g.n();
    if n < 3 {
        return Err(RigError::Degenerate {
            what: format!("Hamilton cycle needs n >= 3, got n = {n}"),
        });
    }
    if g.min_degree() < 2 {
        return Ok(HamiltonVerdict::no(NoWitness::MinDegreeBelowTwo));
    }
    if !is_connected(g) {
        return Ok(HamiltonVerdict::no(NoWitness::Disconnected));
    }
    if let Some(cycle) = posa_search(g, budget) {
        debug_assert!(verify_hamilton_cycle(g, &cycle));
        return Ok(HamiltonVerdict::yes(cycle));
    }
    if n <= budget.exact_n {
        return Ok(match exact_search(g) {
            Some(cycle) => {
                debug_assert!(verify_hamilton_cycle(g, &cycle));
                HamiltonVerdict::yes(cycle)
            }
            None => HamiltonVerdict::no(NoWitness::ExhaustedSearch),
        });
    }
    Ok(HamiltonVerdict::unresolved())
}

/// Pósa rotation–extension with random restarts. Returns a verified cycle
/// on success.
fn posa_search(g: &Graph, budget: &HamiltonBudget) -> Option<Vec<u32>> {
    let n = g.n();
    let rotation_limit = budget.rotation_factor.saturating_mul(n);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x7a11_ca11_5eed_0001);
    let mut pos: Vec<u32> = vec![u32::MAX; n];
    let mut path: Vec<u32> = Vec::with_capacity(n);
    let mut candidates: Vec<u32> = Vec::new();

    for _ in 0..budget.restarts {
        path.clear();
        pos.iter_mut().for_each(|p| *p = u32::MAX);
        let start = rng.gen_range(0..n as u32);
        path.push(start);
        pos[start as usize] = 0;
        let mut rotations = 0usize;

        loop {
            let end = *path.last().unwrap();
            // extension: random unvisited neighbor of the endpoint
            candidates.clear();
            candidates.extend(
                g.neighbors(end as usize)
                    .iter()
                    .copied()
                    .filter(|&u| pos[u as usize] == u32::MAX),
            );
            if let Some(&u) = pick(&candidates, &mut rng) {
                pos[u as usize] = path.len() as u32;
                path.push(u);
                continue;
            }
            // full path: try to close the cycle
            if path.len() == n && g.has_edge(end, path[0]) {
                return Some(path.clone());
            }
            // rotation: endpoint neighbor u = path[i] turns path into
            // path[0..=i] + reverse(path[i+1..]), new endpoint path[i+1]
            if rotations >= rotation_limit {
                break;
            }
            rotations += 1;
            candidates.clear();
            candidates.extend(g.neighbors(end as usize).iter().copied().filter(|&u| {
                let i = pos[u as usize];
                i != u32::MAX && (i as usize) + 2 < path.len()
            }));
            match pick(&candidates, &mut rng) {
                Some(&u) => {
                    let i = pos[u as usize] as usize;
                    path[i + 1..].reverse();
                    for (j, &v) in path.iter().enumerate().skip(i + 1) {
                        pos[v as usize] = j as u32;
                    }
                }
                None => break, // dead end, restart
            }
        }
    }
    None
}

fn pick<'a>(candidates: &'a [u32], rng: &mut ChaCha8Rng) -> Option<&'a u32> {
    if candidates.is_empty() {
        None
    } else {
        Some(&candidates[rng.gen_range(0..candidates.len())])
    }
}

/// Exact backtracking over bitmask states, n <= 32. Prunes branches where
/// some unvisited vertex has fewer than two usable cycle neighbors or the
/// remaining graph is disconnected from the path ends.
fn exact_search(g: &Graph) -> Option<Vec<u32>> {
    let n = g.n();
    debug_assert!((3..=32).contains(&n));
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut path = vec![0u32];
    backtrack(&adj, full, 1, 0, &mut path).then_some(path)
}

fn backtrack(adj: &[u32], full: u32, visited: u32, cur: usize, path: &mut Vec<u32>) -> bool {
    let n = adj.len();
    if path.len() == n {
        return adj[cur] & 1 != 0; // close back to vertex 0
    }
    let unvisited = full & !visited;
    // every unvisited vertex still needs >= 2 usable neighbors
    let usable = unvisited | (1 << cur) | 1;
    let mut rest = unvisited;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[u] & usable).count_ones() < 2 {
            return false;
        }
    }
    // unvisited ∪ {cur, start} must be connected
    {
        let nodes = unvisited | (1 << cur) | 1;
        let mut reach = 1u32 << cur;
        loop {
            let mut next = reach;
            let mut scan = reach;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                next |= adj[v] & nodes;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach & nodes != nodes {
            return false;
        }
    }
    let mut cands = adj[cur] & unvisited;
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        path.push(v as u32);
        if backtrack(adj, full, visited | 1 << v, v, path) {
            return true;
        }
        path.pop();
    }
    false
}
