//! Decision procedures for the increasing properties whose thresholds are
//! under study: connectivity, k-connectivity, perfect matching containment
//! and Hamiltonicity. All checkers are exact except the Hamilton solver,
//! which is explicitly three-valued (yes / no / unresolved) and never wrong.

mod connectivity;
mod hamilton;
mod kconn;
mod matching;

pub use connectivity::is_connected;
pub use hamilton::{
    hamilton_solve, verify_hamilton_cycle, HamiltonBudget, HamiltonStatus, HamiltonVerdict,
    NoWitness,
};
pub use kconn::is_k_connected;
pub use matching::{has_perfect_matching, maximum_matching};

use crate::graph::Graph;

/// `min_degree(g) >= k`; the necessary-condition side of the minimum degree
/// phenomenon.
pub fn min_degree_at_least(g: &Graph, k: usize) -> bool {
    g.min_degree() >= k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_degree_at_least_basics() {
        let c5 = Graph::cycle(5);
        assert!(min_degree_at_least(&c5, 2));
        assert!(!min_degree_at_least(&c5, 3));
        let k4m = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert!(min_degree_at_least(&k4m, 2));
    }
}
