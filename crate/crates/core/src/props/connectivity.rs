use crate::graph::Graph;

/// True iff `g` has exactly one connected component (the single-vertex
/// graph is connected).
pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v as usize) {
            if !seen[u as usize] {
                seen[u as usize] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_connected(&Graph::empty(1)));
        assert!(!is_connected(&Graph::empty(2)));
        assert!(is_connected(&Graph::cycle(5)));
        // C5 plus isolated vertex
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(!is_connected(&g));
    }
}
