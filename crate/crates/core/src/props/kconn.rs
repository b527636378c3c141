//! k-connectivity via unit-vertex-capacity max-flow (Even–Tarjan style).
//!
//! Fix a vertex set S of the first k vertices. Any separating set C with
//! |C| < k misses at least one s in S, and s is non-adjacent to every vertex
//! in the other components of G - C, so some tested (s, v) pair straddles C.
//! It therefore suffices to run a flow capped at k from each s in S to every
//! vertex non-adjacent to s. Each flow costs O(k * E).

use crate::graph::Graph;
use crate::props::is_connected;

/// True iff `n > k` and no vertex subset of size `< k` disconnects `g`
/// (so K_{k+1} is k-connected).
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    if g.min_degree() < k {
        return false;
    }
    if k == 1 {
        return is_connected(g);
    }
    let mut net = SplitFlowNet::new(g);
    for s in 0..k {
        for v in 0..n {
            if v == s || (v < k && v < s) || g.has_edge(s as u32, v as u32) {
                continue;
            }
            if net.max_flow_capped(s, v, k) < k {
                return false;
            }
        }
    }
    true
}

/// Vertex-split flow network: vertex x becomes in-node 2x and out-node 2x+1
/// joined by a capacity-1 arc; each graph edge contributes a capacity-1 arc
/// out->in in both directions.
struct SplitFlowNet {
    adj: Vec<Vec<u32>>,
    /// arcs[i] = (to, cap); arc i^1 is the residual partner.
    arcs: Vec<(u32, i32)>,
    initial_caps: Vec<i32>,
}

impl SplitFlowNet {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut net = SplitFlowNet {
            adj: vec![Vec::new(); 2 * n],
            arcs: Vec::with_capacity(2 * (n + 2 * g.edge_count())),
            initial_caps: Vec::new(),
        };
        for x in 0..n as u32 {
            net.add_arc(2 * x, 2 * x + 1, 1);
        }
        for &(u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, 1);
            net.add_arc(2 * v + 1, 2 * u, 1);
        }
        net.initial_caps = net.arcs.iter().map(|a| a.1).collect();
        net
    }

    fn add_arc(&mut self, from: u32, to: u32, cap: i32) {
        self.adj[from as usize].push(self.arcs.len() as u32);
        self.arcs.push((to, cap));
        self.adj[to as usize].push(self.arcs.len() as u32);
        self.arcs.push((from, 0));
    }

    /// Max vertex-disjoint s-v paths, but stop counting at `cap` (Menger).
    fn max_flow_capped(&mut self, s: usize, t: usize, cap: usize) -> usize {
        for (arc, &c) in self.arcs.iter_mut().zip(&self.initial_caps) {
            arc.1 = c;
        }
        let source = (2 * s + 1) as u32; // s_out: source vertex is uncapacitated
        let sink = (2 * t) as u32; // t_in
        let mut flow = 0;
        let mut parent_arc = vec![u32::MAX; self.adj.len()];
        let mut queue = Vec::with_capacity(self.adj.len());
        while flow < cap {
            parent_arc.iter_mut().for_each(|p| *p = u32::MAX);
            queue.clear();
            queue.push(source);
            parent_arc[source as usize] = u32::MAX - 1;
            let mut head = 0;
            let mut reached = false;
            'bfs: while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &ai in &self.adj[x as usize] {
                    let (to, c) = self.arcs[ai as usize];
                    if c > 0 && parent_arc[to as usize] == u32::MAX {
                        parent_arc[to as usize] = ai;
                        if to == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push(to);
                    }
                }
            }
            if !reached {
                break;
            }
            // unit augmentation along the parent chain
            let mut node = sink;
            while node != source {
                let ai = parent_arc[node as usize] as usize;
                self.arcs[ai].1 -= 1;
                self.arcs[ai ^ 1].1 += 1;
                node = self.arcs[ai ^ 1].0;
            }
            flow += 1;
        }
        flow
    }
}
