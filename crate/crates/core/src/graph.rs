//! Core graph representation shared by the generators, property checkers and
//! the coupling construction.
//!
//! Vertices are dense integers `0..n-1`, features dense integers `0..m-1`.
//! Edges are stored canonically as `(min, max)` pairs sorted lexicographically
//! and adjacency lists are kept sorted, so graph equality and subgraph tests
//! are linear scans and iteration order is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::RigError;

/// Simple undirected graph on `n` labeled vertices.
///
/// Immutable after construction; no self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical edge list: `(u, v)` with `u < v`, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbor lists, symmetric with `edges`.
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.max(1) - 1) / 2);
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// Cycle C_n (requires n >= 3).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n as u32).map(|u| (u, (u + 1) % n as u32));
        Graph::from_edges(n, edges).expect("cycle edges are valid")
    }

    /// Build a graph from an edge iterator. Edges may appear in any order
    /// and direction; duplicates are collapsed. Self-loops and out-of-range
    /// endpoints are errors.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, RigError> {
        let mut es: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(RigError::SelfLoop { v: a });
            }
            if a as usize >= n || b as usize >= n {
                return Err(RigError::VertexOutOfRange {
                    v: a.max(b),
                    n,
                });
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &es {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: es, adj })
    }

    /// Internal constructor for callers that guarantee canonical input:
    /// edges sorted, deduplicated, `u < v`, all endpoints `< n`.
    pub(crate) fn from_canonical_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Minimum vertex degree; 0 for the edgeless graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    /// True iff every edge of `self` is an edge of `other`.
    /// Both graphs must share the vertex count.
    pub fn is_subgraph_of(&self, other: &Graph) -> Result<bool, RigError> {
        if self.n != other.n {
            return Err(RigError::MismatchedVertexCount {
                left: self.n,
                right: other.n,
            });
        }
        // Both edge lists are sorted; a merge scan suffices.
        let mut it = other.edges.iter();
        'outer: for e in &self.edges {
            for f in it.by_ref() {
                match f.cmp(e) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return Ok(false),
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Edge-set union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph, RigError> {
        if self.n != other.n {
            return Err(RigError::MismatchedVertexCount {
                left: self.n,
                right: other.n,
            });
        }
        let mut es = Vec::with_capacity(self.edges.len() + other.edges.len());
        es.extend_from_slice(&self.edges);
        es.extend_from_slice(&other.edges);
        es.sort_unstable();
        es.dedup();
        Ok(Graph::from_canonical_edges(self.n, es))
    }

    /// Serialize in the edge-list text format: first line `n <n>`, then one
    /// `u v` pair per line with `u < v`, sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u, v).unwrap();
        }
        out
    }

    /// Parse the edge-list text format produced by [`Graph::to_edge_list`].
    pub fn from_edge_list(text: &str) -> Result<Graph, RigError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| RigError::Parse {
            what: "empty edge-list input".into(),
        })?;
        let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count.parse().map_err(|_| RigError::Parse {
                what: format!("bad vertex count in header {header:?}"),
            })?,
            _ => {
                return Err(RigError::Parse {
                    what: format!("expected header \"n <count>\", got {header:?}"),
                })
            }
        };
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(RigError::Parse {
                        what: format!("expected edge line \"u v\", got {line:?}"),
                    })
                }
            };
            let u: u32 = u.parse().map_err(|_| RigError::Parse {
                what: format!("bad vertex {u:?}"),
            })?;
            let v: u32 = v.parse().map_err(|_| RigError::Parse {
                what: format!("bad vertex {v:?}"),
            })?;
            edges.push((u, v));
        }
        Graph::from_edges(n, edges)
    }
}

/// Minimum degree of the graph (free-function form used by the sweep harness).
pub fn min_degree(g: &Graph) -> usize {
    g.min_degree()
}

/// The bipartite structure `{W_v}` / inverse `{V_w}` underlying a random
/// intersection graph sample. Feature ids are sparse in `0..m` (only
/// features chosen by at least one vertex appear in `vertices_of`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureAssignment {
    n: usize,
    m: u64,
    /// Per-vertex sorted feature set W_v.
    features_of: Vec<Vec<u64>>,
    /// Per-feature sorted vertex set V_w (inverse index; empty sets omitted).
    vertices_of: BTreeMap<u64, Vec<u32>>,
}

impl FeatureAssignment {
    /// Build from per-vertex feature sets; the inverse index is derived.
    pub fn from_features(
        n: usize,
        m: u64,
        features_of: Vec<Vec<u64>>,
    ) -> Result<Self, RigError> {
        if features_of.len() != n {
            return Err(RigError::Parse {
                what: format!(
                    "feature assignment has {} vertex rows, expected {}",
                    features_of.len(),
                    n
                ),
            });
        }
        let mut features_of = features_of;
        let mut vertices_of: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (v, ws) in features_of.iter_mut().enumerate() {
            ws.sort_unstable();
            ws.dedup();
            for &w in ws.iter() {
                if w >= m {
                    return Err(RigError::FeatureOutOfRange { w, m });
                }
                vertices_of.entry(w).or_default().push(v as u32);
            }
        }
        Ok(FeatureAssignment {
            n,
            m,
            features_of,
            vertices_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// W_v, sorted.
    pub fn features_of(&self, v: usize) -> &[u64] {
        &self.features_of[v]
    }

    /// V_w, sorted; empty if no vertex chose `w`.
    pub fn vertices_of(&self, w: u64) -> &[u32] {
        self.vertices_of.get(&w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Iterate over the non-empty feature classes in feature order.
    pub fn feature_classes(&self) -> impl Iterator<Item = (u64, &[u32])> {
        self.vertices_of.iter().map(|(&w, vs)| (w, vs.as_slice()))
    }

    /// Total number of (vertex, feature) incidences.
    pub fn incidence_count(&self) -> u64 {
        self.features_of.iter().map(|ws| ws.len() as u64).sum()
    }

    /// The intersection graph: `{u,v}` is an edge iff `W_u` and `W_v`
    /// intersect; equivalently the union over features `w` of the clique
    /// on `V_w`.
    pub fn intersection_graph(&self) -> Graph {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for vs in self.vertices_of.values() {
            for i in 0..vs.len() {
                for j in (i + 1)..vs.len() {
                    edges.push((vs[i], vs[j]));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Graph::from_canonical_edges(self.n, edges)
    }
}

/// Ordered list of uniform edge draws realizing a G*(M) sample before
/// collapsing repeated pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawSequence {
    n: usize,
    draws: Vec<(u32, u32)>,
}

impl DrawSequence {
    pub fn new(n: usize, draws: Vec<(u32, u32)>) -> Result<Self, RigError> {
        for &(a, b) in &draws {
            if a == b {
                return Err(RigError::SelfLoop { v: a });
            }
            if a as usize >= n || b as usize >= n {
                return Err(RigError::VertexOutOfRange { v: a.max(b), n });
            }
        }
        let draws = draws
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Ok(DrawSequence { n, draws })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn draws(&self) -> &[(u32, u32)] {
        &self.draws
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    /// Graph whose edge set is the set of distinct draws.
    pub fn collapse(&self) -> Graph {
        let mut es = self.draws.clone();
        es.sort_unstable();
        es.dedup();
        Graph::from_canonical_edges(self.n, es)
    }

    /// The first `k` draws as a new sequence (k clamped to the length).
    pub fn prefix(&self, k: usize) -> DrawSequence {
        DrawSequence {
            n: self.n,
            draws: self.draws[..k.min(self.draws.len())].to_vec(),
        }
    }
}
