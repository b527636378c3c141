//! Maximum matching in general graphs via Edmonds' blossom contraction,
//! O(n^3). Follows the classic formulation: BFS an alternating tree from
//! each free vertex, contract odd cycles by rebasing vertices onto the
//! blossom's base, augment when a free vertex is reached. Seeded with a
//! greedy matching.

use crate::graph::Graph;

const NONE: u32 = u32::MAX;

/// Maximum matching; `mate[v] == Some(u)` iff `v` is matched to `u`.
pub fn maximum_matching(g: &Graph) -> Vec<Option<u32>> {
    let n = g.n();
    let mut m = Matcher {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n as u32).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
    };
    // greedy seed
    for v in 0..n {
        if m.mate[v] == NONE {
            for &u in g.neighbors(v) {
                if m.mate[u as usize] == NONE {
                    m.mate[v] = u;
                    m.mate[u as usize] = v as u32;
                    break;
                }
            }
        }
    }
    for v in 0..n {
        if m.mate[v] == NONE {
            m.find_augmenting_path(v as u32);
        }
    }
    m.mate
        .into_iter()
        .map(|x| if x == NONE { None } else { Some(x) })
        .collect()
}

/// True iff a set of n/2 disjoint edges covers all vertices (false for odd n).
pub fn has_perfect_matching(g: &Graph) -> bool {
    if !g.n().is_multiple_of(2) {
        return false;
    }
    maximum_matching(g).iter().all(|m| m.is_some())
}

struct Matcher<'a> {
    g: &'a Graph,
    mate: Vec<u32>,
    parent: Vec<u32>,
    base: Vec<u32>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl Matcher<'_> {
    fn find_augmenting_path(&mut self, root: u32) -> bool {
        let n = self.g.n();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i as u32;
        }
        self.used[root as usize] = true;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for i in 0..self.g.neighbors(v as usize).len() {
                let to = self.g.neighbors(v as usize)[i];
                if self.base[v as usize] == self.base[to as usize] || self.mate[v as usize] == to
                {
                    continue;
                }
                if to == root
                    || (self.mate[to as usize] != NONE
                        && self.parent[self.mate[to as usize] as usize] != NONE)
                {
                    // odd cycle: contract the blossom
                    let cur_base = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i] as usize] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push(i as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] == NONE {
                    self.parent[to as usize] = v;
                    if self.mate[to as usize] == NONE {
                        self.augment(to);
                        return true;
                    }
                    let w = self.mate[to as usize];
                    self.used[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        false
    }

    fn lca(&mut self, a: u32, b: u32) -> u32 {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut v = a;
        loop {
            v = self.base[v as usize];
            seen[v as usize] = true;
            if self.mate[v as usize] == NONE {
                break;
            }
            v = self.parent[self.mate[v as usize] as usize];
        }
        let mut v = b;
        loop {
            v = self.base[v as usize];
            if seen[v as usize] {
                return v;
            }
            v = self.parent[self.mate[v as usize] as usize];
        }
    }

    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            self.blossom[self.base[v as usize] as usize] = true;
            self.blossom[self.base[self.mate[v as usize] as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = self.mate[v as usize];
            v = self.parent[self.mate[v as usize] as usize];
        }
    }

    fn augment(&mut self, mut v: u32) {
        while v != NONE {
            let pv = self.parent[v as usize];
            let next = self.mate[pv as usize];
            self.mate[v as usize] = pv;
            self.mate[pv as usize] = v;
            v = next;
        }
    }
}
