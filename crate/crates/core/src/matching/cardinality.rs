//! Edmonds' blossom algorithm for maximum-cardinality matching.
//!
//! Besides full maximization the matcher can search for a single augmenting
//! path from one root, with some vertices deleted and one edge banned; this
//! is what the edge-classification queries use.

use crate::graph::{EdgeId, Graph, VertexId};

const NONE: usize = usize::MAX;

pub(crate) struct CardinalityMatcher<'g> {
    g: &'g Graph,
    removed: Vec<bool>,
    banned: Option<EdgeId>,
    pub(crate) mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'g> CardinalityMatcher<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        CardinalityMatcher {
            g,
            removed: vec![false; n],
            banned: None,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Default::default(),
        }
    }

    pub(crate) fn with_mates(g: &'g Graph, mate: &[Option<VertexId>]) -> Self {
        let mut m = Self::new(g);
        for (v, w) in mate.iter().enumerate() {
            m.mate[v] = w.unwrap_or(NONE);
        }
        m
    }

    /// Deletes `v`, unmatching it. Returns its former mate.
    pub(crate) fn remove_vertex(&mut self, v: VertexId) -> Option<VertexId> {
        self.removed[v] = true;
        let w = self.mate[v];
        self.mate[v] = NONE;
        if w != NONE {
            self.mate[w] = NONE;
            Some(w)
        } else {
            None
        }
    }

    /// Bans edge `e`, unmatching it if it was matched.
    pub(crate) fn ban_edge(&mut self, e: EdgeId) {
        self.banned = Some(e);
        let (u, v) = self.g.endpoints(e);
        if self.mate[u] == v {
            self.mate[u] = NONE;
            self.mate[v] = NONE;
        }
    }

    pub(crate) fn maximize(&mut self) {
        // greedy start
        for v in 0..self.g.vertex_count() {
            if self.removed[v] || self.mate[v] != NONE {
                continue;
            }
            let g = self.g;
            for &(w, e) in g.neighbors(v) {
                if self.edge_usable(w, e) && self.mate[w] == NONE {
                    self.mate[v] = w;
                    self.mate[w] = v;
                    break;
                }
            }
        }
        for v in 0..self.g.vertex_count() {
            if !self.removed[v] && self.mate[v] == NONE {
                self.augment_from(v);
            }
        }
    }

    fn edge_usable(&self, w: VertexId, e: EdgeId) -> bool {
        !self.removed[w] && self.banned != Some(e)
    }

    /// Looks for an augmenting path from exposed vertex `root` and applies it.
    pub(crate) fn augment_from(&mut self, root: VertexId) -> bool {
        debug_assert!(self.mate[root] == NONE && !self.removed[root]);
        match self.find_path(root) {
            Some(mut v) => {
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
                true
            }
            None => false,
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
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

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        let g = self.g;
        while let Some(v) = self.queue.pop_front() {
            for &(to, e) in g.neighbors(v) {
                if !self.edge_usable(to, e) || self.base[v] == self.base[to] || self.mate[v] == to {
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
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    pub(crate) fn mates(&self) -> Vec<Option<VertexId>> {
        self.mate.iter().map(|&w| (w != NONE).then_some(w)).collect()
    }
}

/// Maximum-cardinality matching as a mate array.
pub(crate) fn maximum_cardinality_mates(g: &Graph) -> Vec<Option<VertexId>> {
    let mut m = CardinalityMatcher::new(g);
    m.maximize();
    m.mates()
}
