//! Simple undirected graphs, matchings over them, and bipartitions.
//!
//! A [`Graph`] is immutable once built. Vertices are dense indices
//! `0..n`, edges are dense identifiers `0..m` in insertion order, and each
//! vertex carries a display name (decimal index unless the graph came from
//! a file with symbolic vertex names).

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("vertex index {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("unknown edge identifier {edge} (graph has {m} edges)")]
    UnknownEdge { edge: EdgeId, m: usize },
    #[error("edges {0} and {1} share an endpoint")]
    NotAMatching(EdgeId, EdgeId),
    #[error("matchings refer to different graphs")]
    ForeignMatching,
    #[error("name table has {names} entries for {n} vertices")]
    NameTable { names: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    names: Vec<String>,
    fingerprint: u64,
}

impl Graph {
    /// Builds a graph from an edge list. The orientation of each pair is
    /// irrelevant; identifiers follow the order of `edges`.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::with_names(n, edges, (0..n).map(|v| v.to_string()).collect())
    }

    pub fn with_names(n: usize, edges: &[(VertexId, VertexId)], names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != n {
            return Err(GraphError::NameTable { names: names.len(), n });
        }
        let mut adjacency: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (id, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(names[a].clone()));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adjacency[u].iter().any(|&(w, _)| w == v) {
                return Err(GraphError::DuplicateEdge(names[a].clone(), names[b].clone()));
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
            normalized.push((u, v));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let fingerprint = fingerprint(n, &normalized);
        Ok(Graph { n, edges: normalized, adjacency, names, fingerprint })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v` with the connecting edge, in ascending neighbor order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency[u].binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| self.adjacency[u][i].1)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// True when every vertex is named by its own decimal index.
    pub fn has_index_names(&self) -> bool {
        self.names.iter().enumerate().all(|(i, s)| *s == i.to_string())
    }

    /// Identity of the (vertex count, edge list) pair; names do not participate.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Subgraph induced by `vertices` (kept in the given order, which fixes
    /// the new indices). Names are inherited.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Graph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|&(u, v)| (position[u], position[v]))
            .collect();
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        Graph::with_names(vertices.len(), &edges, names).expect("induced subgraph of a simple graph")
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

fn fingerprint(n: usize, edges: &[(usize, usize)]) -> u64 {
    // FNV-1a over the vertex count and the normalized edge list.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(n as u64);
    for &(u, v) in edges {
        feed(u as u64);
        feed(v as u64);
    }
    h
}

/// A set of pairwise vertex-disjoint edges of one particular graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<EdgeId>,
    graph: u64,
}

impl Matching {
    /// Validates `edges` against `g`. Duplicates are collapsed.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self, GraphError> {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        check_matching(g, &edges)?;
        Ok(Matching { edges, graph: g.fingerprint() })
    }

    pub fn empty(g: &Graph) -> Self {
        Matching { edges: Vec::new(), graph: g.fingerprint() }
    }

    /// Builds a matching from a mate array (`mate[v] = Some(w)` iff `vw` is matched).
    pub fn from_mates(g: &Graph, mate: &[Option<VertexId>]) -> Self {
        let edges = (0..g.vertex_count())
            .filter_map(|v| match mate[v] {
                Some(w) if v < w => Some(g.edge_between(v, w).expect("mate along an edge")),
                _ => None,
            })
            .collect::<Vec<_>>();
        Matching::new(g, edges).expect("mate array describes a matching")
    }

    /// Sorted edge identifiers.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn belongs_to(&self, g: &Graph) -> bool {
        self.graph == g.fingerprint()
    }

    /// `mate[v]` for every vertex of `g`.
    pub fn mates(&self, g: &Graph) -> Vec<Option<VertexId>> {
        let mut mate = vec![None; g.vertex_count()];
        for &e in &self.edges {
            let (u, v) = g.endpoints(e);
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    /// Endpoint name pairs, for reporting.
    pub fn named_pairs(&self, g: &Graph) -> Vec<[String; 2]> {
        self.edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                [g.name(u).to_string(), g.name(v).to_string()]
            })
            .collect()
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.edges).finish()
    }
}

fn check_matching(g: &Graph, edges: &[EdgeId]) -> Result<(), GraphError> {
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for &e in edges {
        if e >= g.edge_count() {
            return Err(GraphError::UnknownEdge { edge: e, m: g.edge_count() });
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if owner[w] != usize::MAX {
                return Err(GraphError::NotAMatching(owner[w], e));
            }
            owner[w] = e;
        }
    }
    Ok(())
}

/// True iff no two of `edges` share an endpoint.
pub fn is_matching(g: &Graph, edges: &[EdgeId]) -> Result<bool, GraphError> {
    match check_matching(g, edges) {
        Ok(()) => Ok(true),
        Err(GraphError::NotAMatching(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `|a △ b|`.
pub fn symmetric_difference_size(a: &Matching, b: &Matching) -> Result<usize, GraphError> {
    if a.graph != b.graph {
        return Err(GraphError::ForeignMatching);
    }
    Ok(a.len() + b.len() - 2 * intersection_size(&a.edges, &b.edges))
}

pub(crate) fn intersection_size(a: &[EdgeId], b: &[EdgeId]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    sides: Vec<Side>,
}

impl Bipartition {
    /// Checks that every edge of `g` crosses `sides`.
    pub fn new(g: &Graph, sides: Vec<Side>) -> Option<Self> {
        (sides.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| sides[u] != sides[v]))
            .then_some(Bipartition { sides })
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn part(&self, side: Side) -> Vec<VertexId> {
        (0..self.sides.len()).filter(|&v| self.sides[v] == side).collect()
    }
}

/// BFS 2-coloring. Each component's lowest vertex goes to side A.
pub fn detect_bipartition(g: &Graph) -> Option<Bipartition> {
    let mut side: Vec<Option<Side>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    for root in 0..g.vertex_count() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::A);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let here = side[v].unwrap();
            for &(w, _) in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(here.other());
                        queue.push_back(w);
                    }
                    Some(s) if s == here => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bipartition { sides: side.into_iter().map(Option::unwrap).collect() })
}
