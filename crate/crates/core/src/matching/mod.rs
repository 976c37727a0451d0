//! Exact matching subroutines.
//!
//! * [`maximum_matching`]: maximum cardinality on general graphs.
//! * [`min_cost_maximum_matching`]: among maximum matchings, one of least
//!   total 0/1 cost.
//! * [`max_weight_two_factor`]: maximum-weight spanning 2-regular
//!   sub-multigraph of a bipartite multigraph.
//!
//! Where several optima exist, the matching routines return the one whose
//! sorted edge-identifier sequence is lexicographically smallest, for graphs
//! with at most [`LEX_TIE_BREAK_EDGE_LIMIT`] edges. Larger graphs still get
//! a deterministic answer, just not necessarily the lexicographic one.

mod cardinality;
mod flow;
mod weighted;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Matching, Side, VertexId};

pub(crate) use cardinality::CardinalityMatcher;

/// Graphs up to this many edges get lexicographic tie-breaking.
pub const LEX_TIE_BREAK_EDGE_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("cost function covers {got} edges, graph has {expected}")]
    CostLength { got: usize, expected: usize },
    #[error("cost of edge {edge} is {cost}, expected 0 or 1")]
    CostValue { edge: EdgeId, cost: u8 },
    #[error("multigraph edge {edge} does not cross the bipartition")]
    NotCrossing { edge: usize },
    #[error("multigraph endpoint {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("edge multiset is not a 2-factor: {0}")]
    InvalidTwoFactor(String),
}

/// 0/1 edge costs over one graph's edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFunction {
    cost: Vec<u8>,
}

impl CostFunction {
    pub fn new(g: &Graph, cost: Vec<u8>) -> Result<Self, MatchingError> {
        if cost.len() != g.edge_count() {
            return Err(MatchingError::CostLength { got: cost.len(), expected: g.edge_count() });
        }
        if let Some((edge, &cost)) = cost.iter().enumerate().find(|(_, &c)| c > 1) {
            return Err(MatchingError::CostValue { edge, cost });
        }
        Ok(CostFunction { cost })
    }

    pub fn zero(g: &Graph) -> Self {
        CostFunction { cost: vec![0; g.edge_count()] }
    }

    /// Cost 1 on exactly the given edges.
    pub fn indicator(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut cost = vec![0; g.edge_count()];
        for e in edges {
            cost[e] = 1;
        }
        CostFunction { cost }
    }

    pub fn cost(&self, e: EdgeId) -> u8 {
        self.cost[e]
    }

    pub fn total(&self, m: &Matching) -> usize {
        m.edges().iter().map(|&e| self.cost[e] as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.cost.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cost.is_empty()
    }
}

/// A maximum-cardinality matching.
pub fn maximum_matching(g: &Graph) -> Matching {
    if g.edge_count() <= LEX_TIE_BREAK_EDGE_LIMIT {
        min_cost_maximum_matching(g, &CostFunction::zero(g))
    } else {
        Matching::from_mates(g, &cardinality::maximum_cardinality_mates(g))
    }
}

/// μ(g) computed by the cardinality blossom routine alone.
pub fn matching_number(g: &Graph) -> usize {
    cardinality::maximum_cardinality_mates(g).iter().flatten().count() / 2
}

/// Among all maximum matchings, one minimizing the total cost.
///
/// Solved as one maximum-weight matching with weights `W - c(e)`,
/// `W = n + 1`: any extra matched edge outweighs every possible cost
/// saving, so the optimum has maximum cardinality first and minimum cost
/// second.
pub fn min_cost_maximum_matching(g: &Graph, c: &CostFunction) -> Matching {
    debug_assert_eq!(c.len(), g.edge_count());
    let m = g.edge_count();
    let big = g.vertex_count() as i128 + 1;
    let lex = m <= LEX_TIE_BREAK_EDGE_LIMIT;
    let edges: Vec<(usize, usize, i128)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let base = big - c.cost(e) as i128;
            let w = if lex { (base << m) + (1i128 << (m - 1 - e)) } else { base };
            (u, v, w)
        })
        .collect();
    let mate = weighted::max_weight_matching(g.vertex_count(), &edges, false);
    Matching::from_mates(g, &mate)
}

/// Bipartite multigraph with signed integer weights. Parallel edges are
/// distinct by identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultigraph {
    sides: Vec<Side>,
    edges: Vec<(VertexId, VertexId, i64)>,
}

impl WeightedMultigraph {
    pub fn new(sides: Vec<Side>, edges: Vec<(VertexId, VertexId, i64)>) -> Result<Self, MatchingError> {
        for (id, &(u, v, _)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= sides.len() {
                    return Err(MatchingError::VertexOutOfRange { vertex: x });
                }
            }
            if sides[u] == sides[v] {
                return Err(MatchingError::NotCrossing { edge: id });
            }
        }
        Ok(WeightedMultigraph { sides, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.sides.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> (VertexId, VertexId, i64) {
        self.edges[id]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, i64)] {
        &self.edges
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.sides[v]
    }

    /// Validates `ids` as a 2-factor and returns its weight.
    pub fn two_factor_weight(&self, ids: &[usize]) -> Result<i64, MatchingError> {
        let mut degree = vec![0usize; self.vertex_count()];
        let mut seen = vec![false; self.edge_count()];
        let mut weight = 0i64;
        for &id in ids {
            if id >= self.edge_count() || seen[id] {
                return Err(MatchingError::InvalidTwoFactor(format!("bad or repeated edge {id}")));
            }
            seen[id] = true;
            let (u, v, w) = self.edges[id];
            degree[u] += 1;
            degree[v] += 1;
            weight += w;
        }
        if let Some(v) = degree.iter().position(|&d| d != 2) {
            return Err(MatchingError::InvalidTwoFactor(format!("vertex {v} has degree {}", degree[v])));
        }
        Ok(weight)
    }
}

/// Spanning sub-multigraph with every degree exactly 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    pub edge_ids: Vec<usize>,
    pub weight: i64,
}

/// Maximum-weight 2-factor via a unit-capacity transportation problem:
/// every vertex of side A supplies 2, every vertex of side B demands 2.
pub fn max_weight_two_factor(h: &WeightedMultigraph) -> Option<TwoFactor> {
    let nv = h.vertex_count();
    let a_count = (0..nv).filter(|&v| h.side(v) == Side::A).count();
    if 2 * a_count != nv {
        return if nv == 0 { Some(TwoFactor { edge_ids: vec![], weight: 0 }) } else { None };
    }
    let (s, t) = (nv, nv + 1);
    let mut net = flow::MinCostFlow::new(nv + 2);
    for v in 0..nv {
        match h.side(v) {
            Side::A => net.add_arc(s, v, 2, 0),
            Side::B => net.add_arc(v, t, 2, 0),
        };
    }
    let handles: Vec<_> = h
        .edges()
        .iter()
        .map(|&(u, v, w)| {
            let (a, b) = if h.side(u) == Side::A { (u, v) } else { (v, u) };
            net.add_arc(a, b, 1, -w)
        })
        .collect();
    let need = 2 * a_count as i64;
    let (flow, cost) = net.run(s, t, need);
    if flow < need {
        return None;
    }
    let edge_ids: Vec<usize> = (0..h.edge_count()).filter(|&id| net.flow_on(handles[id]) == 1).collect();
    let weight = h.two_factor_weight(&edge_ids).expect("flow solution is a 2-factor");
    debug_assert_eq!(weight, -cost);
    Some(TwoFactor { edge_ids, weight })
}

/// Same optimum through Tutte's gadget: maximum-weight perfect matching in
/// an auxiliary graph with two copies per vertex and two nodes per edge.
pub fn max_weight_two_factor_tutte(h: &WeightedMultigraph) -> Option<TwoFactor> {
    let nv = h.vertex_count();
    let m = h.edge_count();
    if nv == 0 {
        return Some(TwoFactor { edge_ids: vec![], weight: 0 });
    }
    // copies: 2v, 2v+1; edge nodes: 2nv + 2e (near first end), 2nv + 2e + 1
    let copy = |v: usize, i: usize| 2 * v + i;
    let end = |e: usize, i: usize| 2 * nv + 2 * e + i;
    let mut gadget = Vec::with_capacity(5 * m);
    let shift = h.edges().iter().map(|e| e.2.abs() as i128).max().unwrap_or(0) + 1;
    for (e, &(u, v, w)) in h.edges().iter().enumerate() {
        gadget.push((end(e, 0), end(e, 1), shift));
        for i in 0..2 {
            gadget.push((end(e, 0), copy(u, i), w as i128 + shift));
            gadget.push((end(e, 1), copy(v, i), shift));
        }
    }
    let total = 2 * nv + 2 * m;
    let mate = weighted::max_weight_matching(total, &gadget, true);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    let edge_ids: Vec<usize> = (0..m).filter(|&e| mate[end(e, 0)] != Some(end(e, 1))).collect();
    let weight = h.two_factor_weight(&edge_ids).ok()?;
    Some(TwoFactor { edge_ids, weight })
}
