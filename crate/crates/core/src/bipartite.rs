//! Exact polynomial-time solver for bipartite graphs.
//!
//! The graph is padded to two parts of equal size `n` and turned into a
//! complete bipartite multigraph: every edge `uv` becomes two parallel
//! copies of weight 1 and 0, every non-adjacent cross pair two copies of
//! weight `-n`. For a pair of maximum matchings maximizing `|M1 ∪ M2|`, the
//! best 2-factor of that multigraph has weight `|M1 ∪ M2| - 2n(n - μ)`, and
//! the best achievable diversity is `2(|M1 ∪ M2| - μ)`. Alternately coloring
//! the cycles of an optimal 2-factor recovers such a pair.

use thiserror::Error;

use crate::graph::{detect_bipartition, symmetric_difference_size, Bipartition, EdgeId, Graph, Matching, Side};
use crate::matching::{max_weight_two_factor, maximum_matching, MatchingError, TwoFactor, WeightedMultigraph};
use crate::outcome::{Decision, SolveMode, SolveOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition does not match the graph")]
    BadBipartition,
    #[error(transparent)]
    TwoFactor(#[from] MatchingError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightClass {
    One,
    Zero,
    MinusN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(EdgeId),
    Filler,
}

#[derive(Debug, Clone)]
pub struct GPrimeConstruction {
    pub multigraph: WeightedMultigraph,
    /// Vertices per part after padding.
    pub part_size: usize,
    /// Vertices of the input graph; indices from here on are padding.
    pub original_vertices: usize,
    pub origin: Vec<(EdgeOrigin, WeightClass)>,
    graph_fingerprint: u64,
}

impl GPrimeConstruction {
    pub fn padding_vertices(&self) -> std::ops::Range<usize> {
        self.original_vertices..self.multigraph.vertex_count()
    }
}

pub fn build_gprime(g: &Graph, parts: &Bipartition) -> Result<GPrimeConstruction, BipartiteError> {
    if parts.sides().len() != g.vertex_count() || g.edges().iter().any(|&(u, v)| parts.side(u) == parts.side(v)) {
        return Err(BipartiteError::BadBipartition);
    }
    let mut a = parts.part(Side::A);
    let mut b = parts.part(Side::B);
    let n = a.len().max(b.len());
    let mut sides = parts.sides().to_vec();
    let mut next = g.vertex_count();
    for (part, side) in [(&mut a, Side::A), (&mut b, Side::B)] {
        while part.len() < n {
            part.push(next);
            sides.push(side);
            next += 1;
        }
    }
    let minus_n = -(n as i64);
    let mut edges = Vec::with_capacity(2 * n * n);
    let mut origin = Vec::with_capacity(2 * n * n);
    for &x in &a {
        for &y in &b {
            let original = (x < g.vertex_count() && y < g.vertex_count()).then(|| g.edge_between(x, y)).flatten();
            match original {
                Some(e) => {
                    edges.push((x, y, 1));
                    origin.push((EdgeOrigin::Original(e), WeightClass::One));
                    edges.push((x, y, 0));
                    origin.push((EdgeOrigin::Original(e), WeightClass::Zero));
                }
                None => {
                    for _ in 0..2 {
                        edges.push((x, y, minus_n));
                        origin.push((EdgeOrigin::Filler, WeightClass::MinusN));
                    }
                }
            }
        }
    }
    Ok(GPrimeConstruction {
        multigraph: WeightedMultigraph::new(sides, edges)?,
        part_size: n,
        original_vertices: g.vertex_count(),
        origin,
        graph_fingerprint: g.fingerprint(),
    })
}

/// Splits the 2-factor's (even) cycles into two perfect matchings of the
/// multigraph and maps them back to `g`, dropping filler edges. In each
/// cycle the lowest-identifier edge goes to the first matching.
pub fn reconstruct_pair(
    g: &Graph,
    construction: &GPrimeConstruction,
    f: &TwoFactor,
) -> Result<(Matching, Matching), BipartiteError> {
    if construction.graph_fingerprint != g.fingerprint() {
        return Err(BipartiteError::Inconsistent("construction built from another graph".into()));
    }
    let h = &construction.multigraph;
    h.two_factor_weight(&f.edge_ids)?;
    let nv = h.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &id in &f.edge_ids {
        let (u, v, _) = h.edge(id);
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut used = vec![false; h.edge_count()];
    let mut sorted = f.edge_ids.clone();
    sorted.sort_unstable();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for &start in &sorted {
        if used[start] {
            continue;
        }
        // walk the cycle starting with `start`, alternating classes
        let (u0, mut at, _) = h.edge(start);
        let mut current = start;
        let mut class_one = true;
        loop {
            used[current] = true;
            if let EdgeOrigin::Original(e) = construction.origin[current].0 {
                if class_one {
                    first.push(e)
                } else {
                    second.push(e)
                }
            }
            if at == u0 {
                break;
            }
            let next = *incident[at].iter().find(|&&id| id != current).expect("degree 2");
            let (x, y, _) = h.edge(next);
            at = if x == at { y } else { x };
            current = next;
            class_one = !class_one;
        }
        // the closing edge of an even cycle lands in the second class
        if class_one {
            return Err(BipartiteError::Inconsistent("odd cycle in 2-factor".into()));
        }
    }
    let m1 = Matching::new(g, first).map_err(|e| BipartiteError::Inconsistent(e.to_string()))?;
    let m2 = Matching::new(g, second).map_err(|e| BipartiteError::Inconsistent(e.to_string()))?;
    Ok((m1, m2))
}

/// Everything the bipartite method computes for one graph.
#[derive(Debug, Clone)]
pub struct BipartiteAnalysis {
    pub matching_number: usize,
    /// Weight of the optimal 2-factor; `None` for edgeless graphs.
    pub two_factor_weight: Option<i64>,
    pub pair_union: usize,
    pub optimum: usize,
    pub pair: (Matching, Matching),
}

pub fn analyze_bipartite(g: &Graph) -> Result<BipartiteAnalysis, BipartiteError> {
    let parts = detect_bipartition(g).ok_or(BipartiteError::NotBipartite)?;
    let mu_matching = maximum_matching(g);
    let mu = mu_matching.len();
    if g.edge_count() == 0 {
        return Ok(BipartiteAnalysis {
            matching_number: 0,
            two_factor_weight: None,
            pair_union: 0,
            optimum: 0,
            pair: (Matching::empty(g), Matching::empty(g)),
        });
    }
    let construction = build_gprime(g, &parts)?;
    let factor = max_weight_two_factor(&construction.multigraph)
        .ok_or_else(|| BipartiteError::Inconsistent("complete bipartite multigraph without 2-factor".into()))?;
    let n = construction.part_size as i64;
    let union = factor.weight + 2 * n * (n - mu as i64);
    if union < mu as i64 {
        return Err(BipartiteError::Inconsistent(format!("union {union} below μ = {mu}")));
    }
    let union = union as usize;
    let optimum = 2 * (union - mu);
    let (m1, m2) = reconstruct_pair(g, &construction, &factor)?;
    let diversity = symmetric_difference_size(&m1, &m2).expect("same graph");
    if m1.len() != mu || m2.len() != mu || diversity != optimum {
        return Err(BipartiteError::Inconsistent(format!(
            "reconstructed pair sizes {}/{}, diversity {diversity}, expected μ = {mu}, optimum {optimum}",
            m1.len(),
            m2.len()
        )));
    }
    Ok(BipartiteAnalysis {
        matching_number: mu,
        two_factor_weight: Some(factor.weight),
        pair_union: union,
        optimum,
        pair: (m1, m2),
    })
}

/// Decides the maximum-matching variant on a bipartite graph.
pub fn solve_bipartite(g: &Graph, k: i64) -> Result<SolveOutcome, BipartiteError> {
    let analysis = analyze_bipartite(g)?;
    let yes = analysis.optimum as i64 >= k;
    Ok(SolveOutcome {
        decision: if yes { Decision::Yes } else { Decision::No },
        certificate: yes.then_some(analysis.pair),
        trials_used: 0,
        mode: SolveMode::Bipartite,
        optimum: Some(analysis.optimum),
        reason: None,
    })
}
