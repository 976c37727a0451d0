//! Quadratic vertex kernel for the unconstrained problem (two matchings of
//! any size).
//!
//! A greedy maximal matching `M` with `|M| ≥ k` answers YES at once: split
//! it into two halves. Otherwise `V(M)` is a vertex cover with fewer than
//! `2k` vertices, and keeping for each cover vertex at most `2k` of its
//! neighbors outside the cover preserves the answer.

use thiserror::Error;

use crate::graph::{Graph, Matching, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("kernelization needs k >= 1, got {0}")]
    NonPositiveK(i64),
}

/// Edges scanned in identifier order; each is taken when both ends are free.
pub fn greedy_maximal_matching(g: &Graph) -> Matching {
    let mut used = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            chosen.push(e);
        }
    }
    Matching::new(g, chosen).expect("greedy selection is a matching")
}

#[derive(Debug, Clone)]
pub enum KernelOutcome {
    /// Two halves of the greedy matching, differing in all its edges.
    ImmediateYes((Matching, Matching)),
    Reduced {
        /// Marked vertices in ascending order; kernel vertex `i` is `marked[i]`.
        marked: Vec<VertexId>,
        kernel: Graph,
    },
}

#[derive(Debug, Clone)]
pub struct KernelResult {
    pub greedy: Matching,
    pub outcome: KernelOutcome,
}

impl KernelResult {
    /// `(original, kernel)` vertex pairs of a reduced instance.
    pub fn relabeling(&self) -> Vec<(VertexId, VertexId)> {
        match &self.outcome {
            KernelOutcome::Reduced { marked, .. } => marked.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
            KernelOutcome::ImmediateYes(_) => Vec::new(),
        }
    }

    pub fn marked_count(&self) -> Option<usize> {
        match &self.outcome {
            KernelOutcome::Reduced { marked, .. } => Some(marked.len()),
            KernelOutcome::ImmediateYes(_) => None,
        }
    }
}

/// `4k²`, the bound a reduced instance stays strictly below.
pub fn kernel_size_bound(k: i64) -> u64 {
    4 * (k as u64) * (k as u64)
}

pub fn kernelize(g: &Graph, k: i64) -> Result<KernelResult, KernelError> {
    if k <= 0 {
        return Err(KernelError::NonPositiveK(k));
    }
    let greedy = greedy_maximal_matching(g);
    if greedy.len() as i64 >= k {
        let (mut first, mut second) = (Vec::new(), Vec::new());
        for (i, &e) in greedy.edges().iter().enumerate() {
            if i % 2 == 0 {
                first.push(e)
            } else {
                second.push(e)
            }
        }
        let pair = (
            Matching::new(g, first).expect("subset of a matching"),
            Matching::new(g, second).expect("subset of a matching"),
        );
        return Ok(KernelResult { greedy, outcome: KernelOutcome::ImmediateYes(pair) });
    }
    let n = g.vertex_count();
    let mut cover = vec![false; n];
    for &e in greedy.edges() {
        let (u, v) = g.endpoints(e);
        cover[u] = true;
        cover[v] = true;
    }
    let mut marked = cover.clone();
    let quota = 2 * k as usize;
    for v in (0..n).filter(|&v| cover[v]) {
        // adjacency lists are sorted by neighbor index
        for &(w, _) in g.neighbors(v).iter().filter(|(w, _)| !cover[*w]).take(quota) {
            marked[w] = true;
        }
    }
    let marked: Vec<VertexId> = (0..n).filter(|&v| marked[v]).collect();
    let kernel = g.induced_subgraph(&marked);
    Ok(KernelResult { greedy, outcome: KernelOutcome::Reduced { marked, kernel } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symmetric_difference_size;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(greedy_maximal_matching(&p3).edges(), &[0]);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(greedy_maximal_matching(&c4).len(), 2);
        assert_eq!(greedy_maximal_matching(&star(5)).len(), 1);
    }

    #[test]
    fn c4_immediate_yes() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match kernelize(&c4, 2).unwrap().outcome {
            KernelOutcome::ImmediateYes((a, b)) => {
                assert_eq!((a.edges(), b.edges()), (&[0][..], &[2][..]));
                assert_eq!(symmetric_difference_size(&a, &b).unwrap(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn star_reduces_to_smaller_star() {
        let g = star(9);
        let r = kernelize(&g, 3).unwrap();
        assert_eq!(r.marked_count(), Some(8));
        match &r.outcome {
            KernelOutcome::Reduced { marked, kernel } => {
                assert_eq!(marked, &(0..8).collect::<Vec<_>>());
                assert_eq!(kernel.vertex_count(), 8);
                assert_eq!(kernel.edge_count(), 7);
                assert_eq!(kernel.degree(0), 7);
            }
            other => panic!("{other:?}"),
        }
        assert!((r.marked_count().unwrap() as u64) < kernel_size_bound(3));
    }

    #[test]
    fn edgeless_reduces_to_empty() {
        let g = Graph::new(4, &[]).unwrap();
        match kernelize(&g, 1).unwrap().outcome {
            KernelOutcome::Reduced { marked, kernel } => {
                assert!(marked.is_empty());
                assert_eq!(kernel.vertex_count(), 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_positive_k() {
        assert_eq!(kernelize(&star(2), 0).unwrap_err(), KernelError::NonPositiveK(0));
    }

    #[test]
    fn cover_and_determinism() {
        let g = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (0, 6), (3, 6)]).unwrap();
        let a = kernelize(&g, 3).unwrap();
        let b = kernelize(&g, 3).unwrap();
        assert_eq!(a.relabeling(), b.relabeling());
        let mut cover = [false; 7];
        for &e in a.greedy.edges() {
            let (u, v) = g.endpoints(e);
            cover[u] = true;
            cover[v] = true;
        }
        assert!(g.edges().iter().all(|&(u, v)| cover[u] || cover[v]));
    }
}
