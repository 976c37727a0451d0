//! Exhaustive ground truth for small graphs.

use thiserror::Error;

use crate::graph::{Graph, Matching};
use crate::outcome::Decision;

pub const ORACLE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle handles at most {ORACLE_EDGE_LIMIT} edges, graph has {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    AnyMatching,
    Maximum,
    Perfect,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AnyMatching => "any_matching",
            Variant::Maximum => "maximum",
            Variant::Perfect => "perfect",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "any_matching" | "any" => Ok(Variant::AnyMatching),
            "maximum" => Ok(Variant::Maximum),
            "perfect" => Ok(Variant::Perfect),
            _ => Err(format!("unknown variant {s:?} (expected any_matching, maximum or perfect)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Matchings as edge bitmasks, in include-first branching order.
fn all_matching_masks(g: &Graph) -> Result<Vec<u32>, OracleError> {
    if g.edge_count() > ORACLE_EDGE_LIMIT {
        return Err(OracleError::TooLarge(g.edge_count()));
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    branch(g, 0, 0, &mut used, &mut out);
    Ok(out)
}

fn branch(g: &Graph, e: usize, mask: u32, used: &mut [bool], out: &mut Vec<u32>) {
    if e == g.edge_count() {
        out.push(mask);
        return;
    }
    let (u, v) = g.endpoints(e);
    if !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        branch(g, e + 1, mask | 1 << e, used, out);
        used[u] = false;
        used[v] = false;
    }
    branch(g, e + 1, mask, used, out);
}

fn class_masks(g: &Graph, variant: Variant) -> Result<Vec<u32>, OracleError> {
    let all = all_matching_masks(g)?;
    let size = |m: &u32| m.count_ones() as usize;
    Ok(match variant {
        Variant::AnyMatching => all,
        Variant::Maximum => {
            let mu = all.iter().map(size).max().unwrap_or(0);
            all.into_iter().filter(|m| size(m) == mu).collect()
        }
        Variant::Perfect => all.into_iter().filter(|m| 2 * size(m) == g.vertex_count()).collect(),
    })
}

fn to_matching(g: &Graph, mask: u32) -> Matching {
    Matching::new(g, (0..g.edge_count()).filter(|&e| mask >> e & 1 == 1)).expect("enumerated matching")
}

pub fn enumerate_matchings(g: &Graph, variant: Variant) -> Result<Vec<Matching>, OracleError> {
    Ok(class_masks(g, variant)?.into_iter().map(|m| to_matching(g, m)).collect())
}

#[derive(Debug, Clone)]
pub enum PairOptimum {
    /// The class is empty.
    Infeasible,
    Value {
        diversity: usize,
        pair: (Matching, Matching),
    },
}

impl PairOptimum {
    pub fn value(&self) -> Option<usize> {
        match self {
            PairOptimum::Infeasible => None,
            PairOptimum::Value { diversity, .. } => Some(*diversity),
        }
    }
}

pub fn max_diversity_pair(g: &Graph, variant: Variant) -> Result<PairOptimum, OracleError> {
    let masks = class_masks(g, variant)?;
    let Some(&first) = masks.first() else {
        return Ok(PairOptimum::Infeasible);
    };
    let mut best = (0, first, first);
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let d = (a ^ b).count_ones();
            if d > best.0 {
                best = (d, a, b);
            }
        }
    }
    Ok(PairOptimum::Value { diversity: best.0 as usize, pair: (to_matching(g, best.1), to_matching(g, best.2)) })
}

pub fn decide(g: &Graph, k: i64, variant: Variant) -> Result<Decision, OracleError> {
    Ok(match max_diversity_pair(g, variant)?.value() {
        Some(d) if d as i64 >= k => Decision::Yes,
        _ => Decision::No,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symmetric_difference_size;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let k3 = complete(3);
        let max = enumerate_matchings(&k3, Variant::Maximum).unwrap();
        assert_eq!(max.len(), 3);
        assert!(max.iter().all(|m| m.len() == 1));
        assert_eq!(enumerate_matchings(&k3, Variant::AnyMatching).unwrap().len(), 4);
        assert_eq!(enumerate_matchings(&c4(), Variant::Perfect).unwrap().len(), 2);
        assert_eq!(enumerate_matchings(&petersen(), Variant::Perfect).unwrap().len(), 6);
        assert!(enumerate_matchings(&k3, Variant::Perfect).unwrap().is_empty());
    }

    #[test]
    fn optimum_examples() {
        assert_eq!(max_diversity_pair(&complete(4), Variant::Perfect).unwrap().value(), Some(4));
        assert_eq!(max_diversity_pair(&complete(3), Variant::Maximum).unwrap().value(), Some(2));
        let p = petersen();
        match max_diversity_pair(&p, Variant::Perfect).unwrap() {
            PairOptimum::Value { diversity, pair } => {
                assert_eq!(diversity, 8);
                assert_eq!(symmetric_difference_size(&pair.0, &pair.1).unwrap(), 8);
            }
            PairOptimum::Infeasible => panic!(),
        }
        let k2 = complete(2);
        match max_diversity_pair(&k2, Variant::Maximum).unwrap() {
            PairOptimum::Value { diversity, pair } => {
                assert_eq!(diversity, 0);
                assert_eq!(pair.0, pair.1);
            }
            PairOptimum::Infeasible => panic!(),
        }
        assert!(matches!(max_diversity_pair(&complete(3), Variant::Perfect).unwrap(), PairOptimum::Infeasible));
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide(&c4(), 4, Variant::Perfect).unwrap(), Decision::Yes);
        let star = Graph::new(8, &(1..8).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(decide(&star, 3, Variant::AnyMatching).unwrap(), Decision::No);
        assert_eq!(decide(&star, 2, Variant::AnyMatching).unwrap(), Decision::Yes);
        assert_eq!(decide(&complete(4), 6, Variant::Perfect).unwrap(), Decision::No);
        assert_eq!(decide(&complete(3), 0, Variant::Perfect).unwrap(), Decision::No);
        assert_eq!(decide(&complete(3), -1, Variant::Maximum).unwrap(), Decision::Yes);
    }

    #[test]
    fn decide_is_monotone() {
        let g = petersen();
        let decisions: Vec<_> = (0..=12).map(|k| decide(&g, k, Variant::Perfect).unwrap()).collect();
        assert!(decisions.windows(2).all(|w| !(w[0] == Decision::No && w[1] == Decision::Yes)));
    }

    #[test]
    fn size_guard() {
        let k8 = complete(8);
        assert_eq!(enumerate_matchings(&k8, Variant::Maximum).unwrap_err(), OracleError::TooLarge(28));
        assert!(OracleError::TooLarge(28).to_string().contains("24"));
    }
}
