//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("cubic graphs need an even vertex count of at least 4, got {0}")]
    CubicOrder(usize),
    #[error("cycles need at least 3 vertices, got {0}")]
    CycleOrder(usize),
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::Probability(p))
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("generator yields a simple graph")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(build(n, &edges))
}

/// Random bipartite graph; vertices `0..a` form one side, `a..a+b` the other.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            if rng.gen_bool(p) {
                edges.push((u, a + v));
            }
        }
    }
    Ok(build(a + b, &edges))
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::CycleOrder(n));
    }
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Ok(build(n, &edges))
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
    build(a + b, &edges)
}

/// Uniform simple 3-regular graph by the pairing model, redrawing until
/// the pairing has no loops or repeated pairs.
pub fn cubic(n: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenerateError::CubicOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
    'draw: loop {
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue 'draw;
        }
        return Ok(build(n, &edges));
    }
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}
