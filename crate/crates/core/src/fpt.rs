//! Color-coding solver for the maximum and perfect variants.
//!
//! Fix a maximum matching `M`. One min-cost matching computation finds the
//! maximum matching farthest from `M`; if that already reaches `k` we are
//! done. Otherwise every solution pair differs from `M` in fewer than `k`
//! edges on each side, so its symmetric difference is below `2k`, and a
//! red/blue coloring that puts one side of it in red and the other in blue
//! lets two min-cost matching computations recover a pair at least as
//! diverse. Colorings come either from a seeded generator or from a
//! universal family.
//!
//! Diversities of two maximum matchings are always even, so an odd `k` is
//! handled as `k + 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{symmetric_difference_size, EdgeId, Graph, Matching};
use crate::matching::{matching_number, maximum_matching, min_cost_maximum_matching, CardinalityMatcher, CostFunction};
use crate::outcome::{NoReason, SolveMode, SolveOutcome};
use crate::universal::{construct_universal, UniversalError};

/// Default trial count is `2^min(2k, DEFAULT_TRIALS_LOG2_CAP)`.
pub const DEFAULT_TRIALS_LOG2_CAP: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FptError {
    #[error("matching has {got} edges, the maximum is {expected}")]
    NotMaximum { got: usize, expected: usize },
    #[error("matching belongs to another graph")]
    ForeignMatching,
    #[error("coloring covers {got} edges, graph has {expected}")]
    ColoringLength { got: usize, expected: usize },
    #[error(transparent)]
    Universal(#[from] UniversalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<Color>) -> Result<Self, FptError> {
        if colors.len() != g.edge_count() {
            return Err(FptError::ColoringLength { got: colors.len(), expected: g.edge_count() });
        }
        Ok(EdgeColoring { colors })
    }

    /// Red on `red`, blue elsewhere.
    pub fn from_red(g: &Graph, red: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut colors = vec![Color::Blue; g.edge_count()];
        for e in red {
            colors[e] = Color::Red;
        }
        EdgeColoring { colors }
    }

    pub fn random<R: Rng>(g: &Graph, rng: &mut R) -> Self {
        let colors = (0..g.edge_count()).map(|_| if rng.gen::<bool>() { Color::Red } else { Color::Blue }).collect();
        EdgeColoring { colors }
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn edges_of(&self, color: Color) -> impl Iterator<Item = EdgeId> + '_ {
        self.colors.iter().enumerate().filter(move |(_, &c)| c == color).map(|(e, _)| e)
    }
}

#[derive(Debug, Clone)]
pub enum BaseCheck {
    Found((Matching, Matching)),
    /// Every maximum matching differs from the fixed one in `best < k` edges.
    Bounded {
        best: usize,
    },
}

pub fn base_check(g: &Graph, m: &Matching, k: i64) -> Result<BaseCheck, FptError> {
    if !m.belongs_to(g) {
        return Err(FptError::ForeignMatching);
    }
    let mu = matching_number(g);
    if m.len() != mu {
        return Err(FptError::NotMaximum { got: m.len(), expected: mu });
    }
    let far = min_cost_maximum_matching(g, &CostFunction::indicator(g, m.edges().iter().copied()));
    let d = symmetric_difference_size(m, &far).expect("same graph");
    Ok(if d as i64 >= k { BaseCheck::Found((m.clone(), far)) } else { BaseCheck::Bounded { best: d } })
}

/// The pair of min-cost maximum matchings under cost 1 on blue (first) and
/// cost 1 on red (second).
pub fn coloring_pair(g: &Graph, coloring: &EdgeColoring) -> (Matching, Matching) {
    debug_assert_eq!(coloring.len(), g.edge_count());
    let m1 = min_cost_maximum_matching(g, &CostFunction::indicator(g, coloring.edges_of(Color::Blue)));
    let m2 = min_cost_maximum_matching(g, &CostFunction::indicator(g, coloring.edges_of(Color::Red)));
    (m1, m2)
}

pub fn coloring_round(g: &Graph, coloring: &EdgeColoring, k: i64) -> Option<(Matching, Matching)> {
    let pair = coloring_pair(g, coloring);
    let d = symmetric_difference_size(&pair.0, &pair.1).expect("same graph");
    (d as i64 >= k).then_some(pair)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedConfig {
    pub seed: u64,
    /// `None` means `2^min(2k, 16)`.
    pub trials: Option<u64>,
    pub threads: usize,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        RandomizedConfig { seed: 0, trials: None, threads: 1 }
    }
}

pub fn default_trials(k: i64) -> u64 {
    let exp = (2 * k.max(0)).min(DEFAULT_TRIALS_LOG2_CAP as i64);
    1u64 << exp
}

/// The coloring of trial `index`; depends on `(seed, index)` only.
pub fn trial_coloring(g: &Graph, seed: u64, index: u64) -> EdgeColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    EdgeColoring::random(g, &mut rng)
}

enum Prelude {
    Done(SolveOutcome),
    /// Colorings are needed; carries the (even) target and the base bound.
    Search {
        k: i64,
        best: usize,
        m: Matching,
    },
}

fn prelude(g: &Graph, k: i64, mode: SolveMode) -> Prelude {
    let m = maximum_matching(g);
    if k <= 0 {
        return Prelude::Done(SolveOutcome::yes((m.clone(), m), 0, mode));
    }
    let k = k + (k & 1);
    if k > 2 * m.len() as i64 {
        return Prelude::Done(SolveOutcome::no(NoReason::ExceedsTwiceMatchingNumber, 0, mode));
    }
    match base_check(g, &m, k).expect("maximum matching of g") {
        BaseCheck::Found(pair) => Prelude::Done(SolveOutcome::yes(pair, 0, mode)),
        BaseCheck::Bounded { best } if k > 2 * best as i64 => {
            Prelude::Done(SolveOutcome::no(NoReason::BoundedByBaseCheck, 0, mode))
        }
        BaseCheck::Bounded { best } => Prelude::Search { k, best, m },
    }
}

pub fn solve_randomized(g: &Graph, k: i64, seed: u64, trials: Option<u64>) -> SolveOutcome {
    solve_randomized_with(g, k, &RandomizedConfig { seed, trials, threads: 1 })
}

/// One-sided: YES answers carry verified pairs, NO may be a false negative.
/// With several threads the reported pair is still the one from the lowest
/// successful trial index.
pub fn solve_randomized_with(g: &Graph, k: i64, config: &RandomizedConfig) -> SolveOutcome {
    let mode = SolveMode::Randomized;
    let k = match prelude(g, k, mode) {
        Prelude::Done(out) => return out,
        Prelude::Search { k, .. } => k,
    };
    let trials = config.trials.unwrap_or_else(|| default_trials(k));
    let attempt = |i: u64| coloring_round(g, &trial_coloring(g, config.seed, i), k).map(|p| (i, p));
    let found = if config.threads <= 1 {
        (0..trials).find_map(attempt)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool")
            .install(|| (0..trials).into_par_iter().find_map_first(attempt))
    };
    match found {
        Some((i, pair)) => SolveOutcome::yes(pair, i + 1, mode),
        None => SolveOutcome::no(NoReason::ColoringsExhausted, trials, mode),
    }
}

/// Edges lying in some but not every maximum matching, given a maximum
/// matching `m`. Only these can appear in the symmetric difference of two
/// maximum matchings.
pub fn variable_edges(g: &Graph, m: &Matching) -> Vec<EdgeId> {
    let mates = m.mates(g);
    (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            if m.contains(e) {
                // replaceable iff an augmenting path exists once e is banned;
                // any such path ends at u or v
                let mut x = CardinalityMatcher::with_mates(g, &mates);
                x.ban_edge(e);
                x.augment_from(u) || x.augment_from(v)
            } else {
                // usable iff g - u - v still has a matching of size μ - 1;
                // any augmenting path there ends at a former mate of u or v
                let mut x = CardinalityMatcher::with_mates(g, &mates);
                let freed: Vec<_> = [x.remove_vertex(u), x.remove_vertex(v)].into_iter().flatten().collect();
                freed.len() < 2 || freed.iter().any(|&w| x.augment_from(w))
            }
        })
        .collect()
}

/// Exact solver. Members of a universal family over the variable edges
/// serve as red sets; all other edges are red as well.
pub fn solve_deterministic(g: &Graph, k: i64) -> Result<SolveOutcome, FptError> {
    let mode = SolveMode::Deterministic;
    let (k, best, m) = match prelude(g, k, mode) {
        Prelude::Done(out) => return Ok(out),
        Prelude::Search { k, best, m } => (k, best, m),
    };
    let ground = variable_edges(g, &m);
    let kappa = (2 * best).min(ground.len());
    let family = construct_universal(ground.len(), kappa)?;
    let fixed: Vec<EdgeId> = {
        let mut in_ground = vec![false; g.edge_count()];
        ground.iter().for_each(|&e| in_ground[e] = true);
        (0..g.edge_count()).filter(|&e| !in_ground[e]).collect()
    };
    for (i, member) in family.members.iter().enumerate() {
        let red = fixed.iter().copied().chain(member.iter().map(|j| ground[j]));
        let coloring = EdgeColoring::from_red(g, red);
        if let Some(pair) = coloring_round(g, &coloring, k) {
            return Ok(SolveOutcome::yes(pair, i as u64 + 1, mode));
        }
    }
    Ok(SolveOutcome::no(NoReason::ColoringsExhausted, family.len() as u64, mode))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerfectMode {
    Randomized { seed: u64, trials: Option<u64> },
    Deterministic,
}

pub fn solve_perfect(g: &Graph, k: i64, mode: PerfectMode) -> Result<SolveOutcome, FptError> {
    if 2 * matching_number(g) < g.vertex_count() {
        let m = match mode {
            PerfectMode::Randomized { .. } => SolveMode::Randomized,
            PerfectMode::Deterministic => SolveMode::Deterministic,
        };
        return Ok(SolveOutcome::no(NoReason::NoPerfectMatching, 0, m));
    }
    match mode {
        PerfectMode::Randomized { seed, trials } => Ok(solve_randomized(g, k, seed, trials)),
        PerfectMode::Deterministic => solve_deterministic(g, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outcome::Decision;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &edges)
    }

    fn sorted_pair(p: &(Matching, Matching)) -> [Vec<EdgeId>; 2] {
        let mut v = [p.0.edges().to_vec(), p.1.edges().to_vec()];
        v.sort();
        v
    }

    #[test]
    fn base_check_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let m = Matching::new(&p3, [0]).unwrap();
        match base_check(&p3, &m, 2).unwrap() {
            BaseCheck::Found(pair) => assert_eq!(sorted_pair(&pair), [vec![0], vec![1]]),
            other => panic!("{other:?}"),
        }
        let k2 = graph(2, &[(0, 1)]);
        let m = Matching::new(&k2, [0]).unwrap();
        assert!(matches!(base_check(&k2, &m, 1).unwrap(), BaseCheck::Bounded { best: 0 }));

        let c5 = cycle(5);
        let m = Matching::new(&c5, [0, 2]).unwrap();
        match base_check(&c5, &m, 4).unwrap() {
            BaseCheck::Found((a, b)) => {
                assert_eq!(a.edges(), &[0, 2]);
                assert_eq!(symmetric_difference_size(&a, &b).unwrap(), 4);
            }
            other => panic!("{other:?}"),
        }
        let small = Matching::new(&c5, [0]).unwrap();
        assert_eq!(base_check(&c5, &small, 1).unwrap_err(), FptError::NotMaximum { got: 1, expected: 2 });
    }

    #[test]
    fn coloring_round_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let pair = coloring_round(&p3, &EdgeColoring::from_red(&p3, [0]), 2).unwrap();
        assert_eq!((pair.0.edges(), pair.1.edges()), (&[0][..], &[1][..]));

        let k2 = graph(2, &[(0, 1)]);
        for red in [vec![], vec![0]] {
            assert!(coloring_round(&k2, &EdgeColoring::from_red(&k2, red), 1).is_none());
        }

        let c4 = cycle(4);
        let pair = coloring_round(&c4, &EdgeColoring::from_red(&c4, [0, 2]), 4).unwrap();
        assert_eq!((pair.0.edges(), pair.1.edges()), (&[0, 2][..], &[1, 3][..]));
    }

    #[test]
    fn coloring_validation() {
        let c4 = cycle(4);
        assert!(EdgeColoring::new(&c4, vec![Color::Red; 4]).is_ok());
        assert_eq!(
            EdgeColoring::new(&c4, vec![Color::Red; 3]).unwrap_err(),
            FptError::ColoringLength { got: 3, expected: 4 }
        );
    }

    #[test]
    fn randomized_examples() {
        let c4 = cycle(4);
        let k2 = graph(2, &[(0, 1)]);
        for seed in 0..5 {
            let out = solve_randomized(&c4, 4, seed, None);
            assert!(out.is_yes() && out.verify(&c4, 4, Some(2)));
            assert_eq!(out.trials_used, 0);
            assert_eq!(solve_randomized(&k2, 1, seed, None).decision, Decision::No);
        }
        let out = solve_randomized(&k2, -3, 0, None);
        assert!(out.is_yes());
        assert_eq!(out.diversity(), Some(0));
    }

    #[test]
    fn randomized_zero_trials_runs_base_check_only() {
        let c6 = cycle(6);
        // base check succeeds without trials
        assert!(solve_randomized(&c6, 6, 0, Some(0)).is_yes());
        let k2 = graph(2, &[(0, 1)]);
        let out = solve_randomized(&k2, 2, 0, Some(0));
        assert_eq!(out.decision, Decision::No);
    }

    #[test]
    fn randomized_is_deterministic_across_threads() {
        // path 3-0-5-2-1: base check stops at 2, the optimum is 4
        let g = graph(6, &[(0, 3), (0, 5), (1, 2), (2, 5)]);
        let one = solve_randomized_with(&g, 4, &RandomizedConfig { seed: 3, trials: Some(64), threads: 1 });
        let four = solve_randomized_with(&g, 4, &RandomizedConfig { seed: 3, trials: Some(64), threads: 4 });
        assert!(one.is_yes() && one.trials_used > 0);
        assert_eq!(one.decision, four.decision);
        assert_eq!(one.trials_used, four.trials_used);
        assert_eq!(one.certificate.as_ref().map(sorted_pair), four.certificate.as_ref().map(sorted_pair));
    }

    #[test]
    fn deterministic_examples() {
        let c4 = cycle(4);
        assert!(solve_deterministic(&c4, 4).unwrap().is_yes());
        let k2 = graph(2, &[(0, 1)]);
        let out = solve_deterministic(&k2, 2).unwrap();
        assert_eq!(out.decision, Decision::No);
        let c6 = cycle(6);
        let out = solve_deterministic(&c6, 6).unwrap();
        assert_eq!(sorted_pair(out.certificate.as_ref().unwrap()), [vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn odd_k_rounds_up() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert!(solve_deterministic(&p3, 1).unwrap().is_yes());
        assert!(solve_deterministic(&p3, 2).unwrap().is_yes());
        assert!(!solve_deterministic(&p3, 3).unwrap().is_yes());
    }

    #[test]
    fn perfect_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        for mode in [PerfectMode::Deterministic, PerfectMode::Randomized { seed: 1, trials: None }] {
            let out = solve_perfect(&p3, 0, mode).unwrap();
            assert_eq!(out.reason, Some(NoReason::NoPerfectMatching));
        }
        assert!(solve_perfect(&cycle(4), 4, PerfectMode::Deterministic).unwrap().is_yes());
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let out = solve_perfect(&k4, 4, PerfectMode::Deterministic).unwrap();
        assert!(out.verify(&k4, 4, Some(2)));
    }

    #[test]
    fn variable_edges_examples() {
        // K2: the only edge is in every maximum matching
        let k2 = graph(2, &[(0, 1)]);
        assert!(variable_edges(&k2, &maximum_matching(&k2)).is_empty());
        // pendant path 0-1-2-3: the unique perfect matching {01, 23} is rigid,
        // and 12 lies in no maximum matching
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(variable_edges(&p4, &maximum_matching(&p4)).is_empty());
        let c6 = cycle(6);
        assert_eq!(variable_edges(&c6, &maximum_matching(&c6)), (0..6).collect::<Vec<_>>());
        // triangle with a pendant: 0-1-2-0 plus 2-3; the edge 01 is the only
        // partner of 23 and the others are never usable
        let g = graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert!(variable_edges(&g, &maximum_matching(&g)).is_empty());
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(variable_edges(&p3, &maximum_matching(&p3)), vec![0, 1]);
    }
}
