use std::fmt;

use crate::graph::{symmetric_difference_size, Graph, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Randomized,
    Deterministic,
    Bipartite,
    KernelSplit,
    Oracle,
}

impl SolveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMode::Randomized => "randomized",
            SolveMode::Deterministic => "deterministic",
            SolveMode::Bipartite => "bipartite",
            SolveMode::KernelSplit => "kernel-split",
            SolveMode::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a NO was reached without exhausting colorings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoReason {
    NoPerfectMatching,
    /// `k` exceeds twice the matching number.
    ExceedsTwiceMatchingNumber,
    /// The base check bounded every pair's diversity below `k`.
    BoundedByBaseCheck,
    ColoringsExhausted,
    Infeasible,
}

impl NoReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NoReason::NoPerfectMatching => "no perfect matching",
            NoReason::ExceedsTwiceMatchingNumber => "k exceeds twice the matching number",
            NoReason::BoundedByBaseCheck => "base check bounds every pair below k",
            NoReason::ColoringsExhausted => "no coloring produced a pair",
            NoReason::Infeasible => "no matching pair of the requested class",
        }
    }
}

/// A decision with its certificate.
///
/// `Yes` always carries a pair; solvers verify it before returning.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub certificate: Option<(Matching, Matching)>,
    pub trials_used: u64,
    pub mode: SolveMode,
    /// Exact optimum diversity, when the solver computes it.
    pub optimum: Option<usize>,
    pub reason: Option<NoReason>,
}

impl SolveOutcome {
    pub(crate) fn yes(pair: (Matching, Matching), trials_used: u64, mode: SolveMode) -> Self {
        SolveOutcome {
            decision: Decision::Yes,
            certificate: Some(pair),
            trials_used,
            mode,
            optimum: None,
            reason: None,
        }
    }

    pub(crate) fn no(reason: NoReason, trials_used: u64, mode: SolveMode) -> Self {
        SolveOutcome {
            decision: Decision::No,
            certificate: None,
            trials_used,
            mode,
            optimum: None,
            reason: Some(reason),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }

    /// Diversity of the certificate, if any.
    pub fn diversity(&self) -> Option<usize> {
        self.certificate.as_ref().map(|(a, b)| symmetric_difference_size(a, b).expect("certificate from one graph"))
    }

    /// Re-checks a YES certificate: both matchings belong to `g`, have
    /// cardinality `required_size` (when given), and differ in at least `k`
    /// edges.
    pub fn verify(&self, g: &Graph, k: i64, required_size: Option<usize>) -> bool {
        match (&self.decision, &self.certificate) {
            (Decision::Yes, Some((a, b))) => {
                a.belongs_to(g)
                    && b.belongs_to(g)
                    && required_size.is_none_or(|s| a.len() == s && b.len() == s)
                    && symmetric_difference_size(a, b).map(|d| d as i64 >= k).unwrap_or(false)
            }
            (Decision::No, None) => true,
            _ => false,
        }
    }
}
