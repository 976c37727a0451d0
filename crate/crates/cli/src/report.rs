use std::fmt::Write as _;

use divmatch_core::{Graph, Matching};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceSummary {
    pub n: usize,
    pub edges: usize,
    pub k: i64,
    pub variant: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct KernelSummary {
    pub outcome: String,
    /// Marked vertices `|X|`; absent for an immediate YES.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
    pub bound: u64,
    pub within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub written_to: Option<String>,
}

pub type NamedPairs = Vec<[String; 2]>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub instance: InstanceSummary,
    pub mode: String,
    pub decision: String,
    pub certificate: Option<[NamedPairs; 2]>,
    pub diversity: Option<usize>,
    pub trials_used: u64,
    pub elapsed_ms: f64,
    pub verified: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSummary>,
}

impl RunReport {
    pub fn certificate_from(g: &Graph, pair: &(Matching, Matching)) -> [NamedPairs; 2] {
        [pair.0.named_pairs(g), pair.1.named_pairs(g)]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let i = &self.instance;
        let mut line =
            format!("{} mode={} n={} m={} k={} variant={}", self.decision, self.mode, i.n, i.edges, i.k, i.variant);
        if let Some(d) = self.diversity {
            write!(line, " diversity={d}").unwrap();
        }
        if let Some(o) = self.optimum {
            write!(line, " optimum={o}").unwrap();
        }
        write!(line, " trials={} time={:.1}ms {}", self.trials_used, self.elapsed_ms, self.verified).unwrap();
        if let Some(r) = &self.reason {
            write!(line, " ({r})").unwrap();
        }
        if let Some(kernel) = &self.kernel {
            write!(line, " kernel={}", kernel.outcome).unwrap();
            if let Some(x) = kernel.marked {
                write!(line, " marked={x} bound={} within_bound={}", kernel.bound, kernel.within_bound).unwrap();
            }
        }
        line.push('\n');
        if verbose {
            if let Some(cert) = &self.certificate {
                for (label, side) in ["M1", "M2"].iter().zip(cert) {
                    let edges: Vec<String> = side.iter().map(|[u, v]| format!("{u}-{v}")).collect();
                    writeln!(line, "{label}: {}", edges.join(" ")).unwrap();
                }
            }
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            instance: InstanceSummary { n: 2, edges: 1, k: 1, variant: "maximum".into() },
            mode: "deterministic".into(),
            decision: "NO".into(),
            certificate: None,
            diversity: None,
            trials_used: 0,
            elapsed_ms: 0.5,
            verified: "n/a".into(),
            optimum: None,
            reason: Some("base check bounds every pair below k".into()),
            kernel: None,
        }
    }

    #[test]
    fn json_round_trip_keeps_null_certificate() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"certificate\": null"));
        assert!(!json.contains("\"kernel\""));
        assert_eq!(serde_json::from_str::<RunReport>(&json).unwrap(), r);
    }

    #[test]
    fn text_line() {
        let line = sample().to_text(true);
        assert_eq!(line.lines().count(), 1);
        assert!(line.starts_with("NO mode=deterministic n=2 m=1 k=1 variant=maximum trials=0"));
    }
}
