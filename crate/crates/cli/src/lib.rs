//! Command implementations behind the `divmatch` binary.

pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use divmatch_core::bipartite::solve_bipartite;
use divmatch_core::fpt::{solve_deterministic, solve_randomized_with, RandomizedConfig};
use divmatch_core::generate;
use divmatch_core::io::{parse_edge_list, write_edge_list_indexed};
use divmatch_core::kernel::{kernel_size_bound, kernelize, KernelOutcome};
use divmatch_core::matching::matching_number;
use divmatch_core::oracle::{max_diversity_pair, PairOptimum, Variant};
use divmatch_core::{detect_bipartition, Decision, Graph, Matching, NoReason, SolveMode, SolveOutcome};

use report::{InstanceSummary, KernelSummary, RunReport};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "divmatch", version, about = "Find two maximum or perfect matchings that differ in at least k edges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Also print certificate edges in text output.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Worker threads for randomized trials.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "any_matching", alias = "any")]
    AnyMatching,
    Maximum,
    Perfect,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AnyMatching => Variant::AnyMatching,
            VariantArg::Maximum => Variant::Maximum,
            VariantArg::Perfect => Variant::Perfect,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Bipartite,
    Randomized,
    Deterministic,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gnp,
    Bipartite,
    Cycle,
    Complete,
    #[value(name = "complete_bipartite", alias = "complete-bipartite")]
    CompleteBipartite,
    Cubic,
    Petersen,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = VariantArg::Maximum)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Randomized colorings to try; defaults to 2^min(2k, 16).
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    pub path: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    /// Where to write the kernel graph; printed after the report when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// First part size for bipartite families.
    #[arg(long)]
    pub a: Option<usize>,
    /// Second part size for bipartite families.
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub path: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = VariantArg::Maximum)]
    pub variant: VariantArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a diverse-pair instance and print a verified certificate.
    Solve(SolveArgs),
    /// Reduce an instance of the unconstrained-matchings problem to a small kernel.
    Kernelize(KernelizeArgs),
    /// Write a generated graph in edge-list format.
    Generate(GenerateArgs),
    /// Exhaustive solver for small graphs.
    Oracle(OracleArgs),
}

/// What a command prints and how the process exits.
#[derive(Debug)]
pub struct CommandOutput {
    pub stdout: String,
    pub exit_code: i32,
    pub report: Option<RunReport>,
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn run(cli: &Cli) -> Result<CommandOutput> {
    let report = match &cli.command {
        Command::Solve(args) => cmd_solve(args, cli.threads)?,
        Command::Kernelize(args) => {
            let (report, kernel_text) = cmd_kernelize(args)?;
            let mut out = render(cli, &report);
            if let Some(text) = kernel_text {
                if cli.format == Format::Text {
                    out.push_str(&text);
                }
            }
            return Ok(CommandOutput { stdout: out, exit_code: EXIT_YES, report: Some(report) });
        }
        Command::Generate(args) => {
            let text = cmd_generate(args)?;
            let stdout = match &args.out {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
                    String::new()
                }
                None => text,
            };
            return Ok(CommandOutput { stdout, exit_code: EXIT_YES, report: None });
        }
        Command::Oracle(args) => cmd_oracle(args)?,
    };
    let exit_code = if report.decision == Decision::Yes.to_string() { EXIT_YES } else { EXIT_NO };
    Ok(CommandOutput { stdout: render(cli, &report), exit_code, report: Some(report) })
}

fn render(cli: &Cli, report: &RunReport) -> String {
    match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(cli.verbose),
    }
}

fn instance(g: &Graph, k: i64, variant: Variant) -> InstanceSummary {
    InstanceSummary { n: g.vertex_count(), edges: g.edge_count(), k, variant: variant.as_str().into() }
}

/// Re-checks the outcome against `g` and assembles the report.
fn finish(g: &Graph, k: i64, variant: Variant, out: &SolveOutcome, started: Instant) -> Result<RunReport> {
    let required = match variant {
        Variant::AnyMatching => None,
        Variant::Maximum => Some(matching_number(g)),
        Variant::Perfect => Some(g.vertex_count() / 2),
    };
    if out.is_yes() && !out.verify(g, k, required) {
        bail!("internal error: certificate failed verification");
    }
    Ok(RunReport {
        instance: instance(g, k, variant),
        mode: out.mode.to_string(),
        decision: out.decision.to_string(),
        certificate: out.certificate.as_ref().map(|p| RunReport::certificate_from(g, p)),
        diversity: out.diversity(),
        trials_used: out.trials_used,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        verified: if out.is_yes() { "verified" } else { "n/a" }.into(),
        optimum: out.optimum,
        reason: out.reason.map(|r| r.as_str().to_string()),
        kernel: None,
    })
}

pub fn cmd_solve(args: &SolveArgs, threads: usize) -> Result<RunReport> {
    let g = read_graph(&args.path)?;
    let started = Instant::now();
    let variant = Variant::from(args.variant);
    let out = match (variant, args.mode) {
        (_, ModeArg::Oracle) => oracle_outcome(&g, args.k, variant)?,
        (Variant::AnyMatching, ModeArg::Auto) => any_matching_outcome(&g, args.k)?,
        (Variant::AnyMatching, mode) => {
            bail!("mode {mode:?} solves maximum and perfect variants only; use auto or oracle for any_matching")
        }
        (_, mode) => {
            if variant == Variant::Perfect && 2 * matching_number(&g) < g.vertex_count() {
                let solve_mode = match mode {
                    ModeArg::Randomized => SolveMode::Randomized,
                    ModeArg::Deterministic => SolveMode::Deterministic,
                    _ if detect_bipartition(&g).is_some() => SolveMode::Bipartite,
                    _ => SolveMode::Deterministic,
                };
                no_perfect(solve_mode)
            } else {
                maximum_outcome(&g, args, mode, threads)?
            }
        }
    };
    finish(&g, args.k, variant, &out, started)
}

fn no_perfect(mode: SolveMode) -> SolveOutcome {
    SolveOutcome {
        decision: Decision::No,
        certificate: None,
        trials_used: 0,
        mode,
        optimum: None,
        reason: Some(NoReason::NoPerfectMatching),
    }
}

fn maximum_outcome(g: &Graph, args: &SolveArgs, mode: ModeArg, threads: usize) -> Result<SolveOutcome> {
    let bipartite = detect_bipartition(g).is_some();
    Ok(match mode {
        ModeArg::Bipartite | ModeArg::Auto if bipartite => solve_bipartite(g, args.k)?,
        ModeArg::Bipartite => bail!("graph is not bipartite"),
        ModeArg::Randomized => {
            let config = RandomizedConfig { seed: args.seed, trials: args.trials, threads };
            solve_randomized_with(g, args.k, &config)
        }
        ModeArg::Auto | ModeArg::Deterministic => {
            solve_deterministic(g, args.k).map_err(|e| anyhow!("{e}; the randomized mode has no such limit"))?
        }
        ModeArg::Oracle => unreachable!("handled by the caller"),
    })
}

fn oracle_outcome(g: &Graph, k: i64, variant: Variant) -> Result<SolveOutcome> {
    let optimum = max_diversity_pair(g, variant)?;
    let (decision, certificate, value) = match optimum {
        PairOptimum::Infeasible => (Decision::No, None, None),
        PairOptimum::Value { diversity, pair } => {
            let yes = diversity as i64 >= k;
            (if yes { Decision::Yes } else { Decision::No }, yes.then_some(pair), Some(diversity))
        }
    };
    let reason = match (decision, value) {
        (Decision::No, None) => Some(NoReason::Infeasible),
        _ => None,
    };
    Ok(SolveOutcome { decision, certificate, trials_used: 0, mode: SolveMode::Oracle, optimum: value, reason })
}

/// Unconstrained matchings: kernelize, then search the kernel exhaustively.
fn any_matching_outcome(g: &Graph, k: i64) -> Result<SolveOutcome> {
    if k <= 0 {
        let empty = Matching::empty(g);
        return Ok(SolveOutcome {
            decision: Decision::Yes,
            certificate: Some((empty.clone(), empty)),
            trials_used: 0,
            mode: SolveMode::KernelSplit,
            optimum: None,
            reason: None,
        });
    }
    let result = kernelize(g, k)?;
    match result.outcome {
        KernelOutcome::ImmediateYes(pair) => Ok(SolveOutcome {
            decision: Decision::Yes,
            certificate: Some(pair),
            trials_used: 0,
            mode: SolveMode::KernelSplit,
            optimum: None,
            reason: None,
        }),
        KernelOutcome::Reduced { marked, kernel } => {
            let on_kernel = oracle_outcome(&kernel, k, Variant::AnyMatching)
                .context("kernel is too large for the exhaustive search")?;
            let lift = |m: &Matching| {
                let edges = m.edges().iter().map(|&e| {
                    let (u, v) = kernel.endpoints(e);
                    g.edge_between(marked[u], marked[v]).expect("kernel is an induced subgraph")
                });
                Matching::new(g, edges).expect("lifted matching")
            };
            Ok(SolveOutcome {
                certificate: on_kernel.certificate.as_ref().map(|(a, b)| (lift(a), lift(b))),
                ..on_kernel
            })
        }
    }
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<RunReport> {
    let g = read_graph(&args.path)?;
    let started = Instant::now();
    let variant = Variant::from(args.variant);
    let out = oracle_outcome(&g, args.k, variant)?;
    finish(&g, args.k, variant, &out, started)
}

/// The kernel file: relabeling comments, then the indexed edge list.
pub fn kernel_file(g: &Graph, marked: &[usize], kernel: &Graph) -> String {
    let mut text = String::new();
    for (new, &old) in marked.iter().enumerate() {
        text.push_str(&format!("# relabel {}={new}\n", g.name(old)));
    }
    text.push_str(&write_edge_list_indexed(kernel));
    text
}

pub fn cmd_kernelize(args: &KernelizeArgs) -> Result<(RunReport, Option<String>)> {
    let g = read_graph(&args.path)?;
    let started = Instant::now();
    let result = kernelize(&g, args.k)?;
    let bound = kernel_size_bound(args.k);
    let (summary, certificate, kernel_text) = match &result.outcome {
        KernelOutcome::ImmediateYes(pair) => (
            KernelSummary {
                outcome: "immediate_yes".into(),
                marked: None,
                bound,
                within_bound: true,
                kernel_edges: None,
                written_to: None,
            },
            Some(pair.clone()),
            None,
        ),
        KernelOutcome::Reduced { marked, kernel } => {
            let text = kernel_file(&g, marked, kernel);
            let written_to = match &args.out {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            let summary = KernelSummary {
                outcome: "reduced".into(),
                marked: Some(marked.len()),
                bound,
                within_bound: (marked.len() as u64) < bound,
                kernel_edges: Some(kernel.edge_count()),
                written_to: written_to.clone(),
            };
            (summary, None, written_to.is_none().then_some(text))
        }
    };
    let yes = certificate.is_some();
    let diversity =
        certificate.as_ref().map(|(a, b)| divmatch_core::symmetric_difference_size(a, b).expect("same graph"));
    let report = RunReport {
        instance: instance(&g, args.k, Variant::AnyMatching),
        mode: SolveMode::KernelSplit.to_string(),
        // a reduced instance is undecided until the kernel is solved
        decision: if yes { "YES" } else { "REDUCED" }.into(),
        certificate: certificate.as_ref().map(|p| RunReport::certificate_from(&g, p)),
        diversity,
        trials_used: 0,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        verified: if yes { "verified" } else { "n/a" }.into(),
        optimum: None,
        reason: None,
        kernel: Some(summary),
    };
    Ok((report, kernel_text))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<String> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required for this family"));
    let g = match args.family {
        Family::Gnp => generate::gnp(need(args.n, "n")?, args.p.ok_or_else(|| anyhow!("--p is required"))?, args.seed)?,
        Family::Bipartite => generate::random_bipartite(
            need(args.a, "a")?,
            need(args.b, "b")?,
            args.p.ok_or_else(|| anyhow!("--p is required"))?,
            args.seed,
        )?,
        Family::Cycle => generate::cycle(need(args.n, "n")?)?,
        Family::Complete => generate::complete(need(args.n, "n")?),
        Family::CompleteBipartite => generate::complete_bipartite(need(args.a, "a")?, need(args.b, "b")?),
        Family::Cubic => generate::cubic(need(args.n, "n")?, args.seed)?,
        Family::Petersen => generate::petersen(),
    };
    Ok(write_edge_list_indexed(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_file_lists_relabeling_then_edges() {
        let g = Graph::with_names(3, &[(0, 2)], vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let kernel = g.induced_subgraph(&[0, 2]);
        let text = kernel_file(&g, &[0, 2], &kernel);
        assert_eq!(text, "# relabel x=0\n# relabel z=1\nn 2\n0 1\n");
        assert_eq!(parse_edge_list(&text).unwrap().edge_count(), 1);
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["divmatch", "solve", "g.txt", "--k", "3", "--format", "json", "--threads", "4"])
            .unwrap();
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.threads, 4);
        assert!(Cli::try_parse_from(["divmatch", "solve", "g.txt"]).is_err());
        let cli = Cli::try_parse_from(["divmatch", "oracle", "g.txt", "--k", "-2", "--variant", "any"]).unwrap();
        match cli.command {
            Command::Oracle(args) => assert_eq!((args.k, args.variant), (-2, VariantArg::AnyMatching)),
            other => panic!("{other:?}"),
        }
    }
}
