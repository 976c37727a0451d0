use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use divmatch_core::io::parse_edge_list;
use divmatch_core::matching::matching_number;
use divmatch_core::oracle::{decide, Variant};
use divmatch_core::{is_matching, Decision, Graph};
use serde_json::Value;
use tempfile::TempDir;

fn divmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divmatch")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = divmatch(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn load(path: &Path) -> Graph {
    parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Re-validates a YES certificate from a JSON report against the input.
fn revalidate(g: &Graph, report: &Value, k: i64, required: Option<usize>) {
    let by_name = |name: &str| (0..g.vertex_count()).find(|&v| g.name(v) == name).unwrap();
    let sides: Vec<Vec<usize>> = report["certificate"]
        .as_array()
        .unwrap()
        .iter()
        .map(|side| {
            side.as_array()
                .unwrap()
                .iter()
                .map(|pair| {
                    let u = by_name(pair[0].as_str().unwrap());
                    let v = by_name(pair[1].as_str().unwrap());
                    g.edge_between(u, v).expect("certificate edge exists")
                })
                .collect()
        })
        .collect();
    assert_eq!(sides.len(), 2);
    for side in &sides {
        assert!(is_matching(g, side).unwrap());
        if let Some(size) = required {
            assert_eq!(side.len(), size);
        }
    }
    let diff = sides[0].iter().filter(|e| !sides[1].contains(e)).count()
        + sides[1].iter().filter(|e| !sides[0].contains(e)).count();
    assert!(diff as i64 >= k);
    assert_eq!(report["diversity"].as_u64(), Some(diff as u64));
    assert_eq!(report["verified"], "verified");
}

#[test]
fn solve_examples_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let out = divmatch(&["solve", c4.to_str().unwrap(), "--k", "4", "--variant", "perfect", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["mode"], "bipartite");
    assert_eq!(report["decision"], "YES");
    revalidate(&load(&c4), &report, 4, Some(2));

    let k2 = write(&dir, "k2.txt", "a b\n");
    let out = divmatch(&["solve", k2.to_str().unwrap(), "--k", "1", "--mode", "deterministic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["decision"], "NO");
    assert_eq!(report["certificate"], Value::Null);
    assert_eq!(report["verified"], "n/a");

    let pet = generated(&dir, "petersen.txt", &["petersen"]);
    let out = divmatch(&[
        "solve",
        pet.to_str().unwrap(),
        "--k",
        "8",
        "--variant",
        "perfect",
        "--mode",
        "randomized",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["diversity"], 8);
    revalidate(&load(&pet), &report, 8, Some(5));
}

#[test]
fn report_schema_keys() {
    let dir = TempDir::new().unwrap();
    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let report = json_of(&divmatch(&["solve", c4.to_str().unwrap(), "--k", "2", "--format", "json"]));
    for key in ["instance", "mode", "decision", "certificate", "diversity", "trials_used", "elapsed_ms", "verified"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["instance"]["n"], 4);
    assert_eq!(report["instance"]["edges"], 4);
    assert_eq!(report["instance"]["k"], 2);
    assert_eq!(report["instance"]["variant"], "maximum");
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "a a\n");
    let out = divmatch(&["solve", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(divmatch(&["solve", "/nonexistent/file", "--k", "1"]).status.code(), Some(2));
    assert_eq!(divmatch(&["solve", bad.to_str().unwrap(), "--k", "1", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(divmatch(&["solve", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(divmatch(&["generate", "cubic", "--n", "7"]).status.code(), Some(2));
    assert_eq!(divmatch(&["generate", "gnp", "--n", "5", "--p", "1.5"]).status.code(), Some(2));

    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let c4 = c4.to_str().unwrap();
    let out = divmatch(&["solve", c4, "--k", "1", "--variant", "any_matching", "--mode", "randomized"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(divmatch(&["kernelize", c4, "--k", "0"]).status.code(), Some(2));
    let k3 = generated(&dir, "k3.txt", &["cycle", "--n", "3"]);
    assert_eq!(divmatch(&["solve", k3.to_str().unwrap(), "--k", "1", "--mode", "bipartite"]).status.code(), Some(2));
    let k8 = generated(&dir, "k8.txt", &["complete", "--n", "8"]);
    let out = divmatch(&["oracle", k8.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("24"));
}

#[test]
fn generate_examples() {
    let c6 = parse_edge_list(&String::from_utf8(divmatch(&["generate", "cycle", "--n", "6"]).stdout).unwrap()).unwrap();
    assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
    assert!((0..6).all(|v| c6.degree(v) == 2) && c6.is_connected());
    let k4 =
        parse_edge_list(&String::from_utf8(divmatch(&["generate", "complete", "--n", "4"]).stdout).unwrap()).unwrap();
    assert_eq!(k4.edge_count(), 6);
    let cubic = divmatch(&["generate", "cubic", "--n", "10", "--seed", "1"]).stdout;
    let g = parse_edge_list(&String::from_utf8(cubic.clone()).unwrap()).unwrap();
    assert!((0..10).all(|v| g.degree(v) == 3));
    assert_eq!(cubic, divmatch(&["generate", "cubic", "--n", "10", "--seed", "1"]).stdout);
}

#[test]
fn kernelize_examples() {
    let dir = TempDir::new().unwrap();
    let star = generated(&dir, "star.txt", &["complete_bipartite", "--a", "1", "--b", "9"]);
    let out_path = dir.path().join("kernel.txt");
    let out = divmatch(&[
        "kernelize",
        star.to_str().unwrap(),
        "--k",
        "3",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["kernel"]["marked"], 8);
    assert_eq!(report["kernel"]["bound"], 36);
    assert_eq!(report["kernel"]["within_bound"], true);
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("# relabel ")).count(), 8);
    let kernel = parse_edge_list(&text).unwrap();
    assert_eq!((kernel.vertex_count(), kernel.edge_count()), (8, 7));

    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let c4_out = dir.path().join("c4-kernel.txt");
    let out = divmatch(&[
        "kernelize",
        c4.to_str().unwrap(),
        "--k",
        "2",
        "--out",
        c4_out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report = json_of(&out);
    assert_eq!(report["kernel"]["outcome"], "immediate_yes");
    assert!(!c4_out.exists());
    revalidate(&load(&c4), &report, 2, None);

    let empty = write(&dir, "empty.txt", "n 3\n");
    let empty_out = dir.path().join("empty-kernel.txt");
    let out = divmatch(&["kernelize", empty.to_str().unwrap(), "--k", "1", "--out", empty_out.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(load(&empty_out).vertex_count(), 0);
}

#[test]
fn oracle_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = generated(&dir, "k4.txt", &["complete", "--n", "4"]);
    let report =
        json_of(&divmatch(&["oracle", k4.to_str().unwrap(), "--k", "4", "--variant", "perfect", "--format", "json"]));
    assert_eq!((report["decision"].as_str(), report["optimum"].as_u64()), (Some("YES"), Some(4)));
    let k3 = generated(&dir, "k3.txt", &["complete", "--n", "3"]);
    let out = divmatch(&["oracle", k3.to_str().unwrap(), "--k", "3", "--variant", "maximum", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["optimum"], 2);
    let pet = generated(&dir, "petersen.txt", &["petersen"]);
    let out = divmatch(&["oracle", pet.to_str().unwrap(), "--k", "9", "--variant", "perfect", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["optimum"], 8);
}

#[test]
fn symbolic_names_survive_into_certificates() {
    let dir = TempDir::new().unwrap();
    let path =
        write(&dir, "sym.txt", "# a 6-cycle\nalpha beta\nbeta gamma\ngamma delta\ndelta eps\neps zeta\nzeta alpha\n");
    let report = json_of(&divmatch(&["solve", path.to_str().unwrap(), "--k", "6", "--format", "json"]));
    assert_eq!(report["decision"], "YES");
    revalidate(&load(&path), &report, 6, Some(3));
    assert!(report["certificate"][0][0][0].as_str().unwrap().chars().all(|c| c.is_ascii_lowercase()));
}

#[test]
fn deterministic_cli_agrees_with_oracle_on_generated_instances() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12 {
        let seed_s = seed.to_string();
        let path = generated(&dir, &format!("g{seed}.txt"), &["gnp", "--n", "7", "--p", "0.45", "--seed", &seed_s]);
        let g = load(&path);
        let mu = matching_number(&g);
        for (variant, v) in [("maximum", Variant::Maximum), ("perfect", Variant::Perfect)] {
            for k in [1i64, 2, 4, 6] {
                let ks = k.to_string();
                let p = path.to_str().unwrap();
                let solve = divmatch(&[
                    "solve",
                    p,
                    "--k",
                    &ks,
                    "--variant",
                    variant,
                    "--mode",
                    "deterministic",
                    "--format",
                    "json",
                ]);
                let oracle = divmatch(&["oracle", p, "--k", &ks, "--variant", variant, "--format", "json"]);
                let want = decide(&g, k, v).unwrap();
                assert_eq!(solve.status.code(), Some(if want == Decision::Yes { 0 } else { 1 }), "seed {seed} k {k}");
                assert_eq!(oracle.status.code(), solve.status.code());
                if want == Decision::Yes {
                    let size = if v == Variant::Maximum { mu } else { g.vertex_count() / 2 };
                    revalidate(&g, &json_of(&solve), k, Some(size));
                }
            }
        }
    }
}

#[test]
fn any_matching_variant_routes_through_the_kernel() {
    let dir = TempDir::new().unwrap();
    let star = generated(&dir, "star.txt", &["complete_bipartite", "--a", "1", "--b", "9"]);
    let out = divmatch(&["solve", star.to_str().unwrap(), "--k", "3", "--variant", "any_matching", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = divmatch(&["solve", star.to_str().unwrap(), "--k", "2", "--variant", "any_matching", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    revalidate(&load(&star), &json_of(&out), 2, None);
}

#[test]
fn text_output_is_one_line_unless_verbose() {
    let dir = TempDir::new().unwrap();
    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let plain = String::from_utf8(divmatch(&["solve", c4.to_str().unwrap(), "--k", "4"]).stdout).unwrap();
    assert_eq!(plain.lines().count(), 1);
    assert!(plain.starts_with("YES "));
    let verbose =
        String::from_utf8(divmatch(&["solve", c4.to_str().unwrap(), "--k", "4", "--verbose"]).stdout).unwrap();
    assert_eq!(verbose.lines().count(), 3);
    assert!(verbose.contains("M1: ") && verbose.contains("M2: "));
}
