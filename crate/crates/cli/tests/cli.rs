use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use motifclust::engine::{build_motif_graph_exact, enumerate_instances, motif_conductance};
use motifclust::{parse_graph, Motif};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motifclust"))
}

fn run(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TWO_TRIANGLES: &str = "u 6\ne 0 1\ne 1 2\ne 0 2\ne 3 4\ne 4 5\ne 3 5\ne 2 3\n";

#[test]
fn gen_is_deterministic_and_parses() {
    let a = stdout(&run(&["gen", "cluster", "--n", "80", "--seed", "3"]));
    let b = stdout(&run(&["gen", "cluster", "--n", "80", "--seed", "3"]));
    assert_eq!(a, b);
    assert_eq!(parse_graph(&a).unwrap().graph.n(), 80);
    let c = stdout(&run(&["gen", "gnp", "--n", "20", "--p", "0.3", "--directed", "--seed", "1"]));
    assert!(parse_graph(&c).unwrap().graph.is_directed());
}

#[test]
fn gen_writes_truth() {
    let dir = tempfile::tempdir().unwrap();
    let truth = dir.path().join("truth.tsv");
    run(&["gen", "circles", "--n", "40", "--truth", truth.to_str().unwrap()]);
    let lines = fs::read_to_string(truth).unwrap();
    assert_eq!(lines.lines().count(), 40);
    assert!(lines.lines().last().unwrap().ends_with("\t1"));
}

#[test]
fn motif_graph_exact_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", TWO_TRIANGLES);
    let text = stdout(&run(&["motif-graph", &g, "--motif", "triangle2"]));
    assert!(text.contains("# provenance exact"));
    let parsed = parse_graph(&text).unwrap().graph;
    let lib = build_motif_graph_exact(&Motif::builtin("triangle2").unwrap(), &parse_graph(TWO_TRIANGLES).unwrap().graph);
    assert_eq!(&parsed, lib.graph());
}

#[test]
fn motif_graph_approx_records_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "u 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
    let text = stdout(&run(&["motif-graph", &g, "--method", "approx", "--eps", "0.1", "--seed", "5"]));
    assert!(text.contains("# provenance approx eps=0.1"));
    for (_, _, w) in parse_graph(&text).unwrap().graph.edges() {
        assert!((1.8..=2.2).contains(&w));
    }
    let three = stdout(&run(&["motif-graph", &g, "--method", "approx", "--motif", "triangle3"]));
    assert_eq!(parse_graph(&three).unwrap().graph.edge_count(), 6);
}

#[test]
fn motif_graph_keeps_sparse_labels() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "u 3\ne 10 20\ne 20 30\ne 10 30\n");
    let text = stdout(&run(&["motif-graph", &g]));
    let parsed = parse_graph(&text).unwrap();
    assert_eq!(parsed.labels, vec![10, 20, 30]);
}

#[test]
fn cluster_separates_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", TWO_TRIANGLES);
    let out = run(&["cluster", &g, "--k", "2", "--mode", "ratio-cut"]);
    let labels: Vec<usize> = stdout(&out).lines().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(labels[0], labels[1]);
    assert_eq!(labels[0], labels[2]);
    assert_ne!(labels[0], labels[3]);
    assert_eq!(labels[3], labels[5]);

    let out = run(&["cluster", &g, "--k", "2", "--motif", "triangle2"]);
    let labels: Vec<usize> = stdout(&out).lines().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    let graph = parse_graph(TWO_TRIANGLES).unwrap().graph;
    let inst = enumerate_instances(&Motif::builtin("triangle2").unwrap(), &graph);
    assert_eq!(motif_conductance(&inst, &labels), 0.0);
}

#[test]
fn perturb_writes_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("records.csv");
    let out = run(&[
        "perturb", "cluster", "--n", "90", "--centres", "3", "--eps", "0,0.2", "--trials", "3", "--records",
        records.to_str().unwrap(),
    ]);
    let summary = stdout(&out);
    let mut lines = summary.lines();
    assert_eq!(lines.next().unwrap(), "n,eps,trials,mean_phi_diff,std_phi_diff");
    assert!(lines.next().unwrap().starts_with("90,0,3,0,0"));
    assert_eq!(fs::read_to_string(records).unwrap().lines().count(), 7);
}

#[test]
fn cost_and_regime() {
    let csv = stdout(&run(&["cost", "--n", "1000", "--d", "20", "--s", "3", "--l", "1", "--motifs", "5000"]));
    assert!(csv.lines().any(|l| l.starts_with("algorithm,dominant_term")));
    assert_eq!(csv.lines().filter(|l| l.ends_with(",true")).count(), 1);
    let text = stdout(&run(&["regime", "--s", "4", "--tau", "2.1"]));
    let fastest: Vec<&str> = text.lines().filter(|l| l.ends_with(",true")).collect();
    assert_eq!(fastest.len(), 1);
    assert!(fastest[0].starts_with("approx-count+quantum-cluster,"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--seed", "1"]);
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "u 2\ne 0 0\n");
    let out = bin().args(["cluster", &g, "--k", "2"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = bin().args(["regime", "--s", "3", "--tau", "3.5"]).output().unwrap();
    assert!(!out.status.success());
}
