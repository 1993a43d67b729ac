// SPDX-License-Identifier: Apache-2.0

mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use tipdecomp::cli::{main_with_args, side_auto, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use tipdecomp::genbench::{generate, generate_edges, GenSpec};
use tipdecomp::io::{parse_edge_list_str, parse_tips, write_edge_list, write_tips, StatsReport};
use tipdecomp::{build_graph, tip_decompose_bup, Side, TipError, TipResult};

use common::tip_text;

fn write_graph(dir: &Path, name: &str, edges: &[(u64, u64)]) -> String {
    let path = dir.join(name);
    let mut buf = b"% bip unweighted\n".to_vec();
    write_edge_list(edges, &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    path.to_string_lossy().into_owned()
}

/// Runs the library entry point and returns `(status, stdout, stderr)`.
fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["tipdecomp"];
    argv.extend_from_slice(args);
    let code = main_with_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

proptest! {
    #[test]
    fn edge_lists_round_trip(edges in prop::collection::vec((0u64..1 << 40, 0u64..1 << 40), 0..50)) {
        let mut buf = Vec::new();
        write_edge_list(&edges, &mut buf).unwrap();
        prop_assert_eq!(parse_edge_list_str(std::str::from_utf8(&buf).unwrap()).unwrap().edges, edges);
    }

    #[test]
    fn tips_round_trip(rows in prop::collection::btree_map(any::<u64>(), 0u64..1 << 50, 0..40)) {
        let ids: Vec<u64> = rows.keys().rev().copied().collect();
        let tips = TipResult::new(ids.iter().map(|id| rows[id]).collect());
        let mut buf = Vec::new();
        write_tips(&tips, &ids, &mut buf).unwrap();
        let back = parse_tips(buf.as_slice()).unwrap();
        prop_assert_eq!(back, rows.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn parsed_graph_rebuilds_identically(edges in prop::collection::vec((0u64..20, 0u64..20), 1..60)) {
        let g = build_graph(&edges).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g.original_edges(), &mut buf).unwrap();
        let h = build_graph(&parse_edge_list_str(std::str::from_utf8(&buf).unwrap()).unwrap().edges).unwrap();
        prop_assert_eq!(h.original_edges(), g.original_edges());
        prop_assert_eq!(h.ids(Side::U), g.ids(Side::U));
    }
}

#[test]
fn whitespace_and_comments_are_tolerated() {
    let doc = parse_edge_list_str("# a\n\n  4\t5  \n% b\n4 6\n").unwrap();
    assert_eq!(doc.edges, vec![(4, 5), (4, 6)]);
    assert_eq!(
        (doc.comment_lines, doc.blank_lines, doc.line_count()),
        (2, 1, 5)
    );
}

#[test]
fn empty_input_is_an_empty_graph_error() {
    let doc = parse_edge_list_str("% nothing\n").unwrap();
    assert!(matches!(build_graph(&doc.edges), Err(TipError::EmptyGraph)));
}

#[test]
fn cli_writes_bup_identical_tips_for_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let edges = generate_edges(&GenSpec::RandomBipartite {
        u: 25,
        v: 20,
        p: 0.3,
        seed: 11,
    })
    .unwrap();
    let input = write_graph(dir.path(), "g.txt", &edges);
    let g = build_graph(&edges).unwrap();
    for side in [Side::U, Side::V] {
        let expect = tip_text(&g, side, &tip_decompose_bup(&g, side).unwrap().0);
        let side_flag = if side == Side::U { "u" } else { "v" };
        for alg in ["receipt", "bup", "parb", "oracle"] {
            let (code, out, err) = cli(&[
                "--input",
                &input,
                "--side",
                side_flag,
                "--algorithm",
                alg,
                "--workers",
                "2",
                "--partitions",
                "4",
            ]);
            assert_eq!(code, EXIT_OK, "{alg}: {err}");
            assert_eq!(out, expect, "{alg} on side {side_flag}");
        }
    }
}

#[test]
fn cli_output_and_stats_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(
        dir.path(),
        "g.txt",
        &generate_edges(&GenSpec::Complete { u: 3, v: 3 }).unwrap(),
    );
    let output = dir.path().join("tips.tsv");
    let stats = dir.path().join("stats.json");
    let (code, out, _) = cli(&[
        "--input",
        &input,
        "--output",
        output.to_str().unwrap(),
        "--stats",
        stats.to_str().unwrap(),
        "--partitions",
        "2",
        "--verify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(fs::read_to_string(&output).unwrap(), "0\t6\n1\t6\n2\t6\n");
    let report: StatsReport = serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    assert!(report.wedges_traversed > 0);
    assert!(report.subsets.count >= 1);
    assert_eq!(report.subsets.wedge_estimates.len(), report.subsets.count);
}

#[test]
fn cli_exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_graph(dir.path(), "g.txt", &[(1, 2), (1, 3), (4, 2), (4, 3)]);
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n1 2 3\n").unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "% only a header\n").unwrap();

    assert_eq!(cli(&["--input", &good]).0, EXIT_OK);
    let (code, _, err) = cli(&["--input", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(cli(&["--input", empty.to_str().unwrap()]).0, EXIT_FAILURE);
    assert_eq!(
        cli(&["--input", dir.path().join("missing").to_str().unwrap()]).0,
        EXIT_FAILURE
    );
    assert_eq!(cli(&["--input", &good, "--partitions", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--input", &good, "--workers", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--input", &good, "--side", "w"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--input", &good, "--bogus"]).0, EXIT_USAGE);
    assert_eq!(cli(&[]).0, EXIT_USAGE);
}

#[test]
fn verify_budget_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(
        dir.path(),
        "g.txt",
        &generate_edges(&GenSpec::Complete { u: 4, v: 4 }).unwrap(),
    );
    let (code, _, err) = cli(&["--input", &input, "--verify", "--verify-budget", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn auto_side_prefers_more_wedges() {
    // K_{1,5}: the single U vertex has 5 wedges' worth of endpoints on V.
    let g = generate(&GenSpec::Complete { u: 1, v: 5 }).unwrap();
    assert_eq!(side_auto(&g), Side::V);
    assert_eq!(side_auto(&g.transposed()), Side::U);
    let k = generate(&GenSpec::Complete { u: 4, v: 4 }).unwrap();
    assert_eq!(side_auto(&k), Side::U);
}

#[test]
fn binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(
        dir.path(),
        "g.txt",
        &generate_edges(&GenSpec::Complete { u: 2, v: 3 }).unwrap(),
    );
    let out = Command::new(env!("CARGO_BIN_EXE_tipdecomp"))
        .args(["--input", &input, "--side", "auto", "--verify"])
        .env("TIPDECOMP_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    // V has the larger wedge mass in K_{2,3}
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\t2\n1\t2\n2\t2\n");

    let bad = Command::new(env!("CARGO_BIN_EXE_tipdecomp"))
        .args(["--input", &input, "--workers", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let env_bad = Command::new(env!("CARGO_BIN_EXE_tipdecomp"))
        .args(["--input", &input])
        .env("TIPDECOMP_WORKERS", "nope")
        .output()
        .unwrap();
    assert_eq!(env_bad.status.code(), Some(EXIT_USAGE));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_tipdecomp"))
        .args(["--input", &input, "--workers", "1"])
        .env("TIPDECOMP_WORKERS", "nope")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(EXIT_OK));
}
