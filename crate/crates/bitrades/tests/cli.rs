//! Integration tests for the command-line interface.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_bitrades")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &[u8]) -> Output {
    use std::io::Write;
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn validate_accepts_the_fixtures() {
    for name in ["example1.triples", "example2.triples"] {
        let out = run(&["validate", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(stdout_json(&out)["ok"], serde_json::json!(true));
    }
}

#[test]
fn genus_of_example2_is_the_torus() {
    let out = run(&["genus", &fixture("example2.triples")]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    assert_eq!(body["genus"], 1);
    assert_eq!(body["surface_name"], "torus");
    assert_eq!(body["euler_rhs"], 0);
}

#[test]
fn partition_of_example2_matches_the_known_transversals() {
    let out = run(&["partition", &fixture("example2.triples")]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    let classes = body["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    let as_set = |i: usize| -> std::collections::BTreeSet<String> {
        classes[i]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|s| s.as_str().unwrap())
                    .collect();
                parts.join(":")
            })
            .collect()
    };
    let all: std::collections::BTreeSet<_> = (0..3).map(as_set).collect();
    let expected: std::collections::BTreeSet<std::collections::BTreeSet<String>> = [
        ["1:1:1", "2:2:2", "3:3:3", "4:4:4"],
        ["1:4:2", "2:1:3", "3:2:4", "4:3:1"],
        ["1:2:3", "2:3:4", "3:4:1", "4:1:2"],
    ]
    .map(|c| c.map(String::from).into_iter().collect())
    .into_iter()
    .collect();
    assert_eq!(all, expected);
    assert_eq!(body["labeling"]["1:1:1"], 0);
}

#[test]
fn outputs_are_byte_deterministic() {
    for args in [
        vec!["tau", &fixture("example2.triples")],
        vec!["genus", &fixture("example2.triples")],
        vec!["partition", &fixture("example2.triples")],
        vec!["oracle", &fixture("example2.triples")],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn tau_piped_into_from_tau_reproduces_the_bitrade_up_to_renaming() {
    // The reconstruction names rows, columns, and symbols by their cycles
    // (parenthesized dart lists). Renaming each cycle back to the label its
    // darts share on that axis must reproduce the input exactly.
    let fixtures = ["example1.triples", "example2.triples"];
    for name in fixtures {
        let tau_out = run(&["tau", &fixture(name)]);
        assert_eq!(tau_out.status.code(), Some(0));
        let rebuilt = run_stdin(&["from-tau", "-", "--format", "json"], &tau_out.stdout);
        assert_eq!(
            rebuilt.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&rebuilt.stderr)
        );
        let body = stdout_json(&rebuilt);

        // "(r:c:s,r:c:s,...)" -> the axis component of its first dart.
        let rename = |label: &str, axis: usize| -> String {
            let inner = label
                .strip_prefix('(')
                .and_then(|l| l.strip_suffix(')'))
                .expect("cycle-valued label");
            let first_dart = inner.split(',').next().unwrap();
            first_dart.split(':').nth(axis).unwrap().to_owned()
        };
        let renamed = |half: &str| -> std::collections::BTreeSet<[String; 3]> {
            body[half]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    let t = t.as_array().unwrap();
                    [0, 1, 2].map(|axis| rename(t[axis].as_str().unwrap(), axis))
                })
                .collect()
        };

        let original = std::fs::read_to_string(fixture(name)).unwrap();
        let mut halves = vec![std::collections::BTreeSet::new()];
        for line in original.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line == "%" {
                halves.push(std::collections::BTreeSet::new());
            } else if !line.is_empty() {
                let mut toks = line.split_whitespace();
                halves
                    .last_mut()
                    .unwrap()
                    .insert([0; 3].map(|_| toks.next().unwrap().to_owned()));
            }
        }
        assert_eq!(renamed("t_dia"), halves[0], "{name} first half");
        assert_eq!(renamed("t_oti"), halves[1], "{name} second half");
    }
}

#[test]
fn formats_roundtrip_through_the_cli() {
    let grid = "0 1 2\n1 2 0\n2 0 1\n%\n1 2 0\n2 0 1\n0 1 2\n";
    let out = run_stdin(&["validate", "-", "--format", "grid"], grid.as_bytes());
    assert_eq!(out.status.code(), Some(0));

    let json_out = run_stdin(&["generate", "cyclic", "--n", "3", "--format", "json"], &[]);
    assert_eq!(json_out.status.code(), Some(0));
    let reparsed = run_stdin(&["validate", "-", "--format", "json"], &json_out.stdout);
    assert_eq!(reparsed.status.code(), Some(0));
}

#[test]
fn generate_families_work() {
    let out = run(&["generate", "intercalate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "0 0 0\n0 1 1\n1 0 1\n1 1 0\n%\n0 0 1\n0 1 0\n1 0 0\n1 1 1\n"
    );

    let out = run(&["generate", "example2", "--format", "grid"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["generate", "lattice", "--v1", "2,0", "--v2", "0,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| *l != "%").count(), 24);

    // Rejected quotient: validation report on stdout, exit 1.
    let out = run(&["generate", "lattice", "--v1", "1,0", "--v2", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["ok"], serde_json::json!(false));

    // Degenerate spec is a usage error.
    let out = run(&["generate", "lattice", "--v1", "1,0", "--v2", "2,0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["generate", "cyclic", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tessellate_writes_svg_only_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path: PathBuf = dir.path().join("drawing.svg");
    let out = run(&[
        "tessellate",
        &fixture("example2.triples"),
        "--base",
        "1:1:1",
        "--radius",
        "4",
        "--output",
        svg_path.to_str().unwrap(),
        "--domain",
        "2,0,0,2",
        "--axes",
        "true",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty(), "SVG must not leak to stdout");
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.contains("<polygon"));

    // Deterministic bytes on a second run.
    let again_path = dir.path().join("again.svg");
    let out = run(&[
        "tessellate",
        &fixture("example2.triples"),
        "--base",
        "1:1:1",
        "--radius",
        "4",
        "--output",
        again_path.to_str().unwrap(),
        "--domain",
        "2,0,0,2",
        "--axes",
        "true",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(svg, std::fs::read_to_string(&again_path).unwrap());

    // 2-homogeneous input cannot be tessellated.
    let out = run(&[
        "tessellate",
        &fixture("example1.triples"),
        "--base",
        "0:0:0",
        "--output",
        dir.path().join("x.svg").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Malformed base is a usage error.
    let out = run(&[
        "tessellate",
        &fixture("example2.triples"),
        "--base",
        "oops",
        "--output",
        dir.path().join("y.svg").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_writes_corpus_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "enumerate",
        "--order",
        "2",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout_json(&out);
    assert_eq!(summary["count"], 1);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["order"], 2);
    assert_eq!(manifest["count"], 1);
    assert_eq!(manifest["bitrades"][0]["entries"], 4);
    assert_eq!(manifest["bitrades"][0]["homogeneous"], 2);
    assert_eq!(manifest["bitrades"][0]["primary"], true);
    assert_eq!(manifest["bitrades"][0]["genus_per_orbit"][0], 0);
    let file = manifest["bitrades"][0]["file"].as_str().unwrap();
    let body = std::fs::read_to_string(dir.path().join(file)).unwrap();
    assert!(body.contains('%'));

    // Order 5 is out of contract.
    let out = run(&[
        "enumerate",
        "--order",
        "5",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_reports_every_partition() {
    let out = run(&["oracle", &fixture("example2.triples")]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    let count = body["count"].as_u64().unwrap();
    assert!(count >= 1);
    assert_eq!(body["partitions"].as_array().unwrap().len(), count as usize);

    // Cap exceeded is a data failure.
    let out = run(&["oracle", &fixture("example2.triples"), "--cap", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn genus_of_a_disconnected_bitrade_is_reported_per_component() {
    let out = run(&["genus", &fixture("disconnected.triples")]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    let reports = body["per_orbit"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for report in reports {
        assert_eq!(report["genus"], 0);
        assert_eq!(report["surface_name"], "sphere");
    }
}

#[test]
fn empty_bitrade_validates_and_partitions_vacuously() {
    let out = run(&["validate", &fixture("empty.triples")]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["partition", &fixture("empty.triples")]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    assert_eq!(body["classes"], serde_json::json!([[], [], []]));
}

#[test]
fn empty_input_to_tau_fails_cleanly() {
    let out = run_stdin(&["tau", "-"], b"%\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn stdin_works_for_validate() {
    let text = std::fs::read_to_string(fixture("example2.triples")).unwrap();
    let out = run_stdin(&["validate", "-"], text.as_bytes());
    assert_eq!(out.status.code(), Some(0));
}
