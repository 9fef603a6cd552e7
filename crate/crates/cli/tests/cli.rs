//! End-to-end runs of the `reisner` binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const PENTAGON: &str = "vertices 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

fn reisner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reisner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reisner"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes the dual of the pentagon, the five-vertex Hibi complex.
fn hibi3(dir: &Path) -> String {
    let c5 = dir.join("c5.sc");
    std::fs::write(&c5, PENTAGON).unwrap();
    let out = dir.join("hibi3.sc");
    let r = reisner(&["dual", path_str(&c5), "--out", path_str(&out)]);
    assert!(r.status.success());
    path_str(&out).to_string()
}

#[test]
fn props_of_the_pentagon_dual() {
    let dir = tempfile::tempdir().unwrap();
    let file = hibi3(dir.path());
    let v = json(&reisner(&["props", &file, "--field", "q"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["d"], 3);
    assert_eq!(v["c"], 2);
    assert_eq!(v["qLinear"], true);
    assert_eq!(v["h"], 1);
    assert_eq!(v["minMultTypeQ"], true);
}

#[test]
fn props_reads_stdin() {
    let v = json(&with_stdin(&["props", "-"], PENTAGON));
    assert_eq!(v["n"], 5);
    assert_eq!(v["d"], 2);
    assert_eq!(v["cm"], true);
}

#[test]
fn betti_and_homology_reports() {
    let v = json(&with_stdin(&["betti", "-"], PENTAGON));
    assert_eq!(v["regularity"], 2);
    assert_eq!(v["totals"], serde_json::json!([1, 5, 5, 1]));
    let v = json(&with_stdin(&["homology", "-"], PENTAGON));
    let ones: Vec<&Value> = v["reduced"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["dim"] == 1)
        .collect();
    assert_eq!(ones.len(), 1);
    assert_eq!(ones[0]["degree"], 1);

    let text = with_stdin(&["betti", "-", "--text"], PENTAGON);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("total: 1 5 5 1"), "{text}");
}

#[test]
fn ex57_bundle_over_gf2() {
    let out = reisner(&["verify", "ex5.7", "--field", "gf:2"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["bundles"][0]["bundle"], "ex5.7");
}

#[test]
fn every_bundle_passes_over_the_rationals() {
    let v = json(&reisner(&["verify", "all"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["bundles"].as_array().unwrap().len(), 7);
}

#[test]
fn explore_writes_a_realized_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.sc");
    let v = json(&reisner(&[
        "explore",
        "3",
        "3",
        "3",
        "2",
        "--seed",
        "1",
        "--out",
        path_str(&w),
    ]));
    assert_eq!(v["status"], "Realized");
    let p = json(&reisner(&["props", path_str(&w)]));
    assert_eq!(
        (p["c"].clone(), p["d"].clone(), p["h"].clone()),
        (3.into(), 3.into(), 2.into())
    );
    assert_eq!(p["buchsbaum"], true);
    assert_eq!(p["qLinear"], true);
}

#[test]
fn explore_reports_infeasible_parameters() {
    let v = json(&reisner(&["explore", "2", "3", "3", "5"]));
    assert_eq!(v["status"], "InfeasibleByBound");
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn generated_families_round_trip_through_props() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 12] = [
        ("skeleton", &["5", "3"]),
        ("max-embdim-cm", &["2", "3"]),
        ("disjoint-union-q2", &["3", "3", "1"]),
        ("hibi-cycle", &["4"]),
        ("terai", &["6"]),
        ("hanano", &["7"]),
        ("cyclic-boundary", &["6", "4"]),
        ("cyclic-dual", &["4", "3"]),
        ("bruns-hibi", &["6"]),
        ("bruns-hibi-dual", &["6"]),
        ("rp2", &[]),
        ("moebius", &[]),
    ];
    for (family, params) in cases {
        let file = dir.path().join(format!("{family}.sc"));
        let mut args = vec!["gen", family];
        args.extend_from_slice(params);
        args.extend(["--out", path_str(&file)]);
        let summary = json(&reisner(&args));
        assert_eq!(summary["command"], "gen");
        let report = json(&reisner(&["props", path_str(&file)]));
        assert_eq!(report["n"], summary["n"], "{family}");
    }
}

#[test]
fn gen_without_out_prints_sc() {
    let out = reisner(&["gen", "moebius"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("vertices 6\n"));
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = hibi3(dir.path());
    for args in [
        vec!["props", file.as_str()],
        vec!["cover", file.as_str(), "--seed", "7"],
        vec!["explore", "4", "3", "3", "1", "--seed", "3"],
        vec!["verify", "thm5.6", "--field", "gf:3"],
    ] {
        let a = reisner(&args);
        let b = reisner(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cover_and_sandwich() {
    let dir = tempfile::tempdir().unwrap();
    let moebius = dir.path().join("m.sc");
    let cover = dir.path().join("cover.sc");
    assert!(reisner(&["gen", "moebius", "--out", path_str(&moebius)])
        .status
        .success());
    let v = json(&reisner(&[
        "cover",
        path_str(&moebius),
        "--out",
        path_str(&cover),
    ]));
    assert_eq!(v["h"], 1);
    assert_eq!(v["e"], 10);
    let p = json(&reisner(&["props", path_str(&cover)]));
    assert_eq!(p["cm"], true);

    let v = json(&reisner(&[
        "sandwich",
        path_str(&moebius),
        path_str(&cover),
        "10",
    ]));
    assert_eq!(v["e"], 10);
    assert_eq!(v["h"], 0);

    let bad = reisner(&["sandwich", path_str(&moebius), path_str(&cover), "12"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("E_TARGET_RANGE"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = hibi3(dir.path());
    let cases: [(&[&str], &str); 5] = [
        (&["props", &file, "--field", "gf:4"], "not prime"),
        (&["frobnicate"], "unrecognized"),
        (&["gen", "hanano", "9", "--max-n", "8"], "E_SIZE_CAP"),
        (&["gen", "no-such-family"], "E_PARAM_RANGE"),
        (&["props", "/definitely/missing.sc"], "E_IO"),
    ];
    for (args, needle) in cases {
        let out = reisner(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn parse_errors_report_line_and_column() {
    let out = with_stdin(&["props", "-"], "vertices 3\n0 1 x\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("E_PARSE") && err.contains("line 2, column 5"),
        "{err}"
    );
}

#[test]
fn cover_depends_on_the_field() {
    // Over GF(2) the projective plane is not 3-linear; over the rationals it
    // is Cohen-Macaulay and comes back unchanged.
    let dir = tempfile::tempdir().unwrap();
    let rp2 = dir.path().join("rp2.sc");
    assert!(reisner(&["gen", "rp2", "--out", path_str(&rp2)])
        .status
        .success());
    let out = reisner(&["cover", path_str(&rp2), "--field", "gf:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_PRECONDITION"));
    let v = json(&reisner(&["cover", path_str(&rp2)]));
    assert_eq!(v["h"], 0);
}
