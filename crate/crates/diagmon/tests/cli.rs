use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn diagmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagmon")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = diagmon(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn build_sizes() {
    for (family, size) in [("P2", 15), ("P0", 1), ("RR2", 7), ("B3", 15), ("PT2", 9), ("RP1", 5)] {
        let dump = json(&["build", family]);
        assert_eq!(dump["size"], size, "{family}");
        assert_eq!(dump["elements"].as_array().unwrap().len(), size);
        assert_eq!(dump["mul"].as_array().unwrap().len(), size * size);
    }
}

#[test]
fn golden_outputs() {
    let out = diagmon(&["build", "P1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("P1.json"));
    let out = diagmon(&["analyze", "P2", "E"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("P2_E.json"));
    let out = diagmon(&["eggbox", "RR2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("RR2.dot"));
    let out = diagmon(&["stein", "Pfd2", "F"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("Pfd2_F_stein.json"));
}

#[test]
fn analyze_reports() {
    let r = json(&["analyze", "P3", "F"]);
    for a in ["L1", "L2", "R1", "R2"] {
        assert_eq!(r["axioms"][a], true);
    }
    assert_eq!(r["rest"]["both"]["size"], 26);
    assert_eq!(r["rest"]["both"]["matches"][0], "J3 ∪ {ζ}");
    assert_eq!(r["rest"]["right"]["matches"][0], "RR3");
    assert_eq!(r["reg_e"]["matches"][0], "J3");

    let r = json(&["analyze", "P2", "E"]);
    assert_eq!(r["axioms"]["L2"], false);
    assert_eq!(r["witnesses"]["L2"]["kind"], "congruence");

    let r = json(&["analyze", "PB2", "E"]);
    assert_eq!(r["axioms"]["L2"], false);

    let r = json(&["analyze", "BX_relations2", "E"]);
    assert_eq!(r["ehresmann"], true);
    assert_eq!(r["rest"]["left"]["matches"][0], "PT2");
    assert_eq!(r["rest"]["both"]["matches"][0], "I2");
}

#[test]
fn eggbox_clusters() {
    let rr = String::from_utf8(diagmon(&["eggbox", "RR4"]).stdout).unwrap();
    let pfd = String::from_utf8(diagmon(&["eggbox", "Pfd4"]).stdout).unwrap();
    let clusters = |s: &str| s.lines().filter(|l| l.contains("subgraph cluster_")).count();
    assert_eq!(clusters(&rr), 5);
    assert_eq!(clusters(&pfd), 4);
    // Pfd_4 is RR_4 without its bottom class: the tables agree once the bottom is dropped.
    let tables = |s: &str| s.lines().filter(|l| l.contains("<TR>")).map(str::to_owned).collect::<Vec<_>>();
    let (rr_rows, pfd_rows) = (tables(&rr), tables(&pfd));
    assert_eq!(rr_rows[1..], pfd_rows[..]);
    assert!(rr.contains("BGCOLOR=\"green\""));
    assert!(!pfd.contains("BGCOLOR=\"green\""));

    let p0 = String::from_utf8(diagmon(&["eggbox", "P0"]).stdout).unwrap();
    assert_eq!(clusters(&p0), 1);
    assert_eq!(p0.matches("<TD").count(), 1);
}

#[test]
fn shading_from_a_dump() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("j2.json");
    assert!(diagmon(&["build", "J2", "--out", j.to_str().unwrap()]).status.success());
    let dot = String::from_utf8(diagmon(&["eggbox", "RR2", "--shade", j.to_str().unwrap()]).stdout).unwrap();
    // J_2 meets the top group cell and the cell of the one-block partition.
    assert!(dot.contains("BGCOLOR=\"darkorange\" TITLE=\"shaded=true\">2<"));
    let eb = json(&["eggbox", "RR2", "--format", "json", "--shade", j.to_str().unwrap()]);
    let shaded: usize = eb["classes"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["cells"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap().iter()))
        .filter(|cell| cell["shaded"] == true)
        .count();
    assert_eq!(shaded, 2);
}

#[test]
fn category_and_stein() {
    let c = json(&["category", "RR2", "F"]);
    assert_eq!(c["ei"]["holds"], false);
    assert_eq!(c["ei"]["witness"]["element"]["blocks"], serde_json::json!([[1, 2], [-1, -2]]));
    let c = json(&["category", "Pfd2", "F"]);
    assert_eq!(c["ei"]["holds"], true);

    let s = json(&["stein", "PT2", "E"]);
    assert_eq!(s["side"], "left");
    assert_eq!(s["holds"], true);
    assert_eq!(s["quotient"]["radical"], 2);
    assert_eq!(s["transform"].as_array().unwrap().len(), 9);
    let s = json(&["stein", "Pfd2", "F", "--side", "right"]);
    assert_eq!(s["quotient"]["reg_size"], 3);
    let s = json(&["stein", "RR2", "F"]);
    assert!(s["quotient"]["skipped"].as_str().unwrap().contains("EI"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| diagmon(args).status.code().unwrap();
    assert_eq!(code(&["build", "Q2"]), 2);
    assert_eq!(code(&["analyze", "P2", "X"]), 2);
    assert_eq!(code(&["analyze", "B2", "G"]), 2);
    assert_eq!(code(&["verify", "7"]), 2);
    assert_eq!(code(&["build", "P2", "--format", "dot"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["build", "P9"]), 3);
    assert_eq!(code(&["stein", "P4", "F"]), 3);
    assert_eq!(code(&["category", "P2", "E"]), 1);
    assert_eq!(code(&["stein", "P2", "E"]), 1);
    assert_eq!(code(&["build", "P2"]), 0);
    let out = diagmon(&["build", "Q2"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q2"));
}

#[test]
fn verify_suites() {
    for args in [&["verify", "4", "--nmax", "3"][..], &["verify", "3", "--nmax", "2"], &["verify", "all", "--nmax", "0"]] {
        let out = diagmon(args);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(out.status.success(), "{args:?}\n{text}");
        assert!(!text.contains("FAIL"));
        assert!(text.lines().last().unwrap().ends_with("0 failed"));
    }
}

#[test]
fn determinism_and_atomic_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert!(diagmon(&["analyze", "RR3", "F", "--out", p.to_str().unwrap()]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "no temporary files are left behind");

    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_diagmon"))
            .args(["verify", "2", "--nmax", "2"])
            .env(diagmon::WORKERS_ENV, workers)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_diagmon")).args(["build", "P1"]).env(diagmon::WORKERS_ENV, "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_shade_file_is_an_io_error() {
    let out = diagmon(&["eggbox", "P1", "--shade", "/nonexistent/shade.json"]);
    assert_eq!(out.status.code(), Some(1));
}
