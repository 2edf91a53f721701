use std::fs;
use std::process::Command;

use mondrian::cli::{run, EXIT_INVALID, EXIT_LIMIT, EXIT_OK};
use mondrian::formats::{read_document, read_verdicts_csv, Document};
use proptest::prelude::*;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("mondrian")
        .chain(args.iter().copied())
        .map(std::ffi::OsString::from);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn pieces_lists_the_catalog() {
    let (code, out, _) = call(&["pieces", "84", "84", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with("84x84 r=7: area 1008 per piece, 14 entries, 7 classes"),
        "{out}"
    );
    assert_eq!(out.lines().count(), 15);
    let (code, out, _) = call(&["pieces", "84", "84", "7", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("84"));
}

#[test]
fn infeasible_and_malformed_input_exit_2() {
    assert_eq!(call(&["pieces", "20", "20", "8"]).0, EXIT_INVALID);
    assert_eq!(call(&["pieces", "5", "5", "7"]).0, EXIT_INVALID);
    assert_eq!(call(&["solve", "84", "84", "5"]).0, EXIT_INVALID);
    assert_eq!(
        call(&["solve", "84", "84", "7", "--lemma-audit"]).0,
        EXIT_INVALID
    );
    assert_eq!(
        call(&["scan", "--squares", "--max", "10", "--stages", "gap"]).0,
        EXIT_INVALID
    );
    assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
}

#[test]
fn scan_csv_has_the_documented_header() {
    let (code, out, err) = call(&["scan", "--squares", "--max", "500", "--first-survivor"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out.lines().next().unwrap(),
        "W,H,r,stage,survivingCandidates,elapsed_ms"
    );
    let rows = read_verdicts_csv(out.as_bytes()).unwrap();
    let survivors: Vec<u32> = rows
        .iter()
        .filter(|v| v.stage.is_survivor())
        .map(|v| v.width)
        .collect();
    assert!(survivors.contains(&420) && survivors.contains(&480));
    assert!(err.contains("survivors:"), "{err}");
}

#[test]
fn scan_without_survivors_says_none() {
    let (code, _, err) = call(&["scan", "--squares", "--max", "100", "--format", "summary"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("(none)"), "{err}");
}

#[test]
fn solve_reports_eliminated_and_exhausted() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let (code, out, _) = call(&["solve", "84", "84", "7", "--out", out_dir]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("ELIMINATED(GAP)"), "{out}");
    let (code, out, _) = call(&["solve", "84", "84", "7", "--no-filters", "--out", out_dir]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("EXHAUSTED"), "{out}");
    assert!(
        fs::read_dir(dir.path()).unwrap().next().is_none(),
        "no witness for an exhausted case"
    );
}

#[test]
fn node_limit_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&[
        "solve",
        "360",
        "360",
        "12",
        "--no-filters",
        "--limit-nodes",
        "10^3",
        "--threads",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_LIMIT);
    assert!(out.contains("LIMIT"), "{out}");
}

#[test]
fn generic_fixture_writes_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("fixture.json");
    let fixture_s = fixture.to_str().unwrap();
    assert_eq!(
        call(&[
            "guillotine",
            "40",
            "30",
            "--cuts",
            "6",
            "--seed",
            "3",
            "-o",
            fixture_s
        ])
        .0,
        EXIT_OK
    );
    let out_dir = dir.path().join("out");
    let (code, out, _) = call(&[
        "solve",
        "40",
        "30",
        "--generic-fixture",
        fixture_s,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("FOUND"), "{out}");
    let json = fs::read_to_string(out_dir.join("generic-40x30.json")).unwrap();
    let Document::Tiling(doc) = read_document(&json).unwrap() else {
        panic!("expected a tiling")
    };
    doc.validated().unwrap();
    let svg = fs::read_to_string(out_dir.join("generic-40x30.svg")).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));

    let (code, ascii, _) = call(&[
        "render",
        out_dir.join("generic-40x30.json").to_str().unwrap(),
        "--format",
        "ascii",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(!ascii.trim().is_empty());
}

#[test]
fn render_rejects_bad_documents() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"format":"mondrian-tiling/1","width":4,"height":4,"pieces":[{"w":4,"h":4,"x":1,"y":0}]}"#)
        .unwrap();
    assert_eq!(call(&["render", bad.to_str().unwrap()]).0, EXIT_INVALID);
    fs::write(&bad, "not json").unwrap();
    assert_eq!(call(&["render", bad.to_str().unwrap()]).0, EXIT_INVALID);
    assert_eq!(
        call(&["render", dir.path().join("missing.json").to_str().unwrap()]).0,
        EXIT_INVALID
    );
}

#[test]
fn perimeters_emit_json() {
    let (code, out, _) = call(&["perimeters", "360", "360", "12", "--limit", "5"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn binary_honours_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_mondrian");
    let status = |threads: &str| {
        Command::new(bin)
            .args(["scan", "--board", "84x84", "-q"])
            .env("MONDRIAN_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(status("2").status.code(), Some(EXIT_OK));
    let bad = status("zero");
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("MONDRIAN_THREADS"));
    // The flag wins over the variable.
    let flagged = Command::new(bin)
        .args(["scan", "--board", "84x84", "-q", "--threads", "1"])
        .env("MONDRIAN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(flagged.status.code(), Some(EXIT_OK));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn guillotine_fixtures_round_trip(w in 8u32..=40, h in 8u32..=40, cuts in 2u32..=6, seed in 0u64..1000) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let args = ["guillotine", &w.to_string(), &h.to_string(), "--cuts", &cuts.to_string(), "--seed", &seed.to_string(), "-o", path.to_str().unwrap()];
        let (code, _, _) = call(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        prop_assume!(code == EXIT_OK);
        let Document::Guillotine(doc) = read_document(&fs::read_to_string(&path).unwrap()).unwrap() else {
            return Err(TestCaseError::fail("expected a guillotine document"));
        };
        let inst = doc.to_instance().unwrap();
        prop_assert_eq!((inst.width, inst.height, inst.seed), (w, h, seed));
        inst.witness.validate().unwrap();
    }
}
