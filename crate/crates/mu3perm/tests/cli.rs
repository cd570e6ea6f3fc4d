//! End-to-end runs of the command-line binary: exit codes, output text,
//! and round trips through the emitted JSON-Lines.

use std::process::{Command, Output};

use mu3perm::Certificate;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mu3perm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_confirms_the_published_cpp() {
    let out = run(&["verify", "--field", "109", "--delta", "63", "--r", "73"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("instance: q = 109, r = 73, c = (1, 27, 1)"));
    assert!(text.contains("tau = (2, 17, 64)"));
    assert!(text.contains("oracle: f permutes; f + X permutes"));
    assert!(text.trim_end().ends_with("CPP confirmed"));
}

#[test]
fn verify_rejects_the_collapsing_instance() {
    let out = run(&["verify", "--field", "7", "--delta", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("f + X does not permute"));
    assert!(text.trim_end().ends_with("not a CPP"));
}

#[test]
fn verify_pp_only_stops_at_the_first_map() {
    let out = run(&[
        "verify", "--field", "31", "--delta", "25", "--r", "7", "--pp-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("PP confirmed"));
    // The same instance fails the full check.
    let full = run(&["verify", "--field", "31", "--delta", "25", "--r", "7"]);
    assert_eq!(full.status.code(), Some(1));
}

#[test]
fn verify_emits_machine_readable_json() {
    let out = run(&[
        "verify", "--field", "31", "--delta", "25", "--r", "7", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["spec"], "31");
    assert_eq!(doc["zieve"]["is_pp"], true);
    assert_eq!(doc["general"]["g2"], true);
    assert_eq!(doc["general"]["g3"], false);
    assert_eq!(doc["oracle"]["f_is_pp"], true);
    assert_eq!(doc["oracle"]["is_cpp"], false);
    assert_eq!(doc["confirmed"], false);
    assert!(doc["scalar"]["not_applicable"].is_string());
}

#[test]
fn verify_accepts_gamma_and_raw_table_shapes() {
    let gamma = run(&[
        "verify", "--field", "13", "--gamma", "6", "--r", "1", "--pp-only",
    ]);
    assert_eq!(gamma.status.code(), Some(0));
    let table = run(&[
        "verify", "--field", "31", "--c-table", "4:1:1", "--r", "7", "--pp-only",
    ]);
    assert_eq!(table.status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    // No shape argument at all.
    let missing = run(&["verify", "--field", "109", "--r", "73"]);
    assert_eq!(missing.status.code(), Some(2));
    // Two shapes at once.
    let both = run(&[
        "verify", "--field", "109", "--delta", "63", "--gamma", "2", "--r", "73",
    ]);
    assert_eq!(both.status.code(), Some(2));
    // Unparseable element encoding.
    let bad = run(&["verify", "--field", "109", "--delta", "zzz", "--r", "73"]);
    assert_eq!(bad.status.code(), Some(2));
    // Search range flags must come as a pair.
    let half_range = run(&["search", "--q-min", "100"]);
    assert_eq!(half_range.status.code(), Some(2));
}

#[test]
fn hypothesis_violations_exit_three() {
    let no_mu3 = run(&["verify", "--field", "5", "--delta", "1", "--r", "1"]);
    assert_eq!(no_mu3.status.code(), Some(3));
    let not_scalar = run(&["certify", "--field", "31", "--delta", "25", "--k", "1"]);
    assert_eq!(not_scalar.status.code(), Some(3));
    let bad_delta = run(&["verify", "--field", "109", "--delta", "5", "--r", "73"]);
    assert_eq!(bad_delta.status.code(), Some(3));
}

#[test]
fn certify_round_trips_through_reverification() {
    let out = run(&["certify", "--field", "109", "--delta", "63", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = Certificate::parse(stdout(&out).trim()).unwrap();
    assert_eq!(cert.r, 73);
    assert_eq!(cert.k, Some(2));
    assert!(cert.oracle_confirmed);
    assert!(cert.reverify().unwrap());
}

#[test]
fn certify_reports_the_failing_condition() {
    let out = run(&["certify", "--field", "109", "--delta", "63", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("not certified"));
    assert!(text.contains("h2 FAIL"));
}

#[test]
fn certify_general_exponent_path() {
    // r = 73 = 1 + 2s is also reachable through the four-condition check.
    let out = run(&["certify", "--field", "109", "--delta", "63", "--r", "73"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = Certificate::parse(stdout(&out).trim()).unwrap();
    assert_eq!(cert.criterion, mu3perm::search::Criterion::General);
    assert!(cert.checks.keys().eq(["g1", "g2", "g3", "g4"]));
    assert!(cert.reverify().unwrap());
}

#[test]
fn search_streams_reverifiable_certificates() {
    let out = run(&["search", "--q-min", "100", "--q-max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let mut seen = Vec::new();
    for line in stdout(&out).lines() {
        let cert = Certificate::parse(line).unwrap();
        assert!(cert.oracle_confirmed);
        assert!(cert.reverify().unwrap());
        seen.push(cert.trinomial.q);
    }
    assert!(seen.contains(&109) && seen.contains(&163) && seen.contains(&199));
    let mut sorted = seen.clone();
    sorted.sort();
    assert_eq!(seen, sorted);
}

#[test]
fn census_csv_and_json_agree() {
    let csv = run(&["census", "--q-max", "31"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,p,n,s,admissible_delta,scalar_certified,oracle_cpp,discrepancies"
    );
    assert_eq!(lines.next().unwrap(), "4,2,2,1,0,0,0,0");
    assert_eq!(lines.next().unwrap(), "7,7,1,2,1,0,0,0");

    let json = run(&["census", "--q-max", "31", "--format", "json"]);
    let rows: Vec<serde_json::Value> = stdout(&json)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), text.lines().count() - 1);
    assert_eq!(rows[0]["q"], 4);
    assert_eq!(rows[1]["q"], 7);
    assert_eq!(rows[1]["admissible_delta"], 1);
}

#[test]
fn reproduce_paper_is_clean_and_the_negative_control_fails() {
    let ok = run(&["reproduce-paper"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.trim_end().ends_with("all pinned instances reproduce"));
    for q in [109, 163, 199, 7, 31, 13, 25, 343] {
        assert!(text.contains(&format!("(q = {q}): ok")), "missing q = {q}");
    }

    let one = run(&["reproduce-paper", "--only", "163"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).contains("tau: (2, 151, 2)"));
    assert!(!stdout(&one).contains("q = 109"));

    let corrupt = run(&["reproduce-paper", "--corrupt"]);
    assert_eq!(corrupt.status.code(), Some(1));
    assert!(stdout(&corrupt).contains("<-- MISMATCH"));
    assert!(stdout(&corrupt).trim_end().ends_with("MISMATCHES FOUND"));

    let unknown = run(&["reproduce-paper", "--only", "11"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_same_bytes_to_a_file() {
    let dir = std::env::temp_dir().join("mu3perm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.csv");
    let to_file = run(&[
        "census", "--q-max", "31", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    let direct = run(&["census", "--q-max", "31"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&direct));
}
