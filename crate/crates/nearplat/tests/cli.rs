//! Smoke tests for the installed binary: subcommand plumbing, exit codes,
//! and the text/JSON surfaces scripts depend on.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nearplat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(stdin)
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs to completion")
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn generate_piped_into_classify_names_the_cube() {
    let generated = run(&["generate", "--family", "prism", "--d", "4"], b"");
    assert!(generated.status.success());
    let classified = run(&["classify"], &generated.stdout);
    assert!(classified.status.success());
    assert_eq!(stdout_text(&classified).trim(), "(3; 4^6) — equals the cube");
}

#[test]
fn classify_prints_one_profile_per_record() {
    let mut stream = Vec::new();
    for (family, d) in [("prism", "3"), ("antiprism", "5"), ("cycle", "7")] {
        let generated = run(&["generate", "--family", family, "--d", d], b"");
        assert!(generated.status.success());
        let body = &generated.stdout[b">>planar_code<<".len()..];
        if stream.is_empty() {
            stream.extend_from_slice(&generated.stdout);
        } else {
            stream.extend_from_slice(body);
        }
    }
    let classified = run(&["classify"], &stream);
    assert!(classified.status.success());
    let lines: Vec<String> = stdout_text(&classified).lines().map(String::from).collect();
    assert_eq!(
        lines,
        vec!["(3; 3^2 4^3)", "(4; 5^2 3^10)", "(2; 7^2)"],
        "one signature line per map, in stream order"
    );
}

#[test]
fn classify_output_parses_back_as_a_signature() {
    let generated = run(&["generate", "--platonic", "icosahedron"], b"");
    let classified = run(&["classify"], &generated.stdout);
    let text = stdout_text(&classified);
    let notation = text.split('—').next().unwrap().trim();
    let sig: nearplat::counting::Signature = notation.parse().expect("round-trips");
    assert_eq!(sig.to_string(), notation);
}

#[test]
fn generate_writes_to_a_file_and_classify_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dodeca.plc");
    let generated = run(
        &["generate", "--platonic", "dodecahedron", "--out", path.to_str().unwrap()],
        b"",
    );
    assert!(generated.status.success());
    assert!(generated.stdout.is_empty(), "--out leaves stdout clean");
    let classified = run(&["classify", "--in", path.to_str().unwrap()], b"");
    assert!(classified.status.success());
    assert_eq!(
        stdout_text(&classified).trim(),
        "(3; 5^12) — equals the dodecahedron"
    );
}

#[test]
fn feasible_reports_the_fractional_forced_vertex_count() {
    let output = run(&["feasible", "--k", "3", "--d2", "3", "--f1", "1", "--d1", "4"], b"");
    assert!(output.status.success());
    assert_eq!(
        stdout_text(&output).trim(),
        "INFEASIBLE: forced vertex count 14/3 is not an integer"
    );
}

#[test]
fn feasible_accepts_a_screened_profile() {
    let output = run(&["feasible", "--k", "3", "--d2", "3", "--f1", "1", "--d1", "6"], b"");
    assert!(output.status.success());
    assert_eq!(
        stdout_text(&output).trim(),
        "FEASIBLE: (3; 6^1 3^4) with forced vertex count 6"
    );
}

#[test]
fn search_emits_a_report_with_the_expected_witness() {
    let output = run(
        &[
            "search", "--k", "3", "--d2", "4", "--f1", "2", "--d1", "3", "--vmax", "6",
        ],
        b"",
    );
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["task"], "search");
    assert_eq!(doc["schema_version"], 1);
    let cells = doc["cells"].as_array().unwrap();
    let last = cells.last().unwrap();
    assert_eq!(last["v"], 6);
    assert_eq!(last["status"], "COMPLETE");
    assert_eq!(last["class_count"], 1);
    assert!(last["witnesses"][0]["planar_code_base64"].is_string());
}

#[test]
fn one_disparate_sweep_completes_clean_at_a_small_ceiling() {
    let output = run(&["verify-one-disparate", "--vmax", "8"], b"");
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["task"], "verify-one-disparate");
    for cell in doc["cells"].as_array().unwrap() {
        assert_eq!(cell["status"], "COMPLETE");
        assert_eq!(cell["class_count"], 0);
    }
}

#[test]
fn exhausting_the_node_budget_exits_with_code_three() {
    let output = run(
        &[
            "search", "--k", "3", "--d2", "3", "--designated", "--vmax", "10",
            "--budget-nodes", "20",
        ],
        b"",
    );
    assert_eq!(output.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let statuses: Vec<&str> = doc["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"UNKNOWN"), "statuses: {statuses:?}");
}

#[test]
fn unknown_names_and_bad_flags_exit_with_code_one() {
    let unknown_family = run(&["generate", "--family", "moebius", "--d", "4"], b"");
    assert_eq!(unknown_family.status.code(), Some(1));
    let missing_units = run(&["generate", "--family", "prism"], b"");
    assert_eq!(missing_units.status.code(), Some(1));
    let no_subcommand = run(&[], b"");
    assert_eq!(no_subcommand.status.code(), Some(1));
    let too_few_units = run(&["generate", "--family", "prism", "--d", "1"], b"");
    assert_eq!(too_few_units.status.code(), Some(1));
    let unequal_disparate = run(
        &["feasible", "--k", "3", "--d2", "4", "--f1", "1", "--d1", "4"],
        b"",
    );
    assert_eq!(unequal_disparate.status.code(), Some(1));
}

#[test]
fn malformed_streams_exit_with_code_two() {
    let garbage = run(&["classify"], b"not planar code at all");
    assert_eq!(garbage.status.code(), Some(2));
    let missing_file = run(&["classify", "--in", "/nonexistent/stream.plc"], b"");
    assert_eq!(missing_file.status.code(), Some(2));
    // A valid header followed by a truncated record.
    let mut truncated = b">>planar_code<<".to_vec();
    truncated.extend_from_slice(&[4, 2, 3]);
    let cut = run(&["export-dot"], &truncated);
    assert_eq!(cut.status.code(), Some(2));
}

#[test]
fn export_dot_renders_faces_on_request() {
    let generated = run(&["generate", "--platonic", "tetrahedron"], b"");
    let plain = run(&["export-dot"], &generated.stdout);
    assert!(plain.status.success());
    let text = stdout_text(&plain);
    assert!(text.starts_with("graph map {"));
    assert!(!text.contains("face"));
    let annotated = run(&["export-dot", "--faces"], &generated.stdout);
    let text = stdout_text(&annotated);
    assert!(text.contains("// face vector: 3^4"));
    assert!(text.contains("0 -- 1;"));
}

#[test]
fn thread_count_does_not_change_the_cells() {
    let one = run(&["check-equal-degrees", "--k", "3", "--d2", "3", "--vmax", "8", "--threads", "1"], b"");
    let four = run(&["check-equal-degrees", "--k", "3", "--d2", "3", "--vmax", "8", "--threads", "4"], b"");
    assert!(one.status.success() && four.status.success());
    let parse = |o: &Output| -> serde_json::Value {
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["cells"].clone()
    };
    assert_eq!(parse(&one), parse(&four));
}
