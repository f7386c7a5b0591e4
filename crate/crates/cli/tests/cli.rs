use std::io::Write;
use std::process::{Command, Output, Stdio};

fn reid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reid")).args(args).output().expect("spawn reid")
}

fn reid_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn reid");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn witt_table_rows() {
    let o = reid(&["witt", "--rank", "2", "--max-degree", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["7", "18"]));
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["8", "30"]));
}

#[test]
fn klein_reid_is_infinite() {
    let o = reid(&["reid", "--group", "klein", "--aut", "b,r=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("infinity"));
}

#[test]
fn repro_q42_bound_one() {
    let o = reid(&["repro", "example-4.1", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("== example-4.1 [Q42 lifting scan] =="));
    assert!(out.contains("no finite-R lifting automorphism found"));
}

#[test]
fn repro_n_r_layers() {
    let o = reid(&["repro", "example-4.2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("R = 8"), "{out}");
    assert!(out.contains("layer"), "{out}");
}

#[test]
fn every_repro_header_names_its_anchor() {
    for (id, anchor) in reidemeister_cli::TARGETS {
        if matches!(*id, "fixed-element-law" | "example-4.1") {
            continue;
        }
        let o = reid(&["--output", "json", "repro", id]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["target"], *id);
        assert_eq!(v["anchor"], *anchor);
    }
}

#[test]
fn unknown_repro_target_is_input_error() {
    assert_eq!(reid(&["repro", "example-9.9"]).status.code(), Some(2));
}

#[test]
fn schema_errors_exit_two() {
    assert_eq!(reid(&["reid", "--group", "no-such-group", "--endo", "[[1]]"]).status.code(), Some(2));
    assert_eq!(reid(&["reid", "--group", "Z^2", "--endo", "[[1,2]]"]).status.code(), Some(2));
    assert_eq!(reid(&["witt", "--rank", "2", "--bound", "3"]).status.code(), Some(2));
    assert_eq!(reid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(reid(&[]).status.code(), Some(2));
    let o = reid_stdin(&["--spec", "-"], r#"{"command":"witt","params":{"rank":2,"colour":1}}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = reid_stdin(&["--spec", "-"], r#"{"command":"witt","extra":1}"#);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_without_rule_exits_one() {
    let o = reid(&["certify", "--group", "Z^2", "--endo", "[[2,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = reid(&["certify", "--group", "heis-mod-3", "--endo", "[[1,0],[0,1]]"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_counterexample_exits_one() {
    let o = reid(&["--output", "json", "oracle", "--moduli", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["seed"], 0);
}

#[test]
fn spec_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("reid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(
        &path,
        r#"{"command":"reid","group":"free-nilpotent","endo":["x1^2 x2","x1^5 x2^2"],"params":{"rank":2,"class":3}}"#,
    )
    .unwrap();
    let from_file = reid(&["--output", "json", "--spec", path.to_str().unwrap()]);
    let from_flags = reid(&[
        "--output", "json", "reid", "--group", "free-nilpotent", "--rank", "2", "--class", "3", "--endo",
        r#"["x1^2 x2","x1^5 x2^2"]"#,
    ]);
    assert_eq!(from_file.status.code(), Some(0), "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(from_file.stdout, from_flags.stdout);
    assert_eq!(json(&from_file)["value"], "32");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certificate_round_trip_through_file() {
    let o = reid(&["--output", "json", "certify", "--group", "dihedral", "--endo", "sign=-1,n=3"]);
    assert_eq!(o.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("reid-cert-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let checked = reid(&["certify", "--verify", path.to_str().unwrap()]);
    assert_eq!(checked.status.code(), Some(0));

    let mut cert = json(&o);
    cert["claim"]["value"] = serde_json::json!("7");
    std::fs::write(&path, cert.to_string()).unwrap();
    assert_eq!(reid(&["certify", "--verify", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn json_reports_are_deterministic() {
    let jobs: [&[&str]; 3] = [
        &["--output", "json", "scan-q42", "--bound", "1", "--samples", "200", "--seed", "7"],
        &["--output", "json", "klein", "--aut", "d,r=-3", "--radius", "4"],
        &["--output", "json", "scan-g53", "--b-bound", "2", "--threads", "2"],
    ];
    for args in jobs {
        let a = reid(args);
        let b = reid(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sampled_scan_echoes_seed() {
    let o = reid(&["--output", "json", "scan-q42", "--bound", "1", "--samples", "50", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["seed"], 11);
}
