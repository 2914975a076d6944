use std::io::Write;
use std::process::{Command, Output, Stdio};

fn laddertool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laddertool")).args(args).env_remove("LADDERTOOL_SEED").output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_laddertool"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn semidualizing_count_of_l1() {
    let o = laddertool(&["semidualizing", "--fixture", "L1", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "count 4"), "{}", stdout(&o));
    let doc = json(&laddertool(&["semidualizing", "--fixture", "L1", "--t", "3", "--json"]));
    assert_eq!(doc["sections"]["semidualizing"]["count"], 4);
}

#[test]
fn census_counts_of_the_figures() {
    for (name, want) in [("L1", 4), ("L2", 2), ("L3", 2), ("L4", 1)] {
        let doc = json(&laddertool(&["semidualizing", "--fixture", name, "--t", "3", "--json"]));
        assert_eq!(doc["sections"]["semidualizing"]["count"], want, "{name}");
    }
}

#[test]
fn class_group_of_l2() {
    let o = laddertool(&["classgroup", "--fixture", "L2", "--t", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let cg = &doc["sections"]["class_group"];
    assert_eq!(cg["ladder_rank"], 2);
    let labels: Vec<&str> =
        cg["components"][0]["basis"].as_array().unwrap().iter().map(|b| b["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["q1", "q2"]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn coefficient_descriptor_is_applied() {
    let dir = std::env::temp_dir().join(format!("laddertool-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeff.json");
    std::fs::write(&path, r#"{"name":"A","cl_free_rank":0,"cl_invariant_factors":[2],"s0_labels":["A","w","v"]}"#).unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&laddertool(&["classgroup", "--fixture", "L1", "--t", "3", "--coeff", p, "--json"]));
    assert_eq!(doc["sections"]["class_group"]["total"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(doc["sections"]["class_group"]["total"]["free_rank"], 3);
    let doc = json(&laddertool(&["semidualizing", "--fixture", "L2", "--t", "3", "--coeff", p, "--json"]));
    assert_eq!(doc["sections"]["semidualizing"]["count"], 6);
    std::fs::write(&path, r#"{"name":"A","cl_free_rank":0,"cl_invariant_factors":[1],"s0_labels":["A"]}"#).unwrap();
    assert_eq!(laddertool(&["classgroup", "--fixture", "L1", "--t", "3", "--coeff", p]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canonical_on_l1_is_unsupported() {
    let o = laddertool(&["canonical", "--fixture", "L1", "--t", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("assumption (d)"), "{err}");
}

#[test]
fn canonical_of_squares_and_l3() {
    let o = laddertool(&["canonical", "--fixture", "full:4x4", "--t", "3", "--json"]);
    assert_eq!(json(&o)["sections"]["canonical"][0]["gorenstein"], true);
    let o = laddertool(&["canonical", "--fixture", "L3", "--t", "3", "--json"]);
    let c = &json(&o)["sections"]["canonical"][0]["class"];
    assert_eq!(c["lambda"], serde_json::json!([1, 0]));
    assert_eq!(c["delta"][0]["value"], -1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["analyze", "--fixture", "L2", "--t", "3", "--json"][..],
        &["decompose", "--fixture", "L1", "--t", "3", "--json"],
        &["verify", "--fixture", "L3", "--t", "3", "--json", "--seed", "7"],
        &["render", "--fixture", "L4", "--overlay", "corners"],
    ] {
        let a = laddertool(args);
        let b = laddertool(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_laddertool"))
            .args(["verify", "--fixture", "L3", "--t", "3", "--json"])
            .env("LADDERTOOL_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run("11");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, laddertool(&["verify", "--fixture", "L3", "--t", "3", "--json", "--seed", "11"]).stdout);
}

#[test]
fn verify_reports_pass_on_a_square() {
    let o = laddertool(&["verify", "--fixture", "full:4x4", "--t", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json(&o)["sections"]["verification"].as_array().unwrap().clone();
    assert!(reports.iter().all(|r| r["verdict"] == "pass" && r["wall_time_ms"] == 0));
    let ids: Vec<&str> = reports.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"correspondence"), "{ids:?}");
}

#[test]
fn tight_caps_are_inconclusive() {
    let o = laddertool(&["verify", "--fixture", "L1", "--t", "3", "--degree-cap", "1"]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert!(stdout(&o).contains("[INCONCLUSIVE]"));
}

#[test]
fn render_overlays() {
    assert_eq!(stdout(&laddertool(&["render", "--fixture", "full:2x2"])), "XX\nXX\n");
    let corners = stdout(&laddertool(&["render", "--fixture", "L1", "--overlay", "corners"]));
    assert!(corners.contains("S1'") && corners.contains("T1'"));
    let z = stdout(&laddertool(&["render", "--fixture", "L1", "--overlay", "z"]));
    assert_eq!(z.matches('Z').count(), 11);
    assert_eq!(laddertool(&["render", "--fixture", "L1", "--overlay", "pieces"]).status.code(), Some(1));
    let pieces = stdout(&laddertool(&["render", "--fixture", "L4", "--overlay", "pieces", "--t", "3"]));
    assert_eq!(pieces.matches('*').count(), 1);
}

#[test]
fn input_formats() {
    let o = with_stdin(&["analyze", "--input", "-", "--t", "2", "--json"], "XX\nXX\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sections"]["profile"]["cells"], 4);
    let o = with_stdin(&["analyze", "--input", "-", "--format", "points", "--t", "2", "--json"], "[[1,1],[1,2],[2,1],[2,2]]");
    assert_eq!(json(&o)["sections"]["profile"]["cells"], 4);
    let o = with_stdin(
        &["analyze", "--input", "-", "--format", "intervals", "--t", "2", "--json"],
        r#"[{"row":1,"col_start":1,"col_end":2},{"row":2,"col_start":1,"col_end":2}]"#,
    );
    assert_eq!(json(&o)["sections"]["profile"]["cells"], 4);
}

#[test]
fn invalid_input_exits_one() {
    let o = with_stdin(&["analyze", "--input", "-", "--t", "2"], "X.\n.X\n");
    assert_eq!(o.status.code(), Some(1));
    let o = with_stdin(&["analyze", "--input", "-", "--t", "2"], "XQ\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 1, column 2"));
    assert_eq!(laddertool(&["analyze", "--t", "2"]).status.code(), Some(1));
    assert_eq!(laddertool(&["analyze", "--fixture", "L9", "--t", "2"]).status.code(), Some(1));
    assert_eq!(laddertool(&["analyze", "--fixture", "L1", "--t", "1"]).status.code(), Some(1));
    assert_eq!(laddertool(&["analyze", "--fixture", "L1"]).status.code(), Some(1));
}

#[test]
fn suite_runs_without_input() {
    let o = laddertool(&["verify", "--suite", "--json", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let reports = json(&o)["sections"]["verification"].as_array().unwrap().len();
    assert_eq!(reports, 13);
}
