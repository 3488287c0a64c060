//! Exit-code contract and input handling of the command-line binary:
//! 0 = all assertions hold, 1 = mathematical failure with witnesses,
//! 2 = unusable input.

use std::path::PathBuf;
use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_awb")
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> std::process::Output {
    let resolved: Vec<std::ffi::OsString> = args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                fixtures().join(a).into_os_string()
            } else {
                a.into()
            }
        })
        .collect();
    Command::new(exe()).args(&resolved).output().expect("runs")
}

#[test]
fn valid_algebra_exits_zero() {
    let out = run(&["check", "t_m2.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
}

#[test]
fn invalid_algebra_exits_one_with_witness() {
    let out = run(&["check", "invalid/invalid_bracket_dim1.json", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(false));
    assert_eq!(
        v["report"]["validation"]["witnesses"][0]["law"],
        serde_json::json!("bracket_identity")
    );
}

#[test]
fn non_perfect_input_is_rejected_with_exit_two() {
    let out = run(&["uce", "n2.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not perfect"));
}

#[test]
fn malformed_file_exits_two_with_location() {
    let dir = std::env::temp_dir().join("awb_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ definitely not json").unwrap();
    let out = Command::new(exe())
        .args(["check", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));

    // shape mismatch is also an input error, and the message says where
    std::fs::write(
        &path,
        r#"{"format_version":1,"kind":"algebra","field":"Q","dim":2,"product":[[["0"]]],"bracket":[[["0"]]]}"#,
    )
    .unwrap();
    let out = Command::new(exe())
        .args(["invariants", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["check", "no_such_fixture.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trivial_tensor_failure_is_mathematical() {
    // valid inputs, failed assertion: exit 1 with the finding in the report
    let out = run(&["trivial-tensor", "n2.json", "ab1.json", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(false));
    assert!(v["report"]["failure"]
        .as_str()
        .unwrap()
        .contains("dimension 5"));
}

#[test]
fn incompatible_actions_exit_one_with_witnesses() {
    // feed the self actions of n2 with one corrupted side
    let dir = std::env::temp_dir().join("awb_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let n2 = awb::fixtures::n2(awb::field::FieldSpec::Rationals);
    let mut m_on_n = awb::action::AwbAction::self_action(&n2);
    m_on_n
        .rdot
        .set(1, 1, 0, awb::field::FieldSpec::Rationals.one());
    let mutual = awb::action::MutualActions::new(m_on_n, awb::action::AwbAction::self_action(&n2));
    let file = awb::io::mutual_actions_to_file(&mutual);
    let path = dir.join("bad_mutual.json");
    std::fs::write(&path, awb::io::to_canonical_json(&file)).unwrap();
    let out = Command::new(exe())
        .args([
            "tensor",
            fixtures().join("n2.json").to_str().unwrap(),
            fixtures().join("n2.json").to_str().unwrap(),
            "--actions",
            path.to_str().unwrap(),
            "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(false));
    assert!(v["report"]["compatibility"]["witness_count"].as_u64().unwrap() > 0);
}

#[test]
fn json_reports_parse_and_carry_inputs() {
    let out = run(&["invariants", "poisson3.json", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], serde_json::json!("invariants"));
    assert!(v["inputs"][0].as_str().unwrap().ends_with("poisson3.json"));
    assert_eq!(v["report"]["perfect"], serde_json::json!(true));
}
