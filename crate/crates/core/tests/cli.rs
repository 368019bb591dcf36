use std::process::Command;

use serde_json::Value;

fn dp4(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dp4"))
        .args(args)
        .env_remove("DP4_JOBS")
        .output()
        .expect("dp4 runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

#[test]
fn classify_table_row_d() {
    let (code, v) = dp4(&["classify-line", "--vertex", "e0", "--plane", "e0,e1,e4"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "d");
    assert_eq!(v["normal_bundle"], "nonfree");
    assert_eq!(v["family_dim"], 1);
    assert_eq!(v["support_points"][0]["multiplicity"], 2);
}

#[test]
fn count_dbar() {
    let (code, v) = dp4(&["count", "--variety", "dbar", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["variety"], "dbar");
    assert_eq!(v["count"], 160);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn rejects_bad_input() {
    assert_eq!(dp4(&["count", "--variety", "q3", "--q", "2"]).0, 2);
    assert_eq!(dp4(&["count", "--variety", "y", "--q", "9"]).0, 2);
    assert_eq!(dp4(&["verify", "nonsense"]).0, 2);
    assert_ne!(dp4(&["classify-line", "--vertex", "e0", "--plane", "e0,e3,e4"]).0, 0);
}

#[test]
fn verify_writes_report() {
    let path = std::env::temp_dir().join(format!("dp4-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_dp4"))
        .args(["verify", "pluecker,planes", "--seed", "3", "--samples", "20", "--out", p])
        .env("DP4_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["schema"], "dp4-report/1");
    assert_eq!(v["config"]["seed"], 3);
    for item in v["items"].as_array().unwrap() {
        for key in ["check_id", "paper_anchor", "status", "expected", "actual", "elapsed_ms", "evidence"] {
            assert!(item.get(key).is_some(), "{key} missing");
        }
        assert_ne!(item["status"], "fail", "{}", item["check_id"]);
    }
}
