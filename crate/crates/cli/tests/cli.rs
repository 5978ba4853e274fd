use std::process::{Command, Output};

fn taf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taf")).args(args).env_remove("TAF_DEFAULT_ORDER").output().expect("spawn taf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cor1_last_line() {
    let o = taf(&["cor1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last().unwrap(), "v₂ ≡ Δ_G³ (mod (5, v₁))");
}

#[test]
fn legendre_six() {
    let o = taf(&["legendre", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "P_6 = 231/16*α^6 - 315/16*α^4*β + 105/16*α^2*β^2 - 5/16*β^3");
}

#[test]
fn vgens_json() {
    let o = taf(&["vgens", "-p", "5", "-n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["p"], 5);
    let v1 = &v["v"][0]["terms"];
    assert_eq!(v1.as_array().unwrap().len(), 1);
    assert_eq!((v1[0]["i"].as_u64(), v1[0]["j"].as_u64()), (Some(1), Some(0)));
    assert_eq!((v1[0]["num"].as_str(), v1[0]["den"].as_str()), (Some("1"), Some("1")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("v_2 done"));
}

#[test]
fn selftest_json() {
    let o = taf(&["selftest", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert!(arr.len() >= 16);
    for r in arr {
        assert!(r["name"].is_string() && r["detail"].is_string());
        assert!(r["status"] == "pass" || r["status"] == "fail");
    }
}

#[test]
fn negative_coordinates() {
    let o = taf(&["reduce", "-3.2", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certified: true"));
}

#[test]
fn default_order_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_taf")).arg("ulog").env("TAF_DEFAULT_ORDER", "9").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("(20/3*α^2 - 5/9*β)*v^9"));
    assert!(s.trim_end().ends_with("O(v^10)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(taf(&["landweber", "-p", "7"]).status.code(), Some(2));
    assert_eq!(taf(&["bogus"]).status.code(), Some(2));
    assert_eq!(taf(&["-N", "0", "ulog"]).status.code(), Some(2));
    assert_eq!(taf(&["reduce", "0.0", "-1.0"]).status.code(), Some(2));
}
