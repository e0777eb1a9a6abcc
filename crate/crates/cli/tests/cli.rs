use std::path::PathBuf;
use std::process::{Command, Output};

fn bkverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bkverify-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eval_prints_canonical_forms() {
    let o = bkverify(&["eval", "(d (u 3 2))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(+ (pt 2) (pt 3/2) (- (pt 3)))");
    let o = bkverify(&["eval", "(shuffle (w (pt 2)) (w (pt 3)))"]);
    assert_eq!(stdout(&o).trim(), "[2|3]+[3|2]");
    let o = bkverify(&["eval", "--mode", "formal", "(d (rho 2 3))"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_with_two_and_a_column() {
    let o = bkverify(&["eval", "(d (u 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 7"));
}

#[test]
fn verify_writes_a_report() {
    let dir = scratch("verify");
    let out = dir.join("report.json");
    let o = bkverify(&[
        "verify", "--suite", "du-identity", "--samples", "20", "--seed", "3",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["suite"], "du-identity");
    assert_eq!(v["seed"], 3);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 20);
    assert!(records.iter().all(|r| r["status"] == "pass" && !r["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn verify_rejects_bad_configuration() {
    assert_eq!(bkverify(&["verify", "--suite", "unknown-name"]).status.code(), Some(2));
    assert_eq!(bkverify(&["verify", "--suite", "rho-signs", "--n-max", "40"]).status.code(), Some(2));
    assert_eq!(bkverify(&["verify", "--suite", "du-identity", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(bkverify(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn certificates_round_trip_and_detect_tampering() {
    let dir = scratch("cert");
    let alpha = dir.join("alpha.sexp");
    std::fs::write(&alpha, "(five-term (poly \"t+2\") 5)").unwrap();
    let cert = dir.join("cert.json");
    let o = bkverify(&["certify", "--in", alpha.to_str().unwrap(), "--level", "2", "--out", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bkverify(&["check-cert", cert.to_str().unwrap()]).status.code(), Some(0));

    let text = std::fs::read_to_string(&cert).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["element"][0]["coeff"] = "2".into();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = bkverify(&["check-cert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual"));

    let cut = dir.join("cut.json");
    std::fs::write(&cut, &text[..text.len() / 2]).unwrap();
    let o = bkverify(&["check-cert", cut.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
    let missing = dir.join("missing.json");
    assert_eq!(bkverify(&["check-cert", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn level_three_certificates_use_lower_relations() {
    let dir = scratch("level3");
    let rel = dir.join("relations");
    std::fs::create_dir_all(&rel).unwrap();
    let a2 = dir.join("a2.sexp");
    std::fs::write(&a2, r#"(+ (sym (poly "(t+2)*(2*s-1)")) (sym (poly "1/((t+2)*(2*s-1))")))"#).unwrap();
    let r2 = rel.join("r2.json");
    let o = bkverify(&[
        "certify", "--in", a2.to_str().unwrap(), "--level", "2", "--variable", "s",
        "--out", r2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let a3 = dir.join("a3.sexp");
    std::fs::write(
        &a3,
        r#"(+ (sym (poly "t+2")) (- (sym (poly "1/(t+2)"))) (- (sym (poly "-t-2"))) (sym (poly "-1/(t+2)")))"#,
    )
    .unwrap();
    let c3 = dir.join("c3.json");
    let args = ["certify", "--in", a3.to_str().unwrap(), "--level", "3"];
    assert_eq!(bkverify(&args).status.code(), Some(1));
    let mut with_rel = args.to_vec();
    with_rel.extend(["--relations", rel.to_str().unwrap(), "--out", c3.to_str().unwrap()]);
    assert_eq!(bkverify(&with_rel).status.code(), Some(0));
    assert_eq!(bkverify(&["check-cert", c3.to_str().unwrap()]).status.code(), Some(0));
}
