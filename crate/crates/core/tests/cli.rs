use std::process::{Command, Output};

use serde_json::Value;

use qsym::hopf::{TensorElement, TensorRecord};
use qsym::qsym::{Basis, ElementRecord, QSymElement};
use qsym::theta::theta_m;

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qsym(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn golden_text_outputs() {
    assert_eq!(first_line(&["theta", "2,1"]), "4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]");
    assert_eq!(first_line(&["theta", "21"]), "4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]");
    assert_eq!(first_line(&["coproduct", "3,2"]), "1⊗M[3,2] + M[3]⊗M[2] + M[3,2]⊗1");
    assert_eq!(
        first_line(&["coproduct", "2", "--mode", "theta-structural"]),
        "1⊗θ[2] + θ[1]⊗θ[1] + θ[2]⊗1"
    );
    assert_eq!(first_line(&["product", "M[1]", "M[1]"]), "M[2] + 2*M[1,1]");
    assert_eq!(first_line(&["product", "F[1]", "F[1]", "--basis", "F"]), "F[2] + F[1,1]");
    assert_eq!(first_line(&["convert", "F[2,1]", "--basis", "M"]), "M[2,1] + M[1,1,1]");
    assert_eq!(first_line(&["reduce", "3,2"]), "θ[3,1,1] + θ[2,1,2] − θ[2,1,1,1]");
    assert_eq!(first_line(&["reduce", "4,1"]), "θ[4,1]");
}

#[test]
fn theta_211_reports_constant() {
    let out = stdout(&["theta", "2,1,1", "--basis", "F"]);
    assert!(out.starts_with("4*F[2,2] + 4*F[2,1,1] + 8*F[1,2,1] + 4*F[1,1,2] − 4*F[1,1,1,1]"));
    assert!(out.contains("note: equals 4 ×"), "{out}");
}

#[test]
fn json_element_round_trips() {
    let v = json(&["theta", "2,1"]);
    assert_eq!(v["command"], "theta");
    assert_eq!(v["status"], "ok");
    let records: Vec<ElementRecord> = serde_json::from_value(v["payload"].clone()).unwrap();
    let back = QSymElement::from_records(&records).unwrap();
    assert_eq!(back, theta_m(&"2,1".parse().unwrap()));
}

#[test]
fn json_tensor_round_trips() {
    let v = json(&["coproduct", "3,2"]);
    let records: Vec<TensorRecord> = serde_json::from_value(v["payload"].clone()).unwrap();
    let t = TensorElement::from_records(Basis::M, Basis::M, &records).unwrap();
    assert_eq!(t, qsym::hopf::coproduct_m(&"3,2".parse().unwrap()));
}

#[test]
fn json_rank_rows() {
    let v = json(&["ranks", "--max-n", "5", "--with-matrix"]);
    let rows = v["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let pis: Vec<u64> = rows.iter().map(|r| r["pi_rec"].as_u64().unwrap()).collect();
    assert_eq!(pis, [1, 1, 2, 4, 7]);
    assert!(rows.iter().all(|r| r["agree"] == true && r["pi_matrix"].is_u64()));
    let plain = json(&["ranks", "--max-n", "3"]);
    assert!(plain["payload"][0].get("pi_matrix").is_none());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "theta", "3,1,2"][..],
        &["coproduct", "2,1,2", "--mode", "theta-expanded"],
        &["reduce", "--degree", "6"],
        &["kernel", "4"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qsym"))
            .args(["verify", "reduction", "--max-n", "6"])
            .env("QSYM_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qsym-out-{}.json", std::process::id()));
    let out = qsym(&["--json", "--out", path.to_str().unwrap(), "kernel", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["payload"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_and_exit_codes() {
    let bad = qsym(&["theta", "2,x"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error: parse error"));

    let not_sqs = qsym(&["reduce", "1,3"]);
    assert_eq!(not_sqs.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&not_sqs.stderr).contains("not an sqs composition"));

    let v: Value = serde_json::from_slice(&qsym(&["--json", "reduce", "1,3"]).stdout).unwrap();
    assert_eq!(v["status"], "error");

    assert_eq!(qsym(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qsym(&["kernel", "0"]).status.code(), Some(2));
}

#[test]
fn verify_suites_and_aliases() {
    let out = qsym(&["verify", "lemma1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("suite theta-coproduct"));

    let out = qsym(&["verify", "theorem37", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));

    // recorded ambiguities report mismatch without failing
    let v = json(&["verify", "ambiguities", "--max-n", "5"]);
    assert_eq!(v["status"], "mismatch");
}

#[test]
fn batch_reduce_certificates() {
    let v = json(&["reduce", "--degree", "7"]);
    let rows = v["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    assert!(rows.iter().all(|r| r["ok"] == true && r["lhs_hash"] == r["rhs_hash"]));
}
