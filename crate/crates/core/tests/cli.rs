use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quartic-euclid"));
    c.env_remove("EUCLID_CERT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn field_list_has_forty_rows() {
    let o = run(&["field", "list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 41);
}

#[test]
fn field_info_shows_table_data() {
    let o = run(&["field", "info", "K_1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "Q(sqrt(-1), sqrt(13))");
    assert_eq!(v["expected_pair"], serde_json::json!(["29", "17"]));
    assert_eq!(run(&["field", "info", "K_99"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["search"]).status.code(), Some(2));
}

fn search(label: &str, bound: &str, path: &Path) -> Output {
    run(&["search", label, "--bound", bound, "--emit", path.to_str().unwrap()])
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k1.json");
    let o = search("K_1", "100", &cert);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with('(')).count(), 5);
    let o = run(&["verify", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("valid"));
    let o = run(&["verify", cert.to_str().unwrap(), "--oracle"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("confirmed by enumeration"));

    let mut j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    j["orders"]["ord_eps_P1"] = "1".into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, j.to_string()).unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("condition (1)") || !o.stderr.is_empty());

    std::fs::write(&bad, "{\"version\": 3}").unwrap();
    assert_eq!(run(&["verify", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["verify", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn search_conductor_five_and_exhausted_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c5.json");
    assert!(search("5", "50", &cert).status.success());
    assert!(run(&["verify", cert.to_str().unwrap(), "--oracle"]).status.success());
    let o = search("K_1", "3", &dir.path().join("none.json"));
    assert_eq!(o.status.code(), Some(1));
    assert!(!dir.path().join("none.json").exists());
}

#[test]
fn search_honours_cert_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["search", "K_2", "--assume-class-number-one"])
        .env("EUCLID_CERT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let path = dir.path().join("K_2.cert.json");
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["conclusion"]["kind"], "euclidean");
    assert_eq!(j["version"], "cert/v1");
    assert!(run(&["verify", path.to_str().unwrap()]).status.success());
}

#[test]
fn every_label_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let labels = stdout(&run(&["field", "list"]))
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect::<Vec<_>>();
    assert_eq!(labels.len(), 40);
    for label in labels {
        let cert = dir.path().join(format!("{label}.json"));
        assert!(search(&label, "1000", &cert).status.success(), "{label}");
        assert!(run(&["verify", cert.to_str().unwrap()]).status.success(), "{label}");
    }
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reproduce_tables_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let oa = run(&["reproduce-tables", "--out", a.path().to_str().unwrap(), "--jobs", "2"]);
    let ob = run(&["reproduce-tables", "--out", b.path().to_str().unwrap()]);
    assert!(oa.status.success() && ob.status.success());
    let (fa, fb) = (read_dir_sorted(a.path()), read_dir_sorted(b.path()));
    assert_eq!(fa.len(), 40 * 2 + 2);
    assert_eq!(fa, fb);
    let k1: serde_json::Value = serde_json::from_slice(&std::fs::read(a.path().join("K_1.report.json")).unwrap()).unwrap();
    assert_eq!(k1["status"], "reproduced");
    let c61: serde_json::Value = serde_json::from_slice(&std::fs::read(a.path().join("61.report.json")).unwrap()).unwrap();
    assert_eq!(c61["certified_pair"], serde_json::json!([47, 73]));
    assert!(stdout(&oa).contains("valid certificates 40/40"));
}

#[test]
fn reproduce_tables_subset() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce-tables", "--out", dir.path().to_str().unwrap(), "--only", "K_7,13"]);
    assert!(o.status.success());
    let s: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(s["rows"].as_array().unwrap().len(), 2);
    assert_eq!(s["alternative"], 2);
}
