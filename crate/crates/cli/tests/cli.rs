use std::path::PathBuf;
use std::process::{Command, Output};

fn sch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sch")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

#[test]
fn lemma_report_matches_golden_file() {
    let args = ["verify", "lemmas", "--n", "2", "--stable", "--emit", "json"];
    let first = sch(&args);
    assert_eq!(first.status.code(), Some(1));
    let second = sch(&args);
    assert_eq!(stdout(&first), stdout(&second));
    golden("verify_lemmas_n2.json", &stdout(&first));
}

#[test]
fn homology_report_matches_golden_file() {
    let o = sch(&["homology", "--n", "2", "--max-degree", "4", "--stable", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    golden("homology_leibniz_n2.json", &stdout(&o));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(sch(&["verify", "all", "--n", "1"]).status.code(), Some(64));
    assert_eq!(sch(&["homology", "--n", "1", "--max-degree", "2"]).status.code(), Some(64));
    assert_eq!(sch(&["chains", "show", "--name", "omega", "--n", "3"]).status.code(), Some(64));
    assert_eq!(sch(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(sch(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_aborts_exit_75() {
    let o = sch(&["homology", "--n", "3", "--max-degree", "3", "--reduction", "all-weights", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(75));
}

#[test]
fn series_predict_csv() {
    let o = sch(&["series", "predict", "--target", "leibniz_sch", "--n", "2", "--max-degree", "6", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree,gamma_2\n0,1\n1,0\n2,2\n3,0\n4,3\n5,0\n6,3\n");
}

#[test]
fn invariants_json() {
    let o = sch(&["invariants", "--n", "3", "--acting", "hbar", "--module", "wedge", "--k", "4", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["module"], "wedge");
}

#[test]
fn verify_writes_a_report_file() {
    let dir = std::env::temp_dir().join(format!("sch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = sch(&["verify", "theorem", "--n", "3", "--leibniz-max-degree", "3", "--stable", "--output", path.to_str().unwrap()]);
    // The degree-2 Leibniz class contradicts both predictions.
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], 1);
    assert_eq!(v["primes"].as_array().unwrap().len(), 2);
    assert!(v["findings"].as_array().unwrap().iter().any(|f| f["message"].as_str().unwrap().contains("β_n class")));
    std::fs::remove_dir_all(&dir).unwrap();
}
