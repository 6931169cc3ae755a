use schubert_cli::report;
use std::process::{Command, Output};
use std::time::Instant;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env_remove("SCHUBERT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn md_rows(text: &str) -> usize {
    text.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| delta_w") && !l.starts_with("| w |")).count()
}

#[test]
fn catalog_sizes() {
    let o = schubert(&["catalog", "E6", "6", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(md_rows(&stdout(&o)), 27);
    let o = schubert(&["catalog", "A3", "2"]);
    assert_eq!(report::parse(&stdout(&o)).unwrap().records.len(), 6);
    let start = Instant::now();
    let o = schubert(&["catalog", "B9", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 18);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn catalog_json_round_trips_and_is_deterministic() {
    let a = stdout(&schubert(&["catalog", "C4", "4", "--jobs", "3"]));
    let b = stdout(&schubert(&["catalog", "C4", "4", "--jobs", "1"]));
    assert_eq!(a, b);
    let r = report::parse(&a).unwrap();
    assert_eq!(r.schema_version, report::SCHEMA_VERSION);
    assert_eq!(r.chss, "C4/P4");
    assert_eq!(report::emit(&r, schubert_cli::config::Format::Json).unwrap(), a);
    assert!(r.records.windows(2).all(|p| (p[0].dim, &p[0].j) <= (p[1].dim, &p[1].j)));
}

#[test]
fn timestamp_is_opt_in() {
    let r = report::parse(&stdout(&schubert(&["catalog", "A2", "1"]))).unwrap();
    assert_eq!(r.generated_at, None);
    let r = report::parse(&stdout(&schubert(&["catalog", "A2", "1", "--timestamp"]))).unwrap();
    assert!(r.generated_at.is_some());
}

#[test]
fn exceptional_tables_reproduce() {
    let o = schubert(&["tables", "E6", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(md_rows(&text), 6);
    assert!(text.contains("identical to the golden data"));
    let o = schubert(&["tables", "E7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = schubert(&["tables", "suit", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "Type,spade,heart,diamond,club");
}

#[test]
fn parametric_tables_reproduce() {
    for id in ["bigone", "sm", "Hplus"] {
        let o = schubert(&["tables", id, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(schubert(&["tables", "T9"]).status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let o = schubert(&["classify", "A10", "5", "--partition", "6 4^2 1^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["record"]["a"], 1);
    assert_eq!(v["record"]["j"], serde_json::json!([1, 3, 7, 10]));
    assert_eq!(v["record"]["dim"], 14);
    assert_eq!(v["record"]["dual"]["a"], 2);
    assert_eq!(v["record"]["dual"]["j"], serde_json::json!([2, 4, 6, 9]));
    assert_eq!(v["partition_forms"]["conjugate"]["partition"], "5 3^3 1^2");

    let o = schubert(&["classify", "E7", "7", "--word", "76542"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["record"]["a"].clone(), v["record"]["j"].clone(), v["record"]["dim"].clone()), (0.into(), serde_json::json!([3]), 5.into()));

    let o = schubert(&["classify", "A4", "2", "--aJ", "0;{}", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not proper"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["catalog", "C3", "1"][..],
        &["catalog", "A3", "9"],
        &["catalog", "X3", "1"],
        &["classify", "A4", "2", "--aJ", "3;{1}"],
        &["classify", "A4", "2", "--word", "1"],
        &["classify", "A4", "2"],
        &["classify", "A4", "2", "--word", "2", "--aJ", "0;{1}"],
        &["catalog", "A3", "2", "--span-bound", "10"],
        &["catalog", "A3", "2", "--jobs", "0"],
        &["partition", "2", "5", "--partition", "4"],
    ] {
        let o = schubert(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = schubert(&["classify", "A4", "2", "--aJ", "3;{1}"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("realizability criterion"));
}

#[test]
fn rigidity_and_schur_commands() {
    let o = schubert(&["rigidity", "D5", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = schubert(&["schur", "A4", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report::parse(&stdout(&o)).unwrap();
    assert!(!r.records.is_empty());
    assert!(r.records.iter().all(|x| x.h_plus == Some(true) && x.schur_equal == Some(report::SchurStatus::Equal)));
    let o = schubert(&["schur", "C3", "3", "--all", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not_equal"));
}

#[test]
fn partition_command() {
    let o = schubert(&["partition", "3", "6", "--partition", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partition"]["a"], 1);
    assert_eq!(v["partition"]["j"], serde_json::json!([1, 4]));
    let o = schubert(&["partition", "5", "11", "--aJ", "1;{1,3,7,10}", "--format", "md"]);
    assert!(stdout(&o).contains("6 4^2 1^2"));
}

#[test]
fn cache_directory_from_environment_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_schubert"))
            .args(["catalog", "A4", "2"])
            .args(extra)
            .env("SCHUBERT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run(&[]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(run(&[]).stdout, first.stdout);
    let other = tempfile::tempdir().unwrap();
    run(&["--cache", other.path().to_str().unwrap()]);
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
    run(&["--schur", "--no-cache"]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
