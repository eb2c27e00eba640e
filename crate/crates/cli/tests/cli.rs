use std::process::{Command, Output};

use gwa_cli::{run, CommandKind, JobConfig, JobOutcome, RunReport, SourceChoice};
use gwa_core::complex::Variant;

fn gwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwa"))
        .args(args)
        .env_remove("GWA_DMAX")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn json_report_round_trips() {
    let mut configs = Vec::new();
    let mut hh = JobConfig::new(CommandKind::Hh);
    hh.a = Some("h^2 - 1".into());
    hh.source = SourceChoice::Both;
    configs.push(hh);
    let mut tw = JobConfig::new(CommandKind::Twisted);
    tw.a = Some("h^2".into());
    tw.h0 = "1/2".into();
    tw.twist = Some((3, 2));
    tw.variant = Variant::Cohomology;
    tw.source = SourceChoice::Both;
    configs.push(tw);
    let mut inv = JobConfig::new(CommandKind::Invariants);
    inv.a = Some("h".into());
    inv.r = Some(3);
    configs.push(inv);
    let mut group = JobConfig::new(CommandKind::Group);
    group.a = Some("h^2 - 2".into());
    group.classes = Some("order=1 omega=no\norder=2 omega=yes".into());
    configs.push(group);
    let mut st = JobConfig::new(CommandKind::Selftest);
    st.count = 1;
    configs.push(st);
    for cfg in configs {
        let report = run(&cfg).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report, "{text}");
    }
}

#[test]
fn binary_json_matches_schema() {
    let out = gwa(&["--json", "verify", "--a", "h^3", "--h0", "1", "--kind", "cohomology"]);
    assert!(out.status.success());
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.schema_version, gwa_cli::SCHEMA_VERSION);
    assert_eq!(report.reports[0].dims, [1, 0, 2, 2, 2]);
    assert_eq!(report.reports[1].dims, [1, 0, 2, 2, 2]);
    assert_eq!(report.agreement, Some(true));
    assert_eq!(report.stabilization.len(), 1);
}

#[test]
fn weyl_table() {
    let out = gwa(&["hh", "--a", "h", "--h0", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(n = 1, d = 0)"), "{text}");
    let row = text.lines().find(|l| l.starts_with("homology")).unwrap();
    let dims: Vec<&str> = row.split_whitespace().skip(2).collect();
    assert_eq!(dims, ["0", "0", "1", "0", "0"]);
}

#[test]
fn invariants_command() {
    let out = gwa(&["--json", "invariants", "--a", "h", "--h0", "1", "--r", "2"]);
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    let inv = report.invariants.unwrap();
    assert_eq!(inv.tilde_a, "4*H^2 + 2*H");
    assert!(inv.identity_holds);
    assert_eq!(inv.hh0, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(gwa(&["hh", "--a", "h^^"]).status.code(), Some(2));
    assert_eq!(gwa(&["hh", "--h0", "1"]).status.code(), Some(2));
    assert_eq!(gwa(&["hh", "--a", "5"]).status.code(), Some(3));
    assert_eq!(gwa(&["hh", "--a", "h", "--h0", "0"]).status.code(), Some(3));
    let group = gwa(&["group", "--a", "h^2 - 1", "--class", "order=1 omega=no", "--class", "order=2 omega=no"]);
    assert_eq!(group.status.code(), Some(3));
    let capped = gwa(&["hh", "--a", "h^3", "--source", "oracle", "--d-start", "2", "--d-max", "4"]);
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn dmax_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gwa"))
        .args(["coh", "--a", "h^2", "--source", "oracle", "--d-start", "2"])
        .env("GWA_DMAX", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_and_csv() {
    let path = std::env::temp_dir().join(format!("gwa-sweep-{}.txt", std::process::id()));
    std::fs::write(&path, "# polynomials\nh ; 1\nh^2 ; 1/2\n7\n").unwrap();
    let out = gwa(&["--csv", "hh", "--sweep", path.to_str().unwrap(), "--source", "both"]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(3));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[0][7], "0;0;1;0;0");
    assert_eq!(&rows[3][7], "1;0;1;1;1");
    assert_eq!(&rows[3][8], "true");
    assert!(!rows[4][9].is_empty());
}

#[test]
fn sweep_json() {
    let path = std::env::temp_dir().join(format!("gwa-sweep-json-{}.txt", std::process::id()));
    std::fs::write(&path, "h^2 - 1\nh^3 ; 2\n").unwrap();
    let out = gwa(&["--json", "coh", "--sweep", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert!(out.status.success());
    let outcomes: Vec<JobOutcome> = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<Vec<usize>> = outcomes.iter().map(|o| o.report.as_ref().unwrap().reports[0].dims.clone()).collect();
    assert_eq!(dims, [vec![1, 0, 1, 0, 0], vec![1, 0, 2, 2, 2]]);
}

#[test]
fn selftest_command() {
    let out = gwa(&["selftest", "--seed", "4", "--count", "1"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("all passed"));
}
