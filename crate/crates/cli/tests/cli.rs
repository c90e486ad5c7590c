use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hawksteer::hawking::pipeline_report;
use hawksteer::{Pair, Params};

const GOLDEN_ARGS: [&str; 15] = [
    "sweep",
    "--omega",
    "1",
    "--t-min",
    "0.01",
    "--t-max",
    "10",
    "--steps",
    "50",
    "--grid",
    "linear",
    "--pairs",
    "AB,ABbar,BBbar",
    "--measures",
    "both",
];

fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/sweep_linear_50.csv")
}

fn hawksteer(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hawksteer"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("HAWKSTEER_THREADS", n),
        None => cmd.env_remove("HAWKSTEER_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_sweep_matches() {
    let out = hawksteer(&GOLDEN_ARGS, None);
    assert!(out.status.success());
    assert!(out.stderr.is_empty());
    let golden = std::fs::read_to_string(golden_path()).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn golden_values_agree_with_matrix_pipeline() {
    let golden = std::fs::read_to_string(golden_path()).unwrap();
    let mut lines = golden.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 3 + 21);
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let p = Params::new(cells[0], 1.0).unwrap();
        for (k, pair) in Pair::ALL.into_iter().enumerate() {
            let v = pipeline_report(&p, pair).unwrap().values();
            // values(): i_ab, i_ba, s_ab, s_ba, s_delta, t_ab, t_ba, t_delta, concurrence
            let want = [v[2], v[3], v[4], v[5], v[6], v[7], v[8]];
            for (j, w) in want.iter().enumerate() {
                let got = cells[3 + 7 * k + j];
                assert!((got - w).abs() <= 1e-10, "{} at T={}: {got} vs {w}", header[3 + 7 * k + j], cells[0]);
            }
        }
    }
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let one = hawksteer(&GOLDEN_ARGS, Some("1"));
    let eight = hawksteer(&GOLDEN_ARGS, Some("8"));
    let auto = hawksteer(&GOLDEN_ARGS, Some("0"));
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(one.stdout, auto.stdout);
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = hawksteer(&["sweep", "--pairs", "BBbar", "--output", csv.to_str().unwrap()], None);
    assert!(out.status.success() && out.stdout.is_empty());
    let mut svgs = Vec::new();
    for k in 0..2 {
        let svg = dir.path().join(format!("fig3_{k}.svg"));
        let o = hawksteer(&["plot", csv.to_str().unwrap(), "--output", svg.to_str().unwrap(), "--panel", "fig3"], None);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        svgs.push(std::fs::read(svg).unwrap());
    }
    assert_eq!(svgs[0], svgs[1]);
    let text = String::from_utf8(svgs[0].clone()).unwrap();
    assert!(text.starts_with("<svg") && text.contains("T/ω"));
}

#[test]
fn plot_names_missing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ab.csv");
    hawksteer(&["sweep", "--pairs", "AB", "--steps", "5", "-o", csv.to_str().unwrap()], None);
    let svg = dir.path().join("x.svg");
    let o = hawksteer(&["plot", csv.to_str().unwrap(), "-o", svg.to_str().unwrap(), "--panel", "fig2"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ABbar"));
    assert!(o.stdout.is_empty());
    assert!(!svg.exists());
}

#[test]
fn json_and_csv_carry_the_same_values() {
    let args =
        ["sweep", "--t-min", "0", "--t-max", "4", "--steps", "17", "--pairs", "ABbar,BBbar", "--measures", "ent"];
    let csv = stdout(&hawksteer(&args, None));
    let json_args: Vec<&str> = args.iter().copied().chain(["--format", "json"]).collect();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&hawksteer(&json_args, None))).unwrap();
    let records = doc["records"].as_array().unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(records) {
        let obj = rec.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut names = header.clone();
        keys.sort_unstable();
        names.sort_unstable();
        assert_eq!(keys, names);
        for (name, cell) in header.iter().zip(row.split(',')) {
            match obj[*name].as_f64() {
                Some(x) => assert_eq!(cell.parse::<f64>().unwrap(), x, "{name}"),
                None => {
                    assert!(obj[*name].is_null());
                    assert_eq!(cell, "", "{name}");
                }
            }
        }
    }
}

#[test]
fn usage_errors_exit_nonzero_with_stderr_only() {
    for args in [
        vec!["monogamy", "--t", "-1"],
        vec!["sweep", "--t-min", "0", "--grid", "log"],
        vec!["sweep", "--t-min", "5", "--t-max", "1"],
        vec!["sweep", "--steps", "1"],
        vec!["sweep", "--pairs", "AC"],
        vec!["critical", "--omega", "-2"],
    ] {
        let o = hawksteer(&args, None);
        assert!(!o.status.success(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = hawksteer(&GOLDEN_ARGS, Some("many"));
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn monogamy_report() {
    let o = hawksteer(&["monogamy", "--t", "1,5,100"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("pass").count(), 3);
    let o = hawksteer(&["monogamy", "--t", "0.5", "--format", "csv"], None);
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().ends_with(",pass"));
    let o = hawksteer(&["monogamy", "--t", "0.5"], None);
    assert_eq!(stdout(&o).matches("n/a (T <= omega/ln(sqrt(3)))").count(), 2);
}

#[test]
fn critical_scales_with_omega() {
    let read = |omega: &str| -> Vec<f64> {
        let o = hawksteer(&["critical", "--omega", omega, "--format", "json"], None);
        assert!(o.status.success());
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        doc["rows"].as_array().unwrap().iter().map(|r| r["numeric"].as_f64().unwrap()).collect()
    };
    let (one, two) = (read("1"), read("2"));
    assert_eq!(one.len(), 5);
    for (a, b) in one.iter().zip(&two) {
        assert!((2.0 * a - b).abs() <= 1e-9 * b, "{a} vs {b}");
    }
    let o = hawksteer(&["critical"], None);
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("t_birth_ent_abar_to_a")).unwrap();
    assert!(row.contains("1.820478453253675"));
}

#[test]
fn selfcheck_passes() {
    let o = hawksteer(&["selfcheck"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 of 8 checks passed"));
}
