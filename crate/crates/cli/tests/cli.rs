use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn regseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regseq"))
        .args(args)
        .env_remove("REGSEQ_DEFAULT_N")
        .output()
        .expect("spawn regseq")
}

fn json_out(args: &[&str]) -> Value {
    let out = regseq(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value, ptr: &str) -> f64 {
    v.pointer(ptr)
        .and_then(Value::as_f64)
        .unwrap_or_else(|| panic!("{ptr} in report"))
}

#[test]
fn analyze_gevrey_one() {
    let r = json_out(&["analyze", "--spec", "gevrey:alpha=1", "--n", "100000"]);
    assert!((num(&r, "/indices/omega/value") - 1.0).abs() < 5e-3);
    assert!((num(&r, "/gamma/value") - 1.0).abs() < 0.02);
    assert_eq!(r["proximate_order"]["agreement"], true);
    assert_eq!(r["truncation"], 100000);
}

#[test]
fn analyze_q_gevrey() {
    let r = json_out(&["analyze", "--spec", "qgevrey:q=2", "--n", "100000"]);
    assert_eq!(r["properties"]["mg"]["status"], "fails");
    assert!(r["properties"]["mg"]["witness"].is_object());
    assert_eq!(r["indices"]["omega"]["value"], "+inf");
}

#[test]
fn analyze_alternating_example() {
    let r = json_out(&["analyze", "--spec", "paper-example", "--n", "1000000"]);
    assert!((num(&r, "/indices/omega/value") - 1.5).abs() < 1e-2);
    let clusters = r["proximate_order"]["step_limit"]["clusters"]
        .as_array()
        .unwrap();
    let centers: Vec<f64> = clusters
        .iter()
        .map(|c| c["center"].as_f64().unwrap())
        .collect();
    assert_eq!(centers.len(), 2);
    assert!((centers[0] - 1.0).abs() < 1e-2 && (centers[1] - 2.0).abs() < 1e-2);
}

#[test]
fn default_truncation_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_regseq"))
        .args(["analyze", "--spec", "gevrey:alpha=2"])
        .env("REGSEQ_DEFAULT_N", "500")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["truncation"], 500);
}

#[test]
fn output_is_deterministic_and_timestamp_is_opt_in() {
    let args = [
        "analyze",
        "--spec",
        "gevrey-log:alpha=1,beta=2",
        "--n",
        "3000",
    ];
    let a = regseq(&args);
    let b = regseq(&args);
    assert_eq!(a.stdout, b.stdout);
    let plain: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(plain["header"].get("generated_at_unix").is_none());
    let stamped = json_out(&[
        "analyze",
        "--spec",
        "gevrey:alpha=1",
        "--n",
        "100",
        "--timestamp",
    ]);
    assert!(stamped["header"]["generated_at_unix"].as_u64().unwrap() > 0);
}

#[test]
fn verdicts_do_not_change_exit_code() {
    // not strongly regular, still a completed analysis
    let out = regseq(&["analyze", "--spec", "qgevrey:q=3", "--n", "200"]);
    assert!(out.status.success());
}

#[test]
fn bad_inputs_fail() {
    for args in [
        vec!["analyze", "--spec", "nonsense", "--n", "100"],
        vec!["analyze", "--spec", "gevrey:alpha=oops", "--n", "100"],
        vec!["analyze", "--spec", "gevrey:alpha=1", "--n", "10"],
        vec!["plot-data", "--spec", "gevrey:alpha=1", "--n", "10"],
    ] {
        let out = regseq(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let target = blocker.join("report.json");
    let out = regseq(&[
        "analyze",
        "--spec",
        "gevrey:alpha=1",
        "--n",
        "100",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
}

#[test]
fn writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = regseq(&[
        "analyze",
        "--spec",
        "gevrey:alpha=1",
        "--n",
        "1000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["fixture"], "gevrey:alpha=1");
}

#[test]
fn compare_constant_ratio_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.csv");
    let mut s = String::from("p,m_p\n");
    for p in 0..10_000 {
        s.push_str(&format!("{p},{}\n", 3.0 * (p + 1) as f64));
    }
    std::fs::write(&path, s).unwrap();
    let spec_b = format!("file:{}", path.display());
    let r = json_out(&[
        "compare",
        "--spec",
        "gevrey:alpha=1",
        "--spec-b",
        &spec_b,
        "--n",
        "10000",
    ]);
    assert_eq!(r["quotient_equivalent"]["status"], "holds");
    assert!((num(&r, "/quotient_equivalent/constant") - 3f64.ln()).abs() < 1e-9);
    assert_eq!(r["sequence_equivalent"]["status"], "holds");
    assert_eq!(r["implication_holds"], true);

    let out = regseq(&[
        "compare",
        "--spec",
        "gevrey:alpha=1",
        "--spec-b",
        &spec_b,
        "--n",
        "20000",
    ]);
    assert!(!out.status.success());
}

#[test]
fn compare_different_orders() {
    let r = json_out(&[
        "compare",
        "--spec",
        "gevrey:alpha=1",
        "--spec-b",
        "gevrey:alpha=2",
        "--n",
        "10000",
    ]);
    assert_eq!(r["quotient_equivalent"]["status"], "fails");
    assert_eq!(r["sequence_equivalent"]["status"], "fails");
}

#[test]
fn compare_log_factor() {
    let r = json_out(&[
        "compare",
        "--spec",
        "gevrey:alpha=1",
        "--spec-b",
        "gevrey-log:alpha=1,beta=1",
        "--n",
        "100000",
    ]);
    assert_eq!(r["quotient_equivalent"]["status"], "fails");
    let notes: Vec<&str> = r["notes"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(Value::as_str)
        .collect();
    assert!(notes.iter().any(|n| n.contains("omega")), "{notes:?}");
}

fn tsv_rows(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .skip(2)
        .map(|l| {
            let v: Vec<f64> = l.split('\t').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

fn plot(spec: &str, n: &str) -> (String, Vec<[f64; 3]>) {
    let out = regseq(&["plot-data", "--spec", spec, "--n", n]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = tsv_rows(&text);
    (text, rows)
}

#[test]
fn plot_gevrey_two_tail() {
    let (text, rows) = plot("gevrey:alpha=2", "10000");
    assert!(text.starts_with("# fixture=gevrey:alpha=2\ttruncation=10000\nlog_t\tM\td_M\n"));
    assert!((rows.last().unwrap()[2] - 0.5).abs() < 0.05);
}

#[test]
fn plot_short_is_monotone() {
    let (_, rows) = plot("gevrey-log:alpha=1,beta=2", "64");
    assert!(rows.len() > 5);
    assert!(rows
        .windows(2)
        .all(|w| w[1][1] >= w[0][1] && w[1][0] > w[0][0]));
}

#[test]
fn plot_alternating_tail() {
    let (_, rows) = plot("paper-example", "100000");
    let tail = &rows[rows.len() - 20..];
    assert!(tail.iter().all(|r| (r[2] - 2.0 / 3.0).abs() < 0.05));
}

fn corpus(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["corpus", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    regseq(&args)
}

#[test]
fn corpus_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = corpus(dir.path(), &[]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let idx: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("index.json")).unwrap())
            .unwrap();
    let names: Vec<&str> = idx["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["fixture"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "gevrey-1",
            "gevrey-1.5",
            "gevrey-2",
            "gevrey-log-1-2",
            "qgevrey-2",
            "paper-example"
        ]
    );
    for n in names {
        assert!(dir.path().join(format!("{n}.json")).exists());
    }
}

#[test]
fn corpus_assertions() {
    let dir = tempfile::tempdir().unwrap();
    let out = corpus(dir.path(), &["--assert"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let file = dir.path().join("extra.json");
    std::fs::write(
        &file,
        r#"[{"fixture": "gevrey-2", "path": "/indices/omega/value", "approx": 2.0, "tol": 0.005},
            {"fixture": "qgevrey-2", "path": "/properties/mg/status", "equals": "holds"}]"#,
    )
    .unwrap();
    let out = corpus(
        &dir.path().join("run2"),
        &["--assert", file.to_str().unwrap(), "--n", "5000"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("qgevrey-2"));
}

#[test]
fn corpus_unwritable_dir_leaves_no_index() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    let target = blocker.join("out");
    let out = corpus(&target, &["--n", "200"]);
    assert!(!out.status.success());
    assert!(!target.join("index.json").exists());
}
