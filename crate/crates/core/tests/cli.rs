use std::process::{Command, Output};

fn qft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qft"))
        .args(args)
        .output()
        .expect("spawn qft")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn transform_csv_shape() {
    let o = qft(&[
        "transform",
        "--fn",
        "indicator:0,1",
        "--k",
        "-2:2:5",
        "--q",
        "1:1.5:3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows = data_rows(&out);
    assert_eq!(rows[0], "k,q,re_F,im_F,err_est");
    assert_eq!(rows.len(), 3 * 5 + 1);
    assert!(out.starts_with("# tool: qfourier "));
    assert!(out.contains("# config: "));
    assert!(out.contains("# tolerances: "));
    assert!(out.contains("# function: indicator:0,1 sha256="));
    // F(0,1) = 1 for the unit indicator
    let zero: Vec<f64> = rows
        .iter()
        .find(|r| r.starts_with("0.0,1.0,"))
        .unwrap()
        .split(',')
        .map(|t| t.parse().unwrap())
        .collect();
    assert!((zero[2] - 1.0).abs() < 1e-12 && zero[3].abs() < 1e-12);
}

#[test]
fn sweep_json_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.json");
    let o = qft(&[
        "sweep",
        "--fn",
        "powerlaw-hilhorst:1,2,1.5",
        "--k",
        "-1:1:3",
        "--q",
        "1.2:1.4:2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.len() < 200, "notes only on stdout");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["surface"]["k_grid"].as_array().unwrap().len(), 3);
    assert_eq!(v["surface"]["q_grid"].as_array().unwrap().len(), 2);
    assert!(v["provenance"]["tool"]
        .as_str()
        .unwrap()
        .starts_with("qfourier"));
    assert_eq!(v["provenance"]["config"]["command"], "sweep");
}

#[test]
fn counterexample_report() {
    let o = qft(&[
        "counterexample",
        "--format",
        "json",
        "--k",
        "-5:5:41",
        "--q",
        "1.2:1.5:2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    let at = |q: f64| {
        verdicts
            .iter()
            .find(|p| p["q"].as_f64() == Some(q))
            .unwrap()
    };
    assert_eq!(at(1.5)["verdict"], "degenerate");
    assert!(at(1.5)["max_gap"].as_f64().unwrap() < 1e-6);
    assert_eq!(at(1.2)["verdict"], "separated");
    assert!(at(1.2)["max_gap"].as_f64().unwrap() > 1e-3);
    assert_eq!(v["fixtures"]["q_star"], 1.5);
}

#[test]
fn invert_reports_roundtrip_error() {
    let o = qft(&[
        "invert",
        "--fn",
        "indicator:0,1",
        "--k",
        "-5:5:101",
        "--x",
        "0:1:11",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("# roundtrip_error: "));
    let rows = data_rows(&out);
    assert_eq!(rows[0], "x,f,f_rec,im_rec,err_est");
    assert_eq!(rows.len(), 12);
    assert!(stderr(&o).contains("roundtrip_error: "));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "transform",
        "--fn",
        "qgauss:1.5,1,3",
        "--k",
        "-3:3:13",
        "--q",
        "1:1.8:5",
    ];
    let (a, b) = (qft(&args), qft(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2_with_json() {
    for args in [
        &["transform", "--fn", "indicator:0,1", "--q", "1:2.5:3"][..],
        &["transform", "--fn", "indicator:0,1", "--k", "1:2"],
        &["transform", "--fn", "triangle:0,1"],
        &["transform"],
        &["invert", "--eps", "1e-3,1e-2"],
    ] {
        let o = qft(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let v: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage", "{args:?}");
        assert!(v["error"]["field"].is_string(), "{args:?}");
    }
    let o = qft(&["transform", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn computation_error_exits_1() {
    // the indicator slice is far from zero at |k| = 5, so a strict edge check trips
    let o = qft(&["invert", "--k", "-5:5:51", "--edge-threshold", "1e-6"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(v["error"]["kind"], "truncation");
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "fn = \"indicator:0,1\"\nk = \"-1:1:3\"\nq = \"1:1.2:2\"\n",
    )
    .unwrap();
    let o = qft(&["transform", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(data_rows(&stdout(&o)).len(), 2 * 3 + 1);
    let o = qft(&[
        "transform",
        "--config",
        cfg.to_str().unwrap(),
        "--k",
        "-1:1:5",
    ]);
    assert_eq!(data_rows(&stdout(&o)).len(), 2 * 5 + 1);
}

#[test]
fn selfcheck_passes() {
    let o = qft(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stderr(&o).lines().all(|l| l.starts_with("PASS")),
        "{}",
        stderr(&o)
    );
}
