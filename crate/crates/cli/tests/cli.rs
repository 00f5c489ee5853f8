use std::process::{Command, Output};

fn qwalk(args: &[&str]) -> Output {
    qwalk_env(args, &[])
}

fn qwalk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qwalk"));
    cmd.args(args).env_remove("QWALK_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("run qwalk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

/// `peak p_a = <value> at t = <time> ...`
fn summary_peak(stderr: &str) -> (f64, f64) {
    let line = stderr.lines().find(|l| l.starts_with("peak p_a")).expect("summary line");
    let words: Vec<&str> = line.split_whitespace().collect();
    (words[7].parse().unwrap(), words[3].parse().unwrap())
}

#[test]
fn simulate_wminus_csv() {
    let o = qwalk(&["simulate", "--n", "1200", "--alpha", "4", "--weight", "wminus"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header.join(","), "time,p_a,p_b,p_c,p_d,p_e,p_abc,p_ab");
    assert_eq!(rows.len(), 16_001);
    for r in &rows {
        let total: f64 = r[1..6].iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((r[6] - (r[1] + r[2] + r[3])).abs() < 1e-15);
    }
    let (t, p) = summary_peak(&stderr(&o));
    assert!((t - 208.2).abs() < 0.01 * 208.2, "{t}");
    assert!(p > 0.8 && p < 0.85, "{p}");
}

#[test]
fn csv_values_round_trip() {
    let o = qwalk(&["simulate", "--n", "12", "--alpha", "1", "--weight", "1", "--t-max", "1", "--dt", "0.1"]);
    let text = stdout(&o);
    let second = text.lines().nth(2).unwrap();
    for field in second.split(',') {
        let x: f64 = field.parse().unwrap();
        assert_eq!(format!("{x:.16e}"), field);
    }
}

#[test]
fn full_and_reduced_engines_agree() {
    let common = ["simulate", "--n", "12", "--alpha", "-1.5", "--weight", "2.5", "--t-max", "30", "--dt", "0.05"];
    let full = qwalk(&[&common[..], &["--engine", "full"]].concat());
    let reduced = qwalk(&[&common[..], &["--engine", "reduced"]].concat());
    let (_, a) = parse_csv(&stdout(&full));
    let (_, b) = parse_csv(&stdout(&reduced));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        for (p, q) in x.iter().zip(y) {
            assert!((p - q).abs() < 1e-8);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("one.json"), dir.path().join("two.json")];
    for p in &paths {
        let o = qwalk(&[
            "simulate", "--n", "60", "--alpha", "4", "--weight", "wplus", "--stage2-weight", "1", "--format", "json",
            "--out", p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["metadata"]["config"]["weight"], 7.5);
    assert!(doc["metadata"]["summary"]["switch_time"].is_f64());
    assert_eq!(doc["time"].as_array().unwrap().len(), doc["p_abc"].as_array().unwrap().len());
}

#[test]
fn two_stage_wplus_at_fixed_switch() {
    let o = qwalk(&[
        "simulate", "--n", "1200", "--alpha", "4", "--weight", "wplus", "--stage2-weight", "1", "--stage2-rule",
        "at:113.1",
    ]);
    assert!(o.status.success());
    let (t, p) = summary_peak(&stderr(&o));
    assert!((p - 0.996).abs() < 0.005, "{p}");
    assert!((t - 159.7).abs() < 0.02 * 159.7, "{t}");
}

#[test]
fn negative_critical_weight_for_alpha_zero() {
    let boosted = qwalk(&["simulate", "--n", "1200", "--alpha", "0", "--weight", "-300"]);
    let flat = qwalk(&["simulate", "--n", "1200", "--alpha", "0", "--weight", "-250"]);
    let (_, p) = summary_peak(&stderr(&boosted));
    let (_, q) = summary_peak(&stderr(&flat));
    assert!(p > 0.8 && q < 0.6, "{p} {q}");
}

#[test]
fn config_errors_exit_2_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let cases: &[&[&str]] = &[
        &["simulate", "--n", "7", "--alpha", "4", "--weight", "1"],
        &["simulate", "--n", "1200", "--alpha", "2", "--weight", "wminus"],
        &["simulate", "--n", "12", "--alpha", "4", "--weight", "1", "--dt", "-1"],
        &["simulate", "--n", "12", "--alpha", "4", "--weight", "0"],
        &["simulate", "--n", "12", "--alpha", "4", "--weight", "1", "--stage2-rule", "sometime"],
    ];
    for args in cases {
        let o = qwalk(&[args, &["--out", out.to_str().unwrap()][..]].concat());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!out.exists());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0, "no temporary files left behind");
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("series.csv");
    let args = ["simulate", "--n", "60", "--alpha", "4", "--weight", "7.5", "--out", out.to_str().unwrap()];
    let bad = qwalk_env(&args, &[("QWALK_TOL", "minus one")]);
    assert_eq!(bad.status.code(), Some(2));
    // no eigendecomposition can meet this, so the run must fail numerically
    let strict = qwalk_env(&args, &[("QWALK_TOL", "1e-40")]);
    assert_eq!(strict.status.code(), Some(3), "{}", stderr(&strict));
    assert!(!out.exists());
    let loose = qwalk_env(&args, &[("QWALK_TOL", "1e-6")]);
    assert!(loose.status.success());
    assert!(out.exists());
}

#[test]
fn predict_reproduces_critical_weight_table() {
    let o = qwalk(&["predict", "--n", "1200"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let expected = [
        ("-5", "-120", "-600/7"),
        ("-4", "-150", "-100"),
        ("-3", "-200", "-120"),
        ("-2", "-300", "-150"),
        ("-1", "-600", "-200"),
        ("0", "undefined", "-300"),
        ("1", "600", "-600"),
        ("2", "300", "undefined"),
        ("3", "200", "600"),
        ("4", "150", "300"),
        ("5", "120", "200"),
    ];
    for (alpha, wp, wm) in expected {
        let row = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(alpha))
            .unwrap_or_else(|| panic!("row for alpha {alpha}"));
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols, vec![alpha, wp, wm]);
    }
}

#[test]
fn predict_json() {
    let o = qwalk(&["predict", "--n", "1200", "--alpha", "1,2.5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["critical_weights"].as_array().unwrap();
    assert_eq!(rows[0]["w_plus"], "600");
    assert_eq!(rows[0]["w_minus"], "-600");
    assert_eq!(rows[1]["w_plus_value"], 240.0);
    let algorithms = doc["algorithms"].as_array().unwrap();
    assert_eq!(algorithms.len(), 6);
    let two_stage = &algorithms[2];
    assert!((two_stage["success_probability"].as_f64().unwrap() - 0.996).abs() < 0.002);
}

#[test]
fn verify_spin_builtins_pass() {
    let fig2 = qwalk(&["verify-spin", "--graph", "fig2", "--alpha", "0.5", "--seed", "3"]);
    assert!(fig2.status.success(), "{}", stdout(&fig2));
    assert!(stdout(&fig2).trim_end().ends_with("PASS"));
    let barbell = qwalk(&["verify-spin", "--graph", "barbell:8,-2", "--alpha", "2", "--marked", "0"]);
    assert!(barbell.status.success(), "{}", stdout(&barbell));
}

#[test]
fn verify_spin_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "# triangle with a tail\n4 4\n0 1 1.5\n1 2 -0.5\n0 2 2\n2 3 0.25\n").unwrap();
    let o = qwalk(&["verify-spin", "--graph", path.to_str().unwrap(), "--alpha", "-1", "--gamma", "0.7", "--marked", "3", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(doc["hamiltonian_deviation"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn verify_spin_detects_perturbation() {
    let o = qwalk(&["verify-spin", "--graph", "fig2", "--alpha", "0.5", "--perturb", "1e-6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], false);
    let dev = doc["hamiltonian_deviation"].as_f64().unwrap();
    assert!(dev > 1e-7 && dev < 1e-5, "{dev}");
}

#[test]
fn verify_spin_rejects_oversize_graph() {
    let o = qwalk(&["verify-spin", "--graph", "barbell:16,1", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

fn sweep_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn sweep_finds_the_critical_weights() {
    let o = qwalk(&["sweep", "--n", "1200", "--alpha", "4", "--weight", "120,150,200,300,600,1200"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = sweep_rows(&stdout(&o));
    assert_eq!(rows.len(), 6);
    let boosted: Vec<f64> = rows
        .iter()
        .filter(|r| r[5].parse::<f64>().unwrap() > 0.7)
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert_eq!(boosted, vec![150.0, 300.0]);
    assert_eq!(rows[1][3], "plus");
    assert_eq!(rows[3][3], "minus");

    let o = qwalk(&["sweep", "--n", "1200", "--alpha", "-3", "--weight", "-120,-150,-200,-300,-600,-1200"]);
    let boosted: Vec<f64> = sweep_rows(&stdout(&o))
        .iter()
        .filter(|r| r[5].parse::<f64>().unwrap() > 0.7)
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert_eq!(boosted, vec![-120.0, -200.0]);
}

#[test]
fn sweep_order_and_single_point() {
    let o = qwalk(&["sweep", "--n", "60,12", "--alpha", "1..2", "--weight", "wplus,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let keys: Vec<(String, String)> = sweep_rows(&stdout(&o))
        .into_iter()
        .map(|r| (r[0].clone(), r[1].clone()))
        .collect();
    let n_order: Vec<&str> = keys.iter().map(|k| k.0.as_str()).collect();
    assert_eq!(n_order, ["60", "60", "60", "60", "12", "12", "12", "12"]);

    let one = qwalk(&["sweep", "--n", "12", "--alpha", "4", "--weight", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(doc["peak_p_a"].as_array().unwrap().len(), 1);
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--n", "60,120", "--alpha", "-2..4", "--weight", "1,wminus,3"];
    let o = qwalk(&args);
    // alpha = 2 has no w_-: a config error for the whole sweep
    assert_eq!(o.status.code(), Some(2));
    let args = ["sweep", "--n", "60,120", "--alpha", "-2..1", "--weight", "1,wminus,3"];
    let a = qwalk(&args);
    let b = qwalk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_lists_subcommands() {
    let o = qwalk(&["--help"]);
    let text = stdout(&o);
    for cmd in ["simulate", "predict", "verify-spin", "sweep"] {
        assert!(text.contains(cmd));
    }
}
