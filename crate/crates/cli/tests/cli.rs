use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fwloc");

fn fwloc(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run fwloc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn numbers(s: &str) -> Vec<f64> {
    s.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

#[test]
fn project_on_axis() {
    let o = fwloc(&["project", "0", "0", "--pose.tilt_deg", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "320.000 240.000\n");
}

#[test]
fn project_default_scenario() {
    let o = fwloc(&["project", "4", "3"]);
    assert!(o.status.success());
    let v = numbers(&stdout(&o));
    assert!((v[0] - 147.0).abs() < 0.5 && (v[1] - 423.7).abs() < 0.5);
}

#[test]
fn project_out_of_view_exits_2() {
    let o = fwloc(&[
        "project",
        "1000",
        "0",
        "--pose.tilt_deg",
        "0",
        "--pose.height_m",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field of view"));
}

#[test]
fn localize_examples() {
    let o = fwloc(&["localize", "320", "240", "--pose.tilt_deg", "0"]);
    assert_eq!(stdout(&o), "0.0000 0.0000\n");

    let o = fwloc(&["localize", "147.0", "423.7"]);
    let v = numbers(&stdout(&o));
    assert!((v[0] - 4.0).abs() < 0.01 && (v[1] - 3.0).abs() < 0.01);

    let o = fwloc(&["localize", "-5", "240"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(&path, "[pose]\ntilt_deg = 0\nheight_m = 20\n").unwrap();
    let p = path.to_str().unwrap();

    let o = fwloc(&["--config", p, "localize", "508", "240"]);
    let from_file = numbers(&stdout(&o));
    let o = fwloc(&[
        "--config",
        p,
        "--pose.height_m",
        "10",
        "localize",
        "508",
        "240",
    ]);
    let from_flag = numbers(&stdout(&o));
    assert!((from_file[0] - 2.0 * from_flag[0]).abs() < 1e-3);
}

#[test]
fn malformed_config_names_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "[noise]\ntilt_std_deg = \"wide\"\n").unwrap();
    let o = fwloc(&["--config", path.to_str().unwrap(), "project", "0", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tilt_std_deg"), "{}", stderr(&o));
}

#[test]
fn missing_config_file() {
    let o = fwloc(&["--config", "/definitely/not/here.toml", "project", "0", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_error_exits_1() {
    assert_eq!(fwloc(&["project", "1"]).status.code(), Some(1));
    assert_eq!(fwloc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(fwloc(&["--help"]).status.code(), Some(0));
}

#[test]
fn simulate_single_noiseless_trial() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let o = fwloc(&[
        "simulate",
        "--trials",
        "1",
        "--no-noise",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "trial,noisy_tilt_deg,noisy_height_m,raw_x,raw_y,filt_x,filt_y,status"
    );
    let cols: Vec<&str> = lines[1].split(',').collect();
    for (i, truth) in [(3, 4.0), (4, 3.0), (5, 4.0), (6, 3.0)] {
        assert!((cols[i].parse::<f64>().unwrap() - truth).abs() < 1e-6);
    }
    assert_eq!(cols[7], "ok");
}

#[test]
fn simulate_defaults_write_90_rows_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let oa = fwloc(&["--seed", "1", "simulate", "--out", a.to_str().unwrap()]);
    let ob = fwloc(&["--seed", "1", "simulate", "--out", b.to_str().unwrap()]);
    assert!(oa.status.success() && ob.status.success());
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(bytes).unwrap().lines().count(), 91);
    assert_eq!(oa.stdout, ob.stdout);
    let summary = stdout(&oa);
    assert!(summary.contains("Mean (original)") && summary.contains("Var. (filtering)"));
}

#[test]
fn simulate_to_stdout() {
    let o = fwloc(&["simulate", "--trials", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stderr(&o).contains("failures: 0 of 5"));
}

#[test]
fn simulate_unwritable_output() {
    let o = fwloc(&["simulate", "--out", "/nonexistent-dir/x.csv"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn summary_shows_variance_reduction_over_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let reduced = (0..20)
        .filter(|seed| {
            let o = fwloc(&[
                "--seed",
                &seed.to_string(),
                "simulate",
                "--out",
                out.to_str().unwrap(),
            ]);
            let text = stdout(&o);
            text.lines()
                .filter(|l| l.starts_with("X / m") || l.starts_with("Y / m"))
                .all(|l| {
                    let v = numbers(&l[5..]);
                    v[3] < v[2]
                })
        })
        .count();
    assert!(reduced >= 19, "{reduced} of 20");
}
