use std::fs;
use std::process::{Command, Output};

fn inav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inav")).args(args).output().expect("spawn inav")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn tables_text() {
    let o = inav(&["tables"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("FIterTrue (l=8)"));
    assert!(s.contains("-697/360"));
    assert!(s.contains("24079/360"));
    assert!(s.contains("Enhanced attitude  O(t^6)"));
}

#[test]
fn tables_csv_and_random_trials() {
    let o = inav(&["tables", "--csv", "--random-trials", "12", "--seed", "7", "--axis", "z"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert_eq!(s.matches("algorithm,t,t^2,t^3,t^4,t^5,t^6,t^7,t^8").count(), 2);
    assert!(s.contains("12/12 follow the order pattern"));
    // same seed, same output
    assert_eq!(s, stdout(&inav(&["tables", "--csv", "--random-trials", "12", "--seed", "7", "--axis", "z"])));
}

#[test]
fn run_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = inav(&[
        "run", "--fc", "0.5", "--samples", "2", "--variants", "typical,enhanced", "--duration", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("moment matching"));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,algorithm,att_err_rad,vel_err_mps,pos_err_m,we_pos_err_m"));
    assert_eq!(lines.count(), 2 * 50);
    assert!(stdout(&o).contains("typical"));
}

#[test]
fn nonconvergence_sets_exit_code() {
    let args = ["run", "--variants", "fiter", "--duration", "0.2"];
    let o = inav(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--allow-nonconverged"));
    let mut allowed = args.to_vec();
    allowed.push("--allow-nonconverged");
    assert!(inav(&allowed).status.success());
}

#[test]
fn single_sample_has_no_fit_note() {
    let o = inav(&["run", "--samples", "1", "--variants", "typical", "--duration", "0.1"]);
    assert!(o.status.success());
    assert!(!stderr(&o).contains("moment matching"));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.cfg");
    fs::write(&cfg, "# test scenario\nfc = 0.2\nsamples = 4\nduration = 2\nvariants = typical, vpif\n").unwrap();
    let out = dir.path().join("run.csv");
    let o = inav(&["run", "--config", cfg.to_str().unwrap(), "--duration", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    // 25 updates per second with four samples at 100 Hz, two algorithms
    assert_eq!(csv.lines().count(), 1 + 2 * 25);
    assert!(csv.contains(",vpif,"));
    assert!(stdout(&o).contains("f_c = 0.2 Hz, N = 4"));
}

#[test]
fn bad_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "fc = 1\nsamples = two\n").unwrap();
    let o = inav(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn unknown_variant_is_an_error() {
    let o = inav(&["run", "--variants", "typical,bogus", "--duration", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn sweep_rows_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = inav(&[
        "sweep", "--fc-min", "0.1", "--fc-max", "10", "--points", "3", "--variants", "typical,enhanced",
        "--duration", "1", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(csv.lines().next(), Some("fc_hz,rel_freq,algorithm,max_att_err_rad,max_vel_err_mps,max_pos_err_m,max_we_pos_err_m"));
    assert_eq!(rows.len(), 6);
    let fcs: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(fcs.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(rows[0][2], "enhanced");
    assert_eq!(rows[1][2], "typical");
    assert!((fcs[2] - 1.0).abs() < 1e-12);
}

#[test]
fn sweep_rejects_bad_range() {
    let o = inav(&["sweep", "--fc-min", "5", "--fc-max", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
