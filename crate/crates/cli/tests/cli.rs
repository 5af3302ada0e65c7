use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const PATH_FILTRATION: &str = "0 1\n0 2\n1 3\n1 4\n1 1 3\n1 3 4\n1 4 2\n";

const SQUARE: &str = "x,y,q\n0,0,1\n1,0,1\n1,1,1\n0,1,1\n";

const PQR: &str = "\
REMARK a small made-up fragment
ATOM      1  N   GLY A   1      -0.512   1.204   0.310 -0.4157 1.8240
ATOM      2  H   GLY A   1      -1.321   1.811   0.227  0.2719 0.6000
ATOM      3  CA  GLY A   1       0.803   1.781   0.113  0.0213 1.9080
ATOM      4  C   GLY A   1       1.902   0.793   0.491  0.5973 1.9080
ATOM      5  O   GLY A   1       1.683  -0.398   0.719 -0.5679 1.6612
ATOM      6  N   GLY A   2       3.120   1.305   0.562 -0.4157 1.8240
ATOM      7  CA  GLY A   2       4.281   0.498   0.906  0.3213 1.9080
ATOM      8  C   GLY A   2       5.502   1.337   1.251  0.5973 1.9080
END
";

fn psl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psl"))
        .args(args)
        .output()
        .expect("run psl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn path_filtration_reports_one_class_and_two_thirds() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "path.txt", PATH_FILTRATION);
    let out = psl(&["--input", &input, "--sheaf", "constant", "--q", "0", "--tgrid", "0", "--p", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(row[..5], ["0", "0", "1", "2", "1"]);
    assert!(row[5].starts_with("0.666666666666666"), "{text}");
}

#[test]
fn missing_input_fails_without_output() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("out.csv");
    let out = psl(&[
        "--input",
        s(&dir.path().join("nope.csv")),
        "--rmax",
        "1",
        "--out-csv",
        s(&csv),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.csv"));
    assert!(!csv.exists());
}

#[test]
fn bad_rows_name_file_and_line() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.csv", "x,y,q\n0,0,1\n1,0,0\n");
    let csv = dir.path().join("out.csv");
    let out = psl(&["--input", &input, "--rmax", "1", "--out-csv", s(&csv)]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv") && err.contains("line 3"), "{err}");
    assert!(!csv.exists());
}

#[test]
fn square_sweep_sees_the_loop() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.csv", SQUARE);
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("plots");
    let out = psl(&[
        "--input", &input, "--rmax", "2", "--dmax", "2", "--sheaf", "labeled", "--weight", "default",
        "--q", "0,1", "--p", "0", "--tgrid", "0:1.6:33", "--out-csv", s(&csv), "--out-svg", s(&svg),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,t,p,n,betti,lambda_min"));
    let mut seen = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f[0] != "1" {
            continue;
        }
        let t: f64 = f[1].parse().unwrap();
        let betti: usize = f[4].parse().unwrap();
        let expect = usize::from((1.0..2f64.sqrt()).contains(&t));
        assert_eq!(betti, expect, "t = {t}");
        seen += 1;
    }
    assert_eq!(seen, 33);
    for name in ["betti_q0.svg", "betti_q1.svg", "lambda_q0.svg", "lambda_q1.svg"] {
        assert!(fs::read_to_string(svg.join(name)).unwrap().contains("<svg"));
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.csv", SQUARE);
    let run = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let svg = dir.path().join(tag);
        let spectra = dir.path().join(format!("{tag}_spectra.csv"));
        let out = psl(&[
            "--input", &input, "--tgrid", "0:1.6:17", "--p", "0,0.2", "--out-csv", s(&csv),
            "--out-svg", s(&svg), "--dump-spectra", s(&spectra),
        ]);
        assert!(out.status.success());
        (
            fs::read(csv).unwrap(),
            fs::read(svg.join("lambda_q0.svg")).unwrap(),
            fs::read(spectra).unwrap(),
        )
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn constant_sheaf_is_all_ones_labeled_with_unit_weight() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.csv", SQUARE);
    let run = |sheaf: &str, weight: &str| {
        let csv = dir.path().join(format!("{sheaf}.csv"));
        let out = psl(&[
            "--input", &input, "--tgrid", "0:1.6:17", "--p", "0,0.2", "--sheaf", sheaf, "--weight",
            weight, "--out-csv", s(&csv),
        ]);
        assert!(out.status.success());
        fs::read(csv).unwrap()
    };
    assert_eq!(run("constant", "default"), run("labeled", "one"));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.csv", SQUARE);
    let csv = dir.path().join("out.csv");
    let config = write(
        &dir,
        "run.toml",
        &format!(
            "input = {input:?}\nq = [1]\ntgrid = [1.2]\np = [0.0]\nout_csv = {:?}\n",
            s(&csv)
        ),
    );
    let out = psl(&["--config", &config, "--p", "0.2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(2), Some("0.20000000000000001"));
    assert_eq!(text.lines().count(), 2);

    let bad = write(&dir, "bad.toml", "nonsense = true\n");
    assert_eq!(psl(&["--config", &bad]).status.code(), Some(2));
}

#[test]
fn imported_filtration_with_points_and_labels() {
    let dir = TempDir::new().unwrap();
    let filt = write(&dir, "square.txt", "0 0\n0 1\n0 2\n0 3\n1 0 1\n1 1 2\n1 2 3\n1 0 3\n");
    let points = write(&dir, "pts.csv", SQUARE);
    let out = psl(&["--input", &filt, "--q", "1", "--tgrid", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = psl(&["--input", &filt, "--points", &points, "--q", "1", "--tgrid", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let row: Vec<String> = stdout(&out)
        .lines()
        .last()
        .unwrap()
        .split_whitespace()
        .map(String::from)
        .collect();
    assert_eq!(row[4], "1");
}

#[test]
fn pqr_runs_end_to_end_with_scaled_charges() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "frag.pqr", PQR);
    let csv = dir.path().join("out.csv");
    let spectra = dir.path().join("spectra.csv");
    let out = psl(&[
        "--input", &input, "--scale-charges", "--rmax", "3", "--tgrid", "0:2.5:6", "--p", "0,0.2",
        "--out-csv", s(&csv), "--dump-spectra", s(&spectra),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("labels scaled by"));
    let text = fs::read_to_string(&spectra).unwrap();
    let eigs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(!eigs.is_empty());
    assert!(eigs.iter().all(|e| e.is_finite()));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1 + 2 * 6 * 2);

    let out = psl(&["--input", &input, "--drop-hydrogens", "--rmax", "3", "--tgrid", "0", "--q", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().last().unwrap().split_whitespace().nth(3) == Some("7"));
}

#[test]
fn sign_flip_report_lists_every_vertex() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.csv", SQUARE);
    let out = psl(&["--input", &input, "--tgrid", "1,1.5", "--sign-flip-report"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("vertex ").count(), 5);
    assert!(text.contains("largest: vertex"));
    let out = psl(&["--input", &input, "--tgrid", "1", "--sheaf", "constant", "--sign-flip-report"]);
    assert_eq!(out.status.code(), Some(2));
}
