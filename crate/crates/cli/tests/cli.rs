use std::fs;
use std::process::{Command, Output};

fn ballmass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballmass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn number(o: &Output) -> f64 {
    stdout(o).trim().parse().unwrap()
}

#[test]
fn degree_zero_modified_kernel() {
    let o = ballmass(&["kernel", "--d", "2", "--mu", "0", "--lambda", "1", "--n", "0", "--x", "0.3,0.4", "--y", "0,0"]);
    assert!(o.status.success());
    assert!((number(&o) - 0.5).abs() < 1e-15);
}

#[test]
fn kernel_kinds_are_consistent() {
    let base =
        ["kernel", "--d", "3", "--mu", "0.5", "--lambda", "2", "--n", "6", "--x", "-0.2,0.3,0.1", "--y", "0.5,0,-0.5"];
    let run = |kind: &str| {
        let mut args = base.to_vec();
        args.extend(["--kind", kind]);
        number(&ballmass(&args))
    };
    let (c, m, d) = (run("classical"), run("modified"), run("difference"));
    assert!((c - m - d).abs() <= 1e-12 * c.abs());
    assert_eq!(number(&ballmass(&base)), m);
}

#[test]
fn eval_subcommands() {
    let o = ballmass(&["eval", "jacobi", "--alpha", "0", "--beta", "1", "--n", "1", "--t", "-1"]);
    assert_eq!(stdout(&o).trim(), "-2");
    let o = ballmass(&["eval", "uvarov", "--alpha", "0", "--beta", "0", "--mass", "1", "--n", "1", "--t", "1"]);
    assert!((number(&o) - 2.0 / 3.0).abs() < 1e-15);
    let o = ballmass(&["eval", "gegenbauer", "--delta", "1", "--k", "1", "--s", "0.35"]);
    assert!((number(&o) - 0.7).abs() < 1e-15);
    let o = ballmass(&["eval", "harmonic", "--k", "1", "--nu", "1", "--xi", "1,0"]);
    assert!((number(&o) - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn usage_and_parameter_errors_exit_2() {
    let cases: [&[&str]; 7] = [
        &["kernel", "--d", "2", "--mu", "0", "--n", "1", "--x", "1,1", "--y", "0,0"],
        &["kernel", "--d", "2", "--mu", "-1.5", "--n", "1", "--x", "0,0", "--y", "0,0"],
        &["kernel", "--d", "3", "--mu", "0", "--n", "1", "--x", "0,0", "--y", "0,0"],
        &["eval", "harmonic", "--k", "1", "--nu", "1", "--xi", "1,0,0,0"],
        &["verify", "--suite", "nonsense"],
        &["converge", "boundary", "--d", "2", "--mu", "0", "--lambda", "0", "--nmax", "500"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = ballmass(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn christoffel_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.txt");
    fs::write(&path, "# radius 0\n0 0\n0.6,0.8\n\n0.1 -0.2\n").unwrap();
    let o = ballmass(&[
        "christoffel",
        "--d",
        "2",
        "--mu",
        "0",
        "--lambda",
        "1",
        "--n",
        "0",
        "--points",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for l in &lines {
        let v: f64 = l.split_whitespace().last().unwrap().parse().unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }
    let o = ballmass(&[
        "christoffel",
        "--d",
        "2",
        "--mu",
        "0",
        "--lambda",
        "1",
        "--n",
        "0",
        "--x",
        "0.1,0.1",
        "--classical",
    ]);
    assert!((number(&o) - 1.0).abs() < 1e-14);
}

#[test]
fn boundary_sweep_writes_stable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = ballmass(&[
            "converge",
            "boundary",
            "--d",
            "2",
            "--mu",
            "0",
            "--lambda",
            "1",
            "--nmax",
            "10000",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,d,mu,lambda,r,ratio,target,abs_err,rel_err");
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[0], "10000");
    assert!(last[8].parse::<f64>().unwrap() < 0.05);
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn failing_tolerance_exits_1() {
    let o = ballmass(&[
        "converge",
        "boundary",
        "--d",
        "2",
        "--mu",
        "0",
        "--lambda",
        "1",
        "--schedule",
        "50,100",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("  n"));
}

#[test]
fn verify_uvarov_suite() {
    let o = ballmass(&["verify", "--suite", "uvarov", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all 30 checks passed"));
    let o = ballmass(&["verify", "--suite", "jacobi", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
}
