//! End-to-end checks of the `ipwidth` binary: exit-code contract, file
//! round-trips, and output shapes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ipwidth(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipwidth"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

const IDENTITY_IP: &str = "ip 1\nrows 3 cols 3\nb 2 0 5\nrow 1 0 0\nrow 0 1 0\nrow 0 0 1\n";
const INFEASIBLE_IP: &str = "ip 1\nrows 1 cols 1\nb 3\nrow 2\n";
const NEGATIVE_IP: &str = "ip 1\nrows 1 cols 2\nb 1\nrow 1 -1\n";

#[test]
fn help_is_available_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["solve", "reduce", "width", "check", "bench"] {
        let out = ipwidth(&[sub, "--help"], dir.path());
        assert!(out.status.success(), "{sub} --help failed");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn solve_exit_codes_follow_contract() {
    let dir = tempfile::tempdir().unwrap();
    let feasible = write(dir.path(), "id.ip", IDENTITY_IP);
    let infeasible = write(dir.path(), "odd.ip", INFEASIBLE_IP);
    let negative = write(dir.path(), "neg.ip", NEGATIVE_IP);
    let garbage = write(dir.path(), "bad.ip", "not an instance\n");

    let out = ipwidth(&["solve", "--instance", &feasible, "--method", "pathwidth"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("FEASIBLE\n"));
    assert!(stdout.contains("x 2 0 5"));

    let out = ipwidth(&["solve", "--instance", &infeasible, "--method", "box"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("INFEASIBLE"));

    let out = ipwidth(&["solve", "--instance", &negative, "--method", "pathwidth"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = ipwidth(&["solve", "--instance", &garbage, "--method", "pathwidth"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // Brute-force without a feasible cap-sized space.
    let wide = write(
        dir.path(),
        "wide.ip",
        &format!("ip 1\nrows 1 cols 30\nb 9\nrow{}\n", " 1".repeat(30)),
    );
    let out = ipwidth(&["solve", "--instance", &wide, "--method", "brute"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_writes_stage_stats() {
    let dir = tempfile::tempdir().unwrap();
    let feasible = write(dir.path(), "id.ip", IDENTITY_IP);
    let stats = dir.path().join("stats.csv");
    let out = ipwidth(
        &[
            "solve",
            "--instance",
            &feasible,
            "--method",
            "pathwidth",
            "--stats",
            stats.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let body = fs::read_to_string(&stats).unwrap();
    assert!(body.starts_with("stage,size,dim\n"));
    assert_eq!(body.lines().count(), 4);
}

#[test]
fn reduce_then_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "phi.cnf", "p cnf 3 3\n1 2 0\n-1 3 0\n-3 -2 0\n");
    let out_path = dir.path().join("phi.ip");

    for construction in ["pathwidth", "binary"] {
        let out = ipwidth(
            &[
                "reduce",
                "--cnf",
                &cnf,
                "--construction",
                construction,
                "--blocks",
                "2",
                "--out",
                out_path.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{construction} reduce failed");
        let text = fs::read_to_string(&out_path).unwrap();
        let inst = ipwidth_cli::format::parse_instance(&text).unwrap();
        assert_eq!(ipwidth_cli::format::write_instance(&inst), text);
        if construction == "binary" {
            assert!(inst.b().iter().all(|&v| v == 1));
            assert!((0..inst.rows()).all(|r| inst.row(r).iter().all(|&v| v == 0 || v == 1)));
        }

        let out = ipwidth(
            &["solve", "--instance", out_path.to_str().unwrap(), "--method", "pathwidth"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{construction} output should be feasible");
    }
}

#[test]
fn reduce_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let two_lit = write(dir.path(), "short.cnf", "p cnf 2 1\n1 2 0\n");
    let out_path = dir.path().join("out.ip");

    // eth requires three distinct literals per clause.
    let out = ipwidth(
        &["reduce", "--cnf", &two_lit, "--construction", "eth", "--out", out_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Blocked constructions require --blocks and at least two clauses.
    let out = ipwidth(
        &["reduce", "--cnf", &two_lit, "--construction", "pathwidth", "--out", out_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = ipwidth(
        &[
            "reduce",
            "--cnf",
            &two_lit,
            "--construction",
            "pathwidth",
            "--blocks",
            "2",
            "--out",
            out_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "single-clause formulas are rejected");
}

#[test]
fn width_reports_profiles_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write(dir.path(), "id.ip", IDENTITY_IP);
    let out = ipwidth(&["width", "--instance", &identity, "--ordering", "natural"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("width 1\ncuts 0 0\n"), "got {stdout:?}");

    // The bidiagonal ones matrix has width 2 under exhaustive search.
    let bidiag = write(
        dir.path(),
        "bidiag.ip",
        "ip 1\nrows 4 cols 5\nb 1 1 1 1\nrow 1 1 0 0 0\nrow 0 1 1 0 0\nrow 0 0 1 1 0\nrow 0 0 0 1 1\n",
    );
    let out = ipwidth(&["width", "--instance", &bidiag, "--ordering", "optimal"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("width 2\n"), "got {stdout:?}");
    assert!(stdout.contains("\norder "));

    // No ordering attached: `given` is an error.
    let out = ipwidth(&["width", "--instance", &bidiag, "--ordering", "given"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // Optimal search is limited to nine columns.
    let wide = write(
        dir.path(),
        "wide.ip",
        &format!("ip 1\nrows 1 cols 10\nb 1\nrow{}\n", " 1".repeat(10)),
    );
    let out = ipwidth(&["width", "--instance", &wide, "--ordering", "optimal"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_agrees_on_both_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let sat = write(dir.path(), "sat.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    let unsat = write(dir.path(), "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");

    let out = ipwidth(&["check", "--cnf", &sat, "--construction", "pathwidth", "--blocks", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("sat SATISFIABLE"));
    assert!(stdout.contains("ip FEASIBLE"));
    assert!(stdout.contains("witness verified"));
    assert!(stdout.trim_end().ends_with("AGREE"));

    let out = ipwidth(&["check", "--cnf", &unsat, "--construction", "binary", "--blocks", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("sat UNSATISFIABLE"));
    assert!(stdout.contains("ip INFEASIBLE"));

    let three = write(dir.path(), "three.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    let out = ipwidth(&["check", "--cnf", &three, "--construction", "eth"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bench_respects_seed_env() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    let spec = "pathwidth:n=4,m=3,c=2,count=2";
    let run = |path: &Path, seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_ipwidth"))
            .args(["bench", "--corpus", spec, "--out", path.to_str().unwrap()])
            .env(ipwidth_cli::SEED_ENV, seed)
            .output()
            .unwrap()
    };
    assert!(run(&out_a, "5").status.success());
    assert!(run(&out_b, "5").status.success());
    assert_eq!(fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap());
    assert!(run(&out_b, "6").status.success());
    assert_ne!(fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap());
    let body = fs::read_to_string(&out_a).unwrap();
    assert!(body.contains("-s5-"));
}

#[test]
fn explicit_order_lines_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = "ip 1\nrows 2 cols 3\nb 1 1\nrow 1 0 1\nrow 0 1 1\norder 3 1 2\n";
    let path = write(dir.path(), "ordered.ip", text);
    let inst = ipwidth_cli::format::parse_instance(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(inst.ordering().unwrap().as_slice(), &[2, 0, 1]);
    assert_eq!(ipwidth_cli::format::write_instance(&inst), text);

    let out = ipwidth(&["width", "--instance", &path, "--ordering", "given"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
