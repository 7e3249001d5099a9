use std::process::{Command, Output};

use qsys_core::ctengine::{m_alpha, UKernel};
use qsys_core::ncalgebra::NcPoly;
use qsys_core::verify::CheckReport;
use qsys_core::ShiftOp;

fn qq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qq"))
        .args(args)
        .env("QQ_THREADS", "2")
        .output()
        .expect("qq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn m_alpha_text_and_json() {
    let o = qq(&["m-alpha", "--alpha", "2", "--n", "0", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), m_alpha(2, 0).to_string());

    let o = qq(&["m-alpha", "--alpha", "3", "--n", "-1", "--format", "json"]);
    let back: NcPoly = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(back, m_alpha(3, -1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["m-alpha", "--alpha", "-1"][..],
        &["m-alpha", "--n", "0"],
        &["m-alpha", "--alpha", "2", "--bogus", "1"],
        &["frobnicate"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "rank", "--r", "4"],
        &["op", "--r", "1", "--alpha", "3"],
        &["verify", "--suite", "msystem", "--n", "3..1"],
    ] {
        let o = qq(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn conserved_rank_one() {
    let o = qq(&["conserved", "--r", "1", "--m", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "C_1 = q * M[0] M[1] D^-1 - M[-1] M[2] D^-1");
    assert_eq!(lines[1], "rep: mult(x1 + x2)");
}

#[test]
fn verify_pass_and_json_report() {
    let o = qq(&[
        "verify", "--suite", "msystem", "--r", "1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rep: CheckReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.suite, "msystem");
    assert!(rep.passed());
    assert_eq!(rep.checks_run, 14);

    let o = qq(&[
        "verify", "--suite", "drinfeld", "--r", "2", "--seed", "7", "--n", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS drinfeld"));
}

#[test]
fn verify_failure_exits_one() {
    // outside |p| <= |β-α|+1 the commutation relation is false
    let o = qq(&[
        "verify", "--suite", "mcom", "--alpha", "1", "--p", "2", "--n", "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.starts_with("FAIL mcom: 1 checks, 1 failures"),
        "{text}"
    );
    assert!(text.contains("mcom at alpha=1 beta=1 n=0 p=2"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "verify",
        "--suite",
        "confluence",
        "--samples",
        "60",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let (a, b) = (qq(&args), qq(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_and_op_round_trip() {
    let o = qq(&["kernel", "--alpha", "3", "--format", "json"]);
    let k: UKernel = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(k, qsys_core::ctengine::qvandermonde(3).unwrap());

    let o = qq(&[
        "kernel", "--kind", "defect", "--r", "1", "--m", "2", "--n", "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ct: "));

    let o = qq(&[
        "op", "--r", "2", "--alpha", "2", "--n", "-1", "--format", "json",
    ]);
    let op: ShiftOp = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(op, qsys_core::repdiff::op_m(2, 2, -1));

    let o = qq(&["op", "--r", "1", "--sym", "e2"]);
    assert_eq!(stdout(&o).trim(), "mult(x1*x2)");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qq-out-{}.txt", std::process::id()));
    let o = qq(&[
        "m-alpha",
        "--alpha",
        "1",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "M[4]");
    std::fs::remove_file(path).unwrap();
}
