//! Black-box tests of the `hkmult` binary: exit codes, formats, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn hkmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkmult")).args(args).output().unwrap()
}

/// A session file removed on drop.
struct TempSession(PathBuf);

impl TempSession {
    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempSession {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn session(text: &str) -> TempSession {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let path = std::env::temp_dir().join(format!("hkmult-cli-{}-{n}.txt", std::process::id()));
    std::fs::write(&path, text).unwrap();
    TempSession(path)
}

const CONE: &str = "char 5\nvars x y z\nmod x*y - z^2\nideal I = x^5, y^5, z\nprime P = y, z height 1\nparam f = x\n";

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn colength_json() {
    let f = session(CONE);
    let o = hkmult(&["colength", "--in", f.path(), "--ideal", "m"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["colength"], "1");
}

#[test]
fn hk_csv_has_fixed_header_and_lf_endings() {
    let f = session(CONE);
    let o = hkmult(&["hk", "--in", f.path(), "--emax", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert_eq!(
        text,
        "e,q,colength,ratio_num,ratio_den\n1,5,37,37,25\n2,25,937,937,625\n"
    );
}

#[test]
fn passing_check_exits_zero() {
    let f = session(CONE);
    let o = hkmult(&[
        "check",
        "thm33",
        "--in",
        f.path(),
        "--prime",
        "P",
        "--param",
        "f",
        "--q",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn failing_check_exits_one() {
    // x kills y, so it is a parameter but not a non-zerodivisor: the bound
    // fails, e_HK((x)) = 1 < 2 = lambda(R/(x)).
    let f = session("char 5\nvars x y\nmod y^2, x*y\nideal J = y^2\nprime P = y height 0\n");
    let o = hkmult(&[
        "check",
        "thm23",
        "--in",
        f.path(),
        "--ideal-j",
        "J",
        "--param",
        "x",
        "--prime",
        "P",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "FAIL");
}

#[test]
fn inapplicable_check_exits_zero() {
    let f = session(CONE);
    let o = hkmult(&["check", "flatness", "--in", f.path(), "--ideal", "I", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "INAPPLICABLE");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(hkmult(&["colength"]).status.code(), Some(2));
    assert_eq!(hkmult(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        hkmult(&["dim", "--in", "/nonexistent/session.txt"]).status.code(),
        Some(2)
    );
    let bad = session("char 6\nvars x\n");
    let o = hkmult(&["dim", "--in", bad.path()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let typo = session("char 5\nvars x y\nideal I = x^2 +* y\n");
    assert_eq!(
        hkmult(&["dim", "--in", typo.path(), "--ideal", "I"]).status.code(),
        Some(2)
    );
}

#[test]
fn spair_cap_exits_three() {
    let f = session(CONE);
    let o = hkmult(&["gb", "--in", f.path(), "--ideal", "I", "--spair-cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn stabilization_cap_exits_four() {
    let f = session(CONE);
    let o = hkmult(&["mult", "--in", f.path(), "--ideal", "P", "--param", "f", "--n-cap", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_is_deterministic_across_runs_and_job_counts() {
    let f = session(CONE);
    let a = hkmult(&["ehk", "--in", f.path(), "--emax", "3"]);
    let b = hkmult(&["ehk", "--in", f.path(), "--emax", "3", "--jobs", "1"]);
    let c = hkmult(&["ehk", "--in", f.path(), "--emax", "3", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn corpus_fixture_runs_identically_single_threaded() {
    let a = hkmult(&["corpus", "run", "--id", "quadric-cone-p5"]);
    let b = hkmult(&["corpus", "run", "--id", "quadric-cone-p5", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["errors"], 0);
}

#[test]
fn corpus_list_names_every_fixture() {
    let o = hkmult(&["corpus", "list", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in [
        "regular-1d-p2",
        "quadric-cone-p7",
        "cubic-cone-p5",
        "flatness-random-p5",
        "lemma21-random-p5",
    ] {
        assert!(text.contains(id), "{id} missing");
    }
}

#[test]
fn order_flag_does_not_change_colength() {
    let f = session(CONE);
    let base = stdout(&hkmult(&["local-colength", "--in", f.path(), "--ideal", "I"]));
    for order in ["lex", "grlex", "grevlex"] {
        let o = hkmult(&["local-colength", "--in", f.path(), "--ideal", "I", "--order", order]);
        assert_eq!(stdout(&o), base, "{order}");
    }
}
