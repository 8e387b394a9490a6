use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn leavitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_toeplitz() {
    let o = leavitt(&["analyze", &data("toeplitz.dig")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ht = 2\n"));
    assert!(out.contains("GKdim = 2\n"));
    assert!(out.contains("sinks = w\n"));
}

#[test]
fn machine_mode_is_tab_separated() {
    let o = leavitt(&["--machine", "analyze", &data("qS3.dig")]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in out.lines() {
        assert_eq!(line.split('\t').count(), 2, "{line:?}");
    }
    assert!(out.contains("ht\t3\n"));
    assert!(out.contains("gkdim\t3\n"));
}

#[test]
fn eval_and_rings() {
    let o = leavitt(&["eval", &data("toeplitz.dig"), "(e+f)(e*+f*)"]);
    assert_eq!(stdout(&o), "result = v\n");
    let o = leavitt(&["eval", &data("toeplitz.dig"), "e* f"]);
    assert_eq!(stdout(&o), "result = 0\n");
    let o = leavitt(&["--ring", "Z", "eval", &data("toeplitz.dig"), "1 - e e*"]);
    assert_eq!(stdout(&o), "result = w + f.f*\n");
}

#[test]
fn reduce_example() {
    let o = leavitt(&["reduce", &data("reduction.dig")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("step 1 = u\n"));
    assert!(out.contains("vertices = 2\n"));
    let o = leavitt(&["reduce", &data("reduction.dig"), "--strategy", "script:w,u,x"]);
    assert!(o.status.success());
}

#[test]
fn closure_and_decompose() {
    let out = stdout(&leavitt(&["closure", &data("toeplitz.dig"), "w"]));
    assert!(out.contains("hereditary = yes\n"));
    assert!(out.contains("saturated = yes\n"));
    let out = stdout(&leavitt(&["decompose", &data("gamma2.dig")]));
    assert!(out.contains("shape = M_2(k)\n"));
    assert!(out.contains("dimension = 4\n"));
}

#[test]
fn growth_table() {
    let o = leavitt(&["--machine", "growth", &data("gamma2.dig"), "--nmax", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# n\tlower\tupper\n0\t1\t1\n1\t3\t4\n"));
    assert!(out.contains("sandwich\tyes\n"));
}

#[test]
fn rep_audit_passes() {
    let o = leavitt(&["rep-audit", &data("tree.dig"), &data("tree.rep")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("audit = pass\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| leavitt(args).status.code().unwrap();
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["reduce", &data("gamma2.dig"), "--strategy", "bogus"]), 2);
    assert_eq!(code(&["analyze", "/nonexistent.dig"]), 3);
    assert_eq!(code(&["eval", &data("toeplitz.dig"), "e +"]), 3);
    assert_eq!(code(&["growth", &data("rose2.dig")]), 4);
    assert_eq!(code(&["--ring", "Zmod:1", "analyze", &data("gamma2.dig")]), 3);
}

#[test]
fn budget_keeps_partial_table() {
    let o = leavitt(&["growth", &data("qS3.dig"), "--nmax", "30", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("3\t37\t37\n"));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["analyze", "qS4.dig"],
        vec!["reduce", "reduction.dig"],
        vec!["growth", "qD4.dig"],
        vec!["rep-audit", "toeplitz.dig", "toeplitz.rep"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(leavitt(&args).stdout, leavitt(&args).stdout);
    }
}
