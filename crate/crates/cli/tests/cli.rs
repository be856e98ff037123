use std::process::{Command, Output};

fn mmvtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmvtool")).args(args).output().expect("spawn mmvtool")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn selftest_passes() {
    let o = mmvtool(&["selftest"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("E6(i) = 0"));
}

#[test]
fn eval_l_prints_value_bound_and_csv() {
    let o = mmvtool(&["eval-l", "--index", "L{ks=[2];alphas=[1];t=0}", "--tau", "i", "--coeffs", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("value "));
    assert!(s.contains("tail_bound"));
    assert!(s.contains("m,c\n1,1\n2,9/2\n3,28/3\n") || s.contains("m,c\n1,1/1\n2,9/2\n3,28/3\n"), "{}", s);
}

#[test]
fn eval_int_dump_format() {
    let o = mmvtool(&["eval-int", "--index", "I{ks=[2];alphas=[1];taupow=0}", "--tau", "2i", "--dump", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let dump: Vec<&str> = s.lines().filter(|l| l.contains("; ")).collect();
    assert_eq!(dump.len(), 2);
    assert!(dump[0].starts_with("1; "));
}

#[test]
fn convert_both_directions() {
    let o = mmvtool(&["convert", "--dir", "int2l", "--index", "I{ks=[2];alphas=[2];taupow=0}"]);
    assert_eq!(stdout(&o).trim(), "-1/1*L{ks=[2];alphas=[1];t=1} + 1/1*L{ks=[2];alphas=[2];t=0}");
    let o = mmvtool(&["convert", "--dir", "l2int", "--index", "L{ks=[2];alphas=[1];t=0}"]);
    assert_eq!(stdout(&o).trim(), "-1/1*I{ks=[2];alphas=[1];taupow=0}");
}

#[test]
fn stuffle_of_two_letters() {
    let o = mmvtool(&["stuffle", "--left", "L{ks=[2];alphas=[1];t=0}", "--right", "L{ks=[3];alphas=[1];t=0}"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().split(" + ").count(), 2);
}

#[test]
fn verify_writes_reports_and_sets_exit_code() {
    let dir = std::env::temp_dir().join(format!("mmvtool-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("r.json");
    let o = mmvtool(&["verify", "--suite", "roundtrip", "--grid", "small", "--out", json.to_str().unwrap()]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&json).unwrap();
    assert!(body.contains("\"suite\": \"roundtrip\""));
    assert!(body.contains("\"failed\": 0"));

    let csv = dir.join("r.csv");
    let o = mmvtool(&[
        "verify", "--suite", "haberland", "--format", "csv", "--out", csv.to_str().unwrap(), "--digits", "30",
    ]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().next(), Some("id,abs_err,tol,pass"));

    let o = mmvtool(&["verify", "--suite", "symmetry", "--corrupt-sign", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(mmvtool(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(mmvtool(&["eval-l", "--index", "I{ks=[2];alphas=[1];taupow=0}"]).status.code(), Some(2));
    assert_eq!(mmvtool(&["--digits", "3", "selftest"]).status.code(), Some(2));
}
