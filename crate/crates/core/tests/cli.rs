//! End-to-end tests of the command-line binary: golden outputs, exit
//! codes, determinism, and the atomic --out path.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammacf"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_str().expect("utf-8 path").to_string()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("gammacf-{}-{name}", std::process::id()))
}

#[test]
fn seq_gamma_text_table() {
    let out = run(&["seq", "gamma", "--max-n", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "n    q  p_num  p_den\n\
         0    1      0      1\n\
         1    2      1      1\n\
         2    7      4      1\n\
         3   34     59      3\n\
         4  209    725      6\n"
    );
}

#[test]
fn seq_gamma_csv_golden() {
    let out = run(&["seq", "gamma", "--max-n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n,q,p_num,p_den\n0,1,0,1\n1,2,1,1\n2,7,4,1\n3,34,59,3\n4,209,725,6\n"
    );
}

#[test]
fn seq_stieltjes_json() {
    let out = run(&["seq", "stieltjes", "--max-n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let s: Vec<&str> =
        rows.as_array().unwrap().iter().map(|r| r["s"].as_str().unwrap()).collect();
    assert_eq!(s, ["0", "1", "4", "20"]);
}

#[test]
fn seq_rejects_negative_index() {
    let out = run(&["seq", "gamma", "--max-n", "-1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn seq_delta_cap_head() {
    let out = run(&["seq", "delta-cap", "--max-n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,delta\n0,0\n1,-1\n2,-2\n3,-5\n4,8\n");
}

#[test]
fn cf_gamma_dump_csv() {
    let out = run(&["cf", "gamma", "-N", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "index,a_num,a_den,b_num,b_den\n\
         1,1,1,2,1\n\
         2,-1,1,4,1\n\
         3,-5,1,16,1\n\
         \n\
         n,num,den\n\
         0,0,1\n\
         1,1,2\n\
         2,4,7\n\
         3,59,102\n"
    );
}

#[test]
fn cf_evenpart_json() {
    let out = run(&["cf", "evenpart", "--a", "1", "--z", "1", "-N", "2", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let last = doc["convergents"].as_array().unwrap().last().unwrap();
    assert_eq!(last["num"].as_str().unwrap(), "4");
    assert_eq!(last["den"].as_str().unwrap(), "7");
}

#[test]
fn cf_unknown_family_is_usage_error() {
    let out = run(&["cf", "nosuch", "-N", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));
}

#[test]
fn cf_missing_parameter_is_usage_error() {
    let out = run(&["cf", "gauss-limit", "-N", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cf_rejects_zero_denominator_parameter() {
    let out = run(&["cf", "gauss-limit", "--a", "1/0", "--z", "1", "-N", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid rational"), "{}", stderr(&out));
}

#[test]
fn verify_telescope_passes() {
    let out = run(&["verify", "telescope", "--max-n", "50"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ok    telescoping certificate identity"), "{text}");
    assert!(text.ends_with("all 1 checks passed\n"), "{text}");
}

#[test]
fn verify_integrality_passes() {
    let out = run(&["verify", "integrality", "--max-n", "60"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("all 8 checks passed\n"), "{}", stdout(&out));
}

#[test]
fn verify_failure_exits_one() {
    // At such small indices the normalized constants genuinely sit more
    // than 10% from their limits, so the suite must report failures.
    let out = run(&["verify", "asymptotics", "--ns", "25,36"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("checks failed"), "{text}");
}

#[test]
fn verify_rejects_insufficient_precision() {
    let out = run(&["verify", "asymptotics", "--ns", "1600", "-P", "12"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));
}

#[test]
fn verify_csv_format_has_check_rows() {
    let out = run(&["verify", "telescope", "--max-n", "10", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("check,pass,witness\n"), "{text}");
    assert!(text.contains(",true,"), "{text}");
}

#[test]
fn linform_gamma_fixture() {
    let out = run(&["linform", "--spec", &fixture("spec_gamma.json"), "-n", "2", "--format", "csv", "-P", "20"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "n,q_num,q_den,p_num,p_den,F\n2,7,1,4,1,-0.04050965431073002424\n"
    );
}

#[test]
fn linform_aptekarev_fixture() {
    let out = run(&["linform", "--spec", &fixture("spec_aptekarev.json"), "-n", "2", "--format", "csv", "-P", "20"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "n,q_num,q_den,p_num,p_den,F\n2,50,1,31,1,2.13921675492335696967\n"
    );
}

#[test]
fn linform_improper_spec_warns_but_succeeds() {
    let out = run(&["linform", "--spec", &fixture("spec_improper.json"), "-n", "3"]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("warning: improper: gamma coefficient is zero"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn linform_broken_json_is_usage_error() {
    let out = run(&["linform", "--spec", &fixture("spec_broken.json"), "-n", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ill-formed term spec"), "{}", stderr(&out));
}

#[test]
fn linform_unusable_spec_is_check_failure() {
    let out = run(&["linform", "--spec", &fixture("spec_narrow.json"), "-n", "2"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("term spec is not well formed at n = 2"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn linform_missing_file_is_usage_error() {
    let out = run(&["linform", "--spec", "/nonexistent/nope.json", "-n", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["seq", "gamma", "--max-n", "20", "--format", "json"],
        vec!["cf", "laplace", "--a", "1/2", "--z", "5", "-N", "12", "--format", "csv"],
        vec!["verify", "integrality", "--max-n", "40"],
        vec!["linform", "--spec", &fixture("spec_gamma.json"), "-n", "7"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(code(&first), code(&second));
        assert_eq!(first.stdout, second.stdout, "output drifted for {args:?}");
    }
}

#[test]
fn out_flag_writes_atomically() {
    let path = temp_path("seq.csv");
    let direct = run(&["seq", "gamma", "--max-n", "6", "--format", "csv"]);
    let filed = run(&[
        "seq",
        "gamma",
        "--max-n",
        "6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&filed), 0, "{}", stderr(&filed));
    assert!(stdout(&filed).is_empty(), "--out must silence stdout");
    let content = std::fs::read(&path).expect("output file exists");
    assert_eq!(content, direct.stdout);
    let tmp = path.with_file_name(format!(
        "{}.tmp",
        path.file_name().unwrap().to_str().unwrap()
    ));
    assert!(!tmp.exists(), "temp file must not survive");
    // Re-running overwrites with identical bytes.
    let again = run(&[
        "seq",
        "gamma",
        "--max-n",
        "6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&again), 0);
    assert_eq!(std::fs::read(&path).unwrap(), content);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn gamma_digits_replacement_table_works() {
    let out = run(&[
        "verify",
        "asymptotics",
        "--ns",
        "100",
        "--gamma-digits",
        &fixture("gamma_digits_ok.txt"),
        "-P",
        "40",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn gamma_digits_corrupt_table_is_rejected() {
    // The replacement table differs from the true digits at position 21;
    // the self-consistency gate must refuse to hand out references.
    let out = run(&[
        "verify",
        "asymptotics",
        "--ns",
        "100",
        "--gamma-digits",
        &fixture("gamma_digits_corrupt.txt"),
        "-P",
        "40",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));
}

#[test]
fn gamma_digits_short_table_is_rejected() {
    // Thirty digits cannot satisfy the fifty-digit consistency gate.
    let out = run(&[
        "verify",
        "asymptotics",
        "--ns",
        "100",
        "--gamma-digits",
        &fixture("gamma_digits_short.txt"),
        "-P",
        "40",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gamma_digits_garbage_is_rejected() {
    let path = temp_path("garbage.txt");
    std::fs::write(&path, "this is not a digit table\n").unwrap();
    let out = run(&["seq", "gamma", "--max-n", "2", "--gamma-digits", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let _ = std::fs::remove_file(&path);
}
