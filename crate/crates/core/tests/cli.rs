use std::process::{Command, Output};

fn ordcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcalc"))
        .args(args)
        .output()
        .expect("ordcalc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn success_prints_normal_form() {
    let o = ordcalc(&["norm", "1+w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "w\n");
    let o = ordcalc(&["cmp", "w^2", "w*5+3"]);
    assert_eq!(stdout(&o), "GT\n");
}

#[test]
fn domain_error_exits_one() {
    let o = ordcalc(&["seq", "decode", "w", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("not in the image"), "{}", stderr(&o));
}

#[test]
fn syntax_error_exits_two() {
    let o = ordcalc(&["add", "w", "w^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("syntax error at byte 2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn usage_error_exits_two() {
    let o = ordcalc(&["pair", "w", "junk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn selftest_passes_and_mutant_fails() {
    let o = ordcalc(&["selftest", "--seed", "3", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));

    let o = ordcalc(&[
        "--json",
        "selftest",
        "--samples",
        "10",
        "--mutate",
        "broken-add",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failing: Vec<&str> = report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["failures"].as_u64() != Some(0))
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["oracle.add"]);
}

#[test]
fn trace_goes_to_stderr() {
    let o = ordcalc(&["--trace", "pair", "w*2+3", "w+1", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(
        stderr(&o).lines().any(|l| l.starts_with("add_commute")),
        "{}",
        stderr(&o)
    );
}
