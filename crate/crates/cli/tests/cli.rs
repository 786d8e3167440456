use std::process::{Command, Output};

fn cuntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn apply_creation_on_fock_vacuum() {
    let out = cuntz(&["apply", "--rep", "1", "--expr", "b(1)*", "--state", "vac"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "|2;0>");
}

#[test]
fn apply_identity() {
    let out = cuntz(&["apply", "--rep", "1", "--expr", "I", "--state", "vac"]);
    assert_eq!(stdout(&out).trim(), "vac");
}

#[test]
fn apply_number_operator_on_two_sided_vacuum() {
    let out = cuntz(&[
        "apply",
        "--rep",
        "12",
        "--expr",
        "b(1) b(1)*",
        "--state",
        "vac",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "vac");
    let out = cuntz(&[
        "apply",
        "--rep",
        "12",
        "--expr",
        "b(2) b(2)*",
        "--state",
        "vac",
    ]);
    assert_eq!(stdout(&out).trim(), "2*vac");
}

#[test]
fn apply_unicode_and_json() {
    let out = cuntz(&[
        "apply",
        "--rep",
        "12",
        "--expr",
        "b(2) b(2)*",
        "--state",
        "vac",
        "--unicode",
    ]);
    assert_eq!(stdout(&out).trim(), "2*Ω");
    let json = stdout(&cuntz(&[
        "apply", "--rep", "1", "--expr", "b(1)*", "--state", "vac", "--format", "json",
    ]));
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["terms"][0]["label"], "|2;0>");
}

#[test]
fn apply_output_reparses() {
    let first = stdout(&cuntz(&[
        "apply", "--rep", "112", "--expr", "F(2)* t2", "--state", "|12;1>",
    ]));
    let again = stdout(&cuntz(&[
        "apply",
        "--rep",
        "112",
        "--expr",
        "I",
        "--state",
        first.trim(),
    ]));
    assert_eq!(first, again);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = cuntz(&["apply", "--rep", "1", "--expr", "a(1", "--state", "vac"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("position 3"), "{err}");
    assert!(err.contains('^'), "{err}");

    let out = cuntz(&["apply", "--rep", "1", "--expr", "a(0)", "--state", "vac"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cuntz(&["apply", "--rep", "22", "--expr", "I", "--state", "vac"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expand_examples() {
    assert_eq!(
        stdout(&cuntz(&["expand", "--expr", "a(2)"])).trim(),
        "t1t1t2*t1* - t2t1t2*t2*"
    );
    assert_eq!(stdout(&cuntz(&["expand", "--expr", "t1* t1"])).trim(), "I");
    let out = cuntz(&["expand", "--expr", "a(1)a(1)* + a(1)*a(1)", "--depth", "2"]);
    assert_eq!(stdout(&out).trim(), "I");
    let json = stdout(&cuntz(&["expand", "--expr", "a(1)", "--format", "json"]));
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["terms"][0]["left"], "1");
    assert_eq!(value["terms"][0]["right"], "2");
}

#[test]
fn expand_rejects_series() {
    let out = cuntz(&["expand", "--expr", "b(1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("series"));
}

#[test]
fn check_main_passes() {
    let out = cuntz(&[
        "check", "--rep", "1", "--suite", "main", "--n-max", "4", "--depth", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn check_car_on_three_letter_cycle() {
    let out = cuntz(&[
        "check", "--rep", "112", "--suite", "car", "--n-max", "4", "--depth", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_wedge_json_reports_lambda() {
    let out = cuntz(&[
        "check", "--rep", "12", "--suite", "wedge", "--n-max", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["suite"], "wedge");
    assert_eq!(value["passed"], true);
    assert!(value["measured"]["lambda"]["3"].is_array());
}

#[test]
fn check_failure_exits_one() {
    // the all-2 cycle lies outside every s_m range, so completeness fails there
    let out = cuntz(&[
        "check", "--rep", "2", "--suite", "rho", "--n-max", "2", "--depth", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn check_unknown_suite_exits_two() {
    let out = cuntz(&["check", "--rep", "1", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let args = [
        "check", "--rep", "12", "--suite", "all", "--n-max", "2", "--depth", "3", "--format",
        "json",
    ];
    assert_eq!(stdout(&cuntz(&args)), stdout(&cuntz(&args)));
}

#[test]
fn list_basis_order() {
    let out = cuntz(&["list-basis", "--rep", "12", "--depth", "1"]);
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines, ["vac", "|1;0>", "vac(1)", "|2;1>"]);
}
