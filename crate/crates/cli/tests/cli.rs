use std::fs;
use std::process::{Command, Output};

use tdi_core::Polynomial;

fn tdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdi"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const SLABS: &str = r#"{"d":2,"generators":[[1,"inf"],["inf",1]]}"#;

#[test]
fn tausigma_orbit_of_a_monomial() {
    let out = tdi(&["orbit", "--kind", "tausigma", "-p", "x1^2*x2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"d\":2,\"generators\":[[2,1]]}\n");
}

#[test]
fn member_reports_witness_and_exits_one() {
    let out = tdi(&["member", "-p", "x1^2*x2^2", "--omega", SLABS]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "false\nwitness (2,2)\n");

    let inside = tdi(&["member", "-p", "x1*x2^5 - 3", "--omega", SLABS]);
    assert_eq!(code(&inside), 0);
    assert_eq!(stdout(&inside), "true\n");
}

#[test]
fn omega_can_be_read_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.json");
    fs::write(&path, SLABS).unwrap();
    let arg = format!("@{}", path.display());
    let out = tdi(&["member", "-p", "x1^2*x2^2", "--omega", &arg]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = [
        "verify", "--suite", "all", "--seed", "42", "--trials", "12", "--d", "2", "--deg", "3",
    ];
    let first = tdi(&args);
    let second = tdi(&args);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn operator_outputs_reparse_to_the_same_polynomial() {
    let cases: [&[&str]; 6] = [
        &[
            "op",
            "--apply",
            "translate",
            "-p",
            "x1^2*x2 - 1/2*x2^3",
            "--y",
            "(1, -2/3)",
        ],
        &["op", "--apply", "dilate", "-p", "x^3 + y", "--y", "2,1/2"],
        &[
            "op",
            "--apply",
            "partial",
            "-p",
            "x1^3*x2^2 + x2",
            "--alpha",
            "1,1",
        ],
        &[
            "op",
            "--apply",
            "delta",
            "-p",
            "x1^3*x2^2",
            "--alpha",
            "2,0",
        ],
        &[
            "op",
            "--apply",
            "polyop",
            "-p",
            "x^4",
            "--operator",
            "x^2 + 1",
            "--mode",
            "diff",
        ],
        &[
            "op",
            "--apply",
            "polyop",
            "-p",
            "x^4",
            "--operator",
            "x^2 + 1",
            "--mode",
            "d",
        ],
    ];
    for args in cases {
        let out = tdi(args);
        assert_eq!(code(&out), 0, "{args:?}");
        let text = stdout(&out);
        let p = Polynomial::parse(text.trim(), None).unwrap();
        assert_eq!(p.to_string(), text.trim());
    }
    let out = tdi(&[
        "op",
        "--apply",
        "polyop",
        "-p",
        "x^4",
        "--operator",
        "x^2 + 1",
        "--mode",
        "d",
    ]);
    assert_eq!(stdout(&out), "x1^4 + 12*x1^2\n");
    let out = tdi(&["op", "--apply", "translate", "-p", "x^2", "--y", "3"]);
    assert_eq!(stdout(&out), "x1^2 + 6*x1 + 9\n");
}

#[test]
fn tau_orbit_rows_reparse() {
    let out = tdi(&["orbit", "--kind", "tau", "-p", "x1^2*x2"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<_> = stdout(&out)
        .lines()
        .map(|l| Polynomial::parse(l, Some(2)).unwrap())
        .collect();
    assert_eq!(rows.len(), 6);
}

#[test]
fn closure_scenario_and_invariance_files() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("scenario.json");
    fs::write(
        &scenario,
        format!(
            r#"{{"omega":{SLABS},"sequence":["1/2*x1*x2^2","2/3*x1*x2^2"],"limit":"x1^2*x2^2",
               "grid":[[0,0],[1,0],["1/2",1]],"tolerance":"1/5"}}"#
        ),
    )
    .unwrap();
    let out = tdi(&["closure", "--scenario", scenario.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with(r#"{"member":false,"witness":[2,2]"#));

    let space = dir.path().join("space.txt");
    fs::write(
        &space,
        "# tau orbit of x^2*y\nx1^2*x2\nx1*x2\nx1^2\nx1\nx2\n1\n",
    )
    .unwrap();
    let path = space.to_str().unwrap();
    for (kind, expected, exit) in [
        ("translation", "true", 0),
        ("dilation", "true", 0),
        ("tdi", "true", 0),
    ] {
        let out = tdi(&["invariance", "--space", path, "--kind", kind]);
        assert_eq!(
            (stdout(&out).trim(), code(&out)),
            (expected, exit),
            "{kind}"
        );
    }
    fs::write(&space, "x1^2 + x2\n").unwrap();
    let out = tdi(&["invariance", "--space", path, "--kind", "translation"]);
    assert_eq!((stdout(&out).trim(), code(&out)), ("false", 1));
}

#[test]
fn muntz_table_has_one_row_per_bound() {
    let out = tdi(&[
        "muntz", "--target", "8", "--bounds", "10,30", "--grid", "512",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("10 | 8 | 4.19100e-9"));
}

#[test]
fn exit_codes_for_error_paths() {
    // usage: unknown flag, unreadable file, missing operand
    assert_eq!(code(&tdi(&["orbit", "--kind", "nope", "-p", "x"])), 2);
    assert_eq!(
        code(&tdi(&["closure", "--scenario", "/nonexistent/file.json"])),
        2
    );
    assert_eq!(code(&tdi(&["op", "--apply", "translate", "-p", "x"])), 2);

    // parse errors carry a position
    let out = tdi(&["orbit", "--kind", "tau", "-p", "x1^2 +* x2"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(code(&tdi(&["member", "-p", "x", "--omega", "{\"d\":2"])), 3);

    // precondition violations
    assert_eq!(code(&tdi(&["muntz", "--target", "7", "--bounds", "10"])), 4);
    assert_eq!(code(&tdi(&["muntz", "--bounds", "30,10"])), 4);
    assert_eq!(
        code(&tdi(&[
            "op",
            "--apply",
            "translate",
            "-p",
            "x1*x2",
            "--y",
            "1,2,3",
            "--d",
            "2"
        ])),
        4
    );
}
