use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesym")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn commutators_match_fixture() {
    let o = run(&["commutators"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS: 25/25 cells match Table 1"));
}

#[test]
fn adjoint_matches_fixture() {
    let o = run(&["adjoint"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS: 25/25 cells match Table 2"));
}

#[test]
fn adjoint_at_zero_is_identity() {
    let o = run(&["adjoint", "--at", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (i, row) in v["cells"].as_array().unwrap().iter().enumerate() {
        for (j, c) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(c.as_str().unwrap(), format!("Y{}", j + 1), "row {i}");
        }
    }
}

#[test]
fn abelian_workspace_has_zero_table_and_no_fixture() {
    let ws = data("workspaces/abelian.json");
    let o = run(&["commutators", "--workspace", ws.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["comparison"].is_null());
    assert!(v["cells"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|c| c == "0"));
}

#[test]
fn non_closing_field_exits_2_naming_the_pair() {
    let ws = data("tests/data/nonclosing.json");
    let o = run(&["commutators", "--workspace", ws.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("[Y1, W]"), "{}", stderr(&o));
}

#[test]
fn irrational_eigenvalues_exit_3() {
    let ws = data("tests/data/irrational.json");
    let o = run(&["adjoint", "--workspace", ws.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("unsupported algebra"));
}

#[test]
fn determine_time_translation() {
    let o = run(&["determine", "--field", "Y2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("residual: 0\n"));
}

#[test]
fn determine_space_translation_lists_two_equations() {
    let o = run(&["determine", "--field", "Y1"]);
    let out = stdout(&o);
    assert!(out.contains("determining equations: 2"));
    assert!(out.contains("[u_x^2] -D[f,x] = 0"));
    assert!(out.contains("[u_xx] -D[g,x] = 0"));
}

#[test]
fn determine_with_concrete_coefficients() {
    let o = run(&["determine", "--field", "Y1", "--f", "u^2", "--g", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("residual: 0\n"));
    let o = run(&["determine", "--field", "Y1", "--f", "t*u"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["determine"]).status.code(), Some(64));
    assert_eq!(run(&["optimal"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["optimal", "--vector", "1,x,0,0,0"]).status.code(), Some(64));
    assert_eq!(run(&["commutators", "--workspace", "/no/such/file.json"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unknown_field_is_an_error() {
    let o = run(&["determine", "--field", "Y9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Y9"));
}

#[test]
fn equivalence_check_reports_the_family_deltas() {
    let o = run(&["equivalence-check"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("Y4 = t*d_t + u*d_u - 2*f*d_f - g*d_g: generator"));
    assert!(out.contains("Y5 = d_x + 2*f*d_f + g*d_g: not a generator"));
    assert!(out.contains("delta: mu:"));
}

#[test]
fn optimal_vectors() {
    let o = run(&["optimal", "--vector", "0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("representative  Y^5"));
    let o = run(&["optimal", "--vector", "4,0,0,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("representative  Y^8"));
    assert!(out.contains("Ad(exp(s*Y4)) at e^s=1/4"));
}

#[test]
fn survey_is_byte_identical_across_runs() {
    let a = run(&["optimal", "--survey", "100", "--seed", "7"]);
    let b = run(&["optimal", "--survey", "100", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    assert!(stdout(&a).contains("samples 100 (seed 7)"));
}

#[test]
fn classify_formats() {
    let o = run(&["classify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("identical to printed: rows [1, 2]"));
    let latex = stdout(&run(&["classify", "--format", "latex"]));
    assert!(latex.contains("Invariant & Equation & Additional operator"));
    assert!(latex.starts_with("\\begin{tabular}"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["classify", "--format", "json"]))).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_runs_stages_from_a_fresh_workspace_file() {
    let ws = data("workspaces/burgers.json");
    let o = run(&["classify", "--workspace", ws.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(o.stdout, run(&["classify"]).stdout);
}

#[test]
fn commands_are_deterministic_and_leave_the_workspace_alone() {
    let ws = data("workspaces/burgers.json");
    let before = std::fs::read(&ws).unwrap();
    let p = ws.to_str().unwrap();
    for args in [
        vec!["commutators", "--workspace", p],
        vec!["adjoint", "--workspace", p, "--format", "latex"],
        vec!["equivalence-check", "--workspace", p, "--format", "json"],
        vec!["classify", "--workspace", p, "--format", "json"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
    assert_eq!(std::fs::read(&ws).unwrap(), before);
}
