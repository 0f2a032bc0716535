use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jactype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jactype"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(doc: &Value) {
    let v = schema();
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

#[test]
fn analyze_cusp_is_linear() {
    let o = jactype(&[
        "analyze",
        "--vars",
        "x,y",
        "--f",
        "x^2 + y^3",
        "--field",
        "q",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["analysis"]["verdict"], "linear_jacobian_type");
    assert_eq!(doc["analysis"]["rt"], 1);
    assert_eq!(doc["evidence"], "exact");
    assert!(doc["timings"].is_array());
}

#[test]
fn analyze_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = jactype(&[
        "analyze",
        "--vars",
        "x,y",
        "--f",
        "x^4 + y^5 + x*y^4",
        "--dmax",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("rt = 2, verdict = expected_jacobian_type [characteristic-p evidence]")
    );
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["analysis"]["rn"], 1);
}

#[test]
fn analyze_from_problem_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("p.toml");
    std::fs::write(
        &spec,
        "name = \"e12\"\nvariables = [\"x\", \"y\"]\nfield = \"q\"\nf = \"x^7 + y^5\"\nchecks = [\"rt\", \"classify\"]\n",
    )
    .unwrap();
    let o = jactype(&["analyze", "--spec", spec.to_str().unwrap(), "--no-timings"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["problem"]["name"], "e12");
    assert_eq!(doc["analysis"]["t_table"].as_array().unwrap().len(), 0);
}

#[test]
fn no_timings_output_is_reproducible() {
    let args = [
        "analyze",
        "--vars",
        "x,y",
        "--f",
        "x^4 + y^5 + x*y^4",
        "--dmax",
        "3",
        "--no-timings",
    ];
    let a = jactype(&args);
    let b = jactype(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(doc.get("timings").is_none());
}

#[test]
fn usage_errors_exit_one() {
    let unit = jactype(&["analyze", "--vars", "x,y", "--f", "1 + x"]);
    assert_eq!(unit.status.code(), Some(1));
    assert!(stderr(&unit).contains("error"));
    assert_eq!(jactype(&["analyze", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        jactype(&["analyze", "--vars", "x,y"]).status.code(),
        Some(1)
    );
    assert_eq!(
        jactype(&["analyze", "--vars", "x,y", "--f", "x^2+y^3", "--dmax", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        jactype(&["analyze", "--vars", "x,y", "--f", "x^2+y^3", "--field", "gf:10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        jactype(&["analyze", "--vars", "x,y", "--f", "x^2+y^3", "--checks", "nope"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(jactype(&[]).status.code(), Some(1));
}

fn family(dir: &Path, f: &str) -> std::path::PathBuf {
    let spec = dir.join("family.toml");
    std::fs::write(
        &spec,
        format!("name = \"fam\"\nvariables = [\"x\", \"y\"]\nf = \"{f}\"\nparameters = [\"t\"]\ndmax = 4\n"),
    )
    .unwrap();
    spec
}

#[test]
fn sweep_runs_each_point() {
    let dir = tempfile::tempdir().unwrap();
    let spec = family(dir.path(), "x^7 + y^5 - t*x^5*y^3");
    let points = dir.path().join("points.txt");
    std::fs::write(&points, "# two strata\n[homogeneous] t = 0\nt = 1\n").unwrap();
    let out = dir.path().join("all.json");
    let o = jactype(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--points",
        points.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--no-timings",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = stdout(&o);
    assert!(table.contains("homogeneous"));
    assert!(table.contains("t=1"));
    let docs: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(docs.len(), 2);
    for d in &docs {
        assert_valid(d);
    }
    assert_eq!(docs[0]["analysis"]["rt"], 1);
    assert_eq!(docs[0]["point"]["t"], "0");
    assert_eq!(docs[1]["analysis"]["rt"], 2);
}

#[test]
fn sweep_with_no_points_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = family(dir.path(), "x^7 + y^5 - t*x^5*y^3");
    let points = dir.path().join("points.txt");
    std::fs::write(&points, "# nothing yet\n\n").unwrap();
    let o = jactype(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--points",
        points.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn failing_point_does_not_stop_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let spec = family(dir.path(), "x^2 + y^3 + t");
    let points = dir.path().join("points.txt");
    std::fs::write(&points, "[bad] t = 1\n[good] t = 0\n").unwrap();
    let out = dir.path().join("all.json");
    let o = jactype(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--points",
        points.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("point bad"));
    let docs: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(docs.len(), 1);
    assert_eq!(docs[0]["point"]["t"], "0");
}

#[test]
fn sweep_rejects_unknown_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let spec = family(dir.path(), "x^2 + y^3 + t*x*y");
    let points = dir.path().join("points.txt");
    std::fs::write(&points, "u = 1\n").unwrap();
    let o = jactype(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--points",
        points.to_str().unwrap(),
    ]);
    assert_ne!(o.status.code(), Some(0));
}

const SMALL_CORPUS: &str = r#"
[[entry]]
name = "cusp"
variables = ["x", "y"]
f = "x^2 + y^3"
fields = ["q", "gf:32003"]
[entry.expect]
rt = 1
verdict = "linear_jacobian_type"

[[entry]]
name = "reiffen"
variables = ["x", "y"]
f = "x^4 + y^5 + x*y^4"
dmax = 4
[entry.expect]
rn = 1
rt = RT
t_zero = [[2, 2, 4]]
"#;

#[test]
fn custom_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.toml");
    std::fs::write(&file, SMALL_CORPUS.replace("RT", "2")).unwrap();
    let o = jactype(&["corpus", "--file", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3/3 passed"));
}

#[test]
fn corpus_mismatch_exits_three_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.toml");
    std::fs::write(&file, SMALL_CORPUS.replace("RT", "3")).unwrap();
    let o = jactype(&[
        "corpus",
        "--file",
        file.to_str().unwrap(),
        "--only",
        "reiffen",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("rt: expected 3, got 2"), "{text}");
    assert!(text.contains("0/1 passed"));
}

#[test]
fn bundled_corpus_over_q() {
    let o = jactype(&[
        "corpus",
        "--field",
        "q",
        "--only",
        "cusp",
        "--only",
        "e12-quasi-homogeneous",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("2/2 passed"));
}

#[test]
fn malformed_corpus_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.toml");
    std::fs::write(&file, "[[entry]]\nname = \"x\"\n").unwrap();
    assert_eq!(
        jactype(&["corpus", "--file", file.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}
