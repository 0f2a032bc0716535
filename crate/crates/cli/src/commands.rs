//! The three subcommands, writing to caller-supplied sinks.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

use crate::corpus::{run_corpus, Corpus, Selection};
use crate::problem::ProblemSpec;
use crate::report::verdict_name;
use crate::run::analyze_spec;
use crate::sweep::{parse_points, summary_table, sweep};
use crate::Exit;

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn report_error(err: &mut dyn Write, e: &anyhow::Error) -> Exit {
    let _ = writeln!(err, "error: {e:#}");
    Exit::of_error(e)
}

/// Analyzes one problem; the report goes to `out` or, without one, to
/// `stdout`.
pub fn cmd_analyze(
    spec: &ProblemSpec,
    out: Option<&Path>,
    timings: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Exit {
    let (doc, ok) = match analyze_spec(spec, None, timings) {
        Ok(r) => r,
        Err(e) => return report_error(stderr, &e),
    };
    let json = doc.to_json();
    match out {
        Some(path) => {
            if let Err(e) = write_file(path, &json) {
                return report_error(stderr, &e);
            }
            let a = &doc.analysis;
            let _ = writeln!(
                stdout,
                "{}: rn = {}, rt = {}, verdict = {} [{}]",
                spec.name,
                a.rn,
                a.rt,
                verdict_name(a.verdict),
                doc.evidence
            );
        }
        None => {
            let _ = stdout.write_all(json.as_bytes());
        }
    }
    if ok {
        Exit::Success
    } else {
        for c in doc.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(
                stderr,
                "check failed: {}: {} ({})",
                c.name, c.statement, c.detail
            );
        }
        Exit::CheckFailed
    }
}

/// Runs a family at every point listed in `points_text`.
pub fn cmd_sweep(
    spec: &ProblemSpec,
    points_text: &str,
    out: Option<&Path>,
    timings: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Exit {
    let points = match parse_points(points_text) {
        Ok(p) => p,
        Err(e) => return report_error(stderr, &e.into()),
    };
    let rows = sweep(spec, &points, timings);
    let _ = stdout.write_all(summary_table(&rows).as_bytes());
    if let Some(path) = out {
        let docs: Vec<_> = rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok())
            .collect();
        let json = serde_json::to_string_pretty(&docs).expect("reports serialize") + "\n";
        if let Err(e) = write_file(path, &json) {
            return report_error(stderr, &e);
        }
    }
    let mut exit = Exit::Success;
    for row in &rows {
        if let Err(e) = &row.outcome {
            let _ = writeln!(stderr, "point {}: {e}", row.point.label);
        }
        exit = exit.max(row.exit);
    }
    exit
}

/// Runs the selected corpus entries and compares against their pins.
pub fn cmd_corpus(corpus: &Corpus, sel: &Selection, timings: bool, stdout: &mut dyn Write) -> Exit {
    let outcomes = run_corpus(corpus, sel, timings);
    let mut exit = Exit::Success;
    for o in &outcomes {
        let _ = writeln!(stdout, "{}", o.summary_line());
        exit = exit.max(o.exit());
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(stdout, "{passed}/{} passed", outcomes.len());
    exit
}
