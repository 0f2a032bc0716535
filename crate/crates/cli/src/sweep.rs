//! Parameter sweeps over a family: one report per point plus a summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use jactype::poly::parse_rational;
use jactype::Bindings;
use rayon::prelude::*;

use crate::problem::ProblemSpec;
use crate::report::{verdict_name, ReportDocument};
use crate::run::analyze_spec;
use crate::{Exit, UsageError};

/// One parameter assignment, e.g. `[stratum 4] t33 = 0, t52 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub label: String,
    pub values: Vec<(String, String)>,
}

impl Point {
    pub fn parse(line: &str) -> Result<Point, UsageError> {
        let mut rest = line.trim();
        let mut label = None;
        if let Some(r) = rest.strip_prefix('[') {
            let end = r
                .find(']')
                .ok_or_else(|| UsageError(format!("unclosed label in `{line}`")))?;
            label = Some(r[..end].trim().to_string());
            rest = r[end + 1..].trim();
        }
        let mut values = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| UsageError(format!("expected `name = value`, got `{part}`")))?;
            let (name, value) = (name.trim(), value.trim());
            parse_rational(value).map_err(|e| UsageError(format!("value of `{name}`: {e}")))?;
            if values.iter().any(|(n, _): &(String, String)| n == name) {
                return Err(UsageError(format!("`{name}` assigned twice")));
            }
            values.push((name.to_string(), value.to_string()));
        }
        let label = label.unwrap_or_else(|| {
            values
                .iter()
                .map(|(n, v)| format!("{n}={v}"))
                .collect::<Vec<_>>()
                .join(",")
        });
        Ok(Point { label, values })
    }

    pub fn bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        for (name, value) in &self.values {
            b.bind(
                name.clone(),
                parse_rational(value).expect("checked when parsed"),
            );
        }
        b
    }

    pub fn labels(&self) -> BTreeMap<String, String> {
        self.values.iter().cloned().collect()
    }

    /// Every parameter assigned, nothing else.
    pub fn check_against(&self, spec: &ProblemSpec) -> Result<(), UsageError> {
        for (name, _) in &self.values {
            if !spec.parameters.contains(name) {
                return Err(UsageError(format!(
                    "`{name}` is not a parameter of {}",
                    spec.name
                )));
            }
        }
        for p in &spec.parameters {
            if !self.values.iter().any(|(n, _)| n == p) {
                return Err(UsageError(format!(
                    "point `{}` leaves `{p}` unset",
                    self.label
                )));
            }
        }
        Ok(())
    }
}

/// One point per non-blank line; `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<Point>, UsageError> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(k, l)| Point::parse(l).map_err(|e| UsageError(format!("line {}: {e}", k + 1))))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub point: Point,
    pub outcome: Result<Box<ReportDocument>, String>,
    pub exit: Exit,
}

/// Runs every point; a failing point does not stop the others.
pub fn sweep(spec: &ProblemSpec, points: &[Point], timings: bool) -> Vec<SweepRow> {
    points
        .par_iter()
        .map(|point| {
            let result = point
                .check_against(spec)
                .map_err(anyhow::Error::from)
                .and_then(|()| analyze_spec(spec, Some(point), timings));
            match result {
                Ok((doc, ok)) => SweepRow {
                    point: point.clone(),
                    outcome: Ok(Box::new(doc)),
                    exit: if ok { Exit::Success } else { Exit::CheckFailed },
                },
                Err(e) => SweepRow {
                    point: point.clone(),
                    exit: Exit::of_error(&e),
                    outcome: Err(format!("{e:#}")),
                },
            }
        })
        .collect()
}

pub fn summary_table(rows: &[SweepRow]) -> String {
    let width = rows
        .iter()
        .map(|r| r.point.label.len())
        .chain([5])
        .max()
        .unwrap_or(5);
    let mut out = format!(
        "{:<width$}  {:>3}  {:>3}  {:<24}  checks\n",
        "point", "rn", "rt", "verdict"
    );
    for row in rows {
        match &row.outcome {
            Ok(doc) => {
                let a = &doc.analysis;
                let verdict = verdict_name(a.verdict);
                let checks = if doc.checks_passed() { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>3}  {:>3}  {:<24}  {checks}",
                    row.point.label, a.rn, a.rt, verdict
                );
            }
            Err(e) => {
                let _ = writeln!(out, "{:<width$}  error: {e}", row.point.label);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points() {
        let pts =
            parse_points("# strata\n[first] a = 1, b = -175/6\n\nb=0 , a=2 # tail\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].label, "first");
        assert_eq!(pts[0].values[1], ("b".to_string(), "-175/6".to_string()));
        assert_eq!(pts[1].label, "b=0,a=2");
        assert!(parse_points("").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_points() {
        assert!(Point::parse("a 1").is_err());
        assert!(Point::parse("a = 1/0").is_err());
        assert!(Point::parse("a = 1, a = 2").is_err());
        assert!(Point::parse("[x a = 1").is_err());
        let mut spec = ProblemSpec::new(
            "fam",
            &["x", "y"],
            jactype::FieldSpec::Rationals,
            "x^2 + a*y^3",
        );
        spec.parameters = vec!["a".into()];
        assert!(Point::parse("a = 1").unwrap().check_against(&spec).is_ok());
        assert!(Point::parse("b = 1").unwrap().check_against(&spec).is_err());
        assert!(Point::parse("").unwrap().check_against(&spec).is_err());
    }
}
