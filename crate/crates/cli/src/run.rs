//! Drives one problem through the pipeline over the field it names.

use std::time::Instant;

use anyhow::Result;
use jactype::{
    classify, cross_validate, AnalysisReport, Bindings, CheckResult, DivisorData, Field, FieldSpec,
    KnownBounds, PolyRing, PrimeField, Rationals,
};

use crate::problem::{Check, ProblemSpec};
use crate::report::ReportDocument;
use crate::sweep::Point;
use crate::UsageError;

/// Work that is generic over the coefficient field.
pub trait FieldTask {
    type Output;
    fn run<F: Field>(self, field: F) -> Self::Output;
}

pub fn with_field<T: FieldTask>(spec: FieldSpec, task: T) -> Result<T::Output> {
    Ok(match spec {
        FieldSpec::Rationals => task.run(Rationals),
        FieldSpec::PrimeField(p) => task.run(PrimeField::new(p)?),
    })
}

/// A finished analysis with everything needed to render a report.
pub struct Analysis<F: Field> {
    pub data: DivisorData<F>,
    pub report: AnalysisReport<F>,
    pub checks: Vec<CheckResult>,
    /// Stages outside [`classify`], in seconds.
    pub extra_timings: Vec<(&'static str, f64)>,
}

impl<F: Field> Analysis<F> {
    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub fn build_divisor<F: Field>(
    field: F,
    spec: &ProblemSpec,
    bindings: &Bindings,
) -> Result<DivisorData<F>> {
    spec.validate()?;
    for p in &spec.parameters {
        if bindings.get(p).is_none() {
            return Err(UsageError(format!("parameter `{p}` has no value")).into());
        }
    }
    let ring = PolyRing::grevlex(field, &spec.variables)?;
    let f = ring.parse_with(&spec.f, bindings)?;
    Ok(DivisorData::new(&ring, f)?.with_semantics(spec.semantics))
}

/// build_divisor → classify → cross_validate.
pub fn analyze<F: Field>(field: F, spec: &ProblemSpec, bindings: &Bindings) -> Result<Analysis<F>> {
    let start = Instant::now();
    let data = build_divisor(field, spec, bindings)?;
    let mut extra_timings = vec![("build_divisor", start.elapsed().as_secs_f64())];
    let report = classify(&data, &spec.options())?;
    let checks = if spec.wants(Check::CrossValidate) {
        let start = Instant::now();
        let known = KnownBounds {
            l_of_f: spec.l_of_f(),
        };
        let checks = cross_validate(&data, &report, &known)?;
        extra_timings.push(("cross_validate", start.elapsed().as_secs_f64()));
        checks
    } else {
        Vec::new()
    };
    Ok(Analysis {
        data,
        report,
        checks,
        extra_timings,
    })
}

struct DocumentTask<'a> {
    spec: &'a ProblemSpec,
    point: Option<&'a Point>,
    timings: bool,
}

impl FieldTask for DocumentTask<'_> {
    type Output = Result<(ReportDocument, bool)>;

    fn run<F: Field>(self, field: F) -> Self::Output {
        let bindings = self.point.map(Point::bindings).unwrap_or_default();
        let analysis = analyze(field, self.spec, &bindings)?;
        let ok = analysis.checks_passed();
        Ok((
            ReportDocument::new(self.spec, self.point, &analysis, self.timings),
            ok,
        ))
    }
}

/// Runs `spec` (at `point`, for families) and renders the report.  The flag
/// is `false` when a consistency check failed.
pub fn analyze_spec(
    spec: &ProblemSpec,
    point: Option<&Point>,
    timings: bool,
) -> Result<(ReportDocument, bool)> {
    with_field(
        spec.field,
        DocumentTask {
            spec,
            point,
            timings,
        },
    )?
}
