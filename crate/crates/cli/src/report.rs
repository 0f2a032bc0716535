//! The JSON report document.  Field layout is fixed by
//! [`SCHEMA_VERSION`]; see `docs/report-schema.json`.

use std::collections::BTreeMap;

use jactype::{
    CheckResult, Field, FieldSpec, PolyRing, Polynomial, RelationType, Semantics, Verdict,
};
use serde::{Deserialize, Serialize};

use crate::problem::ProblemSpec;
use crate::run::Analysis;
use crate::sweep::Point;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXACT: &str = "exact";
pub const CHARACTERISTIC_P: &str = "characteristic-p evidence";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub problem: ProblemSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub point: BTreeMap<String, String>,
    /// The polynomial actually analyzed.
    pub f: String,
    /// `exact` over Q, `characteristic-p evidence` over GF(p).
    pub evidence: String,
    pub semantics: Semantics,
    pub analysis: AnalysisSection,
    pub rees: ReesSection,
    pub checks: Vec<CheckResult>,
    pub verified_ranges: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub smooth: bool,
    pub r_of_f: u32,
    pub id_of_f: u32,
    pub rn: u32,
    pub rt: u32,
    pub rt_gradient: u32,
    pub verdict: Verdict,
    pub euler_homogeneous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_witness: Option<Witness>,
    pub regular_sequence: bool,
    pub dmax: u32,
    pub t_table: Vec<TEntry>,
    pub effective_quotients: Vec<QuotientEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub unit: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEntry {
    pub i: usize,
    pub d: u32,
    pub vanishes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEntry {
    pub d: u32,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesSection {
    /// Variable names of the presentation ring.
    pub variables: Vec<String>,
    pub histogram: Vec<DegreeCount>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_type: Option<RelationTypeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradient_relation_type: Option<RelationTypeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_equation: Option<TopEquationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTypeDoc {
    pub rt: u32,
    pub evidence: Vec<EvidenceDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDoc {
    pub degree: u32,
    pub elements: usize,
    /// Equations of this degree not generated by lower degrees.
    pub survivors: Vec<String>,
    pub local_only: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopEquationDoc {
    pub degree: u32,
    pub equation: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

fn presentation_names(base: &[String], count: usize, s_last: bool) -> Vec<String> {
    let mut names = base.to_vec();
    for j in 0..count {
        if s_last && j + 1 == count {
            names.push("s".into());
        } else {
            names.push(format!("u{}", j + 1));
        }
    }
    names
}

fn relation_doc<F: Field>(ring: &PolyRing<F>, rel: &RelationType<F::Elem>) -> RelationTypeDoc {
    RelationTypeDoc {
        rt: rel.rt,
        evidence: rel
            .evidence
            .iter()
            .map(|e| EvidenceDoc {
                degree: e.degree,
                elements: e.elements,
                survivors: e.survivors.iter().map(|p| ring.render(p)).collect(),
                local_only: e.local_only,
            })
            .collect(),
    }
}

fn render_opt<F: Field>(ring: &PolyRing<F>, p: &Option<Polynomial<F::Elem>>) -> Option<String> {
    p.as_ref().map(|p| ring.render(p))
}

impl ReportDocument {
    pub fn new<F: Field>(
        spec: &ProblemSpec,
        point: Option<&Point>,
        analysis: &Analysis<F>,
        timings: bool,
    ) -> Self {
        let data = &analysis.data;
        let report = &analysis.report;
        let ring = data.ring();
        let field = ring.field().spec();
        let base_names = ring.names().to_vec();
        let n = data.nvars();

        let jac_names = presentation_names(&base_names, n + 1, true);
        let jac_ring = PolyRing::grevlex(ring.field().clone(), &jac_names)
            .expect("presentation names are distinct");
        let grad_count = data.partials().iter().filter(|p| !p.is_zero()).count();
        let grad_ring = PolyRing::grevlex(
            ring.field().clone(),
            &presentation_names(&base_names, grad_count.max(1), false),
        )
        .expect("presentation names are distinct");

        let analysis_section = AnalysisSection {
            smooth: report.smooth,
            r_of_f: report.r_of_f,
            id_of_f: report.id_of_f,
            rn: report.rn,
            rt: report.rt,
            rt_gradient: report.rt_gradient,
            verdict: report.verdict,
            euler_homogeneous: report.euler_homogeneous,
            euler_witness: report.euler_witness.as_ref().map(|w| Witness {
                unit: ring.render(&w.unit),
                target: ring.render(&w.target),
            }),
            regular_sequence: report.regular_sequence,
            dmax: report.t_table.dmax,
            t_table: report
                .t_table
                .entries
                .iter()
                .map(|e| TEntry {
                    i: e.i,
                    d: e.d,
                    vanishes: e.vanishes,
                    obstruction: render_opt(ring, &e.obstruction),
                })
                .collect(),
            effective_quotients: report
                .effective_quotients
                .iter()
                .map(|&(d, vanishes)| QuotientEntry { d, vanishes })
                .collect(),
        };

        let rees = ReesSection {
            variables: jac_names,
            histogram: report
                .rees_histogram
                .iter()
                .map(|&(degree, count)| DegreeCount { degree, count })
                .collect(),
            relation_type: report
                .relation_type
                .as_ref()
                .map(|r| relation_doc(&jac_ring, r)),
            gradient_relation_type: report
                .gradient_relation_type
                .as_ref()
                .map(|r| relation_doc(&grad_ring, r)),
            top_equation: report.top_equation.as_ref().map(|t| TopEquationDoc {
                degree: t.degree,
                equation: jac_ring.render(&t.equation),
                unit: ring.render(&t.unit),
            }),
        };

        let mut verified = Vec::new();
        if !report.smooth {
            let rows = if report.t_table.rows.is_empty() {
                "no rows".to_string()
            } else {
                let r: Vec<String> = report.t_table.rows.iter().map(|i| i.to_string()).collect();
                format!("rows i in {{{}}}", r.join(", "))
            };
            verified.push(format!(
                "T_{{i,d}} computed for {rows} and 1 <= d <= {}; nothing is claimed for larger d",
                report.t_table.dmax
            ));
            if !report.effective_quotients.is_empty() {
                verified.push(format!(
                    "effective quotients computed for 2 <= d <= {}",
                    report.t_table.dmax
                ));
            }
            verified.push(
                "rt and rt(J) are read off a finite reduced Groebner basis of the Rees ideal"
                    .to_string(),
            );
            verified.push(format!(
                "rn, id(f) and r(f) searched up to max_r = {}",
                spec.max_r
            ));
        }
        verified.push(match data.semantics() {
            Semantics::Local => "memberships decided in the local ring at the origin".to_string(),
            Semantics::Global => "memberships decided in the polynomial ring".to_string(),
        });
        let evidence = match field {
            FieldSpec::Rationals => EXACT,
            FieldSpec::PrimeField(p) => {
                verified.push(format!(
                    "computed over GF({p}); integer and boolean outputs are evidence for characteristic 0"
                ));
                CHARACTERISTIC_P
            }
        };

        let timings = timings.then(|| {
            analysis
                .extra_timings
                .iter()
                .take(1)
                .chain(report.timings.iter())
                .chain(analysis.extra_timings.iter().skip(1))
                .map(|&(stage, seconds)| Timing {
                    stage: stage.to_string(),
                    seconds,
                })
                .collect()
        });

        let mut problem = spec.clone();
        problem.field = field;
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: Tool {
                name: "jactype".into(),
                version: env!("CARGO_PKG_VERSION").into(),
            },
            problem,
            point: point.map(Point::labels).unwrap_or_default(),
            f: ring.render(data.f()),
            evidence: evidence.into(),
            semantics: data.semantics(),
            analysis: analysis_section,
            rees,
            checks: analysis.checks.clone(),
            verified_ranges: verified,
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The serialized name of a verdict.
pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::LinearJacobianType => "linear_jacobian_type",
        Verdict::ExpectedJacobianType => "expected_jacobian_type",
        Verdict::Neither => "neither",
    }
}
