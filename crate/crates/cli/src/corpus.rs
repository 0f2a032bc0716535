//! Example corpus: problems with pinned expected values per field.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use jactype::{Field, FieldSpec, Ideal, Semantics, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::problem::{Check, ProblemSpec, DEFAULT_MAX_R};
use crate::report::ReportDocument;
use crate::run::{analyze, with_field, FieldTask};
use crate::{Exit, UsageError};

pub const BUNDLED: &str = include_str!("../corpus/examples.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(rename = "entry", default)]
    pub entries: Vec<CorpusEntry>,
}

fn default_fields() -> Vec<String> {
    vec![format!("gf:{}", jactype::DEFAULT_PRIME)]
}

fn default_max_r() -> u32 {
    DEFAULT_MAX_R
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub variables: Vec<String>,
    pub f: String,
    /// Fields the expectations are pinned for.
    #[serde(default = "default_fields")]
    pub fields: Vec<String>,
    #[serde(default)]
    pub dmax: Option<u32>,
    #[serde(default = "default_max_r")]
    pub max_r: u32,
    #[serde(default = "Check::all")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub semantics: Semantics,
    #[serde(default)]
    pub slow: bool,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub expect: Expectations,
}

/// Expected outputs; absent keys are not compared.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub rn: Option<u32>,
    pub rt: Option<u32>,
    pub rt_gradient: Option<u32>,
    pub r_of_f: Option<u32>,
    pub id_of_f: Option<u32>,
    pub verdict: Option<Verdict>,
    pub euler_homogeneous: Option<bool>,
    pub regular_sequence: Option<bool>,
    /// `[i, lo, hi]`: `T_{i,d} = 0` for `lo <= d <= hi`.
    #[serde(default)]
    pub t_zero: Vec<[u32; 3]>,
    /// `[i, lo, hi]`: `T_{i,d} != 0` for `lo <= d <= hi`.
    #[serde(default)]
    pub t_nonzero: Vec<[u32; 3]>,
    /// Generators of `(J : f)`, compared as ideals under the entry's semantics.
    pub gradient_colon_f: Option<Vec<String>>,
}

impl Corpus {
    pub fn from_text(text: &str) -> Result<Corpus, UsageError> {
        let corpus: Corpus =
            toml::from_str(text).map_err(|e| UsageError(format!("corpus: {e}")))?;
        for e in &corpus.entries {
            e.field_specs()?;
            e.spec(FieldSpec::Rationals).validate()?;
        }
        Ok(corpus)
    }

    pub fn load(path: &Path) -> Result<Corpus, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn bundled() -> Corpus {
        Self::from_text(BUNDLED).expect("bundled corpus parses")
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl CorpusEntry {
    pub fn field_specs(&self) -> Result<Vec<FieldSpec>, UsageError> {
        self.fields
            .iter()
            .map(|f| {
                f.parse()
                    .map_err(|e| UsageError(format!("entry {}: {e}", self.name)))
            })
            .collect()
    }

    pub fn spec(&self, field: FieldSpec) -> ProblemSpec {
        ProblemSpec {
            name: self.name.clone(),
            variables: self.variables.clone(),
            field,
            f: self.f.clone(),
            dmax: self.dmax,
            max_r: self.max_r,
            checks: self.checks.clone(),
            semantics: self.semantics,
            parameters: Vec::new(),
            metadata: self.metadata.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub name: String,
    pub field: FieldSpec,
    pub mismatches: Vec<String>,
    pub failed_checks: Vec<String>,
    pub error: Option<String>,
    pub seconds: f64,
    pub report: Option<Box<ReportDocument>>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty() && self.failed_checks.is_empty()
    }

    pub fn exit(&self) -> Exit {
        if self.error.is_some() || !self.mismatches.is_empty() {
            Exit::Failure
        } else if !self.failed_checks.is_empty() {
            Exit::CheckFailed
        } else {
            Exit::Success
        }
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {} [{}] {:.2}s",
            self.name, self.field, self.seconds
        );
        if let Some(e) = &self.error {
            line.push_str(&format!("\n    error: {e}"));
        }
        for m in &self.mismatches {
            line.push_str(&format!("\n    mismatch: {m}"));
        }
        for c in &self.failed_checks {
            line.push_str(&format!("\n    check failed: {c}"));
        }
        line
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    what: &str,
    want: &Option<T>,
    got: T,
) {
    if let Some(w) = want {
        if *w != got {
            out.push(format!("{what}: expected {w:?}, got {got:?}"));
        }
    }
}

/// Differences between `expect` and a finished report.
pub fn mismatches(expect: &Expectations, doc: &ReportDocument) -> Vec<String> {
    let a = &doc.analysis;
    let mut out = Vec::new();
    compare(&mut out, "rn", &expect.rn, a.rn);
    compare(&mut out, "rt", &expect.rt, a.rt);
    compare(&mut out, "rt_gradient", &expect.rt_gradient, a.rt_gradient);
    compare(&mut out, "r_of_f", &expect.r_of_f, a.r_of_f);
    compare(&mut out, "id_of_f", &expect.id_of_f, a.id_of_f);
    compare(&mut out, "verdict", &expect.verdict, a.verdict);
    compare(
        &mut out,
        "euler_homogeneous",
        &expect.euler_homogeneous,
        a.euler_homogeneous,
    );
    compare(
        &mut out,
        "regular_sequence",
        &expect.regular_sequence,
        a.regular_sequence,
    );
    let cell = |i: u32, d: u32| {
        a.t_table
            .iter()
            .find(|e| e.i == i as usize && e.d == d)
            .map(|e| e.vanishes)
    };
    for (ranges, want) in [(&expect.t_zero, true), (&expect.t_nonzero, false)] {
        for &[i, lo, hi] in ranges.iter() {
            for d in lo..=hi {
                match cell(i, d) {
                    None => out.push(format!("T_{{{i},{d}}}: not computed (dmax = {})", a.dmax)),
                    Some(v) if v != want => out.push(format!(
                        "T_{{{i},{d}}}: expected {}, got {}",
                        if want { "0" } else { "nonzero" },
                        if v { "0" } else { "nonzero" }
                    )),
                    Some(_) => {}
                }
            }
        }
    }
    out
}

struct EntryTask<'a> {
    entry: &'a CorpusEntry,
    spec: ProblemSpec,
    timings: bool,
}

impl FieldTask for EntryTask<'_> {
    type Output = Result<(ReportDocument, Vec<String>, Vec<String>)>;

    fn run<F: Field>(self, field: F) -> Self::Output {
        let analysis = analyze(field, &self.spec, &Default::default())?;
        let doc = ReportDocument::new(&self.spec, None, &analysis, self.timings);
        let mut diffs = mismatches(&self.entry.expect, &doc);
        if let Some(gens) = &self.entry.expect.gradient_colon_f {
            let data = &analysis.data;
            let texts: Vec<&str> = gens.iter().map(String::as_str).collect();
            let want = Ideal::parse(data.ring(), &texts)?;
            let got = data.gradient().colon(data.f());
            let sem = data.semantics();
            if !(got.is_subset_with(&want, sem) && want.is_subset_with(&got, sem)) {
                let rendered: Vec<String> = got
                    .groebner_basis()
                    .elements()
                    .iter()
                    .map(|p| data.ring().render(p))
                    .collect();
                diffs.push(format!(
                    "(J : f): expected ({}), got ({})",
                    gens.join(", "),
                    rendered.join(", ")
                ));
            }
        }
        let failed = analysis
            .failed_checks()
            .iter()
            .map(|c| format!("{}: {} ({})", c.name, c.statement, c.detail))
            .collect();
        Ok((doc, diffs, failed))
    }
}

pub fn run_entry(entry: &CorpusEntry, field: FieldSpec, timings: bool) -> EntryOutcome {
    let start = Instant::now();
    let task = EntryTask {
        entry,
        spec: entry.spec(field),
        timings,
    };
    let result = with_field(field, task).and_then(|r| r);
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok((doc, mismatches, failed_checks)) => EntryOutcome {
            name: entry.name.clone(),
            field,
            mismatches,
            failed_checks,
            error: None,
            seconds,
            report: Some(Box::new(doc)),
        },
        Err(e) => EntryOutcome {
            name: entry.name.clone(),
            field,
            mismatches: Vec::new(),
            failed_checks: Vec::new(),
            error: Some(format!("{e:#}")),
            seconds,
            report: None,
        },
    }
}

/// Which entries and fields to run.
#[derive(Debug, Clone, Default)]
pub struct Selection {
    pub include_slow: bool,
    /// Restrict to one field; entries not pinned for it are skipped.
    pub field: Option<FieldSpec>,
    /// Entry names; empty selects all.
    pub only: Vec<String>,
}

pub fn jobs<'a>(corpus: &'a Corpus, sel: &Selection) -> Vec<(&'a CorpusEntry, FieldSpec)> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        if (e.slow && !sel.include_slow) || (!sel.only.is_empty() && !sel.only.contains(&e.name)) {
            continue;
        }
        for f in e.field_specs().expect("validated on load") {
            if sel.field.is_none_or(|want| want == f) {
                out.push((e, f));
            }
        }
    }
    out
}

/// Runs the selected entries, in corpus order.
pub fn run_corpus(corpus: &Corpus, sel: &Selection, timings: bool) -> Vec<EntryOutcome> {
    jobs(corpus, sel)
        .into_par_iter()
        .map(|(e, f)| run_entry(e, f, timings))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let c = Corpus::bundled();
        assert!(c.entries.len() >= 10);
        assert!(c.entries.iter().any(|e| e.slow));
        let fast = jobs(&c, &Selection::default());
        assert!(fast.iter().all(|(e, _)| !e.slow));
        let q = jobs(
            &c,
            &Selection {
                field: Some(FieldSpec::Rationals),
                ..Default::default()
            },
        );
        assert!(!q.is_empty());
        assert!(q.iter().all(|(_, f)| *f == FieldSpec::Rationals));
    }

    #[test]
    fn rejects_unknown_keys_and_fields() {
        let base = "[[entry]]\nname = \"a\"\nvariables = [\"x\", \"y\"]\nf = \"x^2 + y^3\"\n";
        assert!(Corpus::from_text(base).is_ok());
        assert!(Corpus::from_text(&format!("{base}fields = [\"gf:9\"]\n")).is_err());
        assert!(Corpus::from_text(&format!("{base}[entry.expect]\nrtt = 1\n")).is_err());
    }
}
