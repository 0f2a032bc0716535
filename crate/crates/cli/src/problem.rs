//! Problem files: one germ per file, `key = value` lines plus the
//! expression grammar for `f`.

use std::collections::BTreeMap;
use std::path::Path;

use jactype::{AnalysisOptions, FieldSpec, Semantics};
use serde::{Deserialize, Serialize};

use crate::UsageError;

pub const DEFAULT_MAX_R: u32 = 50;

/// Pieces of the pipeline a problem asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    TTable,
    Rn,
    Rt,
    Classify,
    TopEquation,
    CrossValidate,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::TTable,
        Check::Rn,
        Check::Rt,
        Check::Classify,
        Check::TopEquation,
        Check::CrossValidate,
    ];

    pub fn all() -> Vec<Check> {
        Check::ALL.to_vec()
    }

    pub fn parse(name: &str) -> Result<Check, UsageError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == name.trim())
            .ok_or_else(|| UsageError(format!("unknown check `{name}`")))
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::TTable => "t_table",
            Check::Rn => "rn",
            Check::Rt => "rt",
            Check::Classify => "classify",
            Check::TopEquation => "top_equation",
            Check::CrossValidate => "cross_validate",
        }
    }
}

pub(crate) mod field_text {
    use jactype::FieldSpec;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FieldSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldSpec, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn default_field() -> FieldSpec {
    FieldSpec::PrimeField(jactype::DEFAULT_PRIME)
}

fn default_max_r() -> u32 {
    DEFAULT_MAX_R
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub variables: Vec<String>,
    #[serde(with = "field_text", default = "default_field")]
    pub field: FieldSpec,
    pub f: String,
    /// Highest degree of the T-table; `None` picks `max(8, rt + 3)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dmax: Option<u32>,
    #[serde(default = "default_max_r")]
    pub max_r: u32,
    #[serde(default = "Check::all")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub semantics: Semantics,
    /// Identifiers in `f` that a sweep instantiates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    /// Published values carried into the report untouched.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl ProblemSpec {
    pub fn new(name: &str, variables: &[&str], field: FieldSpec, f: &str) -> Self {
        ProblemSpec {
            name: name.into(),
            variables: variables.iter().map(|v| v.to_string()).collect(),
            field,
            f: f.into(),
            dmax: None,
            max_r: DEFAULT_MAX_R,
            checks: Check::all(),
            semantics: Semantics::Local,
            parameters: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_text(text: &str) -> Result<Self, UsageError> {
        let spec: ProblemSpec =
            toml::from_str(text).map_err(|e| UsageError(format!("problem file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// Structural checks; `f` itself is checked when the ring is built.
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.variables.is_empty() {
            return Err(UsageError("`variables` must not be empty".into()));
        }
        if let Some(d) = self.dmax {
            if d < 2 {
                return Err(UsageError(format!("dmax = {d}; it must be at least 2")));
            }
        }
        if self.max_r == 0 {
            return Err(UsageError("max_r must be positive".into()));
        }
        for p in &self.parameters {
            if self.variables.contains(p) {
                return Err(UsageError(format!("parameter `{p}` is also a variable")));
            }
        }
        Ok(())
    }

    pub fn wants(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }

    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            max_r: self.max_r,
            dmax: self.dmax,
            t_rows: if self.wants(Check::TTable) {
                None
            } else {
                Some(Vec::new())
            },
            effective_quotients: self.wants(Check::Classify),
            top_equation: self.wants(Check::TopEquation),
        }
    }

    /// `L(f)` from the metadata, if the problem carries one.
    pub fn l_of_f(&self) -> Option<u32> {
        self.metadata
            .get("l_of_f")
            .and_then(|v| v.as_u64())
            .map(|v| v as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let spec = ProblemSpec::from_text(
            r#"
            name = "cusp"
            variables = ["x", "y"]
            f = "x^2 + y^3"
            "#,
        )
        .unwrap();
        assert_eq!(spec.field, FieldSpec::PrimeField(32003));
        assert_eq!(spec.max_r, 50);
        assert_eq!(spec.checks, Check::all());
        assert_eq!(spec.semantics, Semantics::Local);
    }

    #[test]
    fn parses_full_file() {
        let spec = ProblemSpec::from_text(
            r#"
            name = "reiffen"
            variables = ["x", "y"]
            field = "q"
            f = "x^4 + y^5 + x*y^4"
            dmax = 6
            max_r = 10
            checks = ["rt", "cross_validate"]
            semantics = "global"
            [metadata]
            l_of_f = 2
            source = "table"
            "#,
        )
        .unwrap();
        assert_eq!(spec.field, FieldSpec::Rationals);
        assert_eq!(spec.dmax, Some(6));
        assert_eq!(spec.l_of_f(), Some(2));
        assert!(!spec.wants(Check::TTable));
        assert_eq!(spec.options().t_rows, Some(vec![]));
        assert_eq!(spec.semantics, Semantics::Global);
    }

    #[test]
    fn rejects_bad_files() {
        let base = "name = \"a\"\nvariables = [\"x\"]\nf = \"x^2\"\n";
        assert!(ProblemSpec::from_text(&format!("{base}dmax = 1\n")).is_err());
        assert!(ProblemSpec::from_text(&format!("{base}field = \"gf:4\"\n")).is_err());
        assert!(ProblemSpec::from_text(&format!("{base}colour = 3\n")).is_err());
        assert!(ProblemSpec::from_text(&format!("{base}checks = [\"nope\"]\n")).is_err());
        assert!(ProblemSpec::from_text("variables = []\nname = \"a\"\nf = \"x\"").is_err());
    }

    #[test]
    fn round_trips_through_toml() {
        let mut spec = ProblemSpec::new(
            "k",
            &["x", "y"],
            FieldSpec::Rationals,
            "x^7 + y^5 - t*x^5*y^3",
        );
        spec.parameters = vec!["t".into()];
        let text = toml::to_string(&spec).unwrap();
        assert_eq!(ProblemSpec::from_text(&text).unwrap(), spec);
    }
}
