//! JSON report shapes. Reports pass through `serde_json::Value`, whose
//! maps keep keys sorted, so output is byte-stable for identical input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::cover::CoveringBall;
use crate::crit::{DepthCertificate, FiberTerm, MeshTwoAnalysis, RadicalVerdict};
use crate::meshcat::{ClassVector, GradedDim};
use crate::oracle::OracleCertificate;
use crate::qcore::{Issue, Path, TranslationQuiver, ValidationReport};

#[derive(Serialize)]
pub struct ValidateReport {
    pub quiver: String,
    pub valid: bool,
    pub violations: Vec<Issue>,
    pub warnings: Vec<Issue>,
    pub max_degree: usize,
}

impl ValidateReport {
    pub fn new(q: &TranslationQuiver, r: &ValidationReport) -> Self {
        ValidateReport {
            quiver: q.name().to_owned(),
            valid: r.is_valid(),
            violations: r.violations.clone(),
            warnings: r.warnings.clone(),
            max_degree: r.max_degree,
        }
    }
}

#[derive(Serialize)]
pub struct QuiverText {
    pub name: String,
    pub text: String,
}

#[derive(Serialize)]
pub struct CollapseReport {
    pub text: String,
    pub multiplicity: BTreeMap<String, usize>,
}

#[derive(Serialize)]
pub struct CoverReport {
    pub basepoint: String,
    pub kind: &'static str,
    pub radius: usize,
    pub slack: usize,
    pub stable: bool,
    pub vertices: usize,
    pub arrows: usize,
    pub frontier: usize,
    pub text: String,
}

impl CoverReport {
    pub fn new(b: &CoveringBall, text: String) -> Self {
        let d = &b.delta;
        CoverReport {
            basepoint: d.vertex_id(b.basepoint).0.clone(),
            kind: b.kind.name(),
            radius: b.radius,
            slack: b.slack,
            stable: b.stable,
            vertices: d.vertex_count(),
            arrows: d.arrow_count(),
            frontier: d.vertex_indices().filter(|&v| d.is_frontier(v)).count(),
            text,
        }
    }
}

#[derive(Serialize)]
pub struct LiftReport {
    pub path: String,
    pub start: String,
    pub lift: String,
    pub end: String,
}

#[derive(Serialize)]
pub struct MeshDimReport {
    pub from: String,
    pub to: String,
    pub degree: usize,
    pub paths: usize,
    pub relations: usize,
    pub dim: usize,
    pub exact: bool,
    pub backend: &'static str,
}

#[derive(Serialize)]
pub struct Term {
    pub coefficient: String,
    pub path: String,
}

#[derive(Serialize)]
pub struct ComposeReport {
    pub path: String,
    pub degree: usize,
    pub dim: usize,
    pub exact: bool,
    pub class: &'static str,
    pub normal_form: Vec<Term>,
}

impl ComposeReport {
    pub fn new(q: &TranslationQuiver, p: &Path, c: &ClassVector, zero: bool) -> Self {
        ComposeReport {
            path: p.label(q),
            degree: c.degree(),
            dim: c.space().quotient_dim(),
            exact: c.space().is_exact(),
            class: if zero { "zero" } else { "nonzero" },
            normal_form: c
                .terms()
                .into_iter()
                .map(|(k, path)| Term {
                    coefficient: k.to_string(),
                    path: path.label(q),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictReport {
    pub path: String,
    pub n: usize,
    pub verdict: &'static str,
    pub sectional: bool,
    pub exact: bool,
}

impl VerdictReport {
    pub fn new(q: &TranslationQuiver, v: &RadicalVerdict) -> Self {
        VerdictReport {
            path: v.path.label(q),
            n: v.n,
            verdict: v.verdict.name(),
            sectional: v.sectional,
            exact: true,
        }
    }
}

#[derive(Serialize)]
pub struct SubstitutionReport {
    pub position: usize,
    pub degree: usize,
    pub path: String,
}

#[derive(Serialize)]
pub struct DepthReport {
    pub path: String,
    pub n: usize,
    pub max_extra: usize,
    pub cap: usize,
    pub exact: bool,
    pub found: bool,
    pub total_degree: Option<usize>,
    pub substitutions: Vec<SubstitutionReport>,
    pub composite: Option<String>,
    pub level: &'static str,
}

impl DepthReport {
    pub fn new(q: &TranslationQuiver, p: &Path, max_extra: usize, cap: usize, c: Option<&DepthCertificate>) -> Self {
        DepthReport {
            path: p.label(q),
            n: p.len(),
            max_extra,
            cap,
            exact: true,
            found: c.is_some(),
            total_degree: c.map(|c| c.total_degree),
            substitutions: c
                .map(|c| {
                    c.substitutions
                        .iter()
                        .map(|s| SubstitutionReport {
                            position: s.position,
                            degree: s.degree,
                            path: s.path.label(q),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            composite: c.map(|c| c.composite().label(q)),
            level: "mesh-level certificate",
        }
    }

    pub fn from_oracle(q: &TranslationQuiver, p: &Path, max_extra: usize, cap: usize, c: Option<&OracleCertificate>) -> Self {
        DepthReport {
            path: p.label(q),
            n: p.len(),
            max_extra,
            cap,
            exact: true,
            found: c.is_some(),
            total_degree: c.map(|c| c.total_degree),
            substitutions: Vec::new(),
            composite: c.map(|c| {
                Path {
                    start: p.start,
                    arrows: c.composite.clone(),
                }
                .label(q)
            }),
            level: "mesh-level certificate",
        }
    }
}

#[derive(Serialize)]
pub struct FiberSumReport {
    pub x: String,
    pub pi_x: String,
    pub y: String,
    pub degree: usize,
    pub total: usize,
    pub terms: Vec<FiberTerm>,
    pub base_dim: usize,
    pub base_exact: bool,
}

#[derive(Serialize)]
pub struct Mesh2Report {
    pub vertex: String,
    #[serde(flatten)]
    pub analysis: MeshTwoAnalysis,
}

#[derive(Serialize)]
pub struct DimsTableReport {
    pub from: String,
    pub to: String,
    pub dims: Vec<GradedDim>,
}

/// Two-column `key  value` table; arrays of objects become indented rows.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{}", scalar(v));
        return out;
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, val) in map {
        match val {
            Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                let _ = writeln!(out, "{k:width$}  ({})", items.len());
                for item in items {
                    let cells: Vec<String> = match item {
                        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect(),
                        other => vec![scalar(other)],
                    };
                    let _ = writeln!(out, "  {}", cells.join("  "));
                }
            }
            Value::Object(m) => {
                let _ = writeln!(out, "{k}");
                for (k2, v2) in m {
                    let _ = writeln!(out, "  {k2}  {}", scalar(v2));
                }
            }
            other => {
                let _ = writeln!(out, "{k:width$}  {}", scalar(other));
            }
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
