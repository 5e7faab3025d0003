use std::collections::BTreeSet;

use serde::Serialize;

use super::quiver::{TranslationQuiver, VertexIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    Loop,
    TauOnProjective,
    TauMissing,
    TauNotInjective,
    TauOntoInjective,
    NotInTauImage,
    SigmaMissing,
    SigmaWrongEnds,
    SigmaNotBijective,
    SigmaUnexpected,
    /// Used by covering checks.
    FlagMismatch,
    TauNotCommuting,
    ArrowBijection,
    QuiverMap,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Issue {
    pub kind: IssueKind,
    pub location: String,
    pub message: String,
}

/// Result of an axiom check. Empty `violations` means valid; `warnings`
/// collects the gaps excused because they sit at frontier vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Issue>,
    pub warnings: Vec<Issue>,
    pub max_degree: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, excused: bool, kind: IssueKind, location: String, message: String) {
        let issue = Issue {
            kind,
            location,
            message,
        };
        if excused {
            self.warnings.push(issue);
        } else {
            self.violations.push(issue);
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self.warnings.sort();
        self.warnings.dedup();
        self
    }
}

/// Checks the translation quiver axioms and reports every violation.
pub fn validate(q: &TranslationQuiver) -> ValidationReport {
    let mut r = ValidationReport::default();
    let vid = |v: VertexIndex| q.vertex_id(v).0.clone();

    for a in q.arrow_indices() {
        if q.source(a) == q.target(a) {
            let v = vid(q.source(a));
            r.push(
                false,
                IssueKind::Loop,
                v.clone(),
                format!("loop at {} (arrow {})", v, q.arrow_id(a)),
            );
        }
    }

    let mut preimages: Vec<Vec<VertexIndex>> = vec![Vec::new(); q.vertex_count()];
    for x in q.vertex_indices() {
        r.max_degree = r.max_degree.max(q.degree(x));
        let flags = q.flags(x);
        match q.tau(x) {
            Some(t) => {
                preimages[t.ix()].push(x);
                if flags.projective {
                    r.push(
                        false,
                        IssueKind::TauOnProjective,
                        vid(x),
                        format!("tau defined on projective vertex {}", vid(x)),
                    );
                }
                if q.is_injective(t) {
                    r.push(
                        false,
                        IssueKind::TauOntoInjective,
                        vid(x),
                        format!("tau({}) = {} is injective", vid(x), vid(t)),
                    );
                }
            }
            None if !flags.projective => r.push(
                flags.frontier,
                IssueKind::TauMissing,
                vid(x),
                format!("tau undefined on non-projective vertex {}", vid(x)),
            ),
            None => {}
        }
    }
    for y in q.vertex_indices() {
        let pre = &preimages[y.ix()];
        if pre.len() > 1 {
            let names: Vec<String> = pre.iter().map(|&v| vid(v)).collect();
            r.push(
                false,
                IssueKind::TauNotInjective,
                vid(y),
                format!("tau sends {} to {}", names.join(", "), vid(y)),
            );
        }
        if pre.is_empty() && !q.is_injective(y) {
            r.push(
                q.is_frontier(y),
                IssueKind::NotInTauImage,
                vid(y),
                format!("non-injective vertex {} is not in the image of tau", vid(y)),
            );
        }
    }

    for a in q.arrow_indices() {
        let x = q.target(a);
        let meshed = !q.is_projective(x) && q.tau(x).is_some();
        if q.sigma(a).is_some() && !meshed {
            r.push(
                false,
                IssueKind::SigmaUnexpected,
                q.arrow_id(a).0.clone(),
                format!(
                    "sigma defined on {} whose target {} has no translate",
                    q.arrow_id(a),
                    vid(x)
                ),
            );
        }
    }

    for x in q.vertex_indices() {
        if q.is_projective(x) {
            continue;
        }
        let Some(t) = q.tau(x) else { continue };
        let excused = q.is_frontier(x);
        let mut hit = BTreeSet::new();
        for &a in q.arrows_into(x) {
            match q.sigma(a) {
                None => r.push(
                    excused,
                    IssueKind::SigmaMissing,
                    q.arrow_id(a).0.clone(),
                    format!("sigma undefined on {} (mesh at {})", q.arrow_id(a), vid(x)),
                ),
                Some(s) => {
                    if q.source(s) != t || q.target(s) != q.source(a) {
                        r.push(
                            false,
                            IssueKind::SigmaWrongEnds,
                            q.arrow_id(a).0.clone(),
                            format!(
                                "sigma({}) = {} must go from {} to {}",
                                q.arrow_id(a),
                                q.arrow_id(s),
                                vid(t),
                                vid(q.source(a))
                            ),
                        );
                    }
                    if !hit.insert(s) {
                        r.push(
                            false,
                            IssueKind::SigmaNotBijective,
                            vid(x),
                            format!("sigma hits {} twice in the mesh at {}", q.arrow_id(s), vid(x)),
                        );
                    }
                }
            }
        }
        for &b in q.arrows_from(t) {
            if !hit.contains(&b) {
                r.push(
                    excused,
                    IssueKind::SigmaNotBijective,
                    vid(x),
                    format!(
                        "arrow {} out of tau({}) is not a sigma image",
                        q.arrow_id(b),
                        vid(x)
                    ),
                );
            }
        }
    }
    r.finish()
}
