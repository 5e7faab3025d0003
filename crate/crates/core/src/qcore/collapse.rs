use std::collections::BTreeMap;

use super::quiver::{ArrowId, ArrowIndex, TranslationQuiver, VertexIndex};

/// Γ ↦ Γ^v: parallel arrows merged into one.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub quiver: TranslationQuiver,
    /// Number of original arrows behind each collapsed arrow.
    pub multiplicity: BTreeMap<ArrowId, usize>,
    /// Original arrow index → collapsed arrow index.
    pub class_of: Vec<ArrowIndex>,
}

/// Replaces every bundle of parallel arrows by a single arrow, named after the
/// lexicographically least member. Vertices and τ are unchanged; σ is induced.
pub fn collapse(q: &TranslationQuiver) -> Collapse {
    let mut bundles: BTreeMap<(VertexIndex, VertexIndex), Vec<ArrowIndex>> = BTreeMap::new();
    for a in q.arrow_indices() {
        bundles.entry((q.source(a), q.target(a))).or_default().push(a);
    }
    let mut rep = vec![ArrowIndex(0); q.arrow_count()];
    let mut multiplicity = BTreeMap::new();
    let mut b = super::QuiverBuilder::new(q.name());
    for v in q.vertices() {
        b.vertex(v.id.0.clone(), v.flags);
    }
    for x in q.vertex_indices() {
        if let Some(t) = q.tau(x) {
            b.tau(q.vertex_id(x).0.clone(), q.vertex_id(t).0.clone());
        }
    }
    for ((s, t), members) in &bundles {
        let head = members[0];
        for &m in members {
            rep[m.ix()] = head;
        }
        b.arrow(
            q.arrow_id(head).0.clone(),
            q.vertex_id(*s).0.clone(),
            q.vertex_id(*t).0.clone(),
        );
        multiplicity.insert(q.arrow_id(head).clone(), members.len());
    }
    for members in bundles.values() {
        // first member with σ defined decides; parallel members agree on valid input
        if let Some(s) = members.iter().find_map(|&m| q.sigma(m)) {
            b.sigma(
                q.arrow_id(members[0]).0.clone(),
                q.arrow_id(rep[s.ix()]).0.clone(),
            );
        }
    }
    let quiver = b.build().expect("collapse preserves well-formed ids");
    let class_of = rep
        .iter()
        .map(|&h| quiver.find_arrow(&q.arrow_id(h).0).expect("collapsed arrow exists"))
        .collect();
    Collapse {
        quiver,
        multiplicity,
        class_of,
    }
}
