use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier. Ordering is lexicographic on the string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

/// Opaque arrow identifier. Ordering is lexicographic on the string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&str> for ArrowId {
    fn from(s: &str) -> Self {
        ArrowId(s.to_owned())
    }
}

impl From<String> for ArrowId {
    fn from(s: String) -> Self {
        ArrowId(s)
    }
}

/// Dense index of a vertex inside one [`TranslationQuiver`].
///
/// Vertices are stored sorted by id, so comparing indices of the same quiver
/// agrees with comparing ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIndex(pub u32);

/// Dense index of an arrow inside one [`TranslationQuiver`], ordered like the ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowIndex(pub u32);

impl VertexIndex {
    #[inline]
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl ArrowIndex {
    #[inline]
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexFlags {
    pub projective: bool,
    pub injective: bool,
    /// Truncation boundary of a finite window onto an infinite quiver.
    pub frontier: bool,
}

impl VertexFlags {
    pub const NONE: VertexFlags = VertexFlags {
        projective: false,
        injective: false,
        frontier: false,
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub flags: VertexFlags,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: VertexIndex,
    pub target: VertexIndex,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("tau already defined at {0}")]
    DuplicateTau(String),
    #[error("sigma already defined at {0}")]
    DuplicateSigma(String),
}

/// A finite translation quiver (or a finite window onto an infinite one).
///
/// Immutable after [`QuiverBuilder::build`]; all queries take `&self`.
/// Structural axioms are not enforced here, see [`crate::qcore::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver {
    name: String,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    tau: Vec<Option<VertexIndex>>,
    tau_inv: Vec<Option<VertexIndex>>,
    sigma: Vec<Option<ArrowIndex>>,
    out: Vec<Vec<ArrowIndex>>,
    inc: Vec<Vec<ArrowIndex>>,
}

impl TranslationQuiver {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_indices(&self) -> impl Iterator<Item = VertexIndex> + '_ {
        (0..self.vertices.len() as u32).map(VertexIndex)
    }

    pub fn arrow_indices(&self) -> impl Iterator<Item = ArrowIndex> + '_ {
        (0..self.arrows.len() as u32).map(ArrowIndex)
    }

    pub fn vertex(&self, v: VertexIndex) -> &Vertex {
        &self.vertices[v.ix()]
    }

    pub fn arrow(&self, a: ArrowIndex) -> &Arrow {
        &self.arrows[a.ix()]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn flags(&self, v: VertexIndex) -> VertexFlags {
        self.vertices[v.ix()].flags
    }

    pub fn is_projective(&self, v: VertexIndex) -> bool {
        self.flags(v).projective
    }

    pub fn is_injective(&self, v: VertexIndex) -> bool {
        self.flags(v).injective
    }

    pub fn is_frontier(&self, v: VertexIndex) -> bool {
        self.flags(v).frontier
    }

    pub fn vertex_id(&self, v: VertexIndex) -> &VertexId {
        &self.vertices[v.ix()].id
    }

    pub fn arrow_id(&self, a: ArrowIndex) -> &ArrowId {
        &self.arrows[a.ix()].id
    }

    pub fn source(&self, a: ArrowIndex) -> VertexIndex {
        self.arrows[a.ix()].source
    }

    pub fn target(&self, a: ArrowIndex) -> VertexIndex {
        self.arrows[a.ix()].target
    }

    pub fn find_vertex(&self, id: &str) -> Option<VertexIndex> {
        self.vertices
            .binary_search_by(|v| v.id.0.as_str().cmp(id))
            .ok()
            .map(|i| VertexIndex(i as u32))
    }

    pub fn find_arrow(&self, id: &str) -> Option<ArrowIndex> {
        self.arrows
            .binary_search_by(|a| a.id.0.as_str().cmp(id))
            .ok()
            .map(|i| ArrowIndex(i as u32))
    }

    pub fn tau(&self, v: VertexIndex) -> Option<VertexIndex> {
        self.tau[v.ix()]
    }

    /// Inverse translation, when some vertex translates onto `v`.
    pub fn tau_inverse(&self, v: VertexIndex) -> Option<VertexIndex> {
        self.tau_inv[v.ix()]
    }

    pub fn sigma(&self, a: ArrowIndex) -> Option<ArrowIndex> {
        self.sigma[a.ix()]
    }

    /// Arrows starting at `v`, sorted by id.
    pub fn arrows_from(&self, v: VertexIndex) -> &[ArrowIndex] {
        &self.out[v.ix()]
    }

    /// Arrows ending at `v`, sorted by id.
    pub fn arrows_into(&self, v: VertexIndex) -> &[ArrowIndex] {
        &self.inc[v.ix()]
    }

    pub fn degree(&self, v: VertexIndex) -> usize {
        self.out[v.ix()].len() + self.inc[v.ix()].len()
    }

    /// Builder pre-populated with this quiver's data, for derived quivers.
    pub fn to_builder(&self) -> QuiverBuilder {
        let mut b = QuiverBuilder::new(self.name.clone());
        for v in &self.vertices {
            b.vertex(v.id.0.clone(), v.flags);
        }
        for a in &self.arrows {
            b.arrow(
                a.id.0.clone(),
                self.vertices[a.source.ix()].id.0.clone(),
                self.vertices[a.target.ix()].id.0.clone(),
            );
        }
        for v in self.vertex_indices() {
            if let Some(t) = self.tau(v) {
                b.tau(self.vertex_id(v).0.clone(), self.vertex_id(t).0.clone());
            }
        }
        for a in self.arrow_indices() {
            if let Some(s) = self.sigma(a) {
                b.sigma(self.arrow_id(a).0.clone(), self.arrow_id(s).0.clone());
            }
        }
        b
    }
}

/// Collects vertices, arrows, τ and σ by id and resolves them on `build`.
#[derive(Debug, Clone, Default)]
pub struct QuiverBuilder {
    name: String,
    vertices: Vec<(String, VertexFlags)>,
    arrows: Vec<(String, String, String)>,
    tau: Vec<(String, String)>,
    sigma: Vec<(String, String)>,
}

impl QuiverBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        QuiverBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn set_name(&mut self, name: impl Into<String>) -> &mut Self {
        self.name = name.into();
        self
    }

    pub fn vertex(&mut self, id: impl Into<String>, flags: VertexFlags) -> &mut Self {
        self.vertices.push((id.into(), flags));
        self
    }

    pub fn arrow(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> &mut Self {
        self.arrows.push((id.into(), source.into(), target.into()));
        self
    }

    pub fn tau(&mut self, x: impl Into<String>, y: impl Into<String>) -> &mut Self {
        self.tau.push((x.into(), y.into()));
        self
    }

    pub fn sigma(&mut self, a: impl Into<String>, b: impl Into<String>) -> &mut Self {
        self.sigma.push((a.into(), b.into()));
        self
    }

    pub fn build(&self) -> Result<TranslationQuiver, BuildError> {
        let mut vmap: BTreeMap<&str, VertexFlags> = BTreeMap::new();
        for (id, flags) in &self.vertices {
            if vmap.insert(id.as_str(), *flags).is_some() {
                return Err(BuildError::DuplicateVertex(id.clone()));
            }
        }
        let vertices: Vec<Vertex> = vmap
            .iter()
            .map(|(id, flags)| Vertex {
                id: VertexId((*id).to_owned()),
                flags: *flags,
            })
            .collect();
        let vindex: BTreeMap<&str, VertexIndex> = vmap
            .keys()
            .enumerate()
            .map(|(i, id)| (*id, VertexIndex(i as u32)))
            .collect();
        let lookup_v = |id: &str| {
            vindex
                .get(id)
                .copied()
                .ok_or_else(|| BuildError::UnknownVertex(id.to_owned()))
        };

        let mut amap: BTreeMap<&str, (VertexIndex, VertexIndex)> = BTreeMap::new();
        for (id, s, t) in &self.arrows {
            let ends = (lookup_v(s)?, lookup_v(t)?);
            if amap.insert(id.as_str(), ends).is_some() {
                return Err(BuildError::DuplicateArrow(id.clone()));
            }
        }
        let arrows: Vec<Arrow> = amap
            .iter()
            .map(|(id, (s, t))| Arrow {
                id: ArrowId((*id).to_owned()),
                source: *s,
                target: *t,
            })
            .collect();
        let aindex: BTreeMap<&str, ArrowIndex> = amap
            .keys()
            .enumerate()
            .map(|(i, id)| (*id, ArrowIndex(i as u32)))
            .collect();
        let lookup_a = |id: &str| {
            aindex
                .get(id)
                .copied()
                .ok_or_else(|| BuildError::UnknownArrow(id.to_owned()))
        };

        let n = vertices.len();
        let mut tau = vec![None; n];
        let mut tau_inv = vec![None; n];
        for (x, y) in &self.tau {
            let (xi, yi) = (lookup_v(x)?, lookup_v(y)?);
            if tau[xi.ix()].replace(yi).is_some() {
                return Err(BuildError::DuplicateTau(x.clone()));
            }
            // non-injective τ is reported by validate; keep the smallest preimage
            let slot: &mut Option<VertexIndex> = &mut tau_inv[yi.ix()];
            if slot.map_or(true, |old| xi < old) {
                *slot = Some(xi);
            }
        }
        let mut sigma = vec![None; arrows.len()];
        for (a, b) in &self.sigma {
            let (ai, bi) = (lookup_a(a)?, lookup_a(b)?);
            if sigma[ai.ix()].replace(bi).is_some() {
                return Err(BuildError::DuplicateSigma(a.clone()));
            }
        }

        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            out[a.source.ix()].push(ArrowIndex(i as u32));
            inc[a.target.ix()].push(ArrowIndex(i as u32));
        }

        Ok(TranslationQuiver {
            name: self.name.clone(),
            vertices,
            arrows,
            tau,
            tau_inv,
            sigma,
            out,
            inc,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_follow_lexicographic_ids() {
        let mut b = QuiverBuilder::new("t");
        b.vertex("b", VertexFlags::NONE)
            .vertex("a", VertexFlags::NONE)
            .arrow("z", "a", "b")
            .arrow("y", "b", "a");
        let q = b.build().unwrap();
        assert_eq!(q.vertex_id(VertexIndex(0)).0, "a");
        assert_eq!(q.arrow_id(ArrowIndex(0)).0, "y");
        assert_eq!(q.find_arrow("z"), Some(ArrowIndex(1)));
        assert_eq!(q.arrows_from(q.find_vertex("a").unwrap()), &[ArrowIndex(1)]);
    }

    #[test]
    fn dangling_and_duplicate_ids_are_rejected() {
        let mut b = QuiverBuilder::new("t");
        b.vertex("a", VertexFlags::NONE).vertex("a", VertexFlags::NONE);
        assert_eq!(b.build(), Err(BuildError::DuplicateVertex("a".into())));

        let mut b = QuiverBuilder::new("t");
        b.vertex("a", VertexFlags::NONE).arrow("x", "a", "b");
        assert_eq!(b.build(), Err(BuildError::UnknownVertex("b".into())));

        let mut b = QuiverBuilder::new("t");
        b.vertex("a", VertexFlags::NONE)
            .vertex("b", VertexFlags::NONE)
            .arrow("x", "a", "b")
            .sigma("x", "y");
        assert_eq!(b.build(), Err(BuildError::UnknownArrow("y".into())));
    }
}
