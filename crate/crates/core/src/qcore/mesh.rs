use thiserror::Error;

use super::quiver::{ArrowIndex, TranslationQuiver, VertexIndex};
use super::walk::Path;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("{0} is projective and ends no mesh")]
    Projective(String),
    #[error("mesh at frontier vertex {0} may be incomplete")]
    Frontier(String),
    #[error("tau undefined at {0}")]
    NoTranslate(String),
    #[error("sigma undefined on arrow {0}")]
    NoSigma(String),
    #[error("tau unknown at frontier vertex {0} along the path")]
    UnknownTau(String),
}

/// One spoke of a mesh: `arrow` ends at the mesh end, `partner = σ(arrow)`
/// leaves the translate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spoke {
    pub arrow: ArrowIndex,
    pub partner: ArrowIndex,
}

impl Spoke {
    /// Middle vertex of the spoke.
    pub fn middle(&self, q: &TranslationQuiver) -> VertexIndex {
        q.source(self.arrow)
    }

    /// The length-2 path τx → middle → x.
    pub fn path(&self, q: &TranslationQuiver) -> Path {
        Path {
            start: q.source(self.partner),
            arrows: vec![self.partner, self.arrow],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub end: VertexIndex,
    pub translate: VertexIndex,
    /// One spoke per arrow into `end`, in arrow order.
    pub spokes: Vec<Spoke>,
}

/// Mesh ending at a non-projective, non-frontier vertex.
pub fn mesh_at(q: &TranslationQuiver, x: VertexIndex) -> Result<Mesh, MeshError> {
    let name = || q.vertex_id(x).0.clone();
    if q.is_projective(x) {
        return Err(MeshError::Projective(name()));
    }
    if q.is_frontier(x) {
        return Err(MeshError::Frontier(name()));
    }
    raw_mesh(q, x)
}

/// Mesh assembled from whatever τ/σ data is present, frontier or not.
pub(crate) fn raw_mesh(q: &TranslationQuiver, x: VertexIndex) -> Result<Mesh, MeshError> {
    let translate = q
        .tau(x)
        .ok_or_else(|| MeshError::NoTranslate(q.vertex_id(x).0.clone()))?;
    let spokes = q
        .arrows_into(x)
        .iter()
        .map(|&arrow| {
            q.sigma(arrow)
                .map(|partner| Spoke { arrow, partner })
                .ok_or_else(|| MeshError::NoSigma(q.arrow_id(arrow).0.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mesh {
        end: x,
        translate,
        spokes,
    })
}

/// `x_i ≠ τ x_{i+2}` along the path. A projective x_{i+2} satisfies the
/// condition; an unknown τ at a frontier vertex is an error.
pub fn is_sectional(q: &TranslationQuiver, p: &Path) -> Result<bool, MeshError> {
    let vs = p.vertices(q);
    for i in 0..vs.len().saturating_sub(2) {
        if !segment_sectional(q, vs[i], vs[i + 2])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn segment_sectional(
    q: &TranslationQuiver,
    first: VertexIndex,
    last: VertexIndex,
) -> Result<bool, MeshError> {
    if q.is_projective(last) {
        return Ok(true);
    }
    match q.tau(last) {
        Some(t) => Ok(t != first),
        None => Err(MeshError::UnknownTau(q.vertex_id(last).0.clone())),
    }
}

/// Same verdict as [`is_sectional`], scanning from the end of the path.
pub fn is_sectional_from_end(q: &TranslationQuiver, p: &Path) -> Result<bool, MeshError> {
    let vs = p.vertices(q);
    let mut verdict = true;
    for i in (0..vs.len().saturating_sub(2)).rev() {
        if !segment_sectional(q, vs[i], vs[i + 2])? {
            verdict = false;
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn v(q: &TranslationQuiver, id: &str) -> VertexIndex {
        q.find_vertex(id).unwrap()
    }

    #[test]
    fn za2_mesh_has_one_spoke() {
        let q = gen::ztree(&gen::TreeSpec::a_n(2), 0, 2).unwrap();
        let m = mesh_at(&q, v(&q, "(1,1)")).unwrap();
        assert_eq!(q.vertex_id(m.translate).0, "(0,1)");
        assert_eq!(m.spokes.len(), 1);
        assert_eq!(q.arrow_id(m.spokes[0].arrow).0, "b0");
        assert_eq!(q.arrow_id(m.spokes[0].partner).0, "a0");
    }

    #[test]
    fn triangle_mesh_has_two_middles() {
        let q = gen::triangle_an(3).unwrap();
        let m = mesh_at(&q, v(&q, "(1,2)")).unwrap();
        assert_eq!(q.vertex_id(m.translate).0, "(2,3)");
        let mut mids: Vec<_> = m.spokes.iter().map(|s| q.vertex_id(s.middle(&q)).0.clone()).collect();
        mids.sort();
        assert_eq!(mids, vec!["(1,3)", "(2,2)"]);
    }

    #[test]
    fn kronecker_mesh_pairs_parallel_arrows() {
        let q = gen::kronecker(5).unwrap();
        let m = mesh_at(&q, v(&q, "v2")).unwrap();
        assert_eq!(q.vertex_id(m.translate).0, "v0");
        assert_eq!(m.spokes.len(), 2);
        for s in &m.spokes {
            assert_eq!(q.source(s.partner), m.translate);
            assert_eq!(q.target(s.partner), q.source(s.arrow));
        }
    }

    #[test]
    fn projective_and_frontier_meshes_are_refused() {
        let q = gen::triangle_an(3).unwrap();
        assert!(matches!(mesh_at(&q, v(&q, "(1,3)")), Err(MeshError::Projective(_))));
        let z = gen::ztree(&gen::TreeSpec::a_n(2), 0, 1).unwrap();
        assert!(matches!(mesh_at(&z, v(&z, "(1,1)")), Err(MeshError::Frontier(_))));
    }

    #[test]
    fn sectional_examples() {
        let q = gen::triangle_an(3).unwrap();
        let p = Path::parse_label(&q, &path_ids(&q, &["(1,3)", "(1,2)", "(1,1)"])).unwrap();
        assert!(is_sectional(&q, &p).unwrap());
        let p = Path::parse_label(&q, &path_ids(&q, &["(2,3)", "(2,2)", "(1,2)"])).unwrap();
        assert!(!is_sectional(&q, &p).unwrap());
        for a in q.arrow_indices() {
            let p = Path::new(&q, q.source(a), vec![a]).unwrap();
            assert!(is_sectional(&q, &p).unwrap());
        }
    }

    fn path_ids(q: &TranslationQuiver, vs: &[&str]) -> String {
        vs.windows(2)
            .map(|w| {
                let (s, t) = (v(q, w[0]), v(q, w[1]));
                let a = q.arrows_from(s).iter().find(|&&a| q.target(a) == t).unwrap();
                q.arrow_id(*a).0.clone()
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}
