//! Graded mesh categories: degree-n hom spaces as path spaces modulo the
//! ideal generated by the mesh relations Σ α·σ(α), classes of paths and
//! their composition.
//!
//! A hom space computed on a finite window is *exact* when no path of the
//! infinite quiver and no mesh relation between its endpoints can be cut
//! off by the truncation: every vertex reachable from the source in fewer
//! than `n` steps is non-frontier, and for `n ≥ 2` so is the target.
//! Non-frontier vertices carry all their arrows and a complete mesh.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::exla::{
    row_reduce, to_prime_field, BasisHandle, Echelon, Rational, Scalar, VectorInBasis,
    DEFAULT_PRIME,
};
use crate::qcore::{
    enumerate_paths, forward_layers, raw_mesh, ArrowIndex, Path, TranslationQuiver, VertexIndex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshCatError {
    #[error("hom space {source_id} -> {target_id} in degree {degree} touches the window frontier")]
    OutOfWindow {
        source_id: String,
        target_id: String,
        degree: usize,
    },
    #[error("cannot compose: first class ends at {left}, second starts at {right}")]
    EndpointMismatch { left: String, right: String },
    #[error("path is not part of the hom space basis")]
    NotInBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    FrontierTainted,
}

/// Field used for dimension counts. Classes and normal forms are always rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldBackend {
    #[default]
    Rational,
    /// F_32003.
    Prime,
}

impl FieldBackend {
    /// Reads `MESHKIT_FIELD=rational|fp`; anything else means rational.
    pub fn from_env() -> Self {
        match std::env::var("MESHKIT_FIELD").as_deref() {
            Ok("fp") => FieldBackend::Prime,
            _ => FieldBackend::Rational,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldBackend::Rational => "rational",
            FieldBackend::Prime => "fp",
        }
    }
}

/// k(Γ)_n(x, y): the path basis, the relation subspace and the quotient.
#[derive(Debug)]
pub struct HomSpace {
    source: VertexIndex,
    target: VertexIndex,
    degree: usize,
    basis: Vec<Path>,
    index: HashMap<Vec<ArrowIndex>, usize>,
    handle: BasisHandle,
    generators: Vec<VectorInBasis<Rational>>,
    relations: OnceLock<Echelon<Rational>>,
    quotient_dim: usize,
    exactness: Exactness,
}

impl HomSpace {
    pub fn source(&self) -> VertexIndex {
        self.source
    }

    pub fn target(&self) -> VertexIndex {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn handle(&self) -> BasisHandle {
        self.handle
    }

    pub fn generators(&self) -> &[VectorInBasis<Rational>] {
        &self.generators
    }

    /// Reduced rows spanning the relation subspace.
    pub fn relations(&self) -> &Echelon<Rational> {
        self.relations.get_or_init(|| {
            row_reduce(self.handle, &self.generators).expect("generators share the basis")
        })
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_dim
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        if p.start != self.source {
            return None;
        }
        self.index.get(&p.arrows).copied()
    }

    pub fn path_vector(&self, p: &Path) -> Option<VectorInBasis<Rational>> {
        let i = self.index_of(p)?;
        VectorInBasis::unit(self.handle, i).ok()
    }

    /// Reduces `v` against the relation rows.
    pub fn normal_form(&self, v: &VectorInBasis<Rational>) -> VectorInBasis<Rational> {
        self.relations()
            .normal_form(v)
            .expect("vector belongs to this hom space")
    }

    /// Basis-path indices whose classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<usize> {
        let rel = self.relations();
        (0..self.basis.len()).filter(|&i| !rel.is_pivot(i)).collect()
    }
}

/// The class of a linear combination of paths in an exact hom space.
#[derive(Debug, Clone)]
pub struct ClassVector {
    space: Arc<HomSpace>,
    representative: VectorInBasis<Rational>,
    normal_form: VectorInBasis<Rational>,
}

impl ClassVector {
    pub fn space(&self) -> &Arc<HomSpace> {
        &self.space
    }

    pub fn source(&self) -> VertexIndex {
        self.space.source
    }

    pub fn target(&self) -> VertexIndex {
        self.space.target
    }

    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn representative(&self) -> &VectorInBasis<Rational> {
        &self.representative
    }

    pub fn normal_form(&self) -> &VectorInBasis<Rational> {
        &self.normal_form
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form.is_zero()
    }

    /// `(coefficient, path)` pairs of the normal form.
    pub fn terms(&self) -> Vec<(Rational, &Path)> {
        self.normal_form
            .iter()
            .map(|(i, c)| (c.clone(), &self.space.basis[i]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub degree: usize,
    pub dim: usize,
    pub exact: bool,
}

type HomKey = (VertexIndex, VertexIndex, usize);

/// Mesh category k(Γ) of a fixed quiver with memoized hom spaces.
pub struct MeshCategory<'q> {
    quiver: &'q TranslationQuiver,
    backend: FieldBackend,
    memo: Mutex<HashMap<HomKey, Arc<HomSpace>>>,
}

impl<'q> MeshCategory<'q> {
    pub fn new(quiver: &'q TranslationQuiver) -> Self {
        Self::with_backend(quiver, FieldBackend::Rational)
    }

    pub fn with_backend(quiver: &'q TranslationQuiver, backend: FieldBackend) -> Self {
        MeshCategory {
            quiver,
            backend,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &'q TranslationQuiver {
        self.quiver
    }

    pub fn backend(&self) -> FieldBackend {
        self.backend
    }

    fn vid(&self, v: VertexIndex) -> String {
        self.quiver.vertex_id(v).0.clone()
    }

    /// Safe-region rule for k(Γ)_n(x, y).
    pub fn is_exact(&self, x: VertexIndex, y: VertexIndex, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let q = self.quiver;
        if n >= 2 && q.is_frontier(y) {
            return false;
        }
        let layers = forward_layers(q, x, n - 1);
        layers
            .iter()
            .all(|layer| q.vertex_indices().all(|v| !layer[v.ix()] || !q.is_frontier(v)))
    }

    /// Every vertex reachable from `x` in at most `n` steps is non-frontier.
    pub fn cone_is_clean(&self, x: VertexIndex, n: usize) -> bool {
        let q = self.quiver;
        forward_layers(q, x, n)
            .iter()
            .all(|layer| q.vertex_indices().all(|v| !layer[v.ix()] || !q.is_frontier(v)))
    }

    fn handle(&self, x: VertexIndex, y: VertexIndex, n: usize, dim: usize) -> BasisHandle {
        let mut h = DefaultHasher::new();
        (self.quiver.name(), self.quiver.vertex_count(), x, y, n).hash(&mut h);
        BasisHandle {
            id: h.finish(),
            dim,
        }
    }

    /// One vector per (path p: x → τz, mesh end z, path q: z → y) with
    /// |p| + 2 + |q| = n: the sum over the spokes of p·σ(α)·α·q.
    pub fn relation_generators(
        &self,
        x: VertexIndex,
        y: VertexIndex,
        n: usize,
    ) -> Vec<VectorInBasis<Rational>> {
        self.hom_space(x, y, n).generators.clone()
    }

    fn build_generators(
        &self,
        x: VertexIndex,
        y: VertexIndex,
        n: usize,
        handle: BasisHandle,
        index: &HashMap<Vec<ArrowIndex>, usize>,
    ) -> Vec<VectorInBasis<Rational>> {
        let q = self.quiver;
        let mut out = Vec::new();
        if n < 2 || index.is_empty() {
            return out;
        }
        let fwd = forward_layers(q, x, n - 2);
        let back = backward_layers(q, y, n - 2);
        for before in 0..=n - 2 {
            let after = n - 2 - before;
            for z in q.vertex_indices() {
                if q.is_projective(z) || q.is_frontier(z) || !back[after][z.ix()] {
                    continue;
                }
                let Some(w) = q.tau(z) else { continue };
                if !fwd[before][w.ix()] {
                    continue;
                }
                let Ok(mesh) = raw_mesh(q, z) else { continue };
                let heads = enumerate_paths(q, x, w, before);
                let tails = enumerate_paths(q, z, y, after);
                for p in &heads {
                    for t in &tails {
                        let coords = mesh.spokes.iter().map(|s| {
                            let mut arrows = p.arrows.clone();
                            arrows.push(s.partner);
                            arrows.push(s.arrow);
                            arrows.extend_from_slice(&t.arrows);
                            (index[&arrows], <Rational as Scalar>::one())
                        });
                        let v = VectorInBasis::from_coords(handle, coords)
                            .expect("relation paths lie in the basis");
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// k(Γ)_n(x, y), computed once per triple.
    pub fn hom_space(&self, x: VertexIndex, y: VertexIndex, n: usize) -> Arc<HomSpace> {
        let key = (x, y, n);
        if let Some(h) = self.memo.lock().expect("memo lock").get(&key) {
            return Arc::clone(h);
        }
        let built = Arc::new(self.build_hom_space(x, y, n));
        let mut memo = self.memo.lock().expect("memo lock");
        Arc::clone(memo.entry(key).or_insert(built))
    }

    fn build_hom_space(&self, x: VertexIndex, y: VertexIndex, n: usize) -> HomSpace {
        let basis = enumerate_paths(self.quiver, x, y, n);
        let index: HashMap<Vec<ArrowIndex>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.arrows.clone(), i))
            .collect();
        let handle = self.handle(x, y, n, basis.len());
        let generators = self.build_generators(x, y, n, handle, &index);
        let relations = OnceLock::new();
        let rank = match self.backend {
            FieldBackend::Rational => {
                let e = row_reduce(handle, &generators).expect("generators share the basis");
                let r = e.rank();
                let _ = relations.set(e);
                r
            }
            FieldBackend::Prime => {
                let fp: Vec<_> = generators.iter().map(to_prime_field::<DEFAULT_PRIME>).collect();
                row_reduce(handle, &fp).expect("generators share the basis").rank()
            }
        };
        HomSpace {
            source: x,
            target: y,
            degree: n,
            quotient_dim: basis.len() - rank,
            basis,
            index,
            handle,
            generators,
            relations,
            exactness: if self.is_exact(x, y, n) {
                Exactness::Exact
            } else {
                Exactness::FrontierTainted
            },
        }
    }

    fn exact_space(&self, x: VertexIndex, y: VertexIndex, n: usize) -> Result<Arc<HomSpace>, MeshCatError> {
        let h = self.hom_space(x, y, n);
        if !h.is_exact() {
            return Err(MeshCatError::OutOfWindow {
                source_id: self.vid(x),
                target_id: self.vid(y),
                degree: n,
            });
        }
        Ok(h)
    }

    /// Class of a single path; refuses frontier-tainted hom spaces.
    pub fn class_of_path(&self, p: &Path) -> Result<ClassVector, MeshCatError> {
        let space = self.exact_space(p.start, p.end(self.quiver), p.len())?;
        let representative = space.path_vector(p).ok_or(MeshCatError::NotInBasis)?;
        Ok(Self::class_in(space, representative))
    }

    /// Class of an arbitrary vector of `space`, exact or not.
    pub fn class_in(space: Arc<HomSpace>, representative: VectorInBasis<Rational>) -> ClassVector {
        let normal_form = space.normal_form(&representative);
        ClassVector {
            space,
            representative,
            normal_form,
        }
    }

    /// `second ∘ first`: concatenation of representatives, extended
    /// bilinearly, then reduced in the target hom space.
    pub fn compose(&self, second: &ClassVector, first: &ClassVector) -> Result<ClassVector, MeshCatError> {
        if first.target() != second.source() {
            return Err(MeshCatError::EndpointMismatch {
                left: self.vid(first.target()),
                right: self.vid(second.source()),
            });
        }
        let space = self.exact_space(
            first.source(),
            second.target(),
            first.degree() + second.degree(),
        )?;
        let mut coords = Vec::with_capacity(first.representative.nnz() * second.representative.nnz());
        for (i, a) in first.representative.iter() {
            let head = &first.space.basis[i];
            for (j, b) in second.representative.iter() {
                let joined = head.then(&second.space.basis[j]);
                let k = space.index_of(&joined).expect("concatenation is a basis path");
                coords.push((k, a.mul(b)));
            }
        }
        let representative =
            VectorInBasis::from_coords(space.handle, coords).expect("indices in range");
        Ok(Self::class_in(space, representative))
    }

    pub fn graded_dims(&self, x: VertexIndex, y: VertexIndex, max_degree: usize) -> Vec<GradedDim> {
        (0..=max_degree)
            .map(|degree| {
                let h = self.hom_space(x, y, degree);
                GradedDim {
                    degree,
                    dim: h.quotient_dim,
                    exact: h.is_exact(),
                }
            })
            .collect()
    }
}

/// `layers[k][v]`: v reaches `y` by a path of length exactly k.
fn backward_layers(q: &TranslationQuiver, y: VertexIndex, n: usize) -> Vec<Vec<bool>> {
    let mut layers = vec![vec![false; q.vertex_count()]; n + 1];
    layers[0][y.ix()] = true;
    for k in 1..=n {
        let (done, rest) = layers.split_at_mut(k);
        for v in q.vertex_indices() {
            if done[k - 1][v.ix()] {
                for &a in q.arrows_into(v) {
                    rest[0][q.source(a).ix()] = true;
                }
            }
        }
    }
    layers
}
