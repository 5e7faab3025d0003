//! Composites of irreducible morphisms at mesh level: radical verdicts,
//! shortcuts, depth certificates, fiber sums over a covering ball and the
//! length-two mesh conditions.
//!
//! Every answer here is a statement about the mesh category; it transfers to
//! a module category only through a well-behaved functor, which is not
//! constructed.

use serde::Serialize;
use thiserror::Error;

use crate::cover::CoveringBall;
use crate::meshcat::{ClassVector, MeshCatError, MeshCategory};
use crate::qcore::{
    enumerate_paths, forward_layers, is_sectional, mesh_at, MeshError, Path, TranslationQuiver,
    VertexIndex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CritError {
    #[error(transparent)]
    MeshCat(#[from] MeshCatError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Nonzero class: the composite lies in rad^n but not rad^(n+1).
    ExactlyRadN,
    /// Zero class: the composite lies in rad^(n+1).
    InRadNPlus1,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ExactlyRadN => "exactly_rad_n",
            Verdict::InRadNPlus1 => "in_rad_n_plus_1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalVerdict {
    pub path: Path,
    pub n: usize,
    pub verdict: Verdict,
    pub sectional: bool,
}

pub fn radical_verdict(cat: &MeshCategory<'_>, p: &Path) -> Result<RadicalVerdict, CritError> {
    let class = cat.class_of_path(p)?;
    let sectional = is_sectional(cat.quiver(), p)?;
    let verdict = if class.is_zero() {
        Verdict::InRadNPlus1
    } else {
        Verdict::ExactlyRadN
    };
    Ok(RadicalVerdict {
        path: p.clone(),
        n: p.len(),
        verdict,
        sectional,
    })
}

/// Longer paths parallel to `p`, of length at most `max_len`, shortest first.
pub fn find_shortcut_targets(
    q: &TranslationQuiver,
    p: &Path,
    max_len: usize,
) -> Result<Vec<Path>, CritError> {
    if max_len <= p.len() {
        return Err(CritError::Precondition(format!(
            "max length {max_len} must exceed the path length {}",
            p.len()
        )));
    }
    let end = p.end(q);
    Ok((p.len() + 1..=max_len)
        .flat_map(|n| enumerate_paths(q, p.start, end, n))
        .collect())
}

/// A factor f_i replaced by a path of degree at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    /// 1-based position of the replaced arrow.
    pub position: usize,
    pub degree: usize,
    pub path: Path,
}

/// Mesh-level certificate that a zero composite is a shortcut: replacing the
/// listed factors yields a nonzero composite of degree `total_degree`.
#[derive(Debug, Clone)]
pub struct DepthCertificate {
    pub base: Path,
    pub substitutions: Vec<Substitution>,
    pub total_degree: usize,
    pub witness: ClassVector,
}

impl DepthCertificate {
    /// The substituted composite as a single path.
    pub fn composite(&self) -> Path {
        substituted(&self.base, &self.substitutions)
    }

    /// Recomposes the factors class by class and checks the result.
    pub fn replay(&self, cat: &MeshCategory<'_>) -> Result<bool, CritError> {
        let q = cat.quiver();
        let vs = self.base.vertices(q);
        let mut acc = cat.class_of_path(&Path::trivial(self.base.start))?;
        for i in 1..=self.base.len() {
            let factor = match self.substitutions.iter().find(|s| s.position == i) {
                Some(s) => {
                    if s.degree < 2 || s.path.len() != s.degree || s.path.start != vs[i - 1] || s.path.end(q) != vs[i] {
                        return Ok(false);
                    }
                    s.path.clone()
                }
                None => Path {
                    start: vs[i - 1],
                    arrows: vec![self.base.arrows[i - 1]],
                },
            };
            acc = cat.compose(&cat.class_of_path(&factor)?, &acc)?;
        }
        Ok(!acc.is_zero()
            && acc.degree() == self.total_degree
            && acc.normal_form() == self.witness.normal_form())
    }
}

fn substituted(base: &Path, subs: &[Substitution]) -> Path {
    let mut arrows = Vec::new();
    for (i, &a) in base.arrows.iter().enumerate() {
        match subs.iter().find(|s| s.position == i + 1) {
            Some(s) => arrows.extend_from_slice(&s.path.arrows),
            None => arrows.push(a),
        }
    }
    Path {
        start: base.start,
        arrows,
    }
}

/// Subsets of `1..=n` with at most `max` elements, in lexicographic order.
pub(crate) fn position_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(from: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in from..=n {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < max {
                go(i + 1, n, max, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max > 0 {
        go(1, n, max, &mut Vec::new(), &mut out);
    }
    out
}

/// Degree tuples with entries in `2..=cap` and Σ(d − 1) = extra, lexicographic.
pub(crate) fn degree_tuples(len: usize, extra: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, extra: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            if extra == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = len - cur.len() - 1;
        for d in 2..=cap {
            let used = d - 1;
            if used > extra || extra - used < left {
                continue;
            }
            cur.push(d);
            go(len, extra - used, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, extra, cap, &mut Vec::new(), &mut out);
    out
}

/// Searches for the certificate of least total degree, then leftmost
/// positions, then basis order. `None` when nothing up to `n + max_extra`
/// composes to a nonzero class.
pub fn depth_certificate(
    cat: &MeshCategory<'_>,
    p: &Path,
    max_extra: usize,
    cap: usize,
) -> Result<Option<DepthCertificate>, CritError> {
    let q = cat.quiver();
    if !cat.class_of_path(p)?.is_zero() {
        return Err(CritError::Precondition("the composite has a nonzero class".into()));
    }
    if max_extra == 0 || p.is_empty() {
        return Ok(None);
    }
    let n = p.len();
    let end = p.end(q);
    if !cat.is_exact(p.start, end, n + max_extra) {
        return Err(MeshCatError::OutOfWindow {
            source_id: q.vertex_id(p.start).0.clone(),
            target_id: q.vertex_id(end).0.clone(),
            degree: n + max_extra,
        }
        .into());
    }
    let vs = p.vertices(q);
    for extra in 1..=max_extra {
        let total = n + extra;
        let target = cat.hom_space(p.start, end, total);
        for positions in position_subsets(n, extra) {
            for degrees in degree_tuples(positions.len(), extra, cap) {
                // candidate quotient-basis paths per substituted position
                let pools: Vec<Vec<Path>> = positions
                    .iter()
                    .zip(&degrees)
                    .map(|(&i, &d)| {
                        let h = cat.hom_space(vs[i - 1], vs[i], d);
                        h.quotient_basis().into_iter().map(|k| h.basis()[k].clone()).collect()
                    })
                    .collect();
                if pools.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut pick = vec![0usize; pools.len()];
                loop {
                    let subs: Vec<Substitution> = positions
                        .iter()
                        .zip(&degrees)
                        .zip(&pick)
                        .enumerate()
                        .map(|(k, ((&position, &degree), &j))| Substitution {
                            position,
                            degree,
                            path: pools[k][j].clone(),
                        })
                        .collect();
                    let composite = substituted(p, &subs);
                    let v = target.path_vector(&composite).expect("composite is a basis path");
                    let witness = MeshCategory::class_in(target.clone(), v);
                    if !witness.is_zero() {
                        return Ok(Some(DepthCertificate {
                            base: p.clone(),
                            substitutions: subs,
                            total_degree: total,
                            witness,
                        }));
                    }
                    // odometer, last position fastest
                    let mut k = pick.len();
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        pick[k] += 1;
                        if pick[k] < pools[k].len() {
                            break;
                        }
                        pick[k] = 0;
                        if k == 0 {
                            k = usize::MAX;
                            break;
                        }
                    }
                    if k == usize::MAX {
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberTerm {
    pub vertex: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSum {
    pub total: usize,
    pub terms: Vec<FiberTerm>,
}

/// Σ over delta vertices z above `y` of dim k(Δ)_n(x, z).
///
/// `cat` must be the mesh category of `ball.delta`.
pub fn fiber_sum(
    cat: &MeshCategory<'_>,
    ball: &CoveringBall,
    x: VertexIndex,
    y: VertexIndex,
    n: usize,
) -> Result<FiberSum, CritError> {
    let d = &ball.delta;
    if n > 0 && !cat.cone_is_clean(x, n - 1) {
        return Err(CritError::Precondition(format!(
            "paths of length {n} from {} reach the frontier of the ball",
            d.vertex_id(x)
        )));
    }
    let reach = forward_layers(d, x, n);
    let mut terms = Vec::new();
    let mut total = 0;
    for z in ball.fiber(y) {
        if !reach[n][z.ix()] {
            continue;
        }
        let h = cat.hom_space(x, z, n);
        if !h.is_exact() {
            return Err(MeshCatError::OutOfWindow {
                source_id: d.vertex_id(x).0.clone(),
                target_id: d.vertex_id(z).0.clone(),
                degree: n,
            }
            .into());
        }
        total += h.quotient_dim();
        terms.push(FiberTerm {
            vertex: d.vertex_id(z).0.clone(),
            dim: h.quotient_dim(),
        });
    }
    Ok(FiberSum { total, terms })
}

/// Outcome of the length-two mesh conditions at one mesh.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeshTwoAnalysis {
    /// Some g·φ·f ≠ 0 with φ of degree 2 to cap − 2 between two middles.
    pub cond3: bool,
    /// Some k(Γ)_d(τz, z) ≠ 0 with 4 ≤ d ≤ cap.
    pub cond4: bool,
    pub cap: usize,
    /// Nonzero g·φ·f when cond3 holds.
    pub witness: Option<String>,
    /// Least d with k(Γ)_d(τz, z) ≠ 0 when cond4 holds.
    pub first_degree: Option<usize>,
}

pub fn n2_mesh_analysis(
    cat: &MeshCategory<'_>,
    z: VertexIndex,
    cap: usize,
) -> Result<MeshTwoAnalysis, CritError> {
    let q = cat.quiver();
    if cap < 4 {
        return Err(CritError::Precondition(format!("cap {cap} is below 4")));
    }
    let mesh = mesh_at(q, z)?;
    let x = mesh.translate;
    if !cat.is_exact(x, z, cap) {
        return Err(MeshCatError::OutOfWindow {
            source_id: q.vertex_id(x).0.clone(),
            target_id: q.vertex_id(z).0.clone(),
            degree: cap,
        }
        .into());
    }
    let mut witness = None;
    'search: for si in &mesh.spokes {
        for sj in &mesh.spokes {
            let (yi, yj) = (si.middle(q), sj.middle(q));
            for d in 2..=cap - 2 {
                let h = cat.hom_space(yi, yj, d);
                for k in h.quotient_basis() {
                    let mut arrows = vec![si.partner];
                    arrows.extend_from_slice(&h.basis()[k].arrows);
                    arrows.push(sj.arrow);
                    let g = Path { start: x, arrows };
                    if !cat.class_of_path(&g)?.is_zero() {
                        witness = Some(g.label(q));
                        break 'search;
                    }
                }
            }
        }
    }
    let first_degree = (4..=cap).find(|&d| cat.hom_space(x, z, d).quotient_dim() > 0);
    Ok(MeshTwoAnalysis {
        cond3: witness.is_some(),
        cond4: first_degree.is_some(),
        cap,
        witness,
        first_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, TreeSpec};
    use crate::qcore::paths_from;

    fn v(q: &TranslationQuiver, id: &str) -> VertexIndex {
        q.find_vertex(id).unwrap()
    }

    fn through(q: &TranslationQuiver, vs: &[&str]) -> Path {
        let arrows = vs
            .windows(2)
            .map(|w| {
                let (s, t) = (v(q, w[0]), v(q, w[1]));
                *q.arrows_from(s).iter().find(|&&a| q.target(a) == t).unwrap()
            })
            .collect();
        Path::new(q, v(q, vs[0]), arrows).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let t = gen::triangle_an(3).unwrap();
        let cat = MeshCategory::new(&t);
        let r = radical_verdict(&cat, &through(&t, &["(1,3)", "(1,2)", "(1,1)"])).unwrap();
        assert_eq!((r.verdict, r.sectional), (Verdict::ExactlyRadN, true));
        for a in t.arrow_indices() {
            let p = Path::new(&t, t.source(a), vec![a]).unwrap();
            assert_eq!(radical_verdict(&cat, &p).unwrap().verdict, Verdict::ExactlyRadN);
        }

        let z = gen::ztree(&TreeSpec::a_n(2), -1, 3).unwrap();
        let cat = MeshCategory::new(&z);
        let r = radical_verdict(&cat, &through(&z, &["(0,1)", "(0,2)", "(1,1)"])).unwrap();
        assert_eq!((r.verdict, r.sectional), (Verdict::InRadNPlus1, false));
    }

    #[test]
    fn shortcut_targets() {
        let t = gen::triangle_an(3).unwrap();
        let p = through(&t, &["(2,3)", "(2,2)"]);
        assert!(find_shortcut_targets(&t, &p, 3).unwrap().is_empty());
        assert!(find_shortcut_targets(&t, &p, 1).is_err());

        let tube = gen::tube(2, 4).unwrap();
        for a in tube.arrow_indices() {
            let s = tube.source(a);
            if tube.vertex_id(s).0.ends_with(",1)") {
                let p = Path::new(&tube, s, vec![a]).unwrap();
                let found = find_shortcut_targets(&tube, &p, 5).unwrap();
                assert!(!found.is_empty());
                assert!(found.windows(2).all(|w| w[0].len() <= w[1].len()));
            }
        }
    }

    #[test]
    fn subsets_and_tuples() {
        assert_eq!(
            position_subsets(3, 2),
            vec![vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]
        );
        assert_eq!(degree_tuples(2, 3, 4), vec![vec![2, 3], vec![3, 2]]);
        assert_eq!(degree_tuples(1, 3, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn triangle_has_no_certificate() {
        let t = gen::triangle_an(3).unwrap();
        let cat = MeshCategory::new(&t);
        let p = through(&t, &["(2,3)", "(2,2)", "(1,2)", "(1,1)"]);
        assert!(cat.class_of_path(&p).unwrap().is_zero());
        assert!(depth_certificate(&cat, &p, 3, 4).unwrap().is_none());
        assert!(depth_certificate(&cat, &p, 0, 4).unwrap().is_none());
    }

    #[test]
    fn certificates_replay() {
        let q = gen::tube(2, 8).unwrap();
        let cat = MeshCategory::new(&q);
        let mut searched = 0;
        for x in q.vertex_indices() {
            for p in paths_from(&q, x, 2) {
                if !cat.is_exact(p.start, p.end(&q), 5) || !cat.class_of_path(&p).unwrap().is_zero() {
                    continue;
                }
                searched += 1;
                // Lifts of the end beyond the hammock of the start never return
                // to it, so tubes carry no certificates.
                let none_higher = (1..=3).all(|e| cat.hom_space(p.start, p.end(&q), 2 + e).quotient_dim() == 0);
                let found = depth_certificate(&cat, &p, 3, 4).unwrap();
                assert!(found.is_none() || !none_higher);
                if let Some(c) = found {
                    assert!(c.replay(&cat).unwrap());
                    assert!(c.substitutions.iter().all(|s| s.degree >= 2));
                    let extra: usize = c.substitutions.iter().map(|s| s.degree - 1).sum();
                    assert_eq!(c.total_degree, p.len() + extra);
                }
            }
        }
        assert!(searched > 0);
    }

    #[test]
    fn nonzero_path_is_refused() {
        let t = gen::triangle_an(3).unwrap();
        let cat = MeshCategory::new(&t);
        let p = through(&t, &["(1,3)", "(1,2)"]);
        assert!(matches!(depth_certificate(&cat, &p, 2, 3), Err(CritError::Precondition(_))));
    }

    #[test]
    fn mesh_two_conditions() {
        let t = gen::triangle_an(3).unwrap();
        let cat = MeshCategory::new(&t);
        let r = n2_mesh_analysis(&cat, v(&t, "(1,2)"), 6).unwrap();
        assert!(!r.cond3 && !r.cond4);
        assert!(n2_mesh_analysis(&cat, v(&t, "(1,2)"), 3).is_err());

        let tube = gen::tube(2, 8).unwrap();
        let cat = MeshCategory::new(&tube);
        for z in ["(0,1)", "(1,1)", "(0,2)"] {
            let r = n2_mesh_analysis(&cat, v(&tube, z), 6).unwrap();
            assert_eq!(r.cond3, r.cond4);
        }
    }
}
