//! Deterministic generators for the standard translation-quiver families.
//!
//! Vertex ids have the form `(i,j)` (or `v<i>` for Kronecker windows).
//! Arrow names:
//!
//! | family        | arrows                                                      |
//! |---------------|-------------------------------------------------------------|
//! | `ZΔ`          | `a<i>`: (i,u)→(i,v), `b<i>`: (i,v)→(i+1,u), per edge u→v     |
//! | tube          | `u<c>_<j>`: (c,j)→(c,j+1), `d<c>_<j>`: (c,j)→(c+1,j−1)       |
//! | triangle A_n  | `l<a>_<b>`: (a,b)→(a−1,b), `r<a>_<b>`: (a,b)→(a,b−1)         |
//! | Kronecker     | `a<i>`, `b<i>`: v_i→v_{i+1}                                 |
//!
//! For trees with more than one edge the `ZΔ` names carry the edge as a
//! suffix, e.g. `a3_1_2`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::qcore::{QuiverBuilder, TranslationQuiver, VertexFlags};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("empty window [{0}, {1}]")]
    EmptyWindow(i64, i64),
    #[error("tree is not connected and acyclic: {0}")]
    NotATree(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// A finite tree given by node ids and unordered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl TreeSpec {
    /// Linear tree `1 — 2 — … — n`.
    pub fn a_n(n: usize) -> TreeSpec {
        TreeSpec {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            edges: (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect(),
        }
    }

    /// Star with centre `2` and leaves `1`, `3`, `4`.
    pub fn d4() -> TreeSpec {
        TreeSpec {
            vertices: ["1", "2", "3", "4"].map(String::from).to_vec(),
            edges: vec![
                ("1".into(), "2".into()),
                ("2".into(), "3".into()),
                ("2".into(), "4".into()),
            ],
        }
    }

    /// Parses `1-2,2-3`; a lone vertex is written `1`.
    pub fn parse(text: &str) -> Result<TreeSpec, GenError> {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('-') {
                Some((u, v)) => {
                    let (u, v) = (u.trim().to_owned(), v.trim().to_owned());
                    vertices.insert(u.clone());
                    vertices.insert(v.clone());
                    edges.push((u, v));
                }
                None => {
                    vertices.insert(item.to_owned());
                }
            }
        }
        let t = TreeSpec {
            vertices: vertices.into_iter().collect(),
            edges,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), GenError> {
        let names: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        if names.is_empty() {
            return Err(GenError::NotATree("no vertices".into()));
        }
        if names.len() != self.vertices.len() {
            return Err(GenError::NotATree("duplicate vertex".into()));
        }
        for (u, v) in &self.edges {
            if !names.contains(u.as_str()) || !names.contains(v.as_str()) || u == v {
                return Err(GenError::NotATree(format!("bad edge {u}-{v}")));
            }
        }
        if self.edges.len() + 1 != names.len() {
            return Err(GenError::NotATree("edge count must be vertex count - 1".into()));
        }
        if self.oriented_edges().len() != self.edges.len() {
            return Err(GenError::NotATree("not connected".into()));
        }
        Ok(())
    }

    /// Edges oriented away from the lexicographically least vertex,
    /// in BFS discovery order.
    fn oriented_edges(&self) -> Vec<(String, String)> {
        let mut adj: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (u, v) in &self.edges {
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
        let Some(root) = self.vertices.iter().min() else {
            return Vec::new();
        };
        let mut seen = BTreeSet::from([root.as_str()]);
        let mut queue = VecDeque::from([root.as_str()]);
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            for &v in adj.get(u).into_iter().flatten() {
                if seen.insert(v) {
                    out.push((u.to_owned(), v.to_owned()));
                    queue.push_back(v);
                }
            }
        }
        out
    }
}

fn cell(i: impl std::fmt::Display, j: impl std::fmt::Display) -> String {
    format!("({i},{j})")
}

/// Window `[i0, i1]` of the repetition quiver ZΔ of a tree.
///
/// τ(i,v) = (i−1,v); both boundary columns are frontier.
pub fn ztree(t: &TreeSpec, i0: i64, i1: i64) -> Result<TranslationQuiver, GenError> {
    if i0 > i1 {
        return Err(GenError::EmptyWindow(i0, i1));
    }
    t.check()?;
    let edges = t.oriented_edges();
    let single = edges.len() == 1;
    let name = |kind: char, i: i64, u: &str, v: &str| {
        if single {
            format!("{kind}{i}")
        } else {
            format!("{kind}{i}_{u}_{v}")
        }
    };

    let mut b = QuiverBuilder::new(format!("Z-tree[{i0},{i1}]"));
    for i in i0..=i1 {
        for v in &t.vertices {
            let frontier = i == i0 || i == i1;
            b.vertex(
                cell(i, v),
                VertexFlags {
                    frontier,
                    ..VertexFlags::NONE
                },
            );
            if i > i0 {
                b.tau(cell(i, v), cell(i - 1, v));
            }
        }
    }
    for (u, v) in &edges {
        for i in i0..=i1 {
            b.arrow(name('a', i, u, v), cell(i, u), cell(i, v));
            if i < i1 {
                b.arrow(name('b', i, u, v), cell(i, v), cell(i + 1, u));
            }
        }
        for i in i0..=i1 {
            if i > i0 {
                b.sigma(name('a', i, u, v), name('b', i - 1, u, v));
            }
            if i < i1 {
                b.sigma(name('b', i, u, v), name('a', i, u, v));
            }
        }
    }
    Ok(b.build().expect("generated ids are consistent"))
}

/// Stable tube ZA_∞/⟨τ^p⟩ cut at row `h`, which is frontier.
pub fn tube(p: usize, h: usize) -> Result<TranslationQuiver, GenError> {
    if p < 1 || h < 2 {
        return Err(GenError::Parameters(format!("tube needs p >= 1 and h >= 2, got p={p}, h={h}")));
    }
    let prev = |c: usize| (c + p - 1) % p;
    let mut b = QuiverBuilder::new(format!("tube-{p}-{h}"));
    for c in 0..p {
        for j in 1..=h {
            b.vertex(
                cell(c, j),
                VertexFlags {
                    frontier: j == h,
                    ..VertexFlags::NONE
                },
            );
            b.tau(cell(c, j), cell(prev(c), j));
            if j < h {
                b.arrow(format!("u{c}_{j}"), cell(c, j), cell(c, j + 1));
                b.sigma(format!("u{c}_{j}"), format!("d{}_{}", prev(c), j + 1));
            }
            if j > 1 {
                b.arrow(format!("d{c}_{j}"), cell(c, j), cell((c + 1) % p, j - 1));
                b.sigma(format!("d{c}_{j}"), format!("u{c}_{}", j - 1));
            }
        }
    }
    Ok(b.build().expect("generated ids are consistent"))
}

/// Auslander–Reiten quiver of linearly oriented A_n: the triangle
/// 1 ≤ a ≤ b ≤ n, projectives on b = n, injectives on a = 1.
pub fn triangle_an(n: usize) -> Result<TranslationQuiver, GenError> {
    if n < 1 {
        return Err(GenError::Parameters("triangle needs n >= 1".into()));
    }
    let mut b = QuiverBuilder::new(format!("triangle-A{n}"));
    for bb in 1..=n {
        for a in 1..=bb {
            b.vertex(
                cell(a, bb),
                VertexFlags {
                    projective: bb == n,
                    injective: a == 1,
                    frontier: false,
                },
            );
            if bb < n {
                b.tau(cell(a, bb), cell(a + 1, bb + 1));
            }
            if a > 1 {
                b.arrow(format!("l{a}_{bb}"), cell(a, bb), cell(a - 1, bb));
                if bb < n {
                    b.sigma(format!("l{a}_{bb}"), format!("r{a}_{}", bb + 1));
                }
            }
            if bb > a {
                b.arrow(format!("r{a}_{bb}"), cell(a, bb), cell(a, bb - 1));
                b.sigma(format!("r{a}_{bb}"), format!("l{}_{bb}", a + 1));
            }
        }
    }
    Ok(b.build().expect("generated ids are consistent"))
}

/// Window v_0 … v_m of the preprojective Kronecker component: two parallel
/// arrows per step, τ(v_{i+2}) = v_i, v_0 and v_1 projective, the last two
/// vertices frontier.
pub fn kronecker(m: usize) -> Result<TranslationQuiver, GenError> {
    if m < 2 {
        return Err(GenError::Parameters("kronecker window needs m >= 2".into()));
    }
    let mut b = QuiverBuilder::new(format!("kronecker-{m}"));
    for i in 0..=m {
        b.vertex(
            format!("v{i}"),
            VertexFlags {
                projective: i < 2,
                injective: false,
                frontier: i + 1 >= m,
            },
        );
        if i >= 2 {
            b.tau(format!("v{i}"), format!("v{}", i - 2));
        }
        if i < m {
            for k in ['a', 'b'] {
                b.arrow(format!("{k}{i}"), format!("v{i}"), format!("v{}", i + 1));
                if i >= 1 {
                    b.sigma(format!("{k}{i}"), format!("{k}{}", i - 1));
                }
            }
        }
    }
    Ok(b.build().expect("generated ids are consistent"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{validate, VertexIndex};

    fn has_oriented_cycle_through(q: &TranslationQuiver, v: VertexIndex) -> bool {
        let mut seen = vec![false; q.vertex_count()];
        let mut stack: Vec<VertexIndex> = q.arrows_from(v).iter().map(|&a| q.target(a)).collect();
        while let Some(w) = stack.pop() {
            if w == v {
                return true;
            }
            if !std::mem::replace(&mut seen[w.ix()], true) {
                stack.extend(q.arrows_from(w).iter().map(|&a| q.target(a)));
            }
        }
        false
    }

    fn acyclic(q: &TranslationQuiver) -> bool {
        let mut indeg: Vec<usize> = q.vertex_indices().map(|v| q.arrows_into(v).len()).collect();
        let mut ready: Vec<VertexIndex> = q.vertex_indices().filter(|v| indeg[v.ix()] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &a in q.arrows_from(v) {
                let t = q.target(a);
                indeg[t.ix()] -= 1;
                if indeg[t.ix()] == 0 {
                    ready.push(t);
                }
            }
        }
        seen == q.vertex_count()
    }

    #[test]
    fn za2_window_matches_hand_construction() {
        let q = ztree(&TreeSpec::a_n(2), 0, 1).unwrap();
        assert_eq!(q.vertex_count(), 4);
        let names: Vec<_> = q.arrows().iter().map(|a| a.id.0.clone()).collect();
        assert_eq!(names, ["a0", "a1", "b0"]);
        let b0 = q.find_arrow("b0").unwrap();
        assert_eq!(q.vertex_id(q.source(b0)).0, "(0,2)");
        assert_eq!(q.vertex_id(q.target(b0)).0, "(1,1)");
    }

    #[test]
    fn single_vertex_tree() {
        let t = TreeSpec::parse("x").unwrap();
        let q = ztree(&t, -2, 2).unwrap();
        assert_eq!(q.arrow_count(), 0);
        assert_eq!(q.vertex_count(), 5);
        assert!(validate(&q).is_valid());
    }

    #[test]
    fn empty_window_is_rejected() {
        assert_eq!(ztree(&TreeSpec::a_n(2), 1, 0), Err(GenError::EmptyWindow(1, 0)));
        assert!(TreeSpec::parse("1-2,2-3,3-1").is_err());
        assert!(TreeSpec::parse("1-2,3-4").is_err());
    }

    #[test]
    fn ztree_windows_are_valid_and_acyclic() {
        for t in [TreeSpec::a_n(2), TreeSpec::a_n(3), TreeSpec::d4()] {
            for len in 0..6 {
                let q = ztree(&t, 0, len).unwrap();
                assert!(validate(&q).is_valid(), "{:?}", validate(&q).violations);
                assert!(acyclic(&q));
            }
        }
    }

    #[test]
    fn tube_shapes() {
        let q = tube(1, 2).unwrap();
        assert_eq!(q.vertex_count(), 2);
        for v in q.vertex_indices() {
            assert_eq!(q.tau(v), Some(v));
        }
        let q = tube(2, 3).unwrap();
        assert_eq!(q.vertex_count(), 6);
        let m = crate::qcore::mesh_at(&q, q.find_vertex("(0,1)").unwrap()).unwrap();
        assert_eq!(m.spokes.len(), 1);
        assert_eq!(q.vertex_id(m.spokes[0].middle(&q)).0, "(1,2)");
        for p in 1..=3 {
            for h in 2..=6 {
                let q = tube(p, h).unwrap();
                assert_eq!(q.vertex_count(), p * h);
                assert!(validate(&q).is_valid());
                assert!(q.vertex_indices().all(|v| has_oriented_cycle_through(&q, v)));
            }
        }
        assert!(tube(0, 3).is_err());
        assert!(tube(2, 1).is_err());
    }

    #[test]
    fn triangle_counts() {
        let q = triangle_an(1).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.flags(VertexIndex(0)).projective && q.flags(VertexIndex(0)).injective);
        for n in 1..=6 {
            let q = triangle_an(n).unwrap();
            assert_eq!(q.vertex_count(), n * (n + 1) / 2);
            let proj: Vec<_> = q.vertex_indices().filter(|&v| q.is_projective(v)).collect();
            let inj: Vec<_> = q.vertex_indices().filter(|&v| q.is_injective(v)).collect();
            assert_eq!(proj.len(), n);
            assert_eq!(inj.len(), n);
            let both: Vec<_> = proj.iter().filter(|v| inj.contains(v)).collect();
            assert_eq!(both.len(), 1);
            assert_eq!(q.vertex_id(*both[0]).0, format!("(1,{n})"));
            assert!(validate(&q).is_valid());
        }
        assert!(triangle_an(0).is_err());
    }

    #[test]
    fn kronecker_shapes() {
        let q = kronecker(2).unwrap();
        let v2 = q.find_vertex("v2").unwrap();
        assert_eq!(q.arrows_into(v2).len(), 2);
        assert!(q.arrows_into(v2).iter().all(|&a| q.sigma(a).is_some()));
        for m in 2..=6 {
            assert!(validate(&kronecker(m).unwrap()).is_valid());
        }
        assert!(kronecker(1).is_err());
    }
}
