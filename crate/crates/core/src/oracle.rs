//! Brute-force reference computations for cross-checking the main engine.
//!
//! Nothing here touches the enumeration or elimination code in `qcore`,
//! `exla` or `meshcat`: paths are listed by backward recursion, relations
//! are found by scanning basis paths for mesh segments, and ranks come
//! from a dense fraction matrix.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::qcore::{ArrowIndex, Path, TranslationQuiver, VertexIndex};

/// Instances with more basis paths than this are refused.
pub const PATH_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{paths} paths of degree {degree} exceed the oracle cap of {cap}")]
    TooLarge { paths: usize, degree: usize, cap: usize },
    #[error("path is not composable")]
    BadPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    /// Row reduces in place; returns the pivot column of each nonzero row.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, p * self.cols + c);
            }
            let inv = self.get(row, col).recip();
            for c in 0..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c) - &f * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }
}

/// All arrow sequences of length `n` from `x` to `y`, built from `y` backwards.
fn paths_back(q: &TranslationQuiver, x: VertexIndex, y: VertexIndex, n: usize) -> Vec<Vec<ArrowIndex>> {
    fn go(
        q: &TranslationQuiver,
        x: VertexIndex,
        at: VertexIndex,
        left: usize,
        tail: &mut Vec<ArrowIndex>,
        out: &mut Vec<Vec<ArrowIndex>>,
    ) {
        if left == 0 {
            if at == x {
                out.push(tail.iter().rev().copied().collect());
            }
            return;
        }
        for &a in q.arrows_into(at) {
            tail.push(a);
            go(q, x, q.arrow(a).source, left - 1, tail, out);
            tail.pop();
        }
    }
    let mut out = Vec::new();
    go(q, x, y, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Basis paths plus the reduced relation matrix of one graded piece.
struct Piece {
    paths: Vec<Vec<ArrowIndex>>,
    reduced: DenseMatrix,
    pivots: Vec<usize>,
}

impl Piece {
    fn build(q: &TranslationQuiver, x: VertexIndex, y: VertexIndex, n: usize) -> Result<Piece, OracleError> {
        let paths = paths_back(q, x, y, n);
        if paths.len() > PATH_CAP {
            return Err(OracleError::TooLarge { paths: paths.len(), degree: n, cap: PATH_CAP });
        }
        let position: BTreeMap<&[ArrowIndex], usize> =
            paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for p in &paths {
            for i in 0..p.len().saturating_sub(1) {
                let (first, second) = (p[i], p[i + 1]);
                let z = q.arrow(second).target;
                if q.is_projective(z) || q.is_frontier(z) || q.sigma(second) != Some(first) {
                    continue;
                }
                let mut cols = Vec::new();
                for &alpha in q.arrows_into(z) {
                    let Some(partner) = q.sigma(alpha) else { continue };
                    let mut w = p[..i].to_vec();
                    w.push(partner);
                    w.push(alpha);
                    w.extend_from_slice(&p[i + 2..]);
                    cols.push(position[w.as_slice()]);
                }
                cols.sort_unstable();
                rows.push(cols);
            }
        }
        rows.sort();
        rows.dedup();
        let mut m = DenseMatrix::zeros(rows.len(), paths.len());
        for (r, cols) in rows.iter().enumerate() {
            for &c in cols {
                m.set(r, c, BigRational::one());
            }
        }
        let pivots = m.row_reduce();
        Ok(Piece { paths, reduced: m, pivots })
    }

    fn dim(&self) -> usize {
        self.paths.len() - self.pivots.len()
    }

    fn contains(&self, arrows: &[ArrowIndex]) -> bool {
        self.paths.binary_search_by(|p| p.as_slice().cmp(arrows)).is_ok()
    }

    /// Whether the path lies in the relation span.
    fn kills(&self, arrows: &[ArrowIndex]) -> bool {
        let Ok(col) = self.paths.binary_search_by(|p| p.as_slice().cmp(arrows)) else {
            return false;
        };
        let mut v = vec![BigRational::zero(); self.paths.len()];
        v[col] = BigRational::one();
        for (r, &pc) in self.pivots.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for (c, slot) in v.iter_mut().enumerate() {
                let e = self.reduced.get(r, c);
                if !e.is_zero() {
                    *slot -= &f * e;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Non-pivot paths, a basis of the quotient.
    fn free_paths(&self) -> Vec<Vec<ArrowIndex>> {
        (0..self.paths.len())
            .filter(|c| !self.pivots.contains(c))
            .map(|c| self.paths[c].clone())
            .collect()
    }
}

pub fn oracle_hom_dim(q: &TranslationQuiver, x: VertexIndex, y: VertexIndex, n: usize) -> Result<usize, OracleError> {
    Ok(Piece::build(q, x, y, n)?.dim())
}

pub fn oracle_path_is_zero(q: &TranslationQuiver, p: &Path) -> Result<bool, OracleError> {
    let end = walk_end(q, p.start, &p.arrows).ok_or(OracleError::BadPath)?;
    let piece = Piece::build(q, p.start, end, p.arrows.len())?;
    debug_assert!(piece.contains(&p.arrows));
    Ok(piece.kills(&p.arrows))
}

fn walk_end(q: &TranslationQuiver, start: VertexIndex, arrows: &[ArrowIndex]) -> Option<VertexIndex> {
    let mut at = start;
    for &a in arrows {
        if q.arrow(a).source != at {
            return None;
        }
        at = q.arrow(a).target;
    }
    Some(at)
}

/// Outcome of the exhaustive substitution search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCertificate {
    pub total_degree: usize,
    /// One nonzero composite at the minimal total degree, in traversal order.
    pub composite: Vec<ArrowIndex>,
}

/// Tries every set of positions, every degree in `2..=cap` at each and every
/// quotient-basis substitute, keeping the least total degree `≤ n + extra`
/// with a nonzero composite.
pub fn oracle_depth_search(
    q: &TranslationQuiver,
    p: &Path,
    extra: usize,
    cap: usize,
) -> Result<Option<OracleCertificate>, OracleError> {
    let n = p.arrows.len();
    let mut verts = vec![p.start];
    for &a in &p.arrows {
        if q.arrow(a).source != *verts.last().unwrap() {
            return Err(OracleError::BadPath);
        }
        verts.push(q.arrow(a).target);
    }
    let (x, y) = (verts[0], verts[n]);
    let mut pieces: BTreeMap<(usize, usize, usize), Piece> = BTreeMap::new();
    let mut substitutes = Vec::with_capacity(n);
    for i in 0..n {
        let mut by_degree = vec![Vec::new(); cap + 1];
        for d in 2..=cap.min(extra + 1) {
            by_degree[d] = Piece::build(q, verts[i], verts[i + 1], d)?.free_paths();
        }
        substitutes.push(by_degree);
    }
    let mut best: Option<OracleCertificate> = None;
    // Each position keeps its arrow (degree 1) or takes a substitute.
    let mut degrees = vec![1usize; n];
    loop {
        let total: usize = degrees.iter().sum();
        if total > n && total <= n + extra && best.as_ref().map_or(true, |b| total < b.total_degree) {
            let key = (x.ix(), y.ix(), total);
            if !pieces.contains_key(&key) {
                pieces.insert(key, Piece::build(q, x, y, total)?);
            }
            let piece = &pieces[&key];
            if let Some(c) = first_nonzero(p, &degrees, &substitutes, piece) {
                best = Some(OracleCertificate { total_degree: total, composite: c });
            }
        }
        // Odometer over degrees {1} ∪ [2, cap] per position.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            degrees[i] = if degrees[i] == 1 { 2 } else { degrees[i] + 1 };
            if degrees[i] <= cap {
                break;
            }
            degrees[i] = 1;
            i += 1;
        }
    }
}

fn first_nonzero(
    p: &Path,
    degrees: &[usize],
    substitutes: &[Vec<Vec<Vec<ArrowIndex>>>],
    piece: &Piece,
) -> Option<Vec<ArrowIndex>> {
    let pools: Vec<Vec<Vec<ArrowIndex>>> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| if d == 1 { vec![vec![p.arrows[i]]] } else { substitutes[i][d].clone() })
        .collect();
    if pools.iter().any(Vec::is_empty) {
        return None;
    }
    let mut pick = vec![0usize; pools.len()];
    loop {
        let word: Vec<ArrowIndex> = pools.iter().zip(&pick).flat_map(|(pool, &k)| pool[k].iter().copied()).collect();
        if !piece.kills(&word) {
            return Some(word);
        }
        let mut i = 0;
        loop {
            if i == pools.len() {
                return None;
            }
            pick[i] += 1;
            if pick[i] < pools[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::meshcat::MeshCategory;
    use crate::qcore::paths_from;

    #[test]
    fn small_values() {
        let q = gen::ztree(&gen::TreeSpec::a_n(3), -1, 4).unwrap();
        let v = |s: &str| q.find_vertex(s).unwrap();
        assert_eq!(oracle_hom_dim(&q, v("(0,2)"), v("(1,2)"), 2).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&q, v("(0,2)"), v("(0,2)"), 0).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&q, v("(0,2)"), v("(0,1)"), 0).unwrap(), 0);
    }

    #[test]
    fn agrees_with_engine_on_tube() {
        let q = gen::tube(2, 5).unwrap();
        let cat = MeshCategory::new(&q);
        for x in q.vertex_indices() {
            for y in q.vertex_indices() {
                for n in 0..=5 {
                    assert_eq!(oracle_hom_dim(&q, x, y, n).unwrap(), cat.hom_space(x, y, n).quotient_dim());
                }
            }
            for p in paths_from(&q, x, 3) {
                let hs = cat.hom_space(p.start, p.end(&q), 3);
                assert_eq!(oracle_path_is_zero(&q, &p).unwrap(), hs.normal_form(&hs.path_vector(&p).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q = gen::kronecker(12).unwrap();
        let v = |s: &str| q.find_vertex(s).unwrap();
        assert!(matches!(oracle_hom_dim(&q, v("v0"), v("v8"), 8), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn zero_extra_finds_nothing() {
        let q = gen::triangle_an(3).unwrap();
        for x in q.vertex_indices() {
            for p in paths_from(&q, x, 2) {
                assert_eq!(oracle_depth_search(&q, &p, 0, 4).unwrap(), None);
            }
        }
    }
}
