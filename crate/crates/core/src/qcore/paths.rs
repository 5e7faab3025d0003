use super::quiver::{ArrowIndex, TranslationQuiver, VertexIndex};
use super::walk::Path;

/// All paths from `x` to `y` of length exactly `n`, ordered lexicographically
/// by their arrow ids in traversal order.
pub fn enumerate_paths(
    q: &TranslationQuiver,
    x: VertexIndex,
    y: VertexIndex,
    n: usize,
) -> Vec<Path> {
    // reaches[k][v]: v reaches y in exactly k steps
    let mut reaches = vec![vec![false; q.vertex_count()]; n + 1];
    reaches[0][y.ix()] = true;
    for k in 1..=n {
        let (done, rest) = reaches.split_at_mut(k);
        let prev = &done[k - 1];
        let cur = &mut rest[0];
        for a in q.arrow_indices() {
            if prev[q.target(a).ix()] {
                cur[q.source(a).ix()] = true;
            }
        }
    }
    let mut out = Vec::new();
    if !reaches[n][x.ix()] {
        return out;
    }
    let mut stack = Vec::with_capacity(n);
    extend(q, x, n, &reaches, &mut stack, &mut |arrows| {
        out.push(Path {
            start: x,
            arrows: arrows.to_vec(),
        })
    });
    out
}

fn extend(
    q: &TranslationQuiver,
    at: VertexIndex,
    remaining: usize,
    reaches: &[Vec<bool>],
    stack: &mut Vec<ArrowIndex>,
    emit: &mut impl FnMut(&[ArrowIndex]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    for &a in q.arrows_from(at) {
        let t = q.target(a);
        if reaches[remaining - 1][t.ix()] {
            stack.push(a);
            extend(q, t, remaining - 1, reaches, stack, emit);
            stack.pop();
        }
    }
}

/// All paths of length exactly `n` starting at `x`, in lexicographic order.
pub fn paths_from(q: &TranslationQuiver, x: VertexIndex, n: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    walk_out(q, x, n, &mut stack, &mut |arrows| {
        out.push(Path {
            start: x,
            arrows: arrows.to_vec(),
        })
    });
    out
}

fn walk_out(
    q: &TranslationQuiver,
    at: VertexIndex,
    remaining: usize,
    stack: &mut Vec<ArrowIndex>,
    emit: &mut impl FnMut(&[ArrowIndex]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    for &a in q.arrows_from(at) {
        stack.push(a);
        walk_out(q, q.target(a), remaining - 1, stack, emit);
        stack.pop();
    }
}

/// `layers[k]` holds the vertices reachable from `x` by a path of length
/// exactly `k`, for `k = 0..=n`.
pub fn forward_layers(q: &TranslationQuiver, x: VertexIndex, n: usize) -> Vec<Vec<bool>> {
    let mut layers = vec![vec![false; q.vertex_count()]; n + 1];
    layers[0][x.ix()] = true;
    for k in 1..=n {
        let (done, rest) = layers.split_at_mut(k);
        for v in q.vertex_indices() {
            if done[k - 1][v.ix()] {
                for &a in q.arrows_from(v) {
                    rest[0][q.target(a).ix()] = true;
                }
            }
        }
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn trivial_path_at_x() {
        let q = gen::triangle_an(3).unwrap();
        let x = q.find_vertex("(2,2)").unwrap();
        assert_eq!(enumerate_paths(&q, x, x, 0), vec![Path::trivial(x)]);
    }

    #[test]
    fn za3_has_two_length_two_paths() {
        let q = gen::ztree(&gen::TreeSpec::a_n(3), 0, 3).unwrap();
        let x = q.find_vertex("(0,2)").unwrap();
        let y = q.find_vertex("(1,2)").unwrap();
        let ps = enumerate_paths(&q, x, y, 2);
        assert_eq!(ps.len(), 2);
        let mids: Vec<_> = ps.iter().map(|p| q.vertex_id(p.vertices(&q)[1]).0.clone()).collect();
        assert!(mids.contains(&"(1,1)".to_string()));
        assert!(mids.contains(&"(0,3)".to_string()));
        assert!(ps[0] < ps[1]);
    }

    #[test]
    fn no_arrow_no_path() {
        let q = gen::triangle_an(3).unwrap();
        let x = q.find_vertex("(1,1)").unwrap();
        let y = q.find_vertex("(3,3)").unwrap();
        assert!(enumerate_paths(&q, x, y, 1).is_empty());
    }

    #[test]
    fn filtered_enumeration_matches_unfiltered() {
        let q = gen::tube(2, 4).unwrap();
        for x in q.vertex_indices() {
            for n in 0..5 {
                let all = paths_from(&q, x, n);
                for y in q.vertex_indices() {
                    let want: Vec<_> = all.iter().filter(|p| p.end(&q) == y).cloned().collect();
                    assert_eq!(enumerate_paths(&q, x, y, n), want);
                }
            }
        }
    }
}
