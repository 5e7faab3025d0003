//! Walk homotopy, finite balls of the universal and generic coverings,
//! covering checks and path lifting.

mod ball;
mod homotopy;

pub use ball::{
    ball_isomorphic, build_covering_ball, check_covering, default_slack, emit_covering, lift_path,
    parse_covering, CoverError, CoveringBall,
};
pub use homotopy::{
    walks_homotopic, HomotopyAnswer, HomotopyError, HomotopyKind, Move, Witness, WitnessError,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::qcore::{collapse, Path, VertexIndex};

    fn v(q: &crate::qcore::TranslationQuiver, id: &str) -> VertexIndex {
        q.find_vertex(id).unwrap()
    }

    #[test]
    fn radius_zero_is_a_point() {
        let q = gen::tube(2, 3).unwrap();
        let b = build_covering_ball(&q, v(&q, "(0,1)"), 0, HomotopyKind::Universal, 0).unwrap();
        assert_eq!((b.delta.vertex_count(), b.delta.arrow_count()), (1, 0));
        assert!(check_covering(&b, &q).is_valid());
    }

    #[test]
    fn tube_ball_checks() {
        let q = gen::tube(2, 3).unwrap();
        let b = build_covering_ball(&q, v(&q, "(0,1)"), 4, HomotopyKind::Universal, 8).unwrap();
        assert!(b.stable);
        let r = check_covering(&b, &q);
        assert!(r.is_valid(), "{:?}", r.violations);
    }

    #[test]
    fn corrupted_projection_is_reported() {
        let q = gen::tube(2, 3).unwrap();
        let mut b = build_covering_ball(&q, v(&q, "(0,1)"), 4, HomotopyKind::Universal, 8).unwrap();
        let x = b.basepoint;
        b.pi_vertices[x.ix()] = v(&q, "(1,2)");
        let r = check_covering(&b, &q);
        assert!(!r.is_valid());
    }

    #[test]
    fn simply_connected_triangle_covers_itself() {
        let q = gen::triangle_an(3).unwrap();
        let b = build_covering_ball(&q, v(&q, "(1,1)"), 8, HomotopyKind::Universal, 16).unwrap();
        assert_eq!(b.delta.vertex_count(), q.vertex_count());
        assert_eq!(b.delta.arrow_count(), q.arrow_count());
        assert!(b.delta.vertex_indices().all(|x| !b.delta.is_frontier(x)));
        assert!(check_covering(&b, &q).is_valid());
    }

    #[test]
    fn homogeneous_tube_unrolls() {
        let q = gen::tube(1, 2).unwrap();
        let mouth = v(&q, "(0,1)");
        let b = build_covering_ball(&q, mouth, 3, HomotopyKind::Universal, 6).unwrap();
        let near: Vec<_> = b
            .fiber(mouth)
            .into_iter()
            .filter(|&x| b.delta.vertex_id(x).0.matches(['+', '-']).count() <= 2)
            .collect();
        assert!(near.len() > 1);
        let p = Path::from_arrow_ids(&q, &["u0_1", "d0_2"]).unwrap();
        let lift = lift_path(&b, &q, &p, b.basepoint).unwrap();
        let end = lift.end(&b.delta);
        assert_eq!(b.pi(end), mouth);
        assert_ne!(end, b.basepoint);
        let again = lift_path(&b, &q, &p, b.basepoint).unwrap();
        assert_eq!(lift, again);
        assert_eq!(lift_path(&b, &q, &Path::trivial(mouth), b.basepoint).unwrap().len(), 0);
        let off = b.fiber(v(&q, "(0,2)"))[0];
        assert!(matches!(lift_path(&b, &q, &p, off), Err(CoverError::StartMismatch { .. })));
    }

    #[test]
    fn kronecker_generic_collapse_matches_universal_of_collapse() {
        let q = gen::kronecker(6).unwrap();
        let base = v(&q, "v0");
        let generic = build_covering_ball(&q, base, 4, HomotopyKind::Generic, 8).unwrap();
        let c = collapse(&q);
        let universal_c = build_covering_ball(&c.quiver, base, 4, HomotopyKind::Universal, 8).unwrap();
        assert!(ball_isomorphic(&generic.collapse(&c), &universal_c));
        assert!(ball_isomorphic(&generic, &generic));

        let u3 = build_covering_ball(&q, base, 3, HomotopyKind::Universal, 6).unwrap();
        let g3 = build_covering_ball(&q, base, 3, HomotopyKind::Generic, 6).unwrap();
        assert!(u3.delta.vertex_count() > g3.delta.vertex_count());
        assert!(!ball_isomorphic(&u3, &g3));
    }

    #[test]
    fn covering_file_round_trip() {
        let q = gen::kronecker(4).unwrap();
        let b = build_covering_ball(&q, v(&q, "v0"), 3, HomotopyKind::Generic, 6).unwrap();
        let text = emit_covering(&b, &q);
        let back = parse_covering(&text, &q).unwrap();
        assert_eq!(back, b);
        assert_eq!(emit_covering(&back, &q), text);
    }

    #[test]
    fn disconnected_base_is_refused() {
        let q = crate::qcore::parse_quiver("quiver two\nvertex a proj inj\nvertex b proj inj\n").unwrap();
        assert_eq!(
            build_covering_ball(&q, v(&q, "a"), 1, HomotopyKind::Universal, 2).unwrap_err(),
            CoverError::Disconnected
        );
    }
}
