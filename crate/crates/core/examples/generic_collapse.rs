//! Collapsing the generic covering of the Kronecker window gives the
//! universal covering of the collapsed window.

use meshkit::cover::{ball_isomorphic, build_covering_ball, HomotopyKind};
use meshkit::gen;
use meshkit::qcore::collapse;

fn main() {
    let q = gen::kronecker(6).unwrap();
    let c = collapse(&q);
    let base = q.find_vertex("v0").unwrap();

    let generic = build_covering_ball(&q, base, 4, HomotopyKind::Generic, 8).unwrap();
    let universal_of_collapse = build_covering_ball(&c.quiver, base, 4, HomotopyKind::Universal, 8).unwrap();
    println!("collapsed generic ≅ universal of collapse: {}", ball_isomorphic(&generic.collapse(&c), &universal_of_collapse));

    let u = build_covering_ball(&q, base, 3, HomotopyKind::Universal, 6).unwrap();
    let g = build_covering_ball(&q, base, 3, HomotopyKind::Generic, 6).unwrap();
    println!(
        "radius 3: universal {} vertices, generic {} vertices, isomorphic: {}",
        u.delta.vertex_count(),
        g.delta.vertex_count(),
        ball_isomorphic(&u, &g)
    );
}
