//! Hom dimensions in a covering ball summed over a fiber match the base.

use meshkit::cover::{build_covering_ball, HomotopyKind};
use meshkit::crit::fiber_sum;
use meshkit::gen;
use meshkit::meshcat::MeshCategory;

fn main() {
    let q = gen::tube(1, 8).unwrap();
    let mouth = q.find_vertex("(0,1)").unwrap();
    let ball = build_covering_ball(&q, mouth, 8, HomotopyKind::Universal, 16).unwrap();
    let up = MeshCategory::new(&ball.delta);
    let down = MeshCategory::new(&q);

    for (target, n) in [("(0,1)", 2), ("(0,3)", 2), ("(0,2)", 3), ("(0,2)", 5)] {
        let y = q.find_vertex(target).unwrap();
        let s = fiber_sum(&up, &ball, ball.basepoint, y, n).unwrap();
        let base = down.hom_space(mouth, y, n).quotient_dim();
        let terms: Vec<String> = s.terms.iter().map(|t| format!("{}:{}", t.vertex, t.dim)).collect();
        println!("Y={target} n={n}: fiber sum {} [{}], base dim {base}", s.total, terms.join(" "));
    }
}
