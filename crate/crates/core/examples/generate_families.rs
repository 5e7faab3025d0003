//! The generator families, their sizes and the text format.

use meshkit::gen::{self, TreeSpec};
use meshkit::qcore::{collapse, emit_quiver, validate};

fn main() {
    let quivers = [
        gen::ztree(&TreeSpec::a_n(3), 0, 3).unwrap(),
        gen::ztree(&TreeSpec::d4(), -1, 2).unwrap(),
        gen::tube(3, 4).unwrap(),
        gen::triangle_an(5).unwrap(),
        gen::kronecker(4).unwrap(),
    ];
    for q in &quivers {
        println!(
            "{:<20} {:>3} vertices {:>3} arrows valid={}",
            q.name(),
            q.vertex_count(),
            q.arrow_count(),
            validate(q).is_valid()
        );
    }

    let k = gen::kronecker(3).unwrap();
    let c = collapse(&k);
    println!("\n{}", emit_quiver(&c.quiver));
    for (arrow, m) in &c.multiplicity {
        println!("{arrow} stands for {m} arrows");
    }
}
