//! Radical-power verdicts, shortcut targets and the certificate search.

use meshkit::crit::{depth_certificate, find_shortcut_targets, radical_verdict};
use meshkit::gen;
use meshkit::meshcat::MeshCategory;
use meshkit::qcore::Path;

fn main() {
    let t = gen::triangle_an(3).unwrap();
    let cat = MeshCategory::new(&t);
    for label in ["r1_3,r1_2", "r2_3,l2_2", "l3_3,r2_3,l2_2", "r2_3,l2_2,r1_2"] {
        let p = Path::parse_label(&t, label).unwrap();
        let v = radical_verdict(&cat, &p).unwrap();
        println!("{label:<16} n={} {:<16} sectional={}", v.n, v.verdict.name(), v.sectional);
    }

    let q = gen::tube(2, 6).unwrap();
    let cat = MeshCategory::new(&q);
    let p = Path::parse_label(&q, "u0_1,d0_2").unwrap();
    let longer = find_shortcut_targets(&q, &p, 5).unwrap();
    println!("\n{} has {} longer parallel paths up to length 5", p.label(&q), longer.len());
    println!("zero class: {}", cat.class_of_path(&p).unwrap().is_zero());
    match depth_certificate(&cat, &p, 2, 3).unwrap() {
        Some(c) => println!("mesh-level certificate of degree {}", c.total_degree),
        None => println!("no mesh-level certificate up to degree {}", p.len() + 2),
    }
}
