//! Graded hom spaces of the mesh category and composition of classes.

use meshkit::gen::{self, TreeSpec};
use meshkit::meshcat::MeshCategory;
use meshkit::qcore::Path;

fn main() {
    let q = gen::ztree(&TreeSpec::a_n(3), -1, 4).unwrap();
    let cat = MeshCategory::new(&q);
    let v = |s: &str| q.find_vertex(s).unwrap();

    let h = cat.hom_space(v("(0,2)"), v("(1,2)"), 2);
    println!("k_2((0,2),(1,2)): {} paths, {} relations, dim {}, exact {}", h.basis().len(), h.relations().rank(), h.quotient_dim(), h.is_exact());

    for d in cat.graded_dims(v("(0,1)"), v("(0,3)"), 4) {
        println!("  degree {}: dim {} exact {}", d.degree, d.dim, d.exact);
    }

    let first = cat.class_of_path(&Path::parse_label(&q, "b0_2_3").unwrap()).unwrap();
    let second = cat.class_of_path(&Path::parse_label(&q, "a1_2_3").unwrap()).unwrap();
    let both = cat.compose(&second, &first).unwrap();
    for (c, p) in both.terms() {
        println!("composite normal form: {c} * {}", p.label(&q));
    }
}
