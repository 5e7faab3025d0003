//! The two length-two conditions at each mesh of a homogeneous tube.

use meshkit::crit::n2_mesh_analysis;
use meshkit::gen;
use meshkit::meshcat::MeshCategory;

fn main() {
    let q = gen::tube(1, 14).unwrap();
    let cat = MeshCategory::new(&q);
    for z in q.vertex_indices() {
        // Rows near the top reach the window frontier within the degree cap.
        match n2_mesh_analysis(&cat, z, 8) {
            Ok(r) => println!(
                "{}: cond3={} cond4={} first degree {:?}",
                q.vertex_id(z),
                r.cond3,
                r.cond4,
                r.first_degree
            ),
            Err(e) => println!("{}: {e}", q.vertex_id(z)),
        }
    }
}
