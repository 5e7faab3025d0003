//! Parse a quiver file, check the axioms and look at a mesh.

use meshkit::qcore::{is_sectional, mesh_at, parse_quiver, validate, Path};

const ZA2: &str = include_str!("../fixtures/za2.quiver");

fn main() {
    let q = parse_quiver(ZA2).expect("fixture parses");
    let report = validate(&q);
    println!("{}: valid = {}, {} frontier warnings", q.name(), report.is_valid(), report.warnings.len());

    let z = q.find_vertex("(1,1)").unwrap();
    let mesh = mesh_at(&q, z).unwrap();
    for s in &mesh.spokes {
        println!("spoke {} then {}", q.arrow_id(s.partner), q.arrow_id(s.arrow));
    }

    for label in ["a0,b0", "b0,a1"] {
        let p = Path::parse_label(&q, label).unwrap();
        println!("{label}: sectional = {}", is_sectional(&q, &p).unwrap());
    }

    let broken = ZA2.replace("sigma a1 -> b0\n", "");
    for issue in validate(&parse_quiver(&broken).unwrap()).violations {
        println!("violation {:?} at {}: {}", issue.kind, issue.location, issue.message);
    }
}
