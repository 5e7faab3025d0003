//! Unroll a tube into a ball of its universal covering and lift a path.

use meshkit::cover::{build_covering_ball, check_covering, default_slack, emit_covering, lift_path, HomotopyKind};
use meshkit::gen;
use meshkit::qcore::Path;

fn main() {
    let q = gen::tube(1, 4).unwrap();
    let mouth = q.find_vertex("(0,1)").unwrap();
    let r = 4;
    let ball = build_covering_ball(&q, mouth, r, HomotopyKind::Universal, default_slack(r)).unwrap();
    println!(
        "{}: {} vertices, {} arrows, stable = {}, covering valid = {}",
        ball.delta.name(),
        ball.delta.vertex_count(),
        ball.delta.arrow_count(),
        ball.stable,
        check_covering(&ball, &q).is_valid()
    );
    println!("fiber over the mouth: {} vertices", ball.fiber(mouth).len());

    let loop_path = Path::parse_label(&q, "u0_1,d0_2").unwrap();
    let lift = lift_path(&ball, &q, &loop_path, ball.basepoint).unwrap();
    let end = lift.end(&ball.delta);
    println!("the mouth loop lifts to {} ending at {}", lift.label(&ball.delta), ball.delta.vertex_id(end));

    let text = emit_covering(&ball, &q);
    println!("covering file has {} lines", text.lines().count());
}
