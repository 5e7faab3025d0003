//! Decide walk homotopy and replay the witness.

use meshkit::cover::{walks_homotopic, HomotopyAnswer, HomotopyKind};
use meshkit::gen;
use meshkit::qcore::{Step, Walk};

fn main() {
    let q = gen::kronecker(4).unwrap();
    let v0 = q.find_vertex("v0").unwrap();
    let a = q.find_arrow("a0").unwrap();
    let b = q.find_arrow("b0").unwrap();
    let via_a = Walk::new(&q, v0, vec![Step::forward(a)]).unwrap();
    let via_b = Walk::new(&q, v0, vec![Step::forward(b)]).unwrap();

    for kind in [HomotopyKind::Universal, HomotopyKind::Generic] {
        match walks_homotopic(&q, &via_a, &via_b, kind, 6).unwrap() {
            HomotopyAnswer::Yes(w) => {
                println!("{}: homotopic, witness of {} move(s)", kind.name(), w.moves.len());
                w.replay(&q, kind).expect("witness replays");
            }
            HomotopyAnswer::NoWithinBound => println!("{}: not identified within the bound", kind.name()),
        }
    }

    // a0 followed by its inverse cancels.
    let there_and_back = Walk::new(&q, v0, vec![Step::forward(a), Step::inverse(a)]).unwrap();
    let answer = walks_homotopic(&q, &there_and_back, &Walk::trivial(v0), HomotopyKind::Universal, 2).unwrap();
    println!("a0 a0^-1 ~ trivial: {}", answer.is_yes());
}
