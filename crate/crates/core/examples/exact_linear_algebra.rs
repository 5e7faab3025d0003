//! Row reduction over the rationals and over F_32003.

use meshkit::exla::{membership, row_reduce, to_prime_field, BasisHandle, Rational, VectorInBasis, F32003};
use num_rational::BigRational;

fn r(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let basis = BasisHandle { id: 1, dim: 4 };
    let rows = vec![
        VectorInBasis::from_coords(basis, [(0, r(1, 1)), (1, r(1, 2))]).unwrap(),
        VectorInBasis::from_coords(basis, [(1, r(1, 1)), (2, r(-3, 1))]).unwrap(),
        VectorInBasis::from_coords(basis, [(0, r(2, 1)), (1, r(2, 1)), (2, r(-3, 1))]).unwrap(),
    ];
    let e = row_reduce(basis, &rows).unwrap();
    println!("rank over Q: {} pivots {:?}", e.rank(), e.pivots());

    let probe = VectorInBasis::from_coords(basis, [(0, r(1, 1)), (2, r(3, 2))]).unwrap();
    println!("probe in span: {}", membership(&probe, &e).unwrap().is_inside());

    let scaled: Vec<_> = rows.iter().map(|v| v.scale(&r(2, 1))).collect();
    let mod_p: Vec<VectorInBasis<F32003>> = scaled.iter().map(to_prime_field).collect();
    println!("rank over F_32003: {}", row_reduce(basis, &mod_p).unwrap().rank());
}
