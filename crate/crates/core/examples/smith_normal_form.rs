//! Smith normal form with its change-of-basis matrices.

use prolim::zlinalg::{self, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = zlinalg::snf(&a);
    println!("A = {a:?}");
    println!(
        "invariant factors: {:?}",
        s.invariant_factors()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    assert_eq!(&(&s.u * &a) * &s.v, s.d);
    println!("U·A·V = D checked, rank {}", s.rank);
    println!("kernel basis: {:?}", zlinalg::kernel_basis(&a));
}
