//! Solving x_i = b_i + n_i x_{i+1} with Higman vectors.

use num_bigint::BigInt;
use prolim::fgab::FgAbGroup;
use prolim::witnesses::{self, HigmanSystem};

fn main() -> prolim::Result<()> {
    let n: Vec<BigInt> = [2, 3, 2, 5].into_iter().map(BigInt::from).collect();
    for (i, a) in witnesses::higman_vectors(&n, 5)?.iter().enumerate() {
        println!(
            "a_{} = {:?}",
            i + 1,
            a.iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    let targets = vec![vec![BigInt::from(1)]; 4];
    for g in [FgAbGroup::free(1), FgAbGroup::cyclic(7)] {
        let sys = HigmanSystem::from_targets(n.clone(), &g, &targets)?;
        let sol = witnesses::higman_verify(&sys)?;
        println!(
            "{}: x_1 = {}, verified {}",
            sol.group, sol.solution[0][0], sol.verified
        );
    }
    Ok(())
}
