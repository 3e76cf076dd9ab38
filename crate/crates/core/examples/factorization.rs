//! Factoring thread homomorphisms through a stage, and the diagonal witness search.

use num_bigint::BigInt;
use prolim::factor::{self, FactorOutcome};
use prolim::fgab::FgAbGroup;
use prolim::tower::{FormulaHom, InverseTower, ThreadHom};

fn main() -> prolim::Result<()> {
    let t = InverseTower::hawaii(7);
    let z = FgAbGroup::free(1);
    let top = t.window();
    let coordinate = ThreadHom::Formula(FormulaHom::new("coordinate:5", z.clone(), move |th| {
        Ok(vec![th.component(top)[4].clone()])
    }));
    match factor::factor_hom(&t, &coordinate, &z)? {
        FactorOutcome::Factors(f) => println!(
            "coordinate 5 factors at level {} through stage {}",
            f.level, f.stage
        ),
        FactorOutcome::NoFactorWitness { witnesses } => {
            println!("no factorization, {} witnesses", witnesses.len())
        }
    }
    let sum = ThreadHom::Formula(FormulaHom::new("sum", z.clone(), move |th| {
        Ok(vec![th.component(top).iter().sum::<BigInt>()])
    }));
    let d = factor::diagonal_witness(&t, &sum)?;
    println!(
        "diagonal search for the sum: {} rounds, stop {:?}",
        d.rounds.len(),
        d.stop
    );

    let report = factor::nabla_diagnostics(&t, &z)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
