//! A homomorphism into truncated p-adic integers that does not factor through any stage.

use prolim::witnesses;

fn main() -> prolim::Result<()> {
    let r = witnesses::non_factoring_report(2, 10, 8)?;
    for w in &r.witnesses {
        println!(
            "level {}: value {} (valuation {})",
            w.level,
            w.value,
            w.value.valuation()
        );
    }
    println!("{}", r.conclusion);
    Ok(())
}
