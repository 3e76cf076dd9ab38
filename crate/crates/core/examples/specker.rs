//! Independent cohomology classes of the Hawaiian earring tower.

use prolim::cech;

fn main() -> prolim::Result<()> {
    let r = cech::specker_check(6)?;
    println!("stage ranks {:?}", r.stage_ranks);
    println!(
        "{} independent classes, passed = {}",
        r.independent_classes, r.passed
    );
    Ok(())
}
