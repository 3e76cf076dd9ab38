//! Deciding the Mittag-Leffler condition inside a finite window.

use prolim::tower::{self, InverseTower, Lim1Status};

fn main() -> prolim::Result<()> {
    for (name, t) in [
        ("hawaii", InverseTower::hawaii(8)),
        ("solenoid:2", InverseTower::solenoid(2, 8)),
    ] {
        let r = tower::is_mittag_leffler(&t)?;
        println!("{name}: certified = {}", r.certified);
        for level in &r.levels {
            println!("  level {} -> {:?}", level.level, level.status);
        }
        let lim1 = match tower::lim1_status(&t)? {
            Lim1Status::Lim1Vanishes { .. } => "vanishes",
            Lim1Status::Unknown => "undecided in this window",
        };
        println!("  lim^1: {lim1}");
    }
    Ok(())
}
