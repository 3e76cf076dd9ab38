//! The universal coefficient ladder over a tower of polyhedra.

use prolim::cech::{self, PolyhedralTower};
use prolim::fgab::FgAbGroup;

fn main() -> prolim::Result<()> {
    let z = FgAbGroup::free(1);
    for pt in [
        PolyhedralTower::hawaiian(5)?,
        PolyhedralTower::solenoid(2, 4)?,
    ] {
        let r = cech::uct_ladder(&pt, 1, &z)?;
        println!(
            "ladder holds: {}, identification: {:?}",
            r.ladder_holds(),
            r.nabla.status
        );
        for s in &r.stages {
            println!(
                "  stage {}: 0 -> {} -> {} -> {} -> 0",
                s.stage, s.ext, s.cohomology, s.hom
            );
        }
    }
    Ok(())
}
