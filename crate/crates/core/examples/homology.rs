//! Simplicial homology and cohomology of a few standard complexes.

use prolim::cli::parse_group;
use prolim::simplicial;

fn main() -> prolim::Result<()> {
    let zoo = [
        ("circle", simplicial::circle(4)?),
        ("bouquet of 3", simplicial::bouquet(3)),
        ("sphere", simplicial::sphere2()),
        ("projective plane", simplicial::proj_plane()),
    ];
    for g in ["Z", "Z/2"] {
        let coeff = parse_group(g)?;
        for (name, k) in &zoo {
            let h: Vec<String> = (0..=k.dimension())
                .map(|n| k.homology(n).group.canonical_form().to_string())
                .collect();
            let c: Vec<String> = (0..=k.dimension())
                .map(|n| {
                    k.cohomology(n, &coeff)
                        .map(|c| c.group().canonical_form().to_string())
                })
                .collect::<prolim::Result<_>>()?;
            println!(
                "{name:<17} chi={:>2}  H_* = {h:?}  H^*(;{g}) = {c:?}",
                k.euler_characteristic()
            );
        }
    }
    let deg = simplicial::degree(3, 4)?;
    println!(
        "degree-3 map on H_1: {:?}",
        deg.induced_homology(1)?.matrix()
    );
    Ok(())
}
