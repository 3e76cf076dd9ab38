//! Canonical forms, Hom and Ext of finitely generated abelian groups, and saturation.

use prolim::cli::parse_group;
use prolim::fgab::{self, FgAbGroup, Subgroup};
use prolim::zlinalg::IntMatrix;

fn main() -> prolim::Result<()> {
    let a = parse_group("Z/4 + Z/6 + Z")?;
    let b = parse_group("Z/6 + Z")?;
    println!("A = {}", a.canonical_form());
    println!(
        "Hom(A, B) = {}",
        fgab::hom_group(&a, &b).group.canonical_form()
    );
    println!(
        "Ext(A, B) = {}",
        fgab::ext_group(&a, &b).group.canonical_form()
    );

    let h = FgAbGroup::free(2);
    let sub = Subgroup::new(
        h.clone(),
        IntMatrix::from_i64_rows(&[vec![2, 0], vec![4, 6]]),
    )?;
    let sat = fgab::purify(&h, &sub)?;
    println!(
        "saturation of <(2,4), (0,6)> has generators {:?}",
        sat.generators()
    );
    println!("index: {:?}", fgab::index(&sub, &sat)?);
    Ok(())
}
