//! Molien series and minimal presentations of invariant rings.

use reflekt::catalog::{get_group, group_by_spec};
use reflekt::invariants::{molien, presentation, reflection_degrees};

fn main() -> reflekt::Result<()> {
    let g = get_group("Stilde4", &[])?;
    println!("binary octahedral, Molien coefficients: {:?}", molien(&g, 24).dims());
    let p = presentation(&g, None, None)?;
    println!("generators of degrees {:?}", p.generator_degrees);
    for (d, f) in p.generator_degrees.iter().zip(&p.generators) {
        println!("  degree {d}: {} terms", f.num_terms());
    }
    println!("relation of degree {:?}: {}", p.relation_degrees, p.relations[0]);

    let w = group_by_spec("H3")?;
    println!("H3 degrees {:?}", reflection_degrees(&w)?);
    Ok(())
}
