//! The quotient of G31 by its largest normal 2-subgroup.

use reflekt::quotients::g31::g31_report;

fn main() -> reflekt::Result<()> {
    let r = g31_report()?;
    println!("|G31| = {}, |G| = {}, reflections in G: {}", r.order, r.subgroup_order, r.subgroup_reflections);
    println!("hyperplane classes {}, generator classes match {:?}", r.classes, r.generator_match);
    println!("relation of degree {:?}: {}", r.relation_degrees, r.relation);
    println!("quotient of order {} with degrees {:?}", r.quotient_order, r.quotient_degrees);
    println!("all checks: {}", r.ok());
    Ok(())
}
