//! Diagrams, coset enumeration and elementary quotients.

use reflekt::presentations::{
    coset_enumerate, diagram_presentation, standard_diagram, verify_chain, Diagram,
    DEFAULT_MAX_COSETS,
};

fn main() -> reflekt::Result<()> {
    let text = "node s 2\nnode t 2\nnode u 2\ntwisted s t u e=4 f=3\n";
    let (d, _) = Diagram::parse(text)?;
    let p = diagram_presentation(&d)?;
    println!("{p}");
    println!("order {}", coset_enumerate(&p, DEFAULT_MAX_COSETS)?);

    // su = us turns the twisted diagram of G13 into B3
    let r = standard_diagram("G13")?;
    for c in verify_chain(&r, &["su=us"], DEFAULT_MAX_COSETS)? {
        println!("{}: order {}, kernel {}, good {}, ok {}", c.rule, c.presented_order, c.kernel_order, c.good, c.ok);
        println!("{}", c.diagram);
    }
    Ok(())
}
