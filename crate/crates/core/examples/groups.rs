//! Building reflection groups from the catalog and looking at their
//! elements.

use reflekt::catalog::get_group;
use reflekt::groups::ElementKind;

fn main() -> reflekt::Result<()> {
    for (name, params) in [("G", vec![4, 2, 3]), ("G12", vec![]), ("Stilde4", vec![])] {
        let g = get_group(name, &params)?;
        let doubles = g
            .classify()
            .iter()
            .filter(|c| c.kind == ElementKind::DoubleReflection)
            .count();
        println!(
            "{name}{params:?}: order {}, {} reflections, {} double reflections, reflection group {}, center {}",
            g.order(),
            g.num_reflections(),
            doubles,
            g.is_reflection_group(),
            g.center().order()
        );
    }
    let w = get_group("G13", &[])?;
    let sl = w.sl_part();
    println!("G13 ∩ SL2 has order {} and index {}", sl.order(), w.order() / sl.order());
    Ok(())
}
