//! Deciding goodness and building the quotient reflection group.

use reflekt::catalog::get_group;
use reflekt::quotients::tables::plus_minus_one;
use reflekt::quotients::{full_quotient, good_generators, hyperplane_map_with, is_good};

fn main() -> reflekt::Result<()> {
    let wt = get_group("G12", &[])?;
    let g = plus_minus_one(&wt)?;
    let (q, id) = full_quotient(&wt, &g)?;
    println!("(G12, ±1): good {}, quotient order {}", q.good, q.w.as_ref().map_or(0, |w| w.order()));
    println!("  degrees {:?} with relation degrees {:?}", q.w_degrees, q.relation_degrees);
    if let Some(id) = id {
        println!("  degree identity {:?} = {:?}: {}", id.lhs, id.rhs, id.holds);
    }
    let hm = hyperplane_map_with(&wt, &g, &q)?;
    println!("  {} hyperplane classes onto {} hyperplanes", hm.classes.len(), hm.target_size);
    let gens = good_generators(&wt, &g)?;
    println!("  {} products s_H' s_H^-1 generate the subgroup", gens.len());

    // the same subgroup is not good in G(4,1,2)
    let wt = get_group("G", &[4, 1, 2])?;
    let r = is_good(&wt, &plus_minus_one(&wt)?)?;
    println!("(G(4,1,2), ±1): good {}, {:?}", r.good, r.reason);
    Ok(())
}
