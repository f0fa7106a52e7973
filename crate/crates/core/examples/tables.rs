//! Recomputes the classification tables for small parameters.

use reflekt::quotients::tables::{table1, table2, table4, TableRow};

fn show(title: &str, rows: &[TableRow]) {
    println!("{title}");
    for r in rows {
        println!("  {:<32} {:<28} {}", r.label, r.computed, if r.ok { "ok" } else { "MISMATCH" });
    }
}

fn main() {
    show("subgroups of SL2", &table2(5));
    show("quotients by ±1", &table1(3));
    show("non-abelian quotients", &table4(6));
}
