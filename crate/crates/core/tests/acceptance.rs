//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture`.

use std::time::Instant;

use reflekt::catalog::get_group;
use reflekt::invariants::{molien, presentation};
use reflekt::polynomials::{act, invariant_basis, parse_poly};
use reflekt::presentations::{
    coset_enumerate, diagram_presentation, standard_diagram, verify_chain,
    verify_diagram_quotient, DEFAULT_MAX_COSETS,
};
use reflekt::quotients::g31::{g31_report, G31Report};
use reflekt::quotients::tables::{
    counterexamples, cyclic_diagonal, plus_minus_one, quaternion_subgroup, table1, table2, table3,
    table4, TableRow,
};
use reflekt::quotients::{in_Nrel, is_good, parabolic_inheritance};
use reflekt::{CycNum, Mat, MatGroup, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

fn rows_outcome(rows: &[TableRow]) -> Outcome {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.ok)
        .map(|r| format!("{}: expected {} got {} {:?}", r.label, r.expected, r.computed, r.detail))
        .collect();
    Outcome {
        pass: bad.is_empty() && !rows.is_empty(),
        detail: if bad.is_empty() {
            format!("{} rows", rows.len())
        } else {
            bad.join("; ")
        },
    }
}

fn report(n: usize, name: &str, t: Instant, o: &Outcome) {
    println!(
        "criterion {n:2} {} {name} ({:.1}s): {}",
        if o.pass { "PASS" } else { "FAIL" },
        t.elapsed().as_secs_f64(),
        o.detail
    );
}

fn g31_outcome(r: &reflekt::Result<G31Report>) -> Outcome {
    match r {
        Ok(r) => Outcome {
            pass: r.ok(),
            detail: format!(
                "|G31| {}, |G| {}, reflections {}, {} classes, s..w classes give p_s..p_w {:?}, \
                 relation degrees {:?}, \
                 equal to R {}, |W| {} with degrees {:?}",
                r.order,
                r.subgroup_order,
                r.subgroup_reflections,
                r.classes,
                r.generator_match,
                r.relation_degrees,
                r.relation_matches_r,
                r.quotient_order,
                r.quotient_degrees
            ),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn diagram_suite() -> reflekt::Result<Outcome> {
    let mut bad = Vec::new();
    let mut n = 0;
    for (name, order) in [("A2", 6), ("F4", 1152), ("G12", 48), ("G13", 96), ("G22", 240)] {
        let r = standard_diagram(name)?;
        let c = coset_enumerate(&diagram_presentation(&r.diagram)?, DEFAULT_MAX_COSETS)?;
        n += 1;
        if c != order || r.group.order() != order {
            bad.push(format!("{name}: enumerated {c}, matrices {}", r.group.order()));
        }
    }
    for (name, rule, order) in [
        ("F4", "tu=ut", 36),
        ("G12", "su=us", 24),
        ("G13", "su=us", 48),
        ("G22", "su=us", 120),
    ] {
        let r = standard_diagram(name)?;
        let c = verify_diagram_quotient(&r, rule, DEFAULT_MAX_COSETS)?;
        n += 1;
        if !c.ok || c.presented_order != order {
            bad.push(format!("{name} {rule}: {c:?}"));
        }
    }
    let r = standard_diagram("G(4,2,4)")?;
    let chain = verify_chain(
        &r,
        &["st1=t1s", "t1=t1'", "t1=t3", "t1=t2", "s=t1"],
        DEFAULT_MAX_COSETS,
    )?;
    let orders: Vec<usize> = chain.iter().map(|c| c.presented_order).collect();
    n += chain.len();
    if orders != [384, 48, 12, 4, 2] || !chain.iter().all(|c| c.ok) {
        bad.push(format!("G(4,2,4) chain: orders {orders:?}"));
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{n} checks, G(4,2,4) chain {orders:?}")
        } else {
            bad.join("; ")
        },
    })
}

fn cyc(a: i64, b: i64, n: u32, k: i64) -> CycNum {
    &CycNum::from_int(a) + &CycNum::term(Rational::from_int(b), n, k)
}

/// Deterministic instances of the property suites.
fn properties() -> reflekt::Result<Outcome> {
    let mut bad = Vec::new();
    // field axioms
    let xs = [cyc(1, 2, 5, 1), cyc(-3, 1, 12, 5), cyc(0, 7, 8, 3), CycNum::rational(2, 3), CycNum::i()];
    for a in &xs {
        for b in &xs {
            for c in &xs {
                let ok = &(a + b) + c == a + &(b + c)
                    && &(a * b) * c == a * &(b * c)
                    && a * &(b + c) == &(a * b) + &(a * c)
                    && a * b == b * a
                    && a + b == b + a;
                if !ok {
                    bad.push(format!("field axioms at {a}, {b}, {c}"));
                }
            }
        }
        if !(a * &a.inv()).is_one() {
            bad.push(format!("inverse of {a}"));
        }
    }
    // action axioms
    let g = get_group("G12", &[])?;
    let p = parse_poly("X1^3*X2 + 2*X2^2 - X1", 2)?;
    for x in g.generators() {
        for y in g.generators() {
            if act(&(x * y), &p)? != act(x, &act(y, &p)?)? {
                bad.push("action is not compatible with products".into());
            }
        }
    }
    if act(&Mat::identity(2), &p)? != p {
        bad.push("identity acts nontrivially".into());
    }
    // Molien series against invariant dimensions
    for (name, params) in [("C", vec![4]), ("Itilde2", vec![2]), ("G", vec![4, 2, 2]), ("A", vec![3])] {
        let g = get_group(name, &params)?;
        let dims = molien(&g, 12).dims();
        for d in 0..=12u32 {
            let k = invariant_basis(&g, d)?.len();
            if k != dims[d as usize] {
                bad.push(format!("{name}{params:?} degree {d}: Molien {} basis {k}", dims[d as usize]));
            }
        }
    }
    // Lagrange
    let w = get_group("G", &[6, 2, 3])?;
    for sub in [w.sl_part(), w.reflection_subgroup(), w.center(), w.derived_subgroup()?] {
        if w.order() % sub.order() != 0 || !w.contains_group(&sub) {
            bad.push(format!("subgroup of order {} in a group of order {}", sub.order(), w.order()));
        }
    }
    // parabolic inheritance
    for (name, params) in [("G12", vec![]), ("G", vec![4, 2, 2]), ("I2", vec![6])] {
        let wt = get_group(name, &params)?;
        let g = plus_minus_one(&wt)?;
        if !parabolic_inheritance(&wt, &g)?.iter().all(|&(_, good)| good) {
            bad.push(format!("parabolic inheritance for {name}{params:?}"));
        }
    }
    let a3 = get_group("A", &[3])?;
    let klein = a3.derived_subgroup()?.derived_subgroup()?;
    if klein.order() != 4 || !parabolic_inheritance(&a3, &klein)?.iter().all(|&(_, good)| good) {
        bad.push("parabolic inheritance for the Klein group in A3".into());
    }
    // reducible case
    for p in 2..=6u32 {
        for q in 2..=6u32 {
            for d in (2..=6u32).filter(|d| p % d == 0 && q % d == 0) {
                let wt = get_group("ZpZq", &[p as i64, q as i64])?;
                let good = is_good(&wt, &cyclic_diagonal(d)?)?.good;
                if good != (d % p == 0 && d % q == 0) {
                    bad.push(format!("C{d} in μ{p}×μ{q}: good {good}"));
                }
            }
        }
    }
    // membership in N(G, rel)
    let pm = MatGroup::generate_in_dim(2, &[Mat::scalar(2, &CycNum::from_int(-1))])?;
    let pres = presentation(&pm, None, None)?;
    if in_Nrel(&pm, &pres, &Mat::diag(&[CycNum::one(), CycNum::zeta(4)]))? {
        bad.push("diag(1, ζ4) acts trivially on the relation of ⟨−1⟩".into());
    }
    let s4 = get_group("Stilde4", &[])?;
    let q8 = quaternion_subgroup(&s4)?;
    let pres = presentation(&q8, None, None)?;
    for x in s4.generators() {
        if !in_Nrel(&q8, &pres, x)? {
            bad.push("an element of the binary octahedral group moves the relation of Q8".into());
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "field, action, Molien, Lagrange, parabolic, reducible, N(G,rel)".into()
        } else {
            bad.join("; ")
        },
    })
}

fn from_result(r: reflekt::Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome {
        pass: false,
        detail: e.to_string(),
    })
}

#[test]
fn acceptance() {
    let mut results = Vec::new();

    let t = Instant::now();
    let rows2 = table2(8);
    let o = rows_outcome(&rows2);
    report(1, "table 2", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let rows1 = table1(5);
    let o = rows_outcome(&rows1);
    report(2, "table 1", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let rows4 = table4(8);
    let o = rows_outcome(&rows4);
    report(3, "table 4", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let o = rows_outcome(&table3());
    report(4, "table 3 fingerprints", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let g31 = g31_report();
    let o = g31_outcome(&g31);
    report(5, "G31", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let o = from_result(counterexamples().map(|cs| Outcome {
        pass: cs.len() == 2 && cs.iter().all(|c| !c.good && c.witness_found),
        detail: cs
            .iter()
            .map(|c| format!("{} good {} {:?}", c.label, c.good, c.reason))
            .collect::<Vec<_>>()
            .join("; "),
    }));
    report(6, "counterexamples", t, &o);
    results.push(o.pass);

    let pairs: Vec<&TableRow> = rows1.iter().chain(&rows4).collect();
    let g31 = g31.ok();

    let t = Instant::now();
    let ids: Vec<Option<bool>> = pairs.iter().map(|r| r.degree_identity).collect();
    let checked = ids.iter().filter(|x| x.is_some()).count();
    let pass = ids.iter().all(|x| *x == Some(true))
        && g31.as_ref().is_some_and(|r| r.degree_identity);
    let o = Outcome {
        pass,
        detail: format!("{} of {} pairs checked, G31 included", checked, pairs.len()),
    };
    report(7, "degree identity", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let free: Vec<&&TableRow> = pairs.iter().filter(|r| r.generators.is_some()).collect();
    let pass = !free.is_empty()
        && free.iter().all(|r| r.generators == Some(true))
        && g31.as_ref().is_some_and(|r| r.generators_generate);
    let o = Outcome {
        pass,
        detail: format!("{} reflection-free pairs and G31", free.len()),
    };
    report(8, "generators s_H' s_H^-1", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let o = from_result(diagram_suite());
    report(9, "diagrams", t, &o);
    results.push(o.pass);

    let t = Instant::now();
    let o = from_result(properties());
    report(10, "properties", t, &o);
    results.push(o.pass);

    let failed: Vec<usize> = (1..=10).filter(|i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
