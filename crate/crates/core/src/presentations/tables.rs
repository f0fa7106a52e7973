//! Instances of the elementary quotient tables, checked against the
//! matrix groups of the catalog.

use serde::Serialize;

use super::{
    imprimitive_diagram, realize_in_catalog, standard_diagram, verify_chain, QuotientCheck,
    Realized, DEFAULT_MAX_COSETS,
};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub row: String,
    pub group: String,
    pub rules: Vec<String>,
    pub steps: Vec<QuotientCheck>,
    /// Set when the row could not be instantiated.
    pub skipped: Option<String>,
    pub error: Option<String>,
    pub ok: bool,
}

fn run(row: &str, group: &str, start: Result<Realized>, rules: &[&str]) -> RowCheck {
    let t = std::time::Instant::now();
    let r = run_inner(row, group, start, rules);
    if std::env::var_os("REFLEKT_TRACE").is_some() {
        eprintln!("{row} {group} {rules:?} ok={} {:?} {:?}", r.ok, t.elapsed(), r.error);
    }
    r
}

fn run_inner(row: &str, group: &str, start: Result<Realized>, rules: &[&str]) -> RowCheck {
    let mut out = RowCheck {
        row: row.to_string(),
        group: group.to_string(),
        rules: rules.iter().map(|r| r.to_string()).collect(),
        steps: Vec::new(),
        skipped: None,
        error: None,
        ok: false,
    };
    match start.and_then(|r| verify_chain(&r, rules, DEFAULT_MAX_COSETS)) {
        Ok(steps) => {
            out.ok = steps.iter().all(|s| s.ok);
            out.steps = steps;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

fn skipped(row: &str, group: &str, why: &str) -> RowCheck {
    RowCheck {
        row: row.to_string(),
        group: group.to_string(),
        rules: Vec::new(),
        steps: Vec::new(),
        skipped: Some(why.to_string()),
        error: None,
        ok: true,
    }
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (2..n).filter(move |d| n % d == 0)
}

/// Rows of the table for rank at least 3, with parameters up to `k`.
pub fn table5(k: u32) -> Vec<RowCheck> {
    let k = k.max(2);
    let mut out = vec![
        run("s1=…=sr", "A3", standard_diagram("A3"), &["s=t"]),
        skipped("s1=…=sr", "G25", "not in the catalog"),
        run("S4 fold", "A3", standard_diagram("A3"), &["s=u"]),
        skipped("S4 fold", "G25", "not in the catalog"),
        skipped("st=ts", "G26", "not in the catalog"),
        run("tu=ut", "F4", standard_diagram("F4"), &["tu=ut"]),
        skipped("tu=ut", "G29", "not in the catalog"),
        skipped("su=us", "G31", "diagram not encoded; see g31-demo"),
    ];
    for p in 2..=k {
        for n in 2..=3 {
            out.push(run(
                "G(p,1,n)",
                &format!("G({p},1,{n})"),
                imprimitive_diagram(p, 1, n),
                &["st1=t1s"],
            ));
        }
    }
    for md in 4..=2 * k {
        for m in divisors(md) {
            out.push(run(
                "G(md,md,n)",
                &format!("G({md},{md},3)"),
                imprimitive_diagram(md, md, 3),
                &[&format!("t1t1'{}=t1't1{}", alt_tail(m, "t1", "t1'"), alt_tail(m, "t1'", "t1"))],
            ));
        }
    }
    for d in 2..=k {
        out.push(run(
            "G(d,d,n)",
            &format!("G({d},{d},3)"),
            imprimitive_diagram(d, d, 3),
            &["t1=t1'"],
        ));
    }
    for d in 1..=(k / 3).max(1) {
        let m = 3 * d;
        out.push(run(
            "G(3d,3d,n)",
            &format!("G({m},{m},3)"),
            imprimitive_diagram(m, m, 3),
            &["t1=t2"],
        ));
    }
    for d in 2..=k {
        for e in 2..=k {
            for n in 2..=3 {
                if (d * e) as usize > 6 && n == 3 {
                    continue;
                }
                out.push(run(
                    "G(de,e,n)",
                    &format!("G({},{e},{n})", d * e),
                    imprimitive_diagram(d * e, e, n),
                    &["st1=t1s"],
                ));
            }
        }
    }
    out.push(run(
        "G(de,e,n) chain",
        "G(4,2,4)",
        imprimitive_diagram(4, 2, 4),
        &["st1=t1s", "t1=t1'", "t1=t3", "t1=t2", "s=t1"],
    ));
    out
}

/// Letters after the first two of an alternating word of length `m`.
fn alt_tail(m: u32, a: &str, b: &str) -> String {
    (2..m).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// Two-node diagrams `p —m— q` of rank-2 groups.
pub const RANK2_COXETER_LIKE: &[(&str, u32, u32, u32)] = &[
    ("G4", 3, 3, 3),
    ("G5", 3, 3, 4),
    ("G6", 2, 3, 6),
    ("G8", 4, 4, 3),
    ("G9", 2, 4, 6),
    ("G10", 3, 4, 4),
    ("G14", 2, 3, 8),
    ("G16", 5, 5, 3),
    ("G17", 2, 5, 6),
    ("G18", 3, 5, 4),
    ("G20", 3, 3, 5),
    ("G21", 2, 3, 10),
];

/// Three-node diagrams `Ĩ_{a,b,c}(e, f)` of rank-2 groups.
pub const RANK2_TWISTED: &[(&str, [u32; 3], u32, u32)] = &[
    ("G12", [2, 2, 2], 3, 3),
    ("G13", [2, 2, 2], 4, 3),
    ("G22", [2, 2, 2], 5, 3),
    ("G15", [2, 2, 3], 2, 4),
    ("G7", [2, 3, 3], 2, 2),
    ("G11", [2, 3, 4], 2, 2),
    ("G19", [2, 3, 5], 2, 2),
];

fn two_node(name: &str, p: u32, q: u32, m: u32) -> Result<Realized> {
    let text = format!("node s {p}; node t {q}; bond s t {m}");
    if name.starts_with("G(") || name.starts_with("I2") {
        let (d, _) = super::Diagram::parse(&text)?;
        let (n, params) = crate::catalog::parse_name(name)?;
        let w = crate::catalog::get_group(&n, &params)?;
        let mats = super::realize(&d, &w)?.ok_or_else(|| {
            crate::Error::Internal(format!("no reflections of {name} satisfy the diagram"))
        })?;
        return Realized::new(d, mats);
    }
    realize_in_catalog(name, &text)
}

fn two_node_rows(out: &mut Vec<RowCheck>, name: &str, p: u32, q: u32, m: u32) {
    if p == q {
        out.push(run("I_{p,p}(m)", name, two_node(name, p, q, m), &["s=t"]));
    }
    for d in divisors(m) {
        let w = |a: &str, b: &str| -> String {
            (0..d).map(|i| if i % 2 == 0 { a } else { b }).collect()
        };
        let rule = format!("{}={}", w("s", "t"), w("t", "s"));
        out.push(run("I_{p,q}(md)", name, two_node(name, p, q, m), &[&rule]));
    }
}

/// Rows of the rank-2 table, with parameters up to `k`.
pub fn table6(k: u32) -> Vec<RowCheck> {
    table6_limited(k, usize::MAX)
}

/// As [`table6`], leaving out the exceptional groups of order above
/// `max_order`. The kernels of the large ones have invariant rings of high
/// degree, which dominates the running time.
pub fn table6_limited(k: u32, max_order: usize) -> Vec<RowCheck> {
    let small = |name: &str| {
        max_order == usize::MAX
            || crate::catalog::get_group(name, &[]).map_or(true, |g| g.order() <= max_order)
    };
    let k = k.max(2);
    let mut out = Vec::new();
    for m in 3..=2 * k {
        two_node_rows(&mut out, &format!("I2({m})"), 2, 2, m);
    }
    for p in 3..=k {
        two_node_rows(&mut out, &format!("G({p},1,2)"), p, 2, 4);
    }
    for &(name, p, q, m) in RANK2_COXETER_LIKE.iter().filter(|r| small(r.0)) {
        two_node_rows(&mut out, name, p, q, m);
    }
    for &(name, [a, b, c], e, f) in RANK2_TWISTED.iter().filter(|r| small(r.0)) {
        let text = format!("node s {a}; node t {b}; node u {c}; twisted s t u e={e} f={f}");
        out.push(run("Ĩ_{a,b,c}(e,f)", name, realize_in_catalog(name, &text), &["su=us"]));
    }
    for d in 2..=k {
        for e in 2..=k {
            let name = format!("G({},{e},2)", d * e);
            let text = format!("node s 2; node t 2; node u {d}; twisted s t u e={e} f=2");
            let start = crate::catalog::get_group("G", &[(d * e) as i64, e as i64, 2]).and_then(|w| {
                let (dg, _) = super::Diagram::parse(&text)?;
                let mats = super::realize(&dg, &w)?.ok_or_else(|| {
                    crate::Error::Internal(format!("no reflections of {name} satisfy the diagram"))
                })?;
                Realized::new(dg, mats)
            });
            out.push(run("Ĩ_{a,b,c}(e,f)", &name, start, &["su=us"]));
        }
    }
    out
}
