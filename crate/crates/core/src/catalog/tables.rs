//! Reference data for the rank-2 tables and the `G₃₁` example.

/// Rows `(G, params, |G|, d₁d₂d₃, e)` of the table of finite subgroups of
/// `SL₂`, with the parametric rows instantiated by the caller.
pub fn table2_row(name: &str, d: u32) -> Option<(usize, [u32; 3], u32)> {
    Some(match (name, d) {
        ("C", 2) => (2, [2, 2, 2], 4),
        ("C", d) if d >= 3 => (d as usize, [2, d, d], 2 * d),
        ("Itilde2", 2) => (8, [4, 4, 6], 12),
        ("Itilde2", d) if d >= 3 => (4 * d as usize, [4, 2 * d, 2 * (d + 1)], 4 * (d + 1)),
        ("Atilde4", _) => (24, [6, 8, 12], 24),
        ("Stilde4", _) => (48, [8, 12, 18], 36),
        ("Atilde5", _) => (120, [12, 20, 30], 60),
        _ => return None,
    })
}

/// The seven rows in table order, parametric rows at their first value.
pub const TABLE2: &[(&str, u32)] = &[
    ("C", 2),
    ("C", 3),
    ("Itilde2", 3),
    ("Itilde2", 2),
    ("Atilde4", 0),
    ("Stilde4", 0),
    ("Atilde5", 0),
];

/// One row of the table of rank-2 exceptional groups.
#[derive(Clone, Copy, Debug)]
pub struct Table3Row {
    pub index: u32,
    pub sl_type: &'static str,
    pub a: usize,
    pub central_quotient: &'static str,
    pub degrees: [u32; 2],
}

const fn row(index: u32, sl_type: &'static str, a: usize, q: &'static str, d: [u32; 2]) -> Table3Row {
    Table3Row {
        index,
        sl_type,
        a,
        central_quotient: q,
        degrees: d,
    }
}

pub const TABLE3: &[Table3Row] = &[
    row(4, "Itilde2(2)", 3, "A4", [4, 6]),
    row(5, "Atilde4", 3, "A4", [6, 12]),
    row(6, "Itilde2(2)", 6, "A4", [4, 12]),
    row(7, "Atilde4", 6, "A4", [12, 12]),
    row(8, "Atilde4", 4, "S4", [8, 12]),
    row(9, "Stilde4", 4, "S4", [8, 24]),
    row(10, "Atilde4", 12, "S4", [12, 24]),
    row(11, "Stilde4", 12, "S4", [24, 24]),
    row(12, "Atilde4", 2, "S4", [6, 8]),
    row(13, "Stilde4", 2, "S4", [8, 12]),
    row(14, "Atilde4", 6, "S4", [6, 24]),
    row(15, "Stilde4", 6, "S4", [12, 24]),
    row(16, "Atilde5", 5, "A5", [20, 30]),
    row(17, "Atilde5", 10, "A5", [20, 60]),
    row(18, "Atilde5", 15, "A5", [30, 60]),
    row(19, "Atilde5", 30, "A5", [60, 60]),
    row(20, "Atilde5", 3, "A5", [12, 30]),
    row(21, "Atilde5", 6, "A5", [12, 60]),
    row(22, "Atilde5", 2, "A5", [12, 20]),
];

pub fn table3_row(index: u32) -> Option<Table3Row> {
    TABLE3.iter().copied().find(|r| r.index == index)
}

/// `W̃ ∩ SL` for `G(mn, n, 2)`.
pub fn imprimitive_sl_type(m: u32, n: u32) -> String {
    if m % 2 == 0 {
        format!("Itilde2({})", m * n / 2)
    } else {
        format!("C{}", m * n)
    }
}

/// Rows `(W̃, degrees of W̃, degrees of W̃/±1)`; `d` instantiates the
/// parametric rows.
pub fn table1_rows(d: u32) -> Vec<(String, Vec<i64>, Vec<u32>, Vec<u32>)> {
    vec![
        ("G12".into(), vec![], vec![6, 8], vec![2, 3, 4]),
        ("G13".into(), vec![], vec![8, 12], vec![2, 4, 6]),
        ("G22".into(), vec![], vec![12, 20], vec![2, 6, 10]),
        ("I2".into(), vec![2 * d as i64], vec![2, 2 * d], vec![1, 2, d]),
        (
            "G".into(),
            vec![2 * d as i64, d as i64, 2],
            vec![2 * d, 4],
            vec![2, 2, d],
        ),
    ]
}

/// A row of the table of good pairs with non-abelian quotient.
#[derive(Clone, Debug)]
pub struct Table4Row {
    pub subgroup: (String, Vec<i64>),
    pub group: (String, Vec<i64>),
    pub group_degrees: Vec<u32>,
    pub e: u32,
    pub quotient: String,
    pub quotient_degrees: Vec<u32>,
}

/// The four fixed rows.
pub fn table4_fixed() -> Vec<Table4Row> {
    let q8 = ("Itilde2".to_string(), vec![2]);
    let mk = |g: &str, gd: [u32; 2], q: &str, qd: [u32; 3]| Table4Row {
        subgroup: q8.clone(),
        group: (g.to_string(), vec![]),
        group_degrees: gd.to_vec(),
        e: 12,
        quotient: q.to_string(),
        quotient_degrees: qd.to_vec(),
    };
    vec![
        mk("G12", [6, 8], "A2", [2, 3, 1]),
        mk("G13", [8, 12], "A2xA1", [2, 3, 2]),
        mk("G14", [6, 24], "G(3,1,2)", [3, 6, 1]),
        mk("G15", [12, 24], "G(3,1,2)xA1", [3, 6, 2]),
    ]
}

/// Instances of the row `(C_d, G(mn, n, 2))` with `mn ≤ max_mn`, `d ≥ 3`
/// and `m | d | mn`.
pub fn table4_parametric(max_mn: u32) -> Vec<Table4Row> {
    let mut out = Vec::new();
    for mn in 1..=max_mn {
        for m in (1..=mn).filter(|m| mn % m == 0) {
            let n = mn / m;
            for d in (3..=mn).filter(|d| d % m == 0 && mn % d == 0) {
                let k = mn / d;
                out.push(Table4Row {
                    subgroup: ("C".to_string(), vec![d as i64]),
                    group: ("G".to_string(), vec![mn as i64, n as i64, 2]),
                    group_degrees: vec![mn, 2 * m],
                    e: 2 * d,
                    quotient: format!("G({m},1,1)xG({k},{k},2)"),
                    quotient_degrees: vec![m, k, 2],
                });
            }
        }
    }
    out
}

/// Invariants of the order-64 normal subgroup of `G₃₁`, one per class of
/// generating reflections `s, t, u, v, w`.
pub const G31_P: [(&str, &str); 5] = [
    ("s", "X1*X2*X3*X4"),
    ("t", "((X1+X2)^2-(X3+X4)^2)*((X1-X2)^2-(X3-X4)^2)"),
    ("u", "(X1^2+X2^2)*(X3^2+X4^2)"),
    ("v", "(X1^2-X4^2)*(X2^2-X3^2)"),
    ("w", "(X1^2-X2^2)*(X3^2-X4^2)"),
];

/// The second basis of invariants.
pub const G31_Q: [&str; 5] = [
    "X1^4+X2^4+X3^4+X4^4",
    "2*(X1^2*X2^2+X3^2*X4^2)",
    "2*(X1^2*X3^2+X2^2*X4^2)",
    "2*(X1^2*X4^2+X2^2*X3^2)",
    "4*X1*X2*X3*X4",
];

/// Coordinates of the second basis in terms of `p_s, …, p_w`.
pub const G31_CHANGE: [[i64; 5]; 5] = [
    [-8, 1, 3, 2, 1],
    [0, 0, 1, 2, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 1, 0, -1],
    [4, 0, 0, 0, 0],
];

/// The relation in the second basis.
pub const G31_R: &str = "X1^2*X5^2 - 2*X1*X2*X3*X4 + X2^2*X3^2 + X2^2*X4^2 + X3^2*X4^2 \
     - X5^2*(X2^2+X3^2+X4^2) + X5^4";
