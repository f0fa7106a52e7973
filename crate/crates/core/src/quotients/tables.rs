//! Reproduction of the invariant and quotient tables from the catalog
//! groups.

use serde::Serialize;

use super::{full_quotient, good_generators, is_good, Reason};
use crate::catalog::{catalog_selfcheck, get_group, tables};
use crate::error::{Error, Result};
use crate::groups::MatGroup;
use crate::invariants::presentation;
use crate::{CycNum, Mat};

/// One reproduced row.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
    /// Degree identity, for pairs.
    pub degree_identity: Option<bool>,
    /// Whether the products `s_{H'} s_H^{-1}` generate the subgroup, for
    /// reflection-free pairs.
    pub generators: Option<bool>,
    pub detail: Option<String>,
}

impl TableRow {
    fn error(label: String, expected: String, e: &Error) -> TableRow {
        TableRow {
            label,
            expected,
            computed: String::new(),
            ok: false,
            degree_identity: None,
            generators: None,
            detail: Some(e.to_string()),
        }
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// `{±1}` inside `wt`.
pub fn plus_minus_one(wt: &MatGroup) -> Result<MatGroup> {
    let m = Mat::scalar(wt.dim(), &CycNum::from_int(-1));
    if !wt.contains(&m) {
        return Err(Error::NotSubgroup("−1 is not in the group".into()));
    }
    MatGroup::generate_in_dim(wt.dim(), &[m])
}

/// The quaternion subgroup of order 8 of a group whose determinant-one
/// part is binary tetrahedral or octahedral.
pub fn quaternion_subgroup(wt: &MatGroup) -> Result<MatGroup> {
    let mut h = wt.sl_part();
    while h.order() > 8 {
        let d = h.derived_subgroup()?;
        if d.order() == h.order() {
            break;
        }
        h = d;
    }
    if h.order() != 8 {
        return Err(Error::NotSubgroup("no quaternion subgroup".into()));
    }
    Ok(h)
}

/// `{diag(ζ, ζ⁻¹)}` with `ζ ∈ μ_d`.
pub fn cyclic_diagonal(d: u32) -> Result<MatGroup> {
    let z = CycNum::zeta(d);
    MatGroup::generate_in_dim(2, &[Mat::diag(&[z.clone(), z.inv()])])
}

fn pair_row(label: String, expected_degrees: &[u32], expected_e: Option<u32>, wt: &MatGroup, g: &MatGroup) -> TableRow {
    let expected = match expected_e {
        Some(e) => format!("{:?} / {e}", sorted(expected_degrees.to_vec())),
        None => format!("{:?}", sorted(expected_degrees.to_vec())),
    };
    let res = (|| -> Result<TableRow> {
        let (q, id) = full_quotient(wt, g)?;
        if !q.good {
            return Ok(TableRow {
                label: label.clone(),
                expected: expected.clone(),
                computed: "not good".into(),
                ok: false,
                degree_identity: None,
                generators: None,
                detail: Some(format!("{:?}", q.reason)),
            });
        }
        let degrees = sorted(q.w_degrees.clone());
        let mut ok = degrees == sorted(expected_degrees.to_vec());
        if let Some(e) = expected_e {
            ok &= q.relation_degrees == [e];
        }
        let reflection_free = g.num_reflections() == 0;
        let generators = if reflection_free {
            let ids = good_generators(wt, g)?;
            let mats: Vec<Mat> = ids.iter().map(|&i| wt.element(i).clone()).collect();
            let h = MatGroup::generate_in_dim(wt.dim(), &mats)?;
            Some(h.order() == g.order() && g.contains_group(&h))
        } else {
            None
        };
        Ok(TableRow {
            label: label.clone(),
            expected: expected.clone(),
            computed: format!("{degrees:?} / {:?}", q.relation_degrees),
            ok,
            degree_identity: id.map(|i| i.holds),
            generators,
            detail: None,
        })
    })();
    res.unwrap_or_else(|e| TableRow::error(label, expected, &e))
}

/// Quotients by `±1`, with parametric rows for `2 ≤ d ≤ max_d`.
pub fn table1(max_d: u32) -> Vec<TableRow> {
    let mut out = Vec::new();
    for (name, deg) in [("G12", [2, 3, 4]), ("G13", [2, 4, 6]), ("G22", [2, 6, 10])] {
        out.push(match get_group(name, &[]).and_then(|w| Ok((plus_minus_one(&w)?, w))) {
            Ok((g, w)) => pair_row(format!("({name}, ±1)"), &deg, None, &w, &g),
            Err(e) => TableRow::error(name.into(), format!("{deg:?}"), &e),
        });
    }
    for d in 2..=max_d {
        for (label, name, params, deg) in [
            (format!("(I2({}), ±1)", 2 * d), "I2", vec![2 * d as i64], [1, 2, d]),
            (
                format!("(G({},{d},2), ±1)", 2 * d),
                "G",
                vec![2 * d as i64, d as i64, 2],
                [2, 2, d],
            ),
        ] {
            out.push(match get_group(name, &params).and_then(|w| Ok((plus_minus_one(&w)?, w))) {
                Ok((g, w)) => pair_row(label, &deg, None, &w, &g),
                Err(e) => TableRow::error(label, format!("{deg:?}"), &e),
            });
        }
    }
    out
}

/// Invariants of the finite subgroups of `SL₂`.
pub fn table2(max_d: u32) -> Vec<TableRow> {
    let mut rows: Vec<(&str, u32)> = vec![("C", 2)];
    rows.extend((3..=max_d.max(3)).map(|d| ("C", d)));
    rows.extend((2..=max_d.max(2)).map(|d| ("Itilde2", d)));
    rows.extend([("Atilde4", 0), ("Stilde4", 0), ("Atilde5", 0)]);
    rows.into_iter()
        .map(|(name, d)| {
            let (order, degs, e) = tables::table2_row(name, d).expect("table row");
            let label = if d > 0 { format!("{name}({d})") } else { name.to_string() };
            let expected = format!("{:?} / {e}", sorted(degs.to_vec()));
            let params: Vec<i64> = if d > 0 { vec![d as i64] } else { vec![] };
            let res = (|| -> Result<TableRow> {
                let g = get_group(name, &params)?;
                let p = presentation(&g, None, None)?;
                let gd = sorted(p.generator_degrees.clone());
                let product: u64 = degs.iter().map(|&x| x as u64).product();
                let ok = gd == sorted(degs.to_vec())
                    && p.relation_degrees == [e]
                    && g.order() == order
                    && product == order as u64 * e as u64;
                Ok(TableRow {
                    label: label.clone(),
                    expected: expected.clone(),
                    computed: format!("{gd:?} / {:?}, |G| = {}", p.relation_degrees, g.order()),
                    ok,
                    degree_identity: None,
                    generators: None,
                    detail: None,
                })
            })();
            res.unwrap_or_else(|err| TableRow::error(label, expected, &err))
        })
        .collect()
}

/// Fingerprints of the rank-2 exceptional groups.
pub fn table3() -> Vec<TableRow> {
    tables::TABLE3
        .iter()
        .map(|r| {
            let label = format!("G{}", r.index);
            let expected = format!(
                "{} a={} {} {:?}",
                r.sl_type, r.a, r.central_quotient, r.degrees
            );
            match catalog_selfcheck(&label, &[]) {
                Ok(c) => TableRow {
                    computed: format!(
                        "{} a={} {} {:?}",
                        c.sl_type.clone().unwrap_or_default(),
                        c.index.unwrap_or(0),
                        c.central_quotient.clone().unwrap_or_default(),
                        c.degrees.clone().unwrap_or_default()
                    ),
                    ok: c.ok()
                        && c.sl_type.as_deref() == Some(r.sl_type)
                        && c.index == Some(r.a)
                        && c.central_quotient.as_deref() == Some(r.central_quotient)
                        && c.degrees.as_deref() == Some(&r.degrees[..]),
                    detail: (!c.mismatches.is_empty()).then(|| c.mismatches.join("; ")),
                    label,
                    expected,
                    degree_identity: None,
                    generators: None,
                },
                Err(e) => TableRow::error(label, expected, &e),
            }
        })
        .collect()
}

/// Good pairs with non-abelian quotient, the parametric row for
/// `mn ≤ max_mn`.
pub fn table4(max_mn: u32) -> Vec<TableRow> {
    let mut out = Vec::new();
    let rows = tables::table4_fixed()
        .into_iter()
        .chain(tables::table4_parametric(max_mn));
    for r in rows {
        let label = format!(
            "({}{:?}, {}{:?}) → {}",
            r.subgroup.0, r.subgroup.1, r.group.0, r.group.1, r.quotient
        );
        let pair = (|| -> Result<(MatGroup, MatGroup)> {
            let w = get_group(&r.group.0, &r.group.1)?;
            let g = if r.subgroup.0 == "C" {
                cyclic_diagonal(r.subgroup.1[0] as u32)?
            } else {
                quaternion_subgroup(&w)?
            };
            Ok((w, g))
        })();
        out.push(match pair {
            Ok((w, g)) => pair_row(label, &r.quotient_degrees, Some(r.e), &w, &g),
            Err(e) => TableRow::error(label, format!("{:?}", r.quotient_degrees), &e),
        });
    }
    out
}

/// A pair that is not good, with the class whose `α_C` is not invariant.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub label: String,
    pub good: bool,
    pub reason: Reason,
    pub witness_found: bool,
}

/// `μ₂ × μ₄` with `⟨(−1, −1)⟩`, and `G(4,1,2)` with `⟨−1⟩`.
pub fn counterexamples() -> Result<Vec<Counterexample>> {
    let mut out = Vec::new();
    for (label, name, params) in [
        ("(μ2×μ4, ⟨(−1,−1)⟩)", "ZpZq", vec![2, 4]),
        ("(G(4,1,2), ⟨−1⟩)", "G", vec![4, 1, 2]),
    ] {
        let w = get_group(name, &params)?;
        let g = plus_minus_one(&w)?;
        let d = is_good(&w, &g)?;
        let witness_found = matches!(d.reason, Reason::NonInvariantAlpha { .. });
        out.push(Counterexample {
            label: label.to_string(),
            good: d.good,
            reason: d.reason,
            witness_found,
        });
    }
    Ok(out)
}
