//! Named groups: the parametric families are built in code, the rank-2
//! exceptional groups and `G₃₁` are read from JSON entries. Every group is
//! checked against its pinned order when it is built.

pub mod build;
pub mod tables;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groups::{close, MatGroup, DEFAULT_CAP};
use crate::invariants::{min_generator_degrees, reflection_degrees};
use crate::linalg::Mat;

/// Environment variable naming a directory of catalog entries that take
/// precedence over the built-in ones.
pub const CATALOG_ENV: &str = "REFLEKT_CATALOG";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Reflection degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    /// Degrees of the invariant generators of a subgroup of `SL₂`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_degrees: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl_type: Option<String>,
    /// Index of the determinant-one part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_quotient: Option<String>,
}

/// One catalog entry, in the on-disk format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<i64>,
    pub conductor: u32,
    /// Generator matrices, entries in the textual cyclotomic form.
    pub matrices: Vec<Vec<Vec<String>>>,
    pub expected: Expected,
}

impl CatalogEntry {
    fn from_mats(name: &str, params: &[i64], mats: Vec<Mat>, expected: Expected) -> Self {
        let conductor = mats
            .iter()
            .flat_map(|m| m.entries().iter().map(|c| c.conductor()))
            .fold(1, num_integer::lcm);
        CatalogEntry {
            name: name.to_string(),
            params: params.to_vec(),
            conductor,
            matrices: mats
                .iter()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
            expected,
        }
    }

    /// Parses the generator matrices.
    pub fn generators(&self) -> Result<Vec<Mat>> {
        self.matrices
            .iter()
            .map(|rows| {
                let parsed: Result<Vec<Vec<CycNum>>> = rows
                    .iter()
                    .map(|r| r.iter().map(|s| s.parse::<CycNum>()).collect())
                    .collect();
                let parsed = parsed?;
                let n = parsed.len();
                if parsed.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch(format!(
                        "entry {} has a non-square matrix",
                        self.name
                    )));
                }
                Ok(Mat::from_rows(parsed))
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.len())
    }
}

const BUILTIN: &[(&str, &str)] = &[
    ("G4", include_str!("../../catalog/G4.json")),
    ("G5", include_str!("../../catalog/G5.json")),
    ("G6", include_str!("../../catalog/G6.json")),
    ("G7", include_str!("../../catalog/G7.json")),
    ("G8", include_str!("../../catalog/G8.json")),
    ("G9", include_str!("../../catalog/G9.json")),
    ("G10", include_str!("../../catalog/G10.json")),
    ("G11", include_str!("../../catalog/G11.json")),
    ("G12", include_str!("../../catalog/G12.json")),
    ("G13", include_str!("../../catalog/G13.json")),
    ("G14", include_str!("../../catalog/G14.json")),
    ("G15", include_str!("../../catalog/G15.json")),
    ("G16", include_str!("../../catalog/G16.json")),
    ("G17", include_str!("../../catalog/G17.json")),
    ("G18", include_str!("../../catalog/G18.json")),
    ("G19", include_str!("../../catalog/G19.json")),
    ("G20", include_str!("../../catalog/G20.json")),
    ("G21", include_str!("../../catalog/G21.json")),
    ("G22", include_str!("../../catalog/G22.json")),
    ("G31", include_str!("../../catalog/G31.json")),
    ("G31_O2", include_str!("../../catalog/G31_O2.json")),
];

fn load_file_entry(name: &str) -> Result<Option<CatalogEntry>> {
    if let Ok(dir) = std::env::var(CATALOG_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return parse_entry(&text).map(Some);
        }
    }
    match BUILTIN.iter().find(|(n, _)| *n == name) {
        Some((_, text)) => parse_entry(text).map(Some),
        None => Ok(None),
    }
}

pub fn parse_entry(text: &str) -> Result<CatalogEntry> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog entry: {e}")))
}

/// Canonical spelling of a family name.
fn canonical_name(name: &str) -> &str {
    match name {
        "Ttilde" | "T" | "BT" => "Atilde4",
        "Otilde" | "O" | "BO" => "Stilde4",
        "Itilde" | "BI" => "Atilde5",
        "Q8" => "Q8",
        "ZpZq" | "Z" | "diag" => "ZpZq",
        other => other,
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn param(params: &[i64], k: usize, name: &str, min: i64) -> Result<u32> {
    match params.get(k) {
        Some(&p) if p >= min && p <= 1000 => Ok(p as u32),
        _ => Err(Error::UnknownName(format!(
            "{name}: parameter {} missing or out of range",
            k + 1
        ))),
    }
}

fn arity(params: &[i64], n: usize, name: &str) -> Result<()> {
    if params.len() == n {
        Ok(())
    } else {
        Err(Error::UnknownName(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )))
    }
}

fn table2_expected(name: &str, d: u32) -> Expected {
    let (order, degs, e) = tables::table2_row(name, d).expect("table row");
    Expected {
        order: Some(order),
        invariant_degrees: Some(degs.to_vec()),
        relation_degree: Some(e),
        ..Default::default()
    }
}

/// The catalog entry for a name and parameter list.
pub fn entry(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    let name = canonical_name(name);
    let e = |mats: Vec<Mat>, expected: Expected| {
        Ok(CatalogEntry::from_mats(name, params, mats, expected))
    };
    let reflection = |order: usize, mut degrees: Vec<u32>| {
        degrees.sort_unstable();
        Expected {
            order: Some(order),
            degrees: Some(degrees),
            ..Default::default()
        }
    };
    match name {
        "C" => {
            arity(params, 1, name)?;
            let d = param(params, 0, name, 1)?;
            let mut exp = if d >= 2 {
                table2_expected("C", d)
            } else {
                Expected::default()
            };
            exp.order = Some(d as usize);
            e(build::cyclic_sl(d), exp)
        }
        "Itilde2" => {
            arity(params, 1, name)?;
            let d = param(params, 0, name, 2)?;
            e(build::binary_dihedral(d), table2_expected("Itilde2", d))
        }
        "Q8" => {
            arity(params, 0, name)?;
            e(build::binary_dihedral(2), table2_expected("Itilde2", 2))
        }
        "Atilde4" | "Stilde4" | "Atilde5" => {
            arity(params, 0, name)?;
            let mats = match name {
                "Atilde4" => build::binary_tetrahedral(),
                "Stilde4" => build::binary_octahedral(),
                _ => build::binary_icosahedral(),
            };
            e(mats, table2_expected(name, 0))
        }
        "I2" => {
            arity(params, 1, name)?;
            let d = param(params, 0, name, 1)?;
            e(build::dihedral(d), reflection(2 * d as usize, vec![2, d]))
        }
        "G" => {
            arity(params, 3, name)?;
            let m = param(params, 0, name, 1)?;
            let p = param(params, 1, name, 1)?;
            let n = param(params, 2, name, 1)? as usize;
            if m % p != 0 || n > 8 {
                return Err(Error::UnknownName(format!(
                    "G({m},{p},{n}) needs p | m and n ≤ 8"
                )));
            }
            if n == 1 && p == m {
                return e(vec![Mat::identity(1)], reflection(1, vec![1]));
            }
            let order = (m as usize).pow(n as u32) * factorial(n) / p as usize;
            let mut degs: Vec<u32> = (1..n as u32).map(|k| k * m).collect();
            degs.push(n as u32 * m / p);
            e(build::imprimitive(m, p, n), reflection(order, degs))
        }
        "ZpZq" => {
            arity(params, 2, name)?;
            let p = param(params, 0, name, 1)?;
            let q = param(params, 1, name, 1)?;
            e(
                build::diagonal_pair(p, q),
                reflection((p * q) as usize, vec![p, q]),
            )
        }
        "A" => {
            arity(params, 1, name)?;
            let n = param(params, 0, name, 1)? as usize;
            if n > 7 {
                return Err(Error::UnknownName("A_n needs n ≤ 7".into()));
            }
            e(
                build::coxeter_a(n),
                reflection(factorial(n + 1), (2..=n as u32 + 1).collect()),
            )
        }
        "B" => {
            arity(params, 1, name)?;
            let n = param(params, 0, name, 2)? as usize;
            if n > 6 {
                return Err(Error::UnknownName("B_n needs n ≤ 6".into()));
            }
            e(
                build::coxeter_b(n),
                reflection((1 << n) * factorial(n), (1..=n as u32).map(|k| 2 * k).collect()),
            )
        }
        "F4" => {
            arity(params, 0, name)?;
            e(build::coxeter_f4(), reflection(1152, vec![2, 6, 8, 12]))
        }
        "H3" => {
            arity(params, 0, name)?;
            e(build::coxeter_h3(), reflection(120, vec![2, 6, 10]))
        }
        other => {
            arity(params, 0, other)?;
            load_file_entry(other)?.ok_or_else(|| Error::UnknownName(other.to_string()))
        }
    }
}

/// Closes the generators of an entry, checking the pinned order.
pub fn group_of(entry: &CatalogEntry) -> Result<MatGroup> {
    let gens = entry.generators()?;
    let cap = entry.expected.order.unwrap_or(DEFAULT_CAP);
    let g = close(&gens, cap).map_err(|e| match e {
        Error::CapExceeded(_) => Error::SelfCheckFailed(format!(
            "{}: generators close to more than {cap} elements",
            entry.name
        )),
        other => other,
    })?;
    let g = if g.dim() != entry.dim() {
        MatGroup::generate_in_dim(entry.dim(), &gens)?
    } else {
        g
    };
    if let Some(o) = entry.expected.order {
        if g.order() != o {
            return Err(Error::SelfCheckFailed(format!(
                "{}: order {} but {o} expected",
                entry.name,
                g.order()
            )));
        }
    }
    Ok(g)
}

/// Builds a named group.
pub fn get_group(name: &str, params: &[i64]) -> Result<MatGroup> {
    group_of(&entry(name, params)?)
}

/// Splits `G(4,2,2)`, `Itilde2(3)`, `C5`, `A3`, `G12` into name and
/// parameters.
pub fn parse_name(spec: &str) -> Result<(String, Vec<i64>)> {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        let close = spec
            .rfind(')')
            .filter(|&c| c > open && c == spec.len() - 1)
            .ok_or_else(|| Error::Parse(format!("unbalanced parameters in `{spec}`")))?;
        let name = &spec[..open];
        let params: std::result::Result<Vec<i64>, _> = spec[open + 1..close]
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect();
        let params = params.map_err(|_| Error::Parse(format!("bad parameters in `{spec}`")))?;
        return Ok((canonical_name(name).to_string(), params));
    }
    if BUILTIN.iter().any(|(n, _)| *n == spec)
        || matches!(spec, "F4" | "H3" | "Q8")
        || canonical_name(spec) != spec
    {
        return Ok((canonical_name(spec).to_string(), vec![]));
    }
    let split = spec
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(spec.len());
    let (name, digits) = spec.split_at(split);
    if matches!(name, "C" | "A" | "B" | "Itilde2" | "I2") && !digits.is_empty() {
        let d = digits
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad parameter in `{spec}`")))?;
        return Ok((name.to_string(), vec![d]));
    }
    Ok((spec.to_string(), vec![]))
}

/// Builds a group from a textual name such as `G(4,2,2)` or `G12`.
pub fn group_by_spec(spec: &str) -> Result<MatGroup> {
    let (n, p) = parse_name(spec)?;
    get_group(&n, &p)
}

/// Isomorphism type of a finite subgroup of `SL₂`, from its order and the
/// order of its derived subgroup.
pub fn sl2_type(g: &MatGroup) -> Result<String> {
    let o = g.order();
    let dn = g.derived_subgroup()?.order();
    Ok(match (o, dn) {
        (_, 1) => format!("C{o}"),
        (24, 8) => "Atilde4".into(),
        (48, 24) => "Stilde4".into(),
        (120, 120) => "Atilde5".into(),
        (o, _) if o % 4 == 0 => format!("Itilde2({})", o / 4),
        _ => format!("unknown({o},{dn})"),
    })
}

/// Central quotient type of a rank-2 exceptional group, from `|W̃/Z|`.
fn central_quotient_type(g: &MatGroup) -> String {
    match g.order() / g.center_scalars().order() {
        12 => "A4".into(),
        24 => "S4".into(),
        60 => "A5".into(),
        k => format!("order {k}"),
    }
}

/// Result of recomputing an entry's fingerprints.
#[derive(Clone, Debug, Serialize)]
pub struct SelfCheck {
    pub name: String,
    pub params: Vec<i64>,
    pub order: usize,
    pub degrees: Option<Vec<u32>>,
    pub invariant_degrees: Option<Vec<u32>>,
    pub relation_degrees: Option<Vec<u32>>,
    pub sl_type: Option<String>,
    pub index: Option<usize>,
    pub central_quotient: Option<String>,
    pub mismatches: Vec<String>,
}

impl SelfCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes order, determinant-one part, index, degrees and compares
/// them with the pinned data.
pub fn catalog_selfcheck(name: &str, params: &[i64]) -> Result<SelfCheck> {
    let entry = entry(name, params)?;
    let g = group_of(&entry)?;
    let exp = &entry.expected;
    let mut mm = Vec::new();
    let mut cmp = |what: &str, got: String, want: String| {
        if got != want {
            mm.push(format!("{what}: got {got}, expected {want}"));
        }
    };
    let degrees = if exp.degrees.is_some() {
        let mut d = reflection_degrees(&g)?;
        d.sort_unstable();
        cmp(
            "degrees",
            format!("{d:?}"),
            format!("{:?}", exp.degrees.as_ref().unwrap()),
        );
        Some(d)
    } else {
        None
    };
    let (invariant_degrees, relation_degrees) = if let Some(want) = &exp.invariant_degrees {
        let pres = crate::invariants::presentation(&g, None, None)?;
        let mut d = pres.generator_degrees.clone();
        d.sort_unstable();
        let mut w = want.clone();
        w.sort_unstable();
        cmp("invariant degrees", format!("{d:?}"), format!("{w:?}"));
        if let Some(e) = exp.relation_degree {
            cmp(
                "relation degrees",
                format!("{:?}", pres.relation_degrees),
                format!("{:?}", vec![e]),
            );
        }
        (Some(d), Some(pres.relation_degrees))
    } else {
        (None, None)
    };
    let (sl_type, index) = if exp.sl_type.is_some() || exp.index.is_some() {
        let sl = g.sl_part();
        let t = sl2_type(&sl)?;
        let a = g.order() / sl.order();
        if let Some(w) = &exp.sl_type {
            cmp("SL part", t.clone(), w.clone());
        }
        if let Some(w) = exp.index {
            cmp("index", a.to_string(), w.to_string());
        }
        (Some(t), Some(a))
    } else {
        (None, None)
    };
    let central_quotient = exp.central_quotient.as_ref().map(|w| {
        let t = central_quotient_type(&g);
        cmp("central quotient", t.clone(), w.clone());
        t
    });
    Ok(SelfCheck {
        name: entry.name.clone(),
        params: entry.params.clone(),
        order: g.order(),
        degrees,
        invariant_degrees,
        relation_degrees,
        sl_type,
        index,
        central_quotient,
        mismatches: mm,
    })
}

/// Names of the rank-2 exceptional entries.
pub fn exceptional_names() -> Vec<String> {
    (4..=22).map(|i| format!("G{i}")).collect()
}

/// Minimal generator degrees of a group, sorted.
pub fn sorted_invariant_degrees(g: &MatGroup) -> Result<Vec<u32>> {
    let mut d = min_generator_degrees(g, 2 * g.order() as u32 + 2)?.generator_degrees;
    d.sort_unstable();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(parse_name("G(4,2,2)").unwrap(), ("G".into(), vec![4, 2, 2]));
        assert_eq!(parse_name("Itilde2(3)").unwrap(), ("Itilde2".into(), vec![3]));
        assert_eq!(parse_name("C5").unwrap(), ("C".into(), vec![5]));
        assert_eq!(parse_name("G12").unwrap(), ("G12".into(), vec![]));
        assert_eq!(parse_name("Otilde").unwrap(), ("Stilde4".into(), vec![]));
        assert_eq!(parse_name("A3").unwrap(), ("A".into(), vec![3]));
    }

    #[test]
    fn family_orders() {
        assert_eq!(get_group("G", &[4, 2, 2]).unwrap().order(), 16);
        assert_eq!(get_group("Itilde2", &[3]).unwrap().order(), 12);
        assert_eq!(get_group("Stilde4", &[]).unwrap().order(), 48);
        assert_eq!(get_group("G", &[3, 3, 3]).unwrap().order(), 54);
        assert!(matches!(get_group("Nope", &[]), Err(Error::UnknownName(_))));
    }

    #[test]
    fn entries_round_trip_as_json() {
        let e = entry("Atilde5", &[]).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        let back = parse_entry(&text).unwrap();
        assert_eq!(back.generators().unwrap(), e.generators().unwrap());
    }

    #[test]
    fn g12_fingerprints() {
        let r = catalog_selfcheck("G12", &[]).unwrap();
        assert!(r.ok(), "{:?}", r.mismatches);
        assert_eq!(r.sl_type.as_deref(), Some("Atilde4"));
        assert_eq!(r.index, Some(2));
    }
}
