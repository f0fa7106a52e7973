//! The quotient of `G₃₁` by its normal subgroup of order 64.

use serde::Serialize;

use super::{good_generators, quotient_map, verify_degree_identity_with};
use crate::arrangement::aprime_classes;
use crate::catalog::{get_group, tables};
use crate::error::Result;
use crate::invariants::{compute_presentation, PresentationOptions};
use crate::linalg::fixed_space;
use crate::polynomials::{parse_poly, MPoly};
use crate::CycNum;

#[derive(Clone, Debug, Serialize)]
pub struct G31Report {
    pub order: usize,
    pub subgroup_order: usize,
    pub subgroup_reflections: usize,
    pub subgroup_normal: bool,
    /// For each of `p_s … p_w`: invariant under the subgroup.
    pub p_invariant: Vec<bool>,
    /// Size of `Ā′`, one class per transposition of the quotient.
    pub classes: usize,
    /// For each class, the index of the `p_x` it equals up to scalar.
    pub class_match: Vec<Option<usize>>,
    /// For each generating reflection `s … w`, whether `α_C` of the class
    /// of its hyperplane equals the matching `p_x` up to scalar.
    pub generator_match: Vec<bool>,
    pub change_of_basis: bool,
    pub relation_count: usize,
    pub relation_degrees: Vec<u32>,
    pub relation_matches_r: bool,
    pub relation: String,
    pub good: bool,
    pub quotient_order: usize,
    pub quotient_degrees: Vec<u32>,
    pub degree_identity: bool,
    pub generators_generate: bool,
}

impl G31Report {
    pub fn ok(&self) -> bool {
        self.order == 46080
            && self.subgroup_order == 64
            && self.subgroup_reflections == 0
            && self.subgroup_normal
            && self.p_invariant.iter().all(|&b| b)
            && self.classes == 15
            && self.generator_match.len() == 5
            && self.generator_match.iter().all(|&b| b)
            && self.change_of_basis
            && self.relation_count == 1
            && self.relation_matches_r
            && self.good
            && self.quotient_order == 720
            && self.quotient_degrees == [2, 3, 4, 5, 6]
            && self.degree_identity
            && self.generators_generate
    }
}

fn is_invariant(g: &crate::MatGroup, p: &MPoly) -> Result<bool> {
    for x in g.generators() {
        if &crate::polynomials::act(x, p)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs every check of the example.
pub fn g31_report() -> Result<G31Report> {
    let wt = get_group("G31", &[])?;
    let g = get_group("G31_O2", &[])?;
    let p: Vec<MPoly> = tables::G31_P
        .iter()
        .map(|(_, s)| parse_poly(s, 4))
        .collect::<Result<_>>()?;
    let p_invariant = p.iter().map(|x| is_invariant(&g, x)).collect::<Result<Vec<_>>>()?;
    let classes = aprime_classes(&wt, &g)?;
    let class_match = classes
        .iter()
        .map(|c| p.iter().position(|x| c.alpha_c.scalar_ratio(x).is_some()))
        .collect();
    let mut generator_match = Vec::new();
    for (r, px) in wt.generators().iter().zip(&p) {
        let fixed = fixed_space(r)?;
        let class = classes
            .iter()
            .find(|c| c.members.iter().any(|h| fixed.iter().all(|v| h.eval(v).is_zero())));
        generator_match.push(class.is_some_and(|c| c.alpha_c.scalar_ratio(px).is_some()));
    }
    let q: Vec<MPoly> = tables::G31_Q
        .iter()
        .map(|s| parse_poly(s, 4))
        .collect::<Result<_>>()?;
    let change_of_basis = q.iter().zip(tables::G31_CHANGE.iter()).all(|(qi, row)| {
        let mut acc = MPoly::zero(4);
        for (pj, &c) in p.iter().zip(row.iter()) {
            acc = &acc + &pj.scale(&CycNum::from_int(c));
        }
        &acc == qi
    });
    let pres = compute_presentation(
        &g,
        &PresentationOptions {
            bound: None,
            ambient: None,
            generators: Some(q.clone()),
        },
    )?;
    let r = parse_poly(tables::G31_R, 5)?.with_weights(pres.generator_degrees.clone());
    let relation_matches_r = pres.relations.len() == 1 && pres.relations[0].scalar_ratio(&r).is_some();
    let quotient = quotient_map(&wt, &g)?;
    let identity = verify_degree_identity_with(&wt, &quotient)?;
    let gens = good_generators(&wt, &g)?;
    let mats: Vec<_> = gens.iter().map(|&i| wt.element(i).clone()).collect();
    let closure = crate::MatGroup::generate_in_dim(4, &mats)?;
    Ok(G31Report {
        order: wt.order(),
        subgroup_order: g.order(),
        subgroup_reflections: g.num_reflections(),
        subgroup_normal: wt.is_normal(&g)?,
        p_invariant,
        classes: classes.len(),
        class_match,
        generator_match,
        change_of_basis,
        relation_count: pres.relations.len(),
        relation_degrees: pres.relation_degrees.clone(),
        relation_matches_r,
        relation: pres.relations.first().map(|x| x.to_string()).unwrap_or_default(),
        good: quotient.good,
        quotient_order: quotient.w.as_ref().map_or(0, |w| w.order()),
        quotient_degrees: quotient.w_degrees.clone(),
        degree_identity: identity.holds,
        generators_generate: closure.order() == g.order() && g.contains_group(&closure),
    })
}
