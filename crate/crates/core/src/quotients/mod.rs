//! Good normal subgroups of reflection groups and the quotient reflection
//! group acting on the tangent space of the quotient singularity.

pub mod g31;
pub mod tables;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{aprime_classes, hyperplanes, hyperplanes_with_subgroup, HyperplaneClass};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groups::{close, ElementKind, MatGroup};
use crate::invariants::{
    compute_presentation, min_generator_degrees, presentation, reflection_degrees,
    InvariantPresentation, PresentationOptions,
};
use crate::linalg::{det, fixed_space, solve, Mat};
use crate::polynomials::{act, monomial_index, monomials, MPoly, Mono};

/// Recursion depth for subgroups mixing reflections and other elements.
pub const MAX_DEPTH: usize = 4;

/// Why a subgroup was declared good or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    /// `G` is generated by reflections.
    ReflectionSubgroup,
    /// `G` has no reflections, lies in `SL` and every `α_C` is invariant.
    Success,
    /// A generator of `G` (index into its generator list) has determinant
    /// different from 1.
    NotInSl { generator: usize, det: String },
    /// `α_C` of the class is moved by a generator of `G`.
    NonInvariantAlpha {
        class: usize,
        generator: usize,
        alpha: String,
    },
    /// Decided after dividing out the reflection subgroup `G_r`.
    Mixed {
        reflection_order: usize,
        inner: Box<Reason>,
    },
}

/// Decision and, when requested, the quotient data.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub good: bool,
    pub reason: Reason,
    /// The quotient acting on the span of the chosen invariant generators.
    pub w: Option<MatGroup>,
    /// Images of the generators of `W̃`.
    pub phi_gens: Vec<Mat>,
    pub v_weights: Vec<u32>,
    pub w_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    pub presentation: Option<InvariantPresentation>,
}

impl QuotientResult {
    fn decision(good: bool, reason: Reason) -> Self {
        QuotientResult {
            good,
            reason,
            w: None,
            phi_gens: Vec::new(),
            v_weights: Vec::new(),
            w_degrees: Vec::new(),
            relation_degrees: Vec::new(),
            presentation: None,
        }
    }
}

fn check_pair(wt: &MatGroup, g: &MatGroup) -> Result<()> {
    if !wt.is_reflection_group() {
        return Err(Error::NotReflectionGroup(
            "the ambient group is not generated by reflections".into(),
        ));
    }
    if !wt.contains_group(g) || !wt.is_normal(g)? {
        return Err(Error::NotNormal);
    }
    Ok(())
}

/// Decides whether `G` is good in `W̃`.
pub fn is_good(wt: &MatGroup, g: &MatGroup) -> Result<QuotientResult> {
    check_pair(wt, g)?;
    decide(wt, g, 0)
}

fn decide(wt: &MatGroup, g: &MatGroup, depth: usize) -> Result<QuotientResult> {
    let gr = g.reflection_subgroup();
    if gr.order() == g.order() {
        return Ok(QuotientResult::decision(true, Reason::ReflectionSubgroup));
    }
    if gr.is_trivial() {
        return Ok(reflection_free(wt, g)?);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::BoundTooSmall(
            MAX_DEPTH,
            "recursion depth for the mixed case".into(),
        ));
    }
    // G/G_r inside W̃/G_r, acting on the tangent space of Ṽ/G_r
    let eq = Equivariant::new(&gr, Some(wt), None)?;
    let w_gens: Vec<Mat> = wt
        .generators()
        .iter()
        .map(|w| eq.phi(w))
        .collect::<Result<_>>()?;
    let g_gens: Vec<Mat> = g
        .generators()
        .iter()
        .map(|x| eq.phi(x))
        .collect::<Result<_>>()?;
    let n = eq.dim();
    let w1 = MatGroup::generate_in_dim(n, &w_gens)?;
    let g1 = MatGroup::generate_in_dim(n, &g_gens)?;
    if g1.order() * gr.order() != g.order() || w1.order() * gr.order() != wt.order() {
        return Err(Error::Internal(
            "quotient by the reflection subgroup has the wrong order".into(),
        ));
    }
    if !w1.is_reflection_group() {
        return Err(Error::Internal(
            "quotient by a reflection subgroup is not a reflection group".into(),
        ));
    }
    let inner = decide(&w1, &g1, depth + 1)?;
    Ok(QuotientResult::decision(
        inner.good,
        Reason::Mixed {
            reflection_order: gr.order(),
            inner: Box::new(inner.reason),
        },
    ))
}

fn reflection_free(wt: &MatGroup, g: &MatGroup) -> Result<QuotientResult> {
    for (i, x) in g.generators().iter().enumerate() {
        let d = det(x)?;
        if !d.is_one() {
            return Ok(QuotientResult::decision(
                false,
                Reason::NotInSl {
                    generator: i,
                    det: d.to_string(),
                },
            ));
        }
    }
    let classes = aprime_classes(wt, g)?;
    let jobs: Vec<(usize, usize)> = (0..classes.len())
        .flat_map(|c| (0..g.generators().len()).map(move |j| (c, j)))
        .collect();
    let bad = jobs
        .par_iter()
        .map(|&(c, j)| -> Result<Option<(usize, usize)>> {
            let a = &classes[c].alpha_c;
            Ok((act(&g.generators()[j], a)? != *a).then_some((c, j)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min();
    Ok(match bad {
        Some((c, j)) => QuotientResult::decision(
            false,
            Reason::NonInvariantAlpha {
                class: c,
                generator: j,
                alpha: classes[c].alpha_c.to_string(),
            },
        ),
        None => QuotientResult::decision(true, Reason::Success),
    })
}

/// Invariant generators of `G` whose span in each degree is stable under an
/// ambient group, with the induced linear action on that span.
pub struct Equivariant {
    pub presentation: InvariantPresentation,
    blocks: Vec<Block>,
}

struct Block {
    degree: u32,
    indices: Vec<usize>,
    mons: Vec<Mono>,
    basis: Mat,
}

impl Equivariant {
    /// Computes a presentation of `g` whose generator spans are stable under
    /// `ambient`.
    pub fn new(g: &MatGroup, ambient: Option<&MatGroup>, bound: Option<u32>) -> Result<Self> {
        let pres = compute_presentation(
            g,
            &PresentationOptions {
                bound,
                ambient,
                generators: None,
            },
        )?;
        Self::from_presentation(pres)
    }

    pub fn from_presentation(pres: InvariantPresentation) -> Result<Self> {
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in pres.generator_degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        let n = pres.dim;
        let blocks = by_degree
            .into_iter()
            .map(|(degree, indices)| {
                let mons = monomials(&vec![1; n], degree);
                let idx = monomial_index(&mons);
                let mut basis = Mat::zeros(mons.len(), indices.len());
                for (c, &i) in indices.iter().enumerate() {
                    for (r, v) in pres.generators[i].to_sparse(&idx) {
                        basis.set(r, c, v);
                    }
                }
                Block {
                    degree,
                    indices,
                    mons,
                    basis,
                }
            })
            .collect();
        Ok(Equivariant {
            presentation: pres,
            blocks,
        })
    }

    /// Number of generators, i.e. `dim V`.
    pub fn dim(&self) -> usize {
        self.presentation.generators.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.presentation.generator_degrees
    }

    /// Matrix of `w` on the span of the generators: column `i` holds the
    /// coordinates of `w·p_i`.
    pub fn phi(&self, w: &Mat) -> Result<Mat> {
        let k = self.dim();
        let mut out = Mat::zeros(k, k);
        for b in &self.blocks {
            let idx = monomial_index(&b.mons);
            let mut rhs = Mat::zeros(b.mons.len(), b.indices.len());
            for (c, &i) in b.indices.iter().enumerate() {
                let img = act(w, &self.presentation.generators[i])?;
                for (r, v) in img.to_sparse(&idx) {
                    rhs.set(r, c, v);
                }
            }
            let Some((x, _)) = solve(&b.basis, &rhs)? else {
                return Err(Error::SpanViolation(format!(
                    "the degree-{} generators are not stable under the action",
                    b.degree
                )));
            };
            for (c, &i) in b.indices.iter().enumerate() {
                for (r, &j) in b.indices.iter().enumerate() {
                    out.set(j, i, x.get(r, c).clone());
                }
            }
        }
        Ok(out)
    }
}

/// Builds the quotient `W = W̃/G` acting on the span of an equivariant set
/// of invariant generators of `G`.
pub fn quotient_map(wt: &MatGroup, g: &MatGroup) -> Result<QuotientResult> {
    let decision = is_good(wt, g)?;
    quotient_map_with(wt, g, decision)
}

/// Same as [`quotient_map`] without repeating the decision.
pub fn quotient_map_with(
    wt: &MatGroup,
    g: &MatGroup,
    decision: QuotientResult,
) -> Result<QuotientResult> {
    let eq = Equivariant::new(g, Some(wt), None)?;
    let phi_gens: Vec<Mat> = wt
        .generators()
        .iter()
        .map(|w| eq.phi(w))
        .collect::<Result<_>>()?;
    let w = MatGroup::generate_in_dim(eq.dim(), &phi_gens)?;
    if w.order() * g.order() != wt.order() {
        return Err(Error::Internal(format!(
            "image of order {} for a quotient of order {}",
            w.order(),
            wt.order() / g.order()
        )));
    }
    let w_degrees = if decision.good {
        let mut d = reflection_degrees(&w).map_err(|e| {
            Error::NotReflectionGroup(format!("quotient of a good pair: {e}"))
        })?;
        d.sort_unstable();
        d
    } else {
        Vec::new()
    };
    Ok(QuotientResult {
        good: decision.good,
        reason: decision.reason,
        w: Some(w),
        phi_gens,
        v_weights: eq.weights().to_vec(),
        w_degrees,
        relation_degrees: eq.presentation.relation_degrees.clone(),
        presentation: Some(eq.presentation),
    })
}

/// The products `s_{H′}·s_H⁻¹` over pairs in one class of `Ā′(W̃)`, as
/// element ids of `W̃`; checks that they generate `G`.
pub fn good_generators(wt: &MatGroup, g: &MatGroup) -> Result<Vec<usize>> {
    if g.num_reflections() > 0 {
        return Err(Error::ContainsReflection);
    }
    let decision = is_good(wt, g)?;
    if !decision.good {
        return Err(Error::NotGood(format!("{:?}", decision.reason)));
    }
    let classes = aprime_classes(wt, g)?;
    let mut ids: Vec<usize> = Vec::new();
    for c in &classes {
        for a in &c.members {
            let sa_inv = wt.element(a.generator).inverse()?;
            for b in &c.members {
                if a.generator == b.generator {
                    continue;
                }
                let p = wt.element(b.generator) * &sa_inv;
                let id = wt
                    .id_of(&p)
                    .ok_or_else(|| Error::Internal("product outside the group".into()))?;
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
        }
    }
    ids.sort_unstable();
    let gens: Vec<Mat> = ids.iter().map(|&i| wt.element(i).clone()).collect();
    let h = MatGroup::generate_in_dim(wt.dim(), &gens)?;
    if !h.same_elements(g) {
        return Err(Error::Internal(format!(
            "the products generate a group of order {} instead of {}",
            h.order(),
            g.order()
        )));
    }
    Ok(ids)
}

/// Image data for one class of `Ā′(W̃)`.
#[derive(Clone, Debug, Serialize)]
pub struct ImageOrder {
    pub class: usize,
    /// Index of the image hyperplane in `hyperplanes(W)`.
    pub hyperplane: usize,
    /// `|W̃_H|`.
    pub r: usize,
    pub e_h: usize,
    /// Order of the image of `s_H`.
    pub order: u64,
    /// `r / gcd(r, e_H)`.
    pub expected: usize,
}

#[derive(Clone, Debug)]
pub struct HyperplaneCorrespondence {
    pub classes: Vec<HyperplaneClass>,
    /// `(class index, hyperplane index in A(W))`.
    pub pairs: Vec<(usize, usize)>,
    pub image_orders: Vec<ImageOrder>,
    /// Number of reflection hyperplanes of `W`.
    pub target_size: usize,
}

impl HyperplaneCorrespondence {
    pub fn is_bijection(&self) -> bool {
        let mut seen: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.pairs.len() && self.pairs.len() == self.target_size
    }

    pub fn orders_match(&self) -> bool {
        self.image_orders
            .iter()
            .all(|o| o.order as usize == o.expected)
    }
}

/// Matches `Ā′(W̃)` with the reflection hyperplanes of the quotient.
pub fn hyperplane_map(wt: &MatGroup, g: &MatGroup) -> Result<HyperplaneCorrespondence> {
    let q = quotient_map(wt, g)?;
    hyperplane_map_with(wt, g, &q)
}

pub fn hyperplane_map_with(
    wt: &MatGroup,
    g: &MatGroup,
    q: &QuotientResult,
) -> Result<HyperplaneCorrespondence> {
    if !q.good {
        return Err(Error::NotGood(format!("{:?}", q.reason)));
    }
    let w = q.w.as_ref().expect("quotient computed");
    let pres = q.presentation.as_ref().expect("quotient computed");
    let eq = Equivariant::from_presentation(pres.clone())?;
    let classes = aprime_classes(wt, g)?;
    let targets = hyperplanes(w);
    let mut pairs = Vec::new();
    let mut image_orders = Vec::new();
    for (ci, c) in classes.iter().enumerate() {
        let h = &c.members[0];
        let img = eq.phi(wt.element(h.generator))?;
        let fs = fixed_space(&img)?;
        if fs.len() + 1 != img.rows() {
            return Err(Error::Internal(format!(
                "class {ci} does not map to a reflection"
            )));
        }
        let form = crate::arrangement::defining_form(&fs, img.rows());
        let hi = targets
            .iter()
            .position(|t| t.coords == form)
            .ok_or_else(|| Error::Internal(format!("class {ci} has no image hyperplane")))?;
        let r = h.inertia_order();
        pairs.push((ci, hi));
        image_orders.push(ImageOrder {
            class: ci,
            hyperplane: hi,
            r,
            e_h: h.e_h,
            order: img.order(crate::groups::ORDER_BOUND)?,
            expected: r / num_integer::gcd(r, h.e_h),
        });
    }
    Ok(HyperplaneCorrespondence {
        classes,
        pairs,
        image_orders,
        target_size: targets.len(),
    })
}

/// Both sides of `⨄ i·E_i = degrees(W̃) ⊎ relation degrees`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeIdentity {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
    /// `(weight, degrees of the factor on that weight space)`.
    pub factors: Vec<(u32, Vec<u32>)>,
    pub holds: bool,
}

/// Checks the degree identity for a computed quotient.
pub fn verify_degree_identity_with(wt: &MatGroup, q: &QuotientResult) -> Result<DegreeIdentity> {
    if !q.good {
        return Err(Error::NotGood(format!("{:?}", q.reason)));
    }
    let w = q.w.as_ref().expect("quotient computed");
    let mut by_weight: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &d) in q.v_weights.iter().enumerate() {
        by_weight.entry(d).or_default().push(i);
    }
    let mut lhs = Vec::new();
    let mut factors = Vec::new();
    for (wgt, idx) in by_weight {
        let gens: Vec<Mat> = w
            .generators()
            .iter()
            .map(|m| {
                let rows = idx
                    .iter()
                    .map(|&i| idx.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                Mat::from_rows(rows)
            })
            .collect();
        let wi = MatGroup::generate_in_dim(idx.len(), &gens)?;
        let mut e = reflection_degrees(&wi)?;
        e.sort_unstable();
        lhs.extend(e.iter().map(|x| x * wgt));
        factors.push((wgt, e));
    }
    let mut rhs = reflection_degrees(wt)?;
    rhs.extend(&q.relation_degrees);
    lhs.sort_unstable();
    rhs.sort_unstable();
    Ok(DegreeIdentity {
        holds: lhs == rhs,
        lhs,
        rhs,
        factors,
    })
}

pub fn verify_degree_identity(wt: &MatGroup, g: &MatGroup) -> Result<DegreeIdentity> {
    let q = quotient_map(wt, g)?;
    verify_degree_identity_with(wt, &q)
}

/// Report for `G = W̃ ∩ SL` of prime index.
#[derive(Clone, Debug, Serialize)]
pub struct SlPrimeReport {
    pub p: usize,
    /// `deg α_C` for the single class.
    pub n: u32,
    pub predicted_degrees: Vec<u32>,
    pub predicted_relation: u32,
    pub computed_degrees: Vec<u32>,
    pub computed_relations: Vec<u32>,
    pub single_class: bool,
    /// The invariants of `W̃` together with `α_C` generate those of `G`.
    pub generated: bool,
    pub consistent: bool,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

pub fn sl_prime_quotient(wt: &MatGroup) -> Result<SlPrimeReport> {
    let g = wt.sl_part();
    let p = wt.order() / g.order();
    if !is_prime(p) {
        return Err(Error::IndexNotPrime(p));
    }
    let classes = aprime_classes(wt, &g)?;
    let single_class = classes.len() == 1;
    let alpha = classes
        .first()
        .map(|c| c.alpha_c.clone())
        .ok_or_else(|| Error::Internal("no hyperplane class".into()))?;
    let n = alpha.degree().unwrap_or(0);
    let wdeg = reflection_degrees(wt)?;
    let mut predicted_degrees = wdeg.clone();
    predicted_degrees.push(n);
    predicted_degrees.sort_unstable();
    let predicted_relation = n * p as u32;
    let bound = 2 * g.order() as u32 + 2;
    let pres = min_generator_degrees(&g, bound)?;
    let mut computed_degrees = pres.generator_degrees.clone();
    computed_degrees.sort_unstable();
    let full = crate::invariants::relation_generators(&g, &pres, bound)?;
    let computed_relations = full.relation_degrees.clone();
    // pinned generators: basic invariants of W̃ and α_C
    let mut pinned = min_generator_degrees(wt, 2 * wt.order() as u32 + 2)?.generators;
    pinned.push(alpha);
    let generated = compute_presentation(
        &g,
        &PresentationOptions {
            bound: Some(bound),
            ambient: None,
            generators: Some(pinned),
        },
    )
    .is_ok();
    let consistent = single_class
        && generated
        && computed_degrees == predicted_degrees
        && computed_relations == vec![predicted_relation];
    Ok(SlPrimeReport {
        p,
        n,
        predicted_degrees,
        predicted_relation,
        computed_degrees,
        computed_relations,
        single_class,
        generated,
        consistent,
    })
}

/// Scalar `λ` with `g·R = λR` for the single relation `R` of `pres`.
pub fn relation_scalar(g_group: &MatGroup, pres: &InvariantPresentation, g: &Mat) -> Result<CycNum> {
    if !g_group.normalized_by(g)? {
        return Err(Error::NotNormalizing);
    }
    if pres.relations.len() != 1 {
        return Err(Error::NonPrincipalUnsupported);
    }
    let eq = Equivariant::from_presentation(pres.clone())?;
    let m = eq.phi(g)?;
    let r = &pres.relations[0];
    let k = eq.dim();
    let weights = pres.generator_degrees.clone();
    let images: Vec<MPoly> = (0..k)
        .map(|i| {
            let mut p = MPoly::zero_weighted(weights.clone());
            for j in 0..k {
                let c = m.get(j, i);
                if !c.is_zero() {
                    let mut e = vec![0; k];
                    e[j] = 1;
                    p.add_term(Mono(e), c.clone());
                }
            }
            p
        })
        .collect();
    let moved = r.substitute(&images)?;
    moved
        .scalar_ratio(r)
        .ok_or_else(|| Error::Internal("the relation is not an eigenvector".into()))
}

/// Whether `g` acts trivially on the minimal relations.
#[allow(non_snake_case)]
pub fn in_Nrel(g_group: &MatGroup, pres: &InvariantPresentation, g: &Mat) -> Result<bool> {
    Ok(relation_scalar(g_group, pres, g)?.is_one())
}

/// Kac–Watanabe condition: `G` is generated by its reflections and double
/// reflections.
pub fn generated_by_codim_two(g: &MatGroup) -> Result<bool> {
    let ids: Vec<usize> = g
        .classify()
        .iter()
        .filter(|c| matches!(c.kind, ElementKind::Reflection | ElementKind::DoubleReflection))
        .map(|c| c.id)
        .collect();
    Ok(g.subgroup(&ids)?.order() == g.order())
}

/// Intersections of reflection hyperplanes of codimension 1 and 2, as
/// bases of subspaces.
pub fn flats(wt: &MatGroup) -> Vec<(usize, Vec<Vec<CycNum>>)> {
    let hs = hyperplanes(wt);
    let n = wt.dim();
    let mut out: Vec<(usize, Vec<Vec<CycNum>>)> = Vec::new();
    let mut seen: Vec<Mat> = Vec::new();
    let mut push = |codim: usize, forms: Vec<Vec<CycNum>>| {
        let m = Mat::from_rows(forms);
        let (r, _) = m.rref();
        let key = r;
        if !seen.contains(&key) {
            let basis = key.nullspace();
            seen.push(key);
            out.push((codim, basis));
        }
    };
    for h in &hs {
        push(1, vec![h.coords.clone()]);
    }
    if n >= 2 {
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i + 1..] {
                let m = Mat::from_rows(vec![a.coords.clone(), b.coords.clone()]);
                if m.rank() == 2 {
                    push(2, vec![a.coords.clone(), b.coords.clone()]);
                }
            }
        }
    }
    out
}

/// For each flat `L` of codimension ≤ 2, whether `G ∩ W̃_L` is good in the
/// parabolic subgroup `W̃_L`.
pub fn parabolic_inheritance(wt: &MatGroup, g: &MatGroup) -> Result<Vec<(usize, bool)>> {
    flats(wt)
        .into_iter()
        .map(|(codim, basis)| {
            let wl = wt.pointwise_stabilizer(&basis);
            let gl = g.intersection(&wl);
            Ok((codim, is_good(&wl, &gl)?.good))
        })
        .collect()
}

/// Whether `G` is the normal closure in `W̃` of the subgroups `G_L` over the
/// codimension-2 flats.
pub fn generated_by_codim_two_flats(wt: &MatGroup, g: &MatGroup) -> Result<bool> {
    let mut gens: Vec<Mat> = Vec::new();
    for (codim, basis) in flats(wt) {
        if codim != 2 {
            continue;
        }
        let gl = g.pointwise_stabilizer(&basis);
        gens.extend(gl.generators().iter().cloned());
    }
    let h = wt.normal_closure(&gens)?;
    Ok(h.same_elements(g))
}

/// For two hyperplanes in one class, the pointwise stabilizer in `G` of
/// their intersection is nontrivial.
pub fn ramification_holds(wt: &MatGroup, g: &MatGroup) -> Result<bool> {
    let classes = aprime_classes(wt, g)?;
    for c in &classes {
        for (i, a) in c.members.iter().enumerate() {
            for b in &c.members[i + 1..] {
                let m = Mat::from_rows(vec![a.coords.clone(), b.coords.clone()]);
                let basis = m.nullspace();
                if g.pointwise_stabilizer(&basis).is_trivial() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Substitutes the generators into `∏_{H∈A(W)} α_H^{|W_H|−1}` and compares
/// with `∏ α_H̃^{|W̃_H̃|−1}` up to a scalar.
pub fn jacobian_matches(wt: &MatGroup, q: &QuotientResult) -> Result<bool> {
    let w = q.w.as_ref().expect("quotient computed");
    let pres = q.presentation.as_ref().expect("quotient computed");
    // hyperplanes of W live in the dual coordinates: the linear form with
    // coefficients a is the polynomial Σ a_i Y_i only after transposing
    let wdual = close(
        &w.generators()
            .iter()
            .map(|m| m.transpose().inverse())
            .collect::<Result<Vec<_>>>()?,
        w.order(),
    )?;
    let mut jw = MPoly::constant(w.dim(), CycNum::one()).with_weights(pres.generator_degrees.clone());
    for h in hyperplanes(&wdual) {
        let mut form = MPoly::zero_weighted(pres.generator_degrees.clone());
        for (i, c) in h.coords.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; w.dim()];
                e[i] = 1;
                form.add_term(Mono(e), c.clone());
            }
        }
        jw = &jw * &form.pow(h.inertia_order() as u32 - 1);
    }
    let lhs = jw.substitute(&pres.generators)?;
    let mut rhs = MPoly::constant(wt.dim(), CycNum::one());
    for h in hyperplanes_with_subgroup(wt, &MatGroup::trivial(wt.dim())) {
        rhs = &rhs * &h.alpha.pow(h.inertia_order() as u32 - 1);
    }
    Ok(lhs.scalar_ratio(&rhs).is_some())
}

/// Convenience: decision, quotient, degree identity in one call.
pub fn full_quotient(wt: &MatGroup, g: &MatGroup) -> Result<(QuotientResult, Option<DegreeIdentity>)> {
    let decision = is_good(wt, g)?;
    if !decision.good {
        return Ok((decision, None));
    }
    let q = quotient_map_with(wt, g, decision)?;
    let id = verify_degree_identity_with(wt, &q)?;
    Ok((q, Some(id)))
}

/// Presentation of `G` with generators stable under `W̃`.
pub fn equivariant_presentation(wt: &MatGroup, g: &MatGroup) -> Result<InvariantPresentation> {
    presentation(g, None, Some(wt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_group;

    fn minus_one(n: usize) -> MatGroup {
        close(&[Mat::scalar(n, &CycNum::from_int(-1))], 4).unwrap()
    }

    #[test]
    fn mu2_mu4_is_not_good() {
        let wt = get_group("ZpZq", &[2, 4]).unwrap();
        let r = is_good(&wt, &minus_one(2)).unwrap();
        assert!(!r.good);
        assert!(matches!(r.reason, Reason::NonInvariantAlpha { .. }));
    }

    #[test]
    fn b2_4_center_is_not_good() {
        let wt = get_group("G", &[4, 1, 2]).unwrap();
        let r = is_good(&wt, &minus_one(2)).unwrap();
        assert!(!r.good);
    }

    #[test]
    fn g12_center_gives_a3() {
        let wt = get_group("G12", &[]).unwrap();
        let (q, id) = full_quotient(&wt, &minus_one(2)).unwrap();
        assert!(q.good);
        assert_eq!(q.w_degrees, vec![2, 3, 4]);
        assert!(id.unwrap().holds);
        let hm = hyperplane_map_with(&wt, &minus_one(2), &q).unwrap();
        assert!(hm.is_bijection() && hm.orders_match());
        assert_eq!(hm.target_size, 6);
        assert!(jacobian_matches(&wt, &q).unwrap());
    }

    #[test]
    fn dihedral_generators() {
        let wt = get_group("I2", &[4]).unwrap();
        let ids = good_generators(&wt, &minus_one(2)).unwrap();
        assert!(ids
            .iter()
            .any(|&i| *wt.element(i) == Mat::scalar(2, &CycNum::from_int(-1))));
    }

    #[test]
    fn sl_prime_examples() {
        let r = sl_prime_quotient(&get_group("G", &[2, 1, 2]).unwrap()).unwrap();
        assert_eq!((r.n, r.predicted_relation), (4, 8));
        assert!(r.consistent, "{r:?}");
        let r = sl_prime_quotient(&get_group("G", &[3, 3, 2]).unwrap()).unwrap();
        assert_eq!(r.computed_degrees, vec![2, 3, 3]);
        assert!(r.consistent, "{r:?}");
    }

    #[test]
    fn nrel_for_center() {
        let g = minus_one(2);
        let pres = presentation(&g, None, None).unwrap();
        let swap = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(in_Nrel(&g, &pres, &swap).unwrap());
        let d = Mat::diag(&[CycNum::one(), CycNum::i()]);
        assert!(!in_Nrel(&g, &pres, &d).unwrap());
    }
}
