//! Reflection arrangements, inertia groups and the hyperplane classes of a
//! normal subgroup.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groups::MatGroup;
use crate::linalg::{det, Mat};
use crate::polynomials::MPoly;

/// A reflection hyperplane of a group together with its inertia data.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Coefficients of the defining linear form, first nonzero entry 1.
    pub coords: Vec<CycNum>,
    /// `α_H` as a polynomial.
    pub alpha: MPoly,
    /// Element ids (in the ambient group) of the inertia group, identity
    /// first.
    pub inertia: Vec<usize>,
    /// Id of the inertia generator with determinant `exp(2πi/|W_H|)`.
    pub generator: usize,
    /// `|G_H|`, set once a normal subgroup is fixed (1 otherwise).
    pub e_h: usize,
}

impl Hyperplane {
    pub fn inertia_order(&self) -> usize {
        self.inertia.len()
    }

    /// Evaluates the linear form on a vector.
    pub fn eval(&self, v: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero();
        for (a, x) in self.coords.iter().zip(v) {
            acc = &acc + &(a * x);
        }
        acc
    }
}

/// A class of `Ā′`: hyperplanes whose inertia groups have equal image in the
/// quotient.
#[derive(Clone, Debug)]
pub struct HyperplaneClass {
    pub members: Vec<Hyperplane>,
    /// Indices of the members in the list returned by [`hyperplanes`].
    pub indices: Vec<usize>,
    /// `|G·W̃_H| / |G|`, shared by all members.
    pub image_order: usize,
    pub alpha_c: MPoly,
}

fn normalize(v: Vec<CycNum>) -> Vec<CycNum> {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero form").inv();
    v.iter().map(|c| c * &lead).collect()
}

fn sort_key(v: &[CycNum]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Linear form vanishing on a hyperplane given by a basis.
pub fn defining_form(basis: &[Vec<CycNum>], dim: usize) -> Vec<CycNum> {
    let m = if basis.is_empty() {
        Mat::zeros(1, dim)
    } else {
        Mat::from_rows(basis.to_vec())
    };
    let ns = m.nullspace();
    assert_eq!(ns.len(), 1, "not a hyperplane");
    normalize(ns[0].clone())
}

/// All reflection hyperplanes of `w`, sorted by their normalized forms.
pub fn hyperplanes(w: &MatGroup) -> Vec<Hyperplane> {
    let classes = w.classify();
    let mut groups: BTreeMap<Vec<String>, (Vec<CycNum>, Vec<usize>)> = BTreeMap::new();
    for id in w.reflection_ids() {
        let form = defining_form(&classes[id].fixed_space, w.dim());
        groups
            .entry(sort_key(&form))
            .or_insert_with(|| (form, Vec::new()))
            .1
            .push(id);
    }
    groups
        .into_values()
        .map(|(coords, refl)| {
            let order = refl.len() + 1;
            let target = CycNum::zeta(order as u32);
            let generator = *refl
                .iter()
                .find(|&&id| det(w.element(id)).expect("square") == target)
                .expect("cyclic inertia group has a generator of each primitive determinant");
            let mut inertia = vec![0];
            inertia.extend(refl);
            Hyperplane {
                alpha: MPoly::linear(&coords),
                coords,
                inertia,
                generator,
                e_h: 1,
            }
        })
        .collect()
}

/// Hyperplanes of `wt` with `e_H = |G_H|` filled in.
pub fn hyperplanes_with_subgroup(wt: &MatGroup, g: &MatGroup) -> Vec<Hyperplane> {
    let mut hs = hyperplanes(wt);
    for h in &mut hs {
        h.e_h = h
            .inertia
            .iter()
            .filter(|&&id| g.contains(wt.element(id)))
            .count();
    }
    hs
}

/// Whether `G·W̃_H = G·W̃_{H'}`.
fn same_image(wt: &MatGroup, g: &MatGroup, a: &Hyperplane, b: &Hyperplane) -> bool {
    if a.inertia_order() / a.e_h != b.inertia_order() / b.e_h {
        return false;
    }
    let sa = wt.element(a.generator);
    let sb = wt.element(b.generator);
    let sa_inv = sa.inverse().expect("invertible");
    let mut p = sb.clone();
    for _ in 0..a.inertia_order() {
        if g.contains(&p) {
            return true;
        }
        p = &p * &sa_inv;
    }
    false
}

/// Partition of `A′(W̃)` into the classes of `Ā′(W̃)`.
pub fn aprime_classes(wt: &MatGroup, g: &MatGroup) -> Result<Vec<HyperplaneClass>> {
    if !wt.is_normal(g)? {
        return Err(Error::NotNormal);
    }
    let hs = hyperplanes_with_subgroup(wt, g);
    let aprime: Vec<usize> = (0..hs.len())
        .filter(|&i| hs[i].inertia_order() != hs[i].e_h)
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &aprime {
        match classes
            .iter_mut()
            .find(|c| same_image(wt, g, &hs[c[0]], &hs[i]))
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(classes
        .into_iter()
        .map(|idx| {
            let members: Vec<Hyperplane> = idx.iter().map(|&i| hs[i].clone()).collect();
            let alpha_c = alpha_c_of(&members, wt.dim());
            HyperplaneClass {
                image_order: members[0].inertia_order() / members[0].e_h,
                members,
                indices: idx,
                alpha_c,
            }
        })
        .collect())
}

fn alpha_c_of(members: &[Hyperplane], dim: usize) -> MPoly {
    let mut acc = MPoly::constant(dim, CycNum::one());
    for h in members {
        acc = &acc * &h.alpha.pow(h.e_h as u32);
    }
    acc
}

/// `α_C = ∏_{H∈C} α_H^{e_H}`.
pub fn alpha_c(c: &HyperplaneClass) -> MPoly {
    c.alpha_c.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close;
    use crate::polynomials::parse_poly;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    fn mu2_mu4() -> MatGroup {
        close(
            &[
                Mat::diag(&[CycNum::from_int(-1), CycNum::one()]),
                Mat::diag(&[CycNum::one(), z(4)]),
            ],
            100,
        )
        .unwrap()
    }

    fn b2_4() -> MatGroup {
        close(
            &[
                Mat::diag(&[z(4), CycNum::one()]),
                Mat::from_ints(&[&[0, 1], &[1, 0]]),
            ],
            100,
        )
        .unwrap()
    }

    #[test]
    fn diagonal_arrangement() {
        let w = mu2_mu4();
        let hs = hyperplanes(&w);
        assert_eq!(hs.len(), 2);
        let mut orders: Vec<usize> = hs.iter().map(|h| h.inertia_order()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 4]);
        for h in &hs {
            let d = det(w.element(h.generator)).unwrap();
            assert_eq!(d, z(h.inertia_order() as u32));
        }
    }

    #[test]
    fn counting_reflections() {
        let w = b2_4();
        assert_eq!(w.order(), 32);
        let hs = hyperplanes(&w);
        let total: usize = hs.iter().map(|h| h.inertia_order() - 1).sum();
        assert_eq!(total, w.num_reflections());
    }

    #[test]
    fn classes_for_b2_4_mod_center() {
        let w = b2_4();
        let minus = close(&[Mat::scalar(2, &CycNum::from_int(-1))], 10).unwrap();
        let cls = aprime_classes(&w, &minus).unwrap();
        assert_eq!(cls.len(), 4);
        let sizes: Vec<usize> = cls.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        // {x = y, x = -y} gives X1^2 - X2^2
        let target = parse_poly("X1^2 - X2^2", 2).unwrap();
        assert!(cls.iter().any(|c| c.alpha_c.scalar_ratio(&target).is_some()));
    }

    #[test]
    fn singleton_classes_for_trivial_subgroup() {
        let w = b2_4();
        let cls = aprime_classes(&w, &MatGroup::trivial(2)).unwrap();
        assert_eq!(cls.len(), hyperplanes(&w).len());
        assert!(cls.iter().all(|c| c.members.len() == 1));
        let g = mu2_mu4();
        let c = close(&[Mat::scalar(2, &CycNum::from_int(-1))], 10).unwrap();
        assert_eq!(aprime_classes(&g, &c).unwrap().len(), 2);
    }
}
