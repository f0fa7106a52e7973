//! Finite matrix groups by full enumeration.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{det, fixed_space, Mat};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;
/// Bound used when computing element orders.
pub const ORDER_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Identity,
    Reflection,
    DoubleReflection,
    Other,
}

#[derive(Debug, Clone)]
pub struct ElementClass {
    pub id: usize,
    pub kind: ElementKind,
    pub order: u64,
    pub fixed_space: Vec<Vec<CycNum>>,
}

struct Inner {
    dim: usize,
    generators: Vec<Mat>,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    classes: OnceLock<Vec<ElementClass>>,
}

/// A finite matrix group with all its elements enumerated. Element 0 is the
/// identity; ids follow breadth-first discovery order. Cloning is cheap.
#[derive(Clone)]
pub struct MatGroup {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for MatGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatGroup(dim {}, order {}, {} generators)",
            self.dim(),
            self.order(),
            self.generators().len()
        )
    }
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn close(generators: &[Mat], cap: usize) -> Result<MatGroup> {
    close_with_dim(generators, None, cap)
}

fn close_with_dim(generators: &[Mat], dim: Option<usize>, cap: usize) -> Result<MatGroup> {
    let dim = match (dim, generators.first()) {
        (Some(d), _) => d,
        (None, Some(g)) => g.rows(),
        (None, None) => {
            return Err(Error::DimensionMismatch(
                "cannot infer dimension of an empty generator list".into(),
            ))
        }
    };
    for g in generators {
        if !g.is_square() {
            return Err(Error::NotSquare(g.rows(), g.cols()));
        }
        if g.rows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator of size {} in dimension {}",
                g.rows(),
                dim
            )));
        }
        g.order(ORDER_BOUND)?;
    }
    let gens: Vec<Mat> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Mat::identity(dim);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut frontier = 0..1usize;
    while !frontier.is_empty() {
        let start = elements.len();
        let products: Vec<Mat> = elements[frontier.clone()]
            .par_iter()
            .flat_map_iter(|e| gens.iter().map(move |g| e * g))
            .collect();
        for p in products {
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        frontier = start..elements.len();
    }
    Ok(MatGroup {
        inner: Arc::new(Inner {
            dim,
            generators: gens,
            elements,
            index,
            classes: OnceLock::new(),
        }),
    })
}

impl MatGroup {
    pub fn trivial(dim: usize) -> MatGroup {
        close_with_dim(&[], Some(dim), 1).expect("trivial group")
    }

    pub fn generate(generators: &[Mat]) -> Result<MatGroup> {
        close(generators, DEFAULT_CAP)
    }

    pub fn generate_in_dim(dim: usize, generators: &[Mat]) -> Result<MatGroup> {
        close_with_dim(generators, Some(dim), DEFAULT_CAP)
    }

    /// Builds a group from a set already known to be closed, choosing a small
    /// generating set greedily.
    pub fn from_closed_set(dim: usize, elements: &[Mat]) -> Result<MatGroup> {
        let mut gens: Vec<Mat> = Vec::new();
        let mut cur = MatGroup::trivial(dim);
        for e in elements {
            if !cur.contains(e) {
                gens.push(e.clone());
                cur = MatGroup::generate_in_dim(dim, &gens)?;
            }
        }
        if cur.order() != elements.len() {
            return Err(Error::NotSubgroup(format!(
                "set of size {} generates a group of order {}",
                elements.len(),
                cur.order()
            )));
        }
        Ok(cur)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.inner.generators
    }

    pub fn elements(&self) -> &[Mat] {
        &self.inner.elements
    }

    pub fn element(&self, id: usize) -> &Mat {
        &self.inner.elements[id]
    }

    pub fn id_of(&self, m: &Mat) -> Option<usize> {
        self.inner.index.get(m).copied()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.inner.index.contains_key(m)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn inverse_of(&self, id: usize) -> usize {
        let inv = self.element(id).inverse().expect("group elements are invertible");
        self.id_of(&inv).expect("group is closed under inverses")
    }

    /// True when every element of `h` lies in `self`.
    pub fn contains_group(&self, h: &MatGroup) -> bool {
        h.dim() == self.dim() && h.generators().iter().all(|g| self.contains(g))
    }

    pub fn same_elements(&self, other: &MatGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    pub fn classify(&self) -> &[ElementClass] {
        self.inner.classes.get_or_init(|| {
            self.inner
                .elements
                .par_iter()
                .enumerate()
                .map(|(id, g)| {
                    let fs = fixed_space(g).expect("square");
                    let codim = self.dim() - fs.len();
                    let kind = match codim {
                        0 => ElementKind::Identity,
                        1 => ElementKind::Reflection,
                        2 => ElementKind::DoubleReflection,
                        _ => ElementKind::Other,
                    };
                    let order = g.order(ORDER_BOUND).expect("finite group element");
                    ElementClass {
                        id,
                        kind,
                        order,
                        fixed_space: fs,
                    }
                })
                .collect()
        })
    }

    /// Ids of all reflections.
    pub fn reflection_ids(&self) -> Vec<usize> {
        self.classify()
            .iter()
            .filter(|c| c.kind == ElementKind::Reflection)
            .map(|c| c.id)
            .collect()
    }

    pub fn num_reflections(&self) -> usize {
        self.reflection_ids().len()
    }

    /// Subgroup generated by the listed element ids.
    pub fn subgroup(&self, ids: &[usize]) -> Result<MatGroup> {
        let gens: Vec<Mat> = ids.iter().map(|&i| self.element(i).clone()).collect();
        close_with_dim(&gens, Some(self.dim()), self.order())
    }

    /// Subgroup generated by all reflections.
    pub fn reflection_subgroup(&self) -> MatGroup {
        let refl = self.reflection_ids();
        let mut gens: Vec<Mat> = Vec::new();
        let mut cur = MatGroup::trivial(self.dim());
        for id in refl {
            let r = self.element(id);
            if !cur.contains(r) {
                gens.push(r.clone());
                cur = close_with_dim(&gens, Some(self.dim()), self.order()).expect("subgroup");
            }
        }
        cur
    }

    pub fn is_reflection_group(&self) -> bool {
        self.reflection_subgroup().order() == self.order()
    }

    /// Subgroup of elements satisfying a predicate (which must define a
    /// subgroup).
    pub fn filter_subgroup(&self, pred: impl Fn(&Mat) -> bool + Sync) -> Result<MatGroup> {
        let els: Vec<Mat> = self
            .elements()
            .par_iter()
            .filter(|g| pred(g))
            .cloned()
            .collect();
        MatGroup::from_closed_set(self.dim(), &els)
    }

    /// `self ∩ SL`.
    pub fn sl_part(&self) -> MatGroup {
        self.filter_subgroup(|g| det(g).expect("square").is_one())
            .expect("determinant-one elements form a subgroup")
    }

    pub fn intersection(&self, other: &MatGroup) -> MatGroup {
        self.filter_subgroup(|g| other.contains(g))
            .expect("intersection of subgroups")
    }

    /// Scalar matrices in the group.
    pub fn center_scalars(&self) -> MatGroup {
        self.filter_subgroup(|g| {
            let c = g.get(0, 0).clone();
            *g == Mat::scalar(g.rows(), &c)
        })
        .expect("scalars form a subgroup")
    }

    pub fn center(&self) -> MatGroup {
        let gens = self.generators().to_vec();
        self.filter_subgroup(|g| gens.iter().all(|x| &(g * x) == &(x * g)))
            .expect("center is a subgroup")
    }

    /// Elementwise image under a map, as a group generated by the images of
    /// the generators.
    pub fn conjugate_by(&self, x: &Mat) -> Result<MatGroup> {
        let xi = x.inverse()?;
        let gens: Vec<Mat> = self.generators().iter().map(|g| &(x * g) * &xi).collect();
        MatGroup::generate_in_dim(self.dim(), &gens)
    }

    /// Normal closure in `self` of the given matrices.
    pub fn normal_closure(&self, mats: &[Mat]) -> Result<MatGroup> {
        let mut gens: Vec<Mat> = mats.iter().filter(|m| !m.is_identity()).cloned().collect();
        let ginv: Vec<Mat> = self
            .generators()
            .iter()
            .map(|g| g.inverse())
            .collect::<Result<_>>()?;
        loop {
            let h = close_with_dim(&gens, Some(self.dim()), self.order())?;
            let mut added = false;
            for (g, gi) in self.generators().iter().zip(&ginv) {
                for x in h.generators().to_vec() {
                    let c = &(g * &x) * gi;
                    if !h.contains(&c) {
                        gens.push(c);
                        added = true;
                        break;
                    }
                }
                if added {
                    break;
                }
            }
            if !added {
                return Ok(h);
            }
        }
    }

    /// Derived subgroup: normal closure of commutators of generators.
    pub fn derived_subgroup(&self) -> Result<MatGroup> {
        let gens = self.generators();
        let inv: Vec<Mat> = gens.iter().map(|g| g.inverse()).collect::<Result<_>>()?;
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                comms.push(&(&(&gens[i] * &gens[j]) * &inv[i]) * &inv[j]);
            }
        }
        self.normal_closure(&comms)
    }

    /// Whether `h` is a normal subgroup of `self`.
    pub fn is_normal(&self, h: &MatGroup) -> Result<bool> {
        if !self.contains_group(h) {
            return Err(Error::NotSubgroup("H is not contained in G".into()));
        }
        for g in self.generators() {
            let gi = g.inverse()?;
            for x in h.generators() {
                if !h.contains(&(&(g * x) * &gi)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `m` normalizes `self`.
    pub fn normalized_by(&self, m: &Mat) -> Result<bool> {
        let mi = m.inverse()?;
        Ok(self
            .generators()
            .iter()
            .all(|x| self.contains(&(&(m * x) * &mi))))
    }

    /// True iff every generator has determinant 1.
    pub fn in_sl(&self) -> bool {
        self.generators()
            .iter()
            .all(|g| det(g).expect("square").is_one())
    }

    /// Pointwise stabilizer of a subspace given by spanning vectors.
    pub fn pointwise_stabilizer(&self, vectors: &[Vec<CycNum>]) -> MatGroup {
        self.filter_subgroup(|g| vectors.iter().all(|v| &g.mul_vec(v) == v))
            .expect("stabilizers are subgroups")
    }
}

pub fn subgroup(ids: &[usize], g: &MatGroup) -> Result<MatGroup> {
    g.subgroup(ids)
}

pub fn classify_elements(g: &MatGroup) -> Vec<ElementClass> {
    g.classify().to_vec()
}

pub fn is_normal(g: &MatGroup, h: &MatGroup) -> Result<bool> {
    g.is_normal(h)
}

pub fn derived_subgroup(g: &MatGroup) -> Result<MatGroup> {
    g.derived_subgroup()
}

pub fn in_sl(g: &MatGroup) -> bool {
    g.in_sl()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    fn t(c: CycNum) -> Mat {
        let ci = c.inv();
        Mat::diag(&[c, ci])
    }

    fn sigma() -> Mat {
        Mat::from_ints(&[&[0, -1], &[1, 0]])
    }

    fn swap() -> Mat {
        Mat::from_ints(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn closure_orders() {
        assert_eq!(close(&[t(z(3))], DEFAULT_CAP).unwrap().order(), 3);
        let q8 = close(&[sigma(), t(z(4))], DEFAULT_CAP).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.num_reflections(), 0);
        assert!(q8.in_sl());
        assert_eq!(
            close(&[sigma(), t(z(4))], 4).unwrap_err(),
            Error::CapExceeded(4)
        );
        let unipotent = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        assert!(matches!(close(&[unipotent], 100), Err(Error::NotFinite(_))));
    }

    #[test]
    fn classification() {
        let minus = Mat::scalar(2, &CycNum::from_int(-1));
        let g = close(&[minus], 10).unwrap();
        let c = &g.classify()[1];
        assert_eq!((c.kind, c.order), (ElementKind::DoubleReflection, 2));
        // dihedral of order 8
        let i24 = close(&[t(z(4)), swap()], 100).unwrap();
        assert_eq!(i24.order(), 8);
        assert_eq!(i24.num_reflections(), 4);
    }

    #[test]
    fn subgroups_and_normality() {
        let b2 = close(
            &[Mat::from_ints(&[&[-1, 0], &[0, 1]]), swap()],
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(b2.order(), 8);
        assert!(b2.is_reflection_group());
        assert_eq!(b2.subgroup(&[]).unwrap().order(), 1);
        let center = b2.center();
        assert_eq!(center.order(), 2);
        assert!(b2.is_normal(&center).unwrap());
        let s = close(&[swap()], 10).unwrap();
        assert!(!b2.is_normal(&s).unwrap());
        assert!(!b2.in_sl());
        assert!(MatGroup::trivial(2).in_sl());
    }

    #[test]
    fn derived_of_s3() {
        // G(3,3,2)
        let s = swap();
        let r = Mat::from_rows(vec![
            vec![CycNum::zero(), z(3).pow(2)],
            vec![z(3), CycNum::zero()],
        ]);
        let g = close(&[s, r], 100).unwrap();
        assert_eq!(g.order(), 6);
        let d = g.derived_subgroup().unwrap();
        assert_eq!(d.order(), 3);
    }
}
