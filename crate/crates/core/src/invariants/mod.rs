//! Molien series, degrees of reflection groups, and presentations of
//! invariant rings by generators and relations.

pub mod series;

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};
use crate::groups::MatGroup;
use crate::linalg::{rev_charpoly, Echelon, Mat, SparseVec, UniPoly};
use crate::polynomials::{act, invariant_basis, monomial_index, monomials, MPoly, Mono};

use series::{mul, product_one_minus, RPoly};

/// Truncated Molien series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolienSeries {
    pub coefficients: Vec<Rational>,
}

impl MolienSeries {
    /// Coefficients as integers (they always are).
    pub fn dims(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .map(|c| {
                assert!(c.is_integer() && !c.is_negative(), "Molien coefficient {c}");
                c.to_f64() as usize
            })
            .collect()
    }
}

/// The Molien series as the exact rational function
/// `numerator / (1 − t^period)^dim`.
#[derive(Clone, Debug)]
pub struct MolienRational {
    pub numerator: RPoly,
    pub period: usize,
    pub dim: usize,
}

impl MolienRational {
    pub fn series(&self, len: usize) -> Vec<Rational> {
        series::series(&self.numerator, &vec![self.period; self.dim], len)
    }

    /// Whether the series equals `∏(1 − t^e) / ∏(1 − t^d)` exactly.
    pub fn equals_ci(&self, gen_degrees: &[usize], rel_degrees: &[usize]) -> bool {
        let lhs = mul(&self.numerator, &product_one_minus(gen_degrees));
        let rhs = mul(
            &product_one_minus(rel_degrees),
            &product_one_minus(&vec![self.period; self.dim]),
        );
        lhs == rhs
    }
}

/// Exponent of the group (lcm of element orders).
pub fn exponent(g: &MatGroup) -> usize {
    g.classify()
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.order)) as usize
}

pub fn molien_rational(g: &MatGroup) -> MolienRational {
    let n = g.dim();
    let m = exponent(g);
    let polys: Vec<UniPoly> = g
        .elements()
        .par_iter()
        .map(|x| rev_charpoly(x).expect("square"))
        .collect();
    let mut counts: HashMap<UniPoly, usize> = HashMap::new();
    for p in polys {
        *counts.entry(p).or_default() += 1;
    }
    let big = (0..n).fold(UniPoly::one(), |acc, _| &acc * &UniPoly::one_minus_t_pow(m));
    let parts: Vec<UniPoly> = counts
        .into_par_iter()
        .map(|(p, c)| {
            let (q, r) = big.div_rem(&p);
            assert!(r.is_zero(), "eigenvalues are m-th roots of unity");
            &q * &UniPoly::new(vec![CycNum::from_int(c as i64)])
        })
        .collect();
    let mut acc = UniPoly::zero();
    for p in &parts {
        acc = &acc + p;
    }
    let inv = Rational::new(1, g.order() as i64);
    let numerator = series::trim(
        acc.coeffs()
            .iter()
            .map(|c| &c.as_rational().expect("Molien numerator is rational") * &inv)
            .collect(),
    );
    MolienRational {
        numerator,
        period: m,
        dim: n,
    }
}

/// Coefficients of `(1/|G|) Σ 1/det(1 − t g)` in degrees `0..=d`.
pub fn molien(g: &MatGroup, d: usize) -> MolienSeries {
    MolienSeries {
        coefficients: molien_rational(g).series(d + 1),
    }
}

/// Degrees of a reflection group, read off the Molien series.
pub fn reflection_degrees(g: &MatGroup) -> Result<Vec<u32>> {
    let n = g.dim();
    let nref = g.num_reflections();
    let mr = molien_rational(g);
    let len = nref + n + 2;
    let s = mr.series(len);
    let mut degrees: Vec<usize> = Vec::new();
    loop {
        let r = series::series_mul(&s, &product_one_minus(&degrees), len);
        let Some(k) = (1..len).find(|&k| !r[k].is_zero()) else {
            break;
        };
        if r[k].is_negative() || degrees.len() >= n {
            return Err(Error::NotReflectionGroup(format!(
                "Molien series is not of the form ∏ 1/(1−t^d); partial degrees {degrees:?}"
            )));
        }
        degrees.push(k);
    }
    let sum: usize = degrees.iter().map(|d| d - 1).sum();
    if degrees.len() != n || !mr.equals_ci(&degrees, &[]) || sum != nref {
        return Err(Error::NotReflectionGroup(format!(
            "degrees {degrees:?} with {nref} reflections"
        )));
    }
    Ok(degrees.into_iter().map(|d| d as u32).collect())
}

/// Generators of an invariant ring and the relations among them.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    pub dim: usize,
    pub generator_degrees: Vec<u32>,
    pub generators: Vec<MPoly>,
    pub relation_degrees: Vec<u32>,
    /// Relations in `Y_1..Y_k`, the `Y_i` weighted by the generator degrees.
    pub relations: Vec<MPoly>,
}

impl InvariantPresentation {
    /// `|G| = ∏ d_i / ∏ e_j` for complete intersections in the expected
    /// shape, as a rational.
    pub fn degree_ratio(&self) -> Rational {
        let num: i64 = self.generator_degrees.iter().map(|&d| d as i64).product();
        let den: i64 = self.relation_degrees.iter().map(|&d| d as i64).product();
        Rational::new(num, den)
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.relations.len() + self.dim == self.generators.len()
    }

    /// Substitutes the generators into every relation.
    pub fn relations_vanish(&self) -> Result<bool> {
        for r in &self.relations {
            if !r.substitute(&self.generators)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Knobs for [`compute_presentation`].
#[derive(Clone, Default)]
pub struct PresentationOptions<'a> {
    /// Largest degree examined; defaults to `2|G| + 2`.
    pub bound: Option<u32>,
    /// A finite group normalizing `G`; new generators are then chosen so
    /// that their span is stable under it.
    pub ambient: Option<&'a MatGroup>,
    /// Use these generators instead of computing them.
    pub generators: Option<Vec<MPoly>>,
}

fn trimmed(e: &[u32]) -> Vec<u32> {
    let mut v = e.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

struct ImageCache {
    n: usize,
    cache: HashMap<Vec<u32>, MPoly>,
}

impl ImageCache {
    fn image(&mut self, gens: &[MPoly], e: &[u32]) -> MPoly {
        let key = trimmed(e);
        if let Some(p) = self.cache.get(&key) {
            return p.clone();
        }
        let p = match key.iter().rposition(|&a| a > 0) {
            None => MPoly::constant(self.n, CycNum::one()),
            Some(i) => {
                let mut prev = key.clone();
                prev[i] -= 1;
                let q = self.image(gens, &prev);
                &q * &gens[i]
            }
        };
        self.cache.insert(key, p.clone());
        p
    }
}

fn is_invariant(g: &MatGroup, p: &MPoly) -> Result<bool> {
    for x in g.generators() {
        if &act(x, p)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_u32(r: &Rational) -> u32 {
    assert!(r.is_integer() && !r.is_negative());
    r.to_f64() as u32
}

/// Computes generators and relations of the invariant ring degree by
/// degree, stopping once the complete-intersection Hilbert series built
/// from the degrees found so far equals the Molien series.
pub fn compute_presentation(
    g: &MatGroup,
    opts: &PresentationOptions<'_>,
) -> Result<InvariantPresentation> {
    let n = g.dim();
    let mr = molien_rational(g);
    let bound = opts.bound.unwrap_or(2 * g.order() as u32 + 2);
    let molien = mr.series(bound as usize + 1);
    let pinned = opts.generators.is_some();
    let mut gens: Vec<MPoly> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    if let Some(p) = &opts.generators {
        for q in p {
            if q.nvars() != n || !q.is_homogeneous() || q.is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "pinned generator `{q}` is not a nonzero form in {n} variables"
                )));
            }
            if !is_invariant(g, q)? {
                return Err(Error::Internal(format!("pinned generator `{q}` is not invariant")));
            }
            gens.push(q.clone());
            degs.push(q.degree().unwrap());
        }
    }
    // relations: (degree, terms over exponent vectors in the Y variables)
    let mut rels: Vec<(u32, Vec<(Vec<u32>, CycNum)>)> = Vec::new();
    let mut cache = ImageCache {
        n,
        cache: HashMap::new(),
    };
    let mut done = false;
    for d in 1..=bound {
        let k = gens.len();
        let active_weights: Vec<u32> = degs.clone();
        let ymons: Vec<Mono> = if k == 0 {
            Vec::new()
        } else {
            monomials(&active_weights, d)
        };
        let yidx = monomial_index(&ymons);
        let xmons = monomials(&vec![1; n], d);
        let xidx = monomial_index(&xmons);
        let m = xmons.len();
        let images: Vec<MPoly> = ymons.iter().map(|y| cache.image(&gens, &y.0)).collect();
        let mut tagged = Echelon::new();
        let mut span = Echelon::new();
        for (j, img) in images.iter().enumerate() {
            let mut v = img.to_sparse(&xidx);
            span.insert(&v);
            v.push((m + j, CycNum::one()));
            tagged.insert(&v);
        }
        let rank = span.len();
        // kernel of Y-monomials -> invariants, modulo multiples of lower relations
        let kernel: Vec<SparseVec> = tagged
            .rows()
            .filter(|r| r[0].0 >= m)
            .map(|r| r.iter().map(|(i, c)| (i - m, c.clone())).collect())
            .collect();
        if !kernel.is_empty() {
            let mut lower = Echelon::new();
            for (e, r) in &rels {
                if *e >= d {
                    continue;
                }
                for u in monomials(&active_weights, d - e) {
                    let mut v: SparseVec = r
                        .iter()
                        .map(|(ex, c)| {
                            let mut full = ex.clone();
                            full.resize(k, 0);
                            let prod: Vec<u32> =
                                full.iter().zip(&u.0).map(|(a, b)| a + b).collect();
                            (yidx[&Mono(prod)], c.clone())
                        })
                        .collect();
                    v.sort_by_key(|x| x.0);
                    lower.insert(&v);
                }
            }
            for kv in kernel {
                if lower.insert(&kv).is_some() {
                    let lead = kv[0].1.inv();
                    rels.push((
                        d,
                        kv.iter()
                            .map(|(i, c)| (ymons[*i].0.clone(), c * &lead))
                            .collect(),
                    ));
                }
            }
        }
        let md = to_u32(&molien[d as usize]) as usize;
        if rank > md {
            return Err(Error::Internal(format!(
                "product span of rank {rank} exceeds the invariant dimension {md} in degree {d}"
            )));
        }
        if rank < md {
            if pinned {
                return Err(Error::Internal(format!(
                    "pinned generators miss {} invariants in degree {d}",
                    md - rank
                )));
            }
            let inv = invariant_basis(g, d)?;
            if inv.len() != md {
                return Err(Error::Internal(format!(
                    "invariant basis of size {} but Molien coefficient {md} in degree {d}",
                    inv.len()
                )));
            }
            let new = match opts.ambient {
                None => greedy_complement(&inv, &mut span, &xidx),
                Some(w) => equivariant_complement(&inv, &span, &xidx, w)?,
            };
            if new.len() != md - rank {
                return Err(Error::Internal(format!(
                    "complement of size {} instead of {} in degree {d}",
                    new.len(),
                    md - rank
                )));
            }
            for p in new {
                gens.push(p);
                degs.push(d);
            }
        }
        let dd: Vec<usize> = degs.iter().map(|&x| x as usize).collect();
        let rd: Vec<usize> = rels.iter().map(|r| r.0 as usize).collect();
        if !gens.is_empty() && d >= *degs.iter().max().unwrap() && mr.equals_ci(&dd, &rd) {
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::BoundTooSmall(
            bound as usize,
            "generators and relations do not yet account for the Molien series".into(),
        ));
    }
    let k = gens.len();
    let relations: Vec<MPoly> = rels
        .iter()
        .map(|(_, terms)| {
            let mut p = MPoly::zero_weighted(degs.clone());
            for (e, c) in terms {
                let mut full = e.clone();
                full.resize(k, 0);
                p.add_term(Mono(full), c.clone());
            }
            p
        })
        .collect();
    Ok(InvariantPresentation {
        dim: n,
        generator_degrees: degs,
        generators: gens,
        relation_degrees: rels.iter().map(|r| r.0).collect(),
        relations,
    })
}

fn greedy_complement(
    inv: &[MPoly],
    span: &mut Echelon,
    xidx: &HashMap<Mono, usize>,
) -> Vec<MPoly> {
    let mut out = Vec::new();
    for b in inv {
        if span.insert(&b.to_sparse(xidx)).is_some() {
            out.push(b.clone());
        }
    }
    out
}

/// Coordinates of `v` in a basis given in reduced echelon form.
fn echelon_coords(basis: &[SparseVec], v: &SparseVec) -> Option<Vec<CycNum>> {
    let lookup: HashMap<usize, &CycNum> = v.iter().map(|(i, c)| (*i, c)).collect();
    let coords: Vec<CycNum> = basis
        .iter()
        .map(|b| lookup.get(&b[0].0).map(|c| (*c).clone()).unwrap_or_default())
        .collect();
    let mut acc: HashMap<usize, CycNum> = HashMap::new();
    for (b, c) in basis.iter().zip(&coords) {
        if c.is_zero() {
            continue;
        }
        for (i, x) in b {
            let e = acc.entry(*i).or_default();
            *e = &*e + &(c * x);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    let same = acc.len() == v.len() && v.iter().all(|(i, c)| acc.get(i) == Some(c));
    same.then_some(coords)
}

/// A complement of the product span inside the invariants that is stable
/// under the ambient group, obtained by averaging a projector.
fn equivariant_complement(
    inv: &[MPoly],
    span: &Echelon,
    xidx: &HashMap<Mono, usize>,
    ambient: &MatGroup,
) -> Result<Vec<MPoly>> {
    let m = inv.len();
    let basis: Vec<SparseVec> = inv.iter().map(|b| b.to_sparse(xidx)).collect();
    let coords = |v: &SparseVec| -> Result<Vec<CycNum>> {
        echelon_coords(&basis, v).ok_or(Error::NotNormalizing)
    };
    let mut actions = Vec::new();
    for w in ambient.generators() {
        let cols: Vec<Vec<CycNum>> = inv
            .iter()
            .map(|b| coords(&act(w, b)?.to_sparse(xidx)))
            .collect::<Result<_>>()?;
        actions.push(Mat::from_columns(&cols));
    }
    let image = MatGroup::generate_in_dim(m, &actions)?;
    // basis of the product span in coordinates, extended by unit vectors
    let mut cols: Vec<Vec<CycNum>> = span.rows().map(coords).collect::<Result<_>>()?;
    let r = cols.len();
    let mut ech = Echelon::new();
    for c in &cols {
        ech.insert(&dense_to_sparse(c));
    }
    for kk in 0..m {
        let mut e = vec![CycNum::zero(); m];
        e[kk] = CycNum::one();
        if ech.insert(&dense_to_sparse(&e)).is_some() {
            cols.push(e);
        }
    }
    let b = Mat::from_columns(&cols);
    let binv = b.inverse()?;
    let mut diag = vec![CycNum::zero(); m];
    for x in diag.iter_mut().take(r) {
        *x = CycNum::one();
    }
    let proj = &(&b * &Mat::diag(&diag)) * &binv;
    let mut avg = Mat::zeros(m, m);
    for h in image.elements() {
        let hi = h.inverse()?;
        avg = &avg + &(&(h * &proj) * &hi);
    }
    let avg = avg.scale(&CycNum::rational(1, image.order() as i64));
    let comp = &Mat::identity(m) - &avg;
    let (e, piv) = comp.transpose().rref();
    let mut out = Vec::new();
    for i in 0..piv.len() {
        let mut p = MPoly::zero(inv[0].nvars());
        for (j, c) in e.row(i).iter().enumerate() {
            if !c.is_zero() {
                p = &p + &inv[j].scale(c);
            }
        }
        out.push(p);
    }
    Ok(out)
}

fn dense_to_sparse(v: &[CycNum]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Degrees and generators of a minimal generating set of the invariants.
pub fn min_generator_degrees(g: &MatGroup, bound: u32) -> Result<InvariantPresentation> {
    let mut p = compute_presentation(
        g,
        &PresentationOptions {
            bound: Some(bound),
            ..Default::default()
        },
    )?;
    p.relations.clear();
    p.relation_degrees.clear();
    Ok(p)
}

/// Minimal relations among the generators of `pres`.
pub fn relation_generators(
    g: &MatGroup,
    pres: &InvariantPresentation,
    bound: u32,
) -> Result<InvariantPresentation> {
    compute_presentation(
        g,
        &PresentationOptions {
            bound: Some(bound),
            ambient: None,
            generators: Some(pres.generators.clone()),
        },
    )
}

/// Full presentation, with a stable choice of generators when `ambient` is
/// given.
pub fn presentation(
    g: &MatGroup,
    bound: Option<u32>,
    ambient: Option<&MatGroup>,
) -> Result<InvariantPresentation> {
    compute_presentation(
        g,
        &PresentationOptions {
            bound,
            ambient,
            generators: None,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close;
    use crate::polynomials::parse_poly;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    fn minus_one() -> MatGroup {
        close(&[Mat::scalar(2, &CycNum::from_int(-1))], 10).unwrap()
    }

    fn ints(s: &MolienSeries) -> Vec<usize> {
        s.dims()
    }

    #[test]
    fn molien_examples() {
        assert_eq!(ints(&molien(&minus_one(), 6)), vec![1, 0, 3, 0, 5, 0, 7]);
        assert_eq!(ints(&molien(&MatGroup::trivial(1), 4)), vec![1; 5]);
        let s3 = close(
            &[
                Mat::from_ints(&[&[0, 1], &[1, 0]]),
                Mat::from_rows(vec![
                    vec![CycNum::zero(), z(3).pow(2)],
                    vec![z(3), CycNum::zero()],
                ]),
            ],
            100,
        )
        .unwrap();
        let expected = series::series(&[Rational::ONE], &[2, 3], 13);
        assert_eq!(molien(&s3, 12).coefficients, expected);
        assert_eq!(reflection_degrees(&s3).unwrap(), vec![2, 3]);
    }

    #[test]
    fn non_reflection_group() {
        let q8 = close(
            &[
                Mat::from_ints(&[&[0, -1], &[1, 0]]),
                Mat::diag(&[z(4), z(4).pow(3)]),
            ],
            100,
        )
        .unwrap();
        assert!(matches!(
            reflection_degrees(&q8),
            Err(Error::NotReflectionGroup(_))
        ));
        let p = presentation(&q8, None, None).unwrap();
        assert_eq!(p.generator_degrees, vec![4, 4, 6]);
        assert_eq!(p.relation_degrees, vec![12]);
        assert!(p.relations_vanish().unwrap());
    }

    #[test]
    fn center_presentation() {
        let p = presentation(&minus_one(), None, None).unwrap();
        assert_eq!(p.generator_degrees, vec![2, 2, 2]);
        assert_eq!(p.relation_degrees, vec![4]);
        // pinned generators XY, X^2, Y^2
        let pinned = InvariantPresentation {
            dim: 2,
            generator_degrees: vec![2, 2, 2],
            generators: vec![
                parse_poly("X1*X2", 2).unwrap(),
                parse_poly("X1^2", 2).unwrap(),
                parse_poly("X2^2", 2).unwrap(),
            ],
            relation_degrees: vec![],
            relations: vec![],
        };
        let full = relation_generators(&minus_one(), &pinned, 10).unwrap();
        let r = parse_poly("Y1^2 - Y2*Y3", 3).unwrap().with_weights(vec![2, 2, 2]);
        assert!(full.relations[0].scalar_ratio(&r).is_some());
    }

    #[test]
    fn cyclic_presentations() {
        for d in 3..6u32 {
            let c = close(&[Mat::diag(&[z(d), z(d).inv()])], 100).unwrap();
            let p = min_generator_degrees(&c, 30).unwrap();
            let mut degs = p.generator_degrees.clone();
            degs.sort();
            assert_eq!(degs, vec![2, d, d]);
        }
    }

    #[test]
    fn bound_too_small() {
        assert!(matches!(
            presentation(&minus_one(), Some(3), None),
            Err(Error::BoundTooSmall(..))
        ));
    }
}
