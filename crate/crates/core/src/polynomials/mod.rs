//! Multivariate polynomials over cyclotomic fields and the linear group
//! action `(g·p)(x) = p(g⁻¹x)`.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};
use crate::groups::MatGroup;
use crate::linalg::{Mat, SparseVec};

pub use parse::parse_poly;

/// Exponent vector, ordered graded-lexicographically with `X1 > X2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables with per-variable weights.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    weights: Vec<u32>,
    terms: BTreeMap<Mono, CycNum>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly::zero_weighted(vec![1; nvars])
    }

    pub fn zero_weighted(weights: Vec<u32>) -> MPoly {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        MPoly {
            nvars: weights.len(),
            weights,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.add_term(Mono(vec![0; nvars]), c);
        p
    }

    /// The variable `X_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(nvars, e, CycNum::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: CycNum) -> MPoly {
        assert_eq!(exps.len(), nvars);
        let mut p = MPoly::zero(nvars);
        p.add_term(Mono(exps), c);
        p
    }

    /// Linear form `Σ c_i X_i`.
    pub fn linear(coeffs: &[CycNum]) -> MPoly {
        let n = coeffs.len();
        let mut p = MPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> MPoly {
        assert_eq!(weights.len(), self.nvars);
        self.weights = weights;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &CycNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &CycNum)> {
        self.terms.iter().next_back()
    }

    /// Weighted degree of the leading-degree part; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&self.weights))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(&self.weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &CycNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero_weighted(self.weights.clone());
        }
        MPoly {
            nvars: self.nvars,
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, CycNum::one()).with_weights(self.weights.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// If `other = c·self` for a nonzero scalar `c`, returns `c`.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<CycNum> {
        let (m, a) = self.leading()?;
        let b = other.terms.get(m)?;
        let c = b / a;
        if &self.scale(&c) == other {
            Some(c)
        } else {
            None
        }
    }

    /// `p(M·x)`: substitutes `X_i ↦ Σ_j M_ij X_j`.
    pub fn linear_substitute(&self, m: &Mat) -> Result<MPoly> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a polynomial in {} variables",
                m.rows(),
                m.cols(),
                self.nvars
            )));
        }
        let forms: Vec<MPoly> = (0..self.nvars)
            .map(|i| MPoly::linear(m.row(i)))
            .collect();
        self.substitute_unchecked(&forms, self.nvars)
    }

    fn substitute_unchecked(&self, images: &[MPoly], target_vars: usize) -> Result<MPoly> {
        let target_weights = images
            .first()
            .map(|p| p.weights.clone())
            .unwrap_or_else(|| vec![1; target_vars]);
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero_weighted(target_weights.clone());
        for (mono, c) in &self.terms {
            let mut term = MPoly::constant(target_vars, c.clone()).with_weights(target_weights.clone());
            for (i, &a) in mono.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, a))
                    .or_insert_with(|| images[i].pow(a))
                    .clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Composite `self(images)`; `self` is in `Y_1..Y_k`, images in `X`s.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let n = first.nvars;
        if images.iter().any(|p| p.nvars != n) {
            return Err(Error::DimensionMismatch("images in different rings".into()));
        }
        for (img, w) in images.iter().zip(&self.weights) {
            if !img.is_zero() && img.is_homogeneous() && self.weights.iter().any(|&x| x != 1) {
                if img.degree() != Some(*w) {
                    return Err(Error::DimensionMismatch(format!(
                        "image of degree {:?} for a variable of weight {w}",
                        img.degree()
                    )));
                }
            }
        }
        self.substitute_unchecked(images, n)
    }

    /// Coefficient vector against an indexed monomial list.
    pub fn to_sparse(&self, index: &HashMap<Mono, usize>) -> SparseVec {
        let mut v: SparseVec = self
            .terms
            .iter()
            .map(|(m, c)| (*index.get(m).expect("monomial outside the indexed degree"), c.clone()))
            .collect();
        v.sort_by_key(|x| x.0);
        v
    }

    pub fn from_sparse(weights: &[u32], mons: &[Mono], v: &SparseVec) -> MPoly {
        let mut p = MPoly::zero_weighted(weights.to_vec());
        for (i, c) in v {
            p.add_term(mons[*i].clone(), c.clone());
        }
        p
    }

    pub fn to_string_with(&self, prefix: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(j, &a)| {
                    if a == 1 {
                        format!("{prefix}{}", j + 1)
                    } else {
                        format!("{prefix}{}^{a}", j + 1)
                    }
                })
                .collect();
            let mono = vars.join("*");
            // single-term coefficients carry their sign outside
            let (neg, coeff) = if c.terms().len() == 1 && c.terms()[0].1.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let cstr = if coeff.terms().len() <= 1 {
                coeff.to_string()
            } else {
                format!("({coeff})")
            };
            let body = if mono.is_empty() {
                cstr
            } else if coeff.is_one() {
                mono
            } else {
                format!("{cstr}*{mono}")
            };
            match (i, neg) {
                (0, false) => s.push_str(&body),
                (0, true) => {
                    s.push('-');
                    s.push_str(&body)
                }
                (_, false) => {
                    s.push_str(" + ");
                    s.push_str(&body)
                }
                (_, true) => {
                    s.push_str(" - ");
                    s.push_str(&body)
                }
            }
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with('X'))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials in different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials in different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials in different rings");
        let mut acc: HashMap<Vec<u32>, CycNum> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                let t = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &t,
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        MPoly {
            nvars: self.nvars,
            weights: self.weights.clone(),
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Mono(e), c))
                .collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&CycNum::from_int(-1))
    }
}

/// Monomials of weighted degree `d`, in decreasing graded-lex order.
pub fn monomials(weights: &[u32], d: u32) -> Vec<Mono> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Mono(cur.clone()));
            }
            return;
        }
        if i == weights.len() - 1 {
            if left % weights[i] == 0 {
                cur.push(left / weights[i]);
                out.push(Mono(cur.clone()));
                cur.pop();
            }
            return;
        }
        let maxa = left / weights[i];
        for a in (0..=maxa).rev() {
            cur.push(a);
            rec(weights, i + 1, left - a * weights[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if weights.is_empty() {
        if d == 0 {
            out.push(Mono(vec![]));
        }
        return out;
    }
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

pub fn monomial_index(mons: &[Mono]) -> HashMap<Mono, usize> {
    mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `(g·p)(x) = p(g⁻¹x)`.
pub fn act(g: &Mat, p: &MPoly) -> Result<MPoly> {
    if !g.is_square() || g.rows() != p.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on a polynomial in {} variables",
            g.rows(),
            g.cols(),
            p.nvars()
        )));
    }
    p.linear_substitute(&g.inverse()?)
}

/// Action of `g` on the degree-`d` polynomials as a matrix whose column `j`
/// holds the coordinates of `g·m_j`.
pub fn degree_action_matrix(g: &Mat, d: u32) -> Result<(Vec<Mono>, Mat)> {
    let n = g.rows();
    let mons = monomials(&vec![1; n], d);
    let idx = monomial_index(&mons);
    let gi = g.inverse()?;
    let forms: Vec<MPoly> = (0..n).map(|i| MPoly::linear(gi.row(i))).collect();
    let mut powers: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    for f in &forms {
        let mut ps = vec![MPoly::constant(n, CycNum::one())];
        for k in 1..=d as usize {
            let next = &ps[k - 1] * f;
            ps.push(next);
        }
        powers.push(ps);
    }
    let mut a = Mat::zeros(mons.len(), mons.len());
    for (j, m) in mons.iter().enumerate() {
        let mut img = MPoly::constant(n, CycNum::one());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                img = &img * &powers[i][e as usize];
            }
        }
        for (mm, c) in img.terms() {
            a.set(idx[mm], j, c.clone());
        }
    }
    Ok((mons, a))
}

/// Reynolds average `(1/|G|) Σ g·p`.
pub fn reynolds(g: &MatGroup, p: &MPoly) -> Result<MPoly> {
    let parts: Vec<MPoly> = g
        .elements()
        .par_iter()
        .map(|x| act(x, p))
        .collect::<Result<_>>()?;
    let mut acc = MPoly::zero_weighted(p.weights().to_vec());
    for q in &parts {
        acc = &acc + q;
    }
    Ok(acc.scale(&CycNum::from_rational(Rational::new(1, g.order() as i64))))
}

fn echelon_basis(mons: &[Mono], rows: Vec<Vec<CycNum>>) -> Vec<MPoly> {
    let n = mons.first().map_or(0, |m| m.0.len());
    if rows.is_empty() {
        return Vec::new();
    }
    let (e, piv) = Mat::from_rows(rows).rref();
    (0..piv.len())
        .map(|i| {
            let mut p = MPoly::zero(n);
            for (j, c) in e.row(i).iter().enumerate() {
                p.add_term(mons[j].clone(), c.clone());
            }
            p
        })
        .collect()
}

/// Basis of the degree-`d` invariants, in reduced echelon form with respect
/// to decreasing graded-lex order.
pub fn invariant_basis(g: &MatGroup, d: u32) -> Result<Vec<MPoly>> {
    let n = g.dim();
    let mons = monomials(&vec![1; n], d);
    if g.generators().iter().all(|x| x.is_monomial()) {
        // each element sends a monomial to a multiple of a monomial
        let idx = monomial_index(&mons);
        let rows: Vec<Vec<CycNum>> = mons
            .par_iter()
            .map(|m| {
                let mut v = vec![CycNum::zero(); mons.len()];
                for x in g.elements() {
                    let (c, mm) = monomial_image(x, m);
                    let k = idx[&mm];
                    v[k] = &v[k] + &c;
                }
                v
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        return Ok(echelon_basis(&mons, rows));
    }
    // Start from the monomials fixed by the diagonal elements, then cut down
    // by the remaining generators one at a time. Eliminating on the full
    // stacked action matrix blows up the coefficients.
    let diagonal: Vec<&Mat> = g
        .elements()
        .iter()
        .filter(|x| x.is_diagonal() && !x.is_identity())
        .collect();
    let mut basis: Vec<Vec<CycNum>> = mons
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            diagonal.iter().all(|x| monomial_image(x, m).0.is_one())
        })
        .map(|(i, _)| {
            let mut v = vec![CycNum::zero(); mons.len()];
            v[i] = CycNum::one();
            v
        })
        .collect();
    for x in g.generators().iter().filter(|x| !x.is_diagonal()) {
        if basis.is_empty() {
            break;
        }
        let (_, a) = degree_action_matrix(x, d)?;
        let cols: Vec<Vec<CycNum>> = basis
            .iter()
            .map(|b| {
                a.mul_vec(b)
                    .iter()
                    .zip(b)
                    .map(|(u, v)| u - v)
                    .collect()
            })
            .collect();
        let ns = Mat::from_columns(&cols).nullspace();
        basis = ns
            .iter()
            .map(|c| {
                let mut v = vec![CycNum::zero(); mons.len()];
                for (ci, b) in c.iter().zip(&basis) {
                    if !ci.is_zero() {
                        for (vk, bk) in v.iter_mut().zip(b) {
                            *vk = &*vk + &(ci * bk);
                        }
                    }
                }
                v
            })
            .collect();
    }
    Ok(echelon_basis(&mons, basis))
}

/// Image `g·m = c·m'` of a monomial under a monomial matrix.
fn monomial_image(g: &Mat, m: &Mono) -> (CycNum, Mono) {
    // (g·m)(x) = m(g⁻¹x); with g e_j = a_j e_{π(j)}, g⁻¹ x has coordinate j
    // equal to x_{π(j)} / a_j.
    let n = g.rows();
    let mut c = CycNum::one();
    let mut e = vec![0u32; n];
    for j in 0..n {
        let i = (0..n).find(|&i| !g.get(i, j).is_zero()).expect("monomial matrix");
        let a = g.get(i, j);
        if m.0[j] > 0 {
            c = &c * &a.inv().pow(m.0[j] as i64);
            e[i] += m.0[j];
        }
    }
    (c, Mono(e))
}

/// Substitutes images for the `Y` variables of `q`.
pub fn substitute(q: &MPoly, images: &[MPoly]) -> Result<MPoly> {
    q.substitute(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn action_examples() {
        let swap = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(act(&swap, &x(2, 0)).unwrap(), x(2, 1));
        let minus = Mat::scalar(2, &CycNum::from_int(-1));
        let xy = &x(2, 0) * &x(2, 1);
        assert_eq!(act(&minus, &xy).unwrap(), xy);
        let z5 = CycNum::zeta(5);
        let t = Mat::diag(&[z5.clone(), z5.inv()]);
        let x5 = x(2, 0).pow(5);
        assert_eq!(act(&t, &x5).unwrap(), x5);
        assert!(act(&Mat::identity(3), &xy).is_err());
    }

    #[test]
    fn action_is_left_action() {
        let z8 = CycNum::zeta(8);
        let g = Mat::from_rows(vec![
            vec![CycNum::zero(), z8.clone()],
            vec![CycNum::one(), CycNum::from_int(2)],
        ]);
        let h = Mat::from_ints(&[&[1, 1], &[0, -1]]);
        let p = &(&x(2, 0).pow(2) * &x(2, 1)) + &x(2, 1);
        let lhs = act(&(&g * &h), &p).unwrap();
        let rhs = act(&g, &act(&h, &p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_bases() {
        let minus = Mat::scalar(2, &CycNum::from_int(-1));
        let g = close(&[minus], 10).unwrap();
        let b = invariant_basis(&g, 2).unwrap();
        assert_eq!(b.len(), 3);
        let z3 = CycNum::zeta(3);
        let c3 = close(&[Mat::diag(&[z3.clone(), z3.inv()])], 10).unwrap();
        let b = invariant_basis(&c3, 2).unwrap();
        assert_eq!(b, vec![&x(2, 0) * &x(2, 1)]);
        assert_eq!(invariant_basis(&MatGroup::trivial(2), 1).unwrap().len(), 2);
        // a non-monomial group: the dihedral group of order 6 over Q(ζ3)
        let s3 = close(
            &[
                Mat::from_ints(&[&[0, 1], &[1, 0]]),
                Mat::diag(&[z3.clone(), z3.inv()]),
            ],
            10,
        )
        .unwrap();
        let rot = Mat::from_rows(vec![
            vec![CycNum::rational(1, 2), CycNum::rational(1, 2)],
            vec![CycNum::rational(1, 2), CycNum::rational(-1, 2)],
        ]);
        let conj = s3.conjugate_by(&rot).unwrap();
        assert_eq!(invariant_basis(&conj, 3).unwrap().len(), 1);
        for p in invariant_basis(&conj, 6).unwrap() {
            assert_eq!(reynolds(&conj, &p).unwrap(), p);
        }
    }

    #[test]
    fn substitution() {
        let xy = &x(2, 0) * &x(2, 1);
        let x2 = x(2, 0).pow(2);
        let y2 = x(2, 1).pow(2);
        let r = parse_poly("Y1^2 - Y2*Y3", 3).unwrap().with_weights(vec![2, 2, 2]);
        assert!(r.substitute(&[xy, x2, y2]).unwrap().is_zero());
        let q = parse_poly("Y1", 1).unwrap();
        assert_eq!(q.substitute(&[x(2, 0)]).unwrap(), x(2, 0));
    }

    #[test]
    fn printing() {
        let p = parse_poly("X1^2*X2 - 1/2*z(4)*X3^3", 3).unwrap();
        assert_eq!(p.to_string(), "X1^2*X2 - 1/2*z(4)*X3^3");
        let q = parse_poly(&p.to_string(), 3).unwrap();
        assert_eq!(p, q);
    }
}
