//! Dense exact linear algebra over cyclotomic fields.

mod echelon;
mod unipoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use echelon::{Echelon, SparseVec};
pub use unipoly::UniPoly;

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of cyclotomic numbers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![CycNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &CycNum) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[CycNum]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, c) in entries.iter().enumerate() {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix with integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vec<CycNum>]) -> Mat {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * c + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Mat {
        self.map(|x| x * c)
    }

    /// Entrywise Galois conjugation followed by transposition.
    pub fn conj_transpose(&self) -> Mat {
        self.transpose().map(|x| x.conj())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// True when every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_seen = vec![false; n];
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| !self.get(i, j).is_zero()).collect();
            if nz.len() != 1 || col_seen[nz[0]] {
                return false;
            }
            col_seen[nz[0]] = true;
        }
        true
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Mat {
        let mut acc = Mat::identity(self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Multiplicative order, or `NotFinite` past `bound`.
    pub fn order(&self, bound: u64) -> Result<u64> {
        let id = Mat::identity(self.rows);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == id {
                return Ok(k);
            }
            acc = &acc * self;
        }
        Err(Error::NotFinite(bound))
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let x = solve(self, &Mat::identity(n))?;
        match x {
            Some((x, true)) => Ok(x),
            _ => Err(Error::DivisionByZero),
        }
    }

    /// Row-reduced echelon form with unit pivots, and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, echelonized so that the basis vectors,
    /// stacked as rows, are in reduced echelon form with unit pivots.
    pub fn nullspace(&self) -> Vec<Vec<CycNum>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<CycNum>> = Vec::new();
        for &f in &free {
            let mut v = vec![CycNum::zero(); self.cols];
            v[f] = CycNum::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let (e, piv) = Mat::from_rows(basis).rref();
        (0..piv.len()).map(|i| e.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &'a Mat) -> Mat {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|x| -x)
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Mat) -> Result<CycNum> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(CycNum::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = CycNum::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(CycNum::zero());
            };
            a.swap_rows(k, p);
            sign = !sign;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&(&akk * a.get(i, j)) - &(a.get(i, k) * a.get(k, j))) / &prev;
                a.set(i, j, v);
            }
        }
        prev = akk;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign { -d } else { d })
}

/// Basis of the fixed space `ker(g − 1)`.
pub fn fixed_space(g: &Mat) -> Result<Vec<Vec<CycNum>>> {
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows, g.cols));
    }
    Ok((g - &Mat::identity(g.rows)).nullspace())
}

/// Solves `A·X = B`. Returns `None` when inconsistent; otherwise the solution
/// with all free variables set to zero and a flag telling whether it is
/// unique.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<(Mat, bool)>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows, B has {}",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let mut aug = Mat::zeros(a.rows, n + b.cols);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        for j in 0..b.cols {
            aug.set(i, n + j, b.get(i, j).clone());
        }
    }
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(n, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some((x, pivots.len() == n)))
}

/// `det(1 − t·g)` as a polynomial in `t` (Faddeev–LeVerrier).
pub fn rev_charpoly(g: &Mat) -> Result<UniPoly> {
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows, g.cols));
    }
    let n = g.rows;
    // c[k] = coefficient of x^k in det(x − g)
    let mut c = vec![CycNum::zero(); n + 1];
    c[n] = CycNum::one();
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        m = &(g * &m) + &Mat::scalar(n, &c[n - k + 1]);
        let am = g * &m;
        c[n - k] = am.trace().scale(&Rational::new(-1, k as i64));
    }
    // det(1 − t g) = Σ_k c[n−k] t^k
    Ok(UniPoly::new((0..=n).map(|k| c[n - k].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&Mat::identity(3)).unwrap(), CycNum::one());
        let sigma = Mat::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(det(&sigma).unwrap(), CycNum::one());
        assert_eq!(det(&Mat::diag(&[z(3), z(3)])).unwrap(), z(3).pow(2));
        assert_eq!(det(&Mat::zeros(2, 3)), Err(Error::NotSquare(2, 3)));
        let m = Mat::from_ints(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]);
        assert_eq!(det(&m).unwrap(), CycNum::from_int(-3));
    }

    #[test]
    fn fixed_spaces() {
        assert_eq!(fixed_space(&Mat::identity(2)).unwrap().len(), 2);
        let r = fixed_space(&Mat::from_ints(&[&[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(r, vec![vec![CycNum::zero(), CycNum::one()]]);
        assert!(fixed_space(&Mat::from_ints(&[&[-1, 0], &[0, -1]]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn solving() {
        let b = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap(), Some((b, true)));
        let a = Mat::from_ints(&[&[1], &[0]]);
        let b = Mat::from_ints(&[&[0], &[1]]);
        assert_eq!(solve(&a, &b).unwrap(), None);
        let x = solve(&Mat::from_ints(&[&[2]]), &Mat::from_ints(&[&[1]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.0.get(0, 0), &CycNum::rational(1, 2));
        assert!(solve(&Mat::identity(2), &Mat::identity(3)).is_err());
    }

    #[test]
    fn reversed_characteristic_polynomials() {
        let one = CycNum::one();
        let p = rev_charpoly(&Mat::identity(2)).unwrap();
        assert_eq!(p, UniPoly::new(vec![one.clone(), CycNum::from_int(-2), one.clone()]));
        let p = rev_charpoly(&Mat::diag(&[z(3), z(3).pow(2)])).unwrap();
        assert_eq!(p, UniPoly::new(vec![one.clone(), one.clone(), one.clone()]));
        let sigma = Mat::from_ints(&[&[0, -1], &[1, 0]]);
        let p = rev_charpoly(&sigma).unwrap();
        assert_eq!(p, UniPoly::new(vec![one.clone(), CycNum::zero(), one]));
    }

    #[test]
    fn inverse_and_order() {
        let g = Mat::from_rows(vec![
            vec![CycNum::zero(), z(8)],
            vec![CycNum::one(), CycNum::zero()],
        ]);
        let gi = g.inverse().unwrap();
        assert!((&g * &gi).is_identity());
        assert_eq!(g.order(100).unwrap(), 16);
        assert!(Mat::from_ints(&[&[1, 1], &[0, 1]]).order(50).is_err());
    }

    #[test]
    fn nullspace_is_echelon() {
        let m = Mat::from_ints(&[&[1, 1, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            assert!(v[i].is_one());
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
