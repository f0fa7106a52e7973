//! Generator matrices for the parametric families.

use crate::cyclotomic::{sqrt_int, CycNum};
use crate::linalg::Mat;

fn z(n: u32, k: i64) -> CycNum {
    CycNum::zeta_pow(n, k)
}

fn int(n: i64) -> CycNum {
    CycNum::from_int(n)
}

/// `t(ζ) = diag(ζ, ζ⁻¹)`.
pub fn t(zeta: &CycNum) -> Mat {
    Mat::diag(&[zeta.clone(), zeta.inv()])
}

/// `[[0, −1], [1, 0]]`.
pub fn sigma() -> Mat {
    Mat::from_ints(&[&[0, -1], &[1, 0]])
}

/// The swap `[[0, 1], [1, 0]]`.
pub fn swap() -> Mat {
    Mat::from_ints(&[&[0, 1], &[1, 0]])
}

pub fn cyclic_sl(d: u32) -> Vec<Mat> {
    vec![t(&z(d, 1))]
}

pub fn binary_dihedral(d: u32) -> Vec<Mat> {
    vec![sigma(), t(&z(2 * d, 1))]
}

pub fn dihedral(d: u32) -> Vec<Mat> {
    vec![t(&z(d, 1)), swap()]
}

/// Binary tetrahedral group: the quaternion group and an element of order 6.
pub fn binary_tetrahedral() -> Vec<Mat> {
    let i = CycNum::i();
    let half = CycNum::rational(1, 2);
    let one = CycNum::one();
    let rho = Mat::from_rows(vec![
        vec![&half * &(&one + &i), &half * &(&i - &one)],
        vec![&half * &(&one + &i), &half * &(&one - &i)],
    ]);
    let mut g = binary_dihedral(2);
    g.push(rho);
    g
}

/// Binary octahedral group: the binary tetrahedral group and `t(ζ₈)`.
pub fn binary_octahedral() -> Vec<Mat> {
    let mut g = binary_tetrahedral();
    g.push(t(&z(8, 1)));
    g
}

/// Binary icosahedral group from Klein's pair of generators over `ℚ(ζ₅)`.
pub fn binary_icosahedral() -> Vec<Mat> {
    let e = |k: i64| z(5, k);
    let s = Mat::diag(&[e(3), e(2)]);
    let r5 = sqrt_int(5).inv();
    let a = &e(1) - &e(4);
    let b = &e(2) - &e(3);
    let tm = Mat::from_rows(vec![
        vec![-&(&a * &r5), &b * &r5],
        vec![&b * &r5, &a * &r5],
    ]);
    vec![s, tm]
}

/// Scalar matrix `ζ_k·I`.
pub fn scalar_root(n: usize, k: u32) -> Mat {
    Mat::scalar(n, &z(k, 1))
}

/// Generating reflections of the monomial group `G(m, p, n)`.
pub fn imprimitive(m: u32, p: u32, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    if p < m {
        let mut d = vec![int(1); n];
        d[0] = z(m, p as i64);
        gens.push(Mat::diag(&d));
    }
    if n >= 2 && p > 1 {
        let mut a = Mat::identity(n);
        a.set(0, 0, int(0));
        a.set(1, 1, int(0));
        a.set(0, 1, z(m, -1));
        a.set(1, 0, z(m, 1));
        gens.push(a);
    }
    for k in 0..n.saturating_sub(1) {
        let mut a = Mat::identity(n);
        a.set(k, k, int(0));
        a.set(k + 1, k + 1, int(0));
        a.set(k, k + 1, int(1));
        a.set(k + 1, k, int(1));
        gens.push(a);
    }
    if n == 1 && p == m {
        return vec![Mat::identity(1)];
    }
    gens
}

/// `ℤ/p ⊕ ℤ/q` acting diagonally.
pub fn diagonal_pair(p: u32, q: u32) -> Vec<Mat> {
    vec![
        Mat::diag(&[z(p, 1), int(1)]),
        Mat::diag(&[int(1), z(q, 1)]),
    ]
}

/// Reflections of a Coxeter group in the basis of simple roots, from a
/// table of bond orders (`2` for no bond).
pub fn coxeter(bonds: &[Vec<u32>]) -> Vec<Mat> {
    let n = bonds.len();
    // a_ij = −2cos(π/m_ij)
    let a = |i: usize, j: usize| -> CycNum {
        if i == j {
            return int(2);
        }
        let m = bonds[i][j];
        let c = &z(2 * m, 1) + &z(2 * m, -1);
        -c
    };
    (0..n)
        .map(|i| {
            let mut s = Mat::identity(n);
            for j in 0..n {
                // s_i(α_j) = α_j − a_ij α_i: column j, row i.
                let v = &s.get(i, j).clone() - &a(i, j);
                s.set(i, j, v);
            }
            s
        })
        .collect()
}

fn chain(n: usize, special: Option<(usize, u32)>) -> Vec<Vec<u32>> {
    let mut b = vec![vec![2u32; n]; n];
    for i in 0..n.saturating_sub(1) {
        b[i][i + 1] = 3;
        b[i + 1][i] = 3;
    }
    if let Some((i, m)) = special {
        b[i][i + 1] = m;
        b[i + 1][i] = m;
    }
    b
}

pub fn coxeter_a(n: usize) -> Vec<Mat> {
    coxeter(&chain(n, None))
}

pub fn coxeter_b(n: usize) -> Vec<Mat> {
    coxeter(&chain(n, Some((0, 4))))
}

pub fn coxeter_f4() -> Vec<Mat> {
    coxeter(&chain(4, Some((1, 4))))
}

pub fn coxeter_h3() -> Vec<Mat> {
    coxeter(&chain(3, Some((0, 5))))
}
