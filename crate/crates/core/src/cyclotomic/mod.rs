//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored sparsely over the Zumbroich basis of `Q(ζ_n)` with the
//! conductor `n` reduced to the smallest field containing the value. Two
//! numbers are equal iff their conductors and coefficient lists agree, so
//! derived `Eq`/`Hash` give exact equality and hashing.
//!
//! The basis is the product over prime powers `p^e || n` of the exponent sets
//! `{a·p^(e-1) + c : 1 <= a < p, 0 <= c < p^(e-1)}` for odd `p` and
//! `{0 <= j < 2^(e-1)}` for `p = 2`, glued by the Chinese remainder theorem.

mod parse;
pub mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;

pub use rational::Rational;

use crate::error::{Error, Result};

/// Hard cap on conductors produced by arithmetic.
pub const MAX_CONDUCTOR: u64 = 1_000_000;

/// An element of the cyclotomic field `Q(ζ_n)` for its minimal `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    /// `(exponent, coefficient)` over the Zumbroich basis, sorted by exponent,
    /// no zero coefficients.
    terms: Vec<(u32, Rational)>,
}

fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i64, m as i64);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i64) as u64
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Rewrites a dense coefficient vector indexed by exponents mod `n` so that
/// only Zumbroich basis exponents carry nonzero coefficients.
fn convert_to_base(n: u32, v: &mut [Rational]) {
    let n = n as usize;
    for (p, e) in factor(n as u32) {
        let (p, e) = (p as usize, e as usize);
        let q = p.pow(e as u32);
        if p == 2 {
            let half = q / 2;
            for k in 0..n {
                if v[k].is_zero() {
                    continue;
                }
                let c = k % q;
                let bad = if e == 1 { c == 1 } else { c >= half };
                if bad {
                    let coeff = std::mem::take(&mut v[k]);
                    let target = (k + n / 2) % n;
                    v[target] = &v[target] - &coeff;
                }
            }
        } else {
            let top = q / p;
            let step = n / p;
            for k in 0..n {
                if v[k].is_zero() {
                    continue;
                }
                if (k % q) < top {
                    let coeff = std::mem::take(&mut v[k]);
                    for a in 1..p {
                        let target = (k + a * step) % n;
                        v[target] = &v[target] - &coeff;
                    }
                }
            }
        }
    }
}

/// Tries to descend one step to a proper subfield; returns the new conductor
/// and coefficient vector (already in base form) on success.
fn try_descend(n: u32, v: &[Rational]) -> Option<(u32, Vec<Rational>)> {
    let nu = n as usize;
    for (p, e) in factor(n) {
        let pu = p as usize;
        if e >= 2 || p == 2 {
            if v
                .iter()
                .enumerate()
                .all(|(k, c)| c.is_zero() || k % pu == 0)
            {
                let m = nu / pu;
                let mut w = vec![Rational::ZERO; m];
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        w[k / pu] = c.clone();
                    }
                }
                convert_to_base(m as u32, &mut w);
                return Some((m as u32, w));
            }
        } else {
            // p odd, p || n: constant along the p-component within each class.
            let m = nu / pu;
            let step = m; // n / p
            let mut ok = true;
            let mut seen = vec![false; m];
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() || seen[k % m] {
                    continue;
                }
                seen[k % m] = true;
                // all exponents in the class k mod m: k + j*m, j = 0..p
                let mut reference: Option<&Rational> = None;
                for j in 0..pu {
                    let kk = (k + j * step) % nu;
                    if kk % pu == 0 {
                        continue;
                    }
                    match reference {
                        None => reference = Some(&v[kk]),
                        Some(r) => {
                            if *r != v[kk] {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                let mut w = vec![Rational::ZERO; m];
                let inv = mod_inverse((m % pu) as u64, p as u64) as usize;
                let mut done = vec![false; m];
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() || done[k % m] {
                        continue;
                    }
                    done[k % m] = true;
                    // a with k + a*m ≡ 0 (mod p)
                    let a = ((pu - k % pu) * inv) % pu;
                    let k0 = (k + a * m) % nu;
                    debug_assert_eq!(k0 % pu, 0);
                    let idx = k0 / pu;
                    w[idx] = &w[idx] - c;
                }
                convert_to_base(m as u32, &mut w);
                return Some((m as u32, w));
            }
        }
    }
    None
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> CycNum {
        CycNum::from_rational(Rational::ONE)
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            conductor: 1,
            terms: vec![(0, r)],
        }
    }

    pub fn rational(num: i64, den: i64) -> CycNum {
        CycNum::from_rational(Rational::new(num, den))
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn zeta_pow(n: u32, k: i64) -> CycNum {
        assert!(n >= 1, "conductor must be positive");
        let mut v = vec![Rational::ZERO; n as usize];
        v[k.rem_euclid(n as i64) as usize] = Rational::ONE;
        CycNum::normalize(n, v, false)
    }

    /// `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> CycNum {
        CycNum::zeta_pow(n, 1)
    }

    /// `c·ζ_n^k`.
    pub fn term(c: Rational, n: u32, k: i64) -> CycNum {
        CycNum::zeta_pow(n, k).scale(&c)
    }

    pub fn i() -> CycNum {
        CycNum::zeta(4)
    }

    /// The conductor of the smallest cyclotomic field containing `self`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.terms.first().map(|t| t.1.clone()).unwrap_or(Rational::ZERO))
    }

    fn dense(&self, n: u32) -> Vec<Rational> {
        let scale = (n / self.conductor) as usize;
        let mut v = vec![Rational::ZERO; n as usize];
        for (k, c) in &self.terms {
            v[*k as usize * scale] = c.clone();
        }
        v
    }

    fn normalize(n: u32, mut v: Vec<Rational>, in_base: bool) -> CycNum {
        let mut n = n;
        if !in_base {
            convert_to_base(n, &mut v);
        }
        if v.iter().all(|c| c.is_zero()) {
            return CycNum::zero();
        }
        while n > 1 {
            match try_descend(n, &v) {
                Some((m, w)) => {
                    n = m;
                    v = w;
                }
                None => break,
            }
        }
        let terms = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        CycNum { conductor: n, terms }
    }

    fn common_conductor(&self, other: &CycNum) -> Result<u32> {
        let l = (self.conductor as u64).lcm(&(other.conductor as u64));
        if l > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(l));
        }
        Ok(l as u32)
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.conductor == other.conductor {
            // both already in the same base
            let n = self.conductor;
            let mut v = self.dense(n);
            for (k, c) in &other.terms {
                v[*k as usize] = &v[*k as usize] + c;
            }
            return Ok(CycNum::normalize(n, v, true));
        }
        let l = self.common_conductor(other)?;
        let mut v = self.dense(l);
        let scale = (l / other.conductor) as usize;
        for (k, c) in &other.terms {
            let idx = *k as usize * scale;
            v[idx] = &v[idx] + c;
        }
        Ok(CycNum::normalize(l, v, false))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum::zero());
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r));
        }
        let l = self.common_conductor(other)?;
        let (s1, s2) = ((l / self.conductor) as usize, (l / other.conductor) as usize);
        let lu = l as usize;
        let mut v = vec![Rational::ZERO; lu];
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let idx = (*k1 as usize * s1 + *k2 as usize * s2) % lu;
                v[idx] = &v[idx] + &(c1 * c2);
            }
        }
        Ok(CycNum::normalize(l, v, false))
    }

    /// Galois automorphism `ζ_n ↦ ζ_n^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> CycNum {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let kk = k.rem_euclid(n as i64) as u64;
        debug_assert_eq!(kk.gcd(&(n as u64)), 1);
        let mut v = vec![Rational::ZERO; n as usize];
        for (e, c) in &self.terms {
            let idx = ((*e as u64 * kk) % n as u64) as usize;
            v[idx] = &v[idx] + c;
        }
        CycNum::normalize(n, v, false)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    pub fn try_inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(r.recip()));
        }
        let n = self.conductor as u64;
        // product of the nontrivial Galois conjugates; self * prod is the norm
        let mut prod = CycNum::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                prod = prod.try_mul(&self.galois(k as i64))?;
            }
        }
        let norm = self.try_mul(&prod)?;
        let norm = norm
            .as_rational()
            .expect("field norm of a cyclotomic number is rational");
        Ok(prod.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn inv(&self) -> CycNum {
        self.try_inv().expect("inverse of zero")
    }

    pub fn pow(&self, e: i64) -> CycNum {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
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

    /// Canonical form. Values are always kept canonical, so this is the
    /// identity; it exists to make the canonicalization contract explicit.
    pub fn canonical(&self) -> CycNum {
        self.clone()
    }

    /// Re-canonicalizes a value given as coefficients of `ζ_n^k` for
    /// `k = 0..n`.
    pub fn from_powers(n: u32, coeffs: &[Rational]) -> CycNum {
        assert_eq!(coeffs.len(), n as usize);
        CycNum::normalize(n, coeffs.to_vec(), false)
    }

    /// Numerical value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let n = self.conductor as f64;
        for (k, c) in &self.terms {
            let a = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            let c = c.to_f64();
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }

    /// If `self` is a root of unity, its multiplicative order.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let bound = if n % 2 == 0 { n } else { 2 * n };
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.try_add(rhs).expect("cyclotomic addition")
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self.try_add(&-rhs).expect("cyclotomic subtraction")
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.try_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn div(self, rhs: &'a CycNum) -> CycNum {
        self.try_div(rhs).expect("cyclotomic division")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Binary operation selector for [`cyc_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_add(&-b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn cyc_canonical(a: &CycNum) -> CycNum {
    a.canonical()
}

impl fmt::Display for CycNum {
    /// Textual form `p/q*z(n)^k + ...`; parsing it back yields the same value
    /// and printing that value yields the same string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.conductor;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if *k == 0 {
                abs.to_string()
            } else {
                let z = if *k == 1 {
                    format!("z({n})")
                } else {
                    format!("z({n})^{k}")
                };
                if abs.is_one() {
                    z
                } else {
                    format!("{abs}*{z}")
                }
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_cyc(s)
    }
}

/// `√d` for an integer `d`, as a cyclotomic number (quadratic Gauss sums).
pub fn sqrt_int(d: i64) -> CycNum {
    assert!(d != 0);
    if d < 0 {
        return &CycNum::i() * &sqrt_int(-d);
    }
    // strip squares
    let mut m = d;
    let mut outside = 1i64;
    let mut p = 2i64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            outside *= p;
        }
        p += 1;
    }
    let mut acc = CycNum::from_int(outside);
    for (p, _) in factor(m as u32) {
        acc = &acc * &sqrt_prime(p as i64);
    }
    acc
}

fn sqrt_prime(p: i64) -> CycNum {
    if p == 2 {
        // ζ8 + ζ8^-1
        return &CycNum::zeta(8) + &CycNum::zeta_pow(8, -1);
    }
    // Gauss sum g = Σ (k/p) ζ_p^k, g² = (-1)^((p-1)/2) p
    let mut g = CycNum::zero();
    for k in 1..p {
        let leg = legendre(k, p);
        g = &g + &CycNum::zeta_pow(p as u32, k).scale(&Rational::from_int(leg));
    }
    if p % 4 == 1 {
        g
    } else {
        // g = i√p
        &g * &CycNum::i().pow(3)
    }
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == p - 1 {
        -1
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z(4) * &z(4), CycNum::from_int(-1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let s = &z(3) + &z(3).pow(2);
        assert_eq!(s, CycNum::from_int(-1));
        assert_eq!(s.conductor(), 1);
    }

    #[test]
    fn division_by_itself() {
        let x = &CycNum::one() + &z(8);
        assert_eq!(cyc_arith(&x, &x, ArithOp::Div).unwrap(), CycNum::one());
        assert_eq!(
            cyc_arith(&x, &CycNum::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_conductor_reduction() {
        let a = CycNum::zeta_pow(6, 2);
        assert_eq!(a.conductor(), 3);
        assert_eq!(a, z(3));
        let b = CycNum::zeta_pow(8, 4);
        assert_eq!(b, CycNum::from_int(-1));
        assert_eq!(b.conductor(), 1);
        let zero = &z(12) - &z(12);
        assert_eq!(zero.conductor(), 1);
        assert!(zero.is_zero());
    }

    #[test]
    fn sums_of_all_roots_vanish() {
        for n in 2..40u32 {
            let mut s = CycNum::zero();
            for k in 0..n {
                s = &s + &CycNum::zeta_pow(n, k as i64);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn square_roots() {
        for d in [2i64, 3, 5, 6, 7, -1, -3, 12, 15] {
            let r = sqrt_int(d);
            assert_eq!(&r * &r, CycNum::from_int(d), "d = {d}");
        }
        assert_eq!(sqrt_int(5).conductor(), 5);
        assert_eq!(sqrt_int(2).conductor(), 8);
    }

    #[test]
    fn real_subfield_elements_descend() {
        // ζ5 + ζ5^4 = (√5 - 1)/2 lives in Q(ζ5), not in Q
        let g = &z(5) + &z(5).pow(4);
        assert_eq!(g.conductor(), 5);
        let expected = &(&sqrt_int(5) - &CycNum::one()) * &CycNum::rational(1, 2);
        assert_eq!(g, expected);
        // ζ20^5 = i
        assert_eq!(CycNum::zeta_pow(20, 5), CycNum::i());
        // ζ15^5 = ζ3
        assert_eq!(CycNum::zeta_pow(15, 5), z(3));
        // ζ12^3 = i, ζ12^4 = ζ3
        assert_eq!(CycNum::zeta_pow(12, 3), CycNum::i());
        assert_eq!(CycNum::zeta_pow(12, 4), z(3));
    }

    #[test]
    fn mixed_conductor_products() {
        // ζ3 · ζ4 = ζ12^7
        assert_eq!(&z(3) * &z(4), CycNum::zeta_pow(12, 7));
        // ζ8^2 = i
        assert_eq!(&z(8) * &z(8), CycNum::i());
    }

    #[test]
    fn inverse_and_galois() {
        let x = &(&z(5) + &CycNum::from_int(2)) + &z(5).pow(3);
        let y = x.inv();
        assert_eq!(&x * &y, CycNum::one());
        assert_eq!(z(7).conj(), z(7).pow(-1));
        assert_eq!(z(12).root_of_unity_order(), Some(12));
        assert_eq!(CycNum::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(CycNum::from_int(2).root_of_unity_order(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycNum::zero().to_string(), "0");
        assert_eq!(CycNum::rational(-3, 4).to_string(), "-3/4");
        assert_eq!(CycNum::i().to_string(), "z(4)");
        assert_eq!((-&CycNum::i()).to_string(), "-z(4)");
        let x = &CycNum::rational(1, 2) + &CycNum::i().scale(&Rational::new(-1, 2));
        assert_eq!(x.to_string(), "1/2 - 1/2*z(4)");
        assert_eq!(sqrt_int(2).to_string(), "z(8) - z(8)^3");
    }
}
