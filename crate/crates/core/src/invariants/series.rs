//! Dense polynomials and power series with rational coefficients.

use crate::cyclotomic::Rational;

pub type RPoly = Vec<Rational>;

pub fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn mul(a: &[Rational], b: &[Rational]) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = &c[i + j] + &(x * y);
        }
    }
    trim(c)
}

/// `1 − t^d`.
pub fn one_minus(d: usize) -> RPoly {
    let mut p = vec![Rational::ZERO; d + 1];
    p[0] = Rational::ONE;
    p[d] = &p[d] - &Rational::ONE;
    trim(p)
}

pub fn product_one_minus(ds: &[usize]) -> RPoly {
    ds.iter()
        .fold(vec![Rational::ONE], |acc, &d| mul(&acc, &one_minus(d)))
}

/// First `len` coefficients of `num / ∏(1 − t^d)`.
pub fn series(num: &[Rational], denominators: &[usize], len: usize) -> Vec<Rational> {
    let mut s: Vec<Rational> = (0..len)
        .map(|k| num.get(k).cloned().unwrap_or(Rational::ZERO))
        .collect();
    for &d in denominators {
        for k in d..len {
            let prev = s[k - d].clone();
            s[k] = &s[k] + &prev;
        }
    }
    s
}

/// First `len` coefficients of `a · b` for truncated series.
pub fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut c = vec![Rational::ZERO; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            c[i + j] = &c[i + j] + &(x * y);
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = series(&[Rational::ONE], &[2, 3], 8);
        let ints: Vec<i64> = s.iter().map(|r| r.to_f64() as i64).collect();
        assert_eq!(ints, vec![1, 0, 1, 1, 1, 1, 2, 1]);
        assert_eq!(mul(&one_minus(1), &one_minus(1)).len(), 3);
    }
}
