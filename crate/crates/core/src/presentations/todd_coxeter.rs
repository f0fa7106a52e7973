//! Coset enumeration over the trivial subgroup, HLT strategy with
//! coincidence processing.

use crate::error::{Error, Result};

use super::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 500_000;

struct Table {
    cols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
}

impl Table {
    fn new(cols: usize, max: usize) -> Self {
        // coset 0 is a sentinel meaning "undefined"; coset 1 is the subgroup
        Table {
            cols,
            rows: vec![0; 2 * cols],
            parent: vec![0, 1],
            max,
        }
    }

    fn len(&self) -> usize {
        self.parent.len() - 1
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.rows[c as usize * self.cols + x] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.len() >= self.max {
            return Err(Error::CosetLimitExceeded(self.max));
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat(0).take(self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (p, q) = (self.rep(a), self.rep(b));
        if p != q {
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            self.parent[hi as usize] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == 0 {
                    continue;
                }
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, 0);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                let nx = self.get(nu, x ^ 1);
                if mx != 0 {
                    self.merge(nu, mx, &mut queue);
                } else if nx != 0 {
                    self.merge(mu, nx, &mut queue);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != 0 {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j] ^ 1) != 0 {
                b = self.get(b, w[j] ^ 1);
                if j == 0 {
                    // whole word scanned backwards
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

/// Order of the group given by `p`, by enumerating the cosets of the
/// trivial subgroup.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<usize> {
    let ngens = p.generators.len();
    if ngens == 0 {
        return Ok(1);
    }
    let cols = 2 * ngens;
    // letter +k ↦ column 2(k−1), −k ↦ 2(k−1)+1
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|&l| {
                    let g = (l.unsigned_abs() - 1) as usize;
                    2 * g + usize::from(l < 0)
                })
                .collect()
        })
        .collect();
    let mut t = Table::new(cols, max_cosets);
    let mut a: u32 = 1;
    while (a as usize) <= t.len() {
        if t.alive(a) {
            for r in &rels {
                if !t.alive(a) {
                    break;
                }
                t.scan_and_fill(a, r)?;
            }
            if t.alive(a) {
                for x in 0..cols {
                    if t.get(a, x) == 0 {
                        t.define(a, x)?;
                    }
                }
            }
        }
        a += 1;
    }
    Ok((1..=t.len() as u32).filter(|&c| t.alive(c)).count())
}
