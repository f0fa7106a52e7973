use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, CycNum)>;

/// Incrementally built echelon basis of a subspace, stored as sparse rows
/// keyed by their pivot (leading) index with unit pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(w: &mut BTreeMap<usize, CycNum>, c: &CycNum, row: &SparseVec) {
    for (i, x) in row {
        let t = c * x;
        match w.get_mut(i) {
            Some(v) => {
                let s = &*v - &t;
                if s.is_zero() {
                    w.remove(i);
                } else {
                    *v = s;
                }
            }
            None => {
                w.insert(*i, -t);
            }
        }
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w: BTreeMap<usize, CycNum> = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .cloned()
            .collect();
        let mut cursor = 0usize;
        loop {
            let next = w
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            axpy(&mut w, &c, &self.rows[&k]);
            cursor = k + 1;
        }
        w.into_iter().collect()
    }

    /// Adds `v` to the span; returns its new pivot when it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.first()?.clone();
        let inv = lead.inv();
        let row: SparseVec = r.into_iter().map(|(i, c)| (i, &c * &inv)).collect();
        self.rows.insert(p, row);
        Some(p)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(i, c)| (i, CycNum::from_int(c))).collect()
    }

    #[test]
    fn span_membership() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(&sv(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(e.insert(&sv(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(&sv(&[(0, 1), (2, -1)])), None);
        assert!(e.contains(&sv(&[(0, 2), (2, -2)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
        assert_eq!(e.reduce(&sv(&[(0, 1)])), sv(&[(2, 1)]));
    }
}
