use std::collections::{BTreeMap, HashMap};

use crate::scalars::{BaseField, Scalar};

/// Incremental sparse Gaussian elimination for `sum_j c_j x_j = rhs`.
///
/// Each stored row has a distinct leading column and coefficient 1 there.
/// Free variables are set to zero when solving, so lower-numbered unknowns
/// are preferred as pivots.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    field: BaseField,
    rows: Vec<(BTreeMap<usize, Scalar>, Scalar)>,
    pivots: HashMap<usize, usize>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(field: BaseField) -> Self {
        SparseSystem {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds one equation; returns false if it made the system inconsistent.
    pub fn push(&mut self, mut row: BTreeMap<usize, Scalar>, mut rhs: Scalar) -> bool {
        row.retain(|_, c| !c.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.pivots.contains_key(k));
            let Some(col) = next else { break };
            let factor = row[&col].clone();
            let (prow, prhs) = &self.rows[self.pivots[&col]];
            for (k, c) in prow {
                let v = row.get(k).cloned().unwrap_or_else(|| self.field.zero()) - &factor * c;
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row.insert(*k, v);
                }
            }
            rhs = rhs - &factor * prhs;
            cursor = col + 1;
        }
        match row.keys().next().copied() {
            None => {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
            }
            Some(lead) => {
                let inv = row[&lead].inv().expect("nonzero pivot");
                for c in row.values_mut() {
                    *c = &*c * &inv;
                }
                rhs = &rhs * &inv;
                self.pivots.insert(lead, self.rows.len());
                self.rows.push((row, rhs));
            }
        }
        !self.inconsistent
    }

    /// A solution with free variables zero, as a sparse map; `None` if inconsistent.
    pub fn solve(&self) -> Option<BTreeMap<usize, Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        let mut x: BTreeMap<usize, Scalar> = BTreeMap::new();
        for col in order {
            let (row, rhs) = &self.rows[self.pivots[&col]];
            let mut v = rhs.clone();
            for (k, c) in row.range(col + 1..) {
                if let Some(xk) = x.get(k) {
                    v = v - c * xk;
                }
            }
            if !v.is_zero() {
                x.insert(col, v);
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        let q = BaseField::Rationals;
        let mut s = SparseSystem::new(q);
        // x0 + x1 = 3, x1 - x2 = 1, x0 + x2 = 2
        s.push(BTreeMap::from([(0, q.from_i64(1)), (1, q.from_i64(1))]), q.from_i64(3));
        s.push(BTreeMap::from([(1, q.from_i64(1)), (2, q.from_i64(-1))]), q.from_i64(1));
        s.push(BTreeMap::from([(0, q.from_i64(1)), (2, q.from_i64(1))]), q.from_i64(2));
        let x = s.solve().unwrap();
        let get = |i| x.get(&i).cloned().unwrap_or(q.zero());
        assert_eq!(&get(0) + &get(1), q.from_i64(3));
        assert_eq!(&get(1) - &get(2), q.from_i64(1));
        assert_eq!(&get(0) + &get(2), q.from_i64(2));
    }

    #[test]
    fn detects_inconsistency() {
        let f = BaseField::prime(3).unwrap();
        let mut s = SparseSystem::new(f);
        s.push(BTreeMap::from([(0, f.one())]), f.one());
        assert!(!s.push(BTreeMap::from([(0, f.from_i64(2))]), f.one()));
        assert!(s.solve().is_none());
    }
}
