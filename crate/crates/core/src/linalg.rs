//! Incremental row echelon form over the rationals on sparse rows.
//!
//! Columns are plain indices; smaller indices are preferred as pivots, so
//! callers choose the elimination order by numbering columns.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::coeff::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Pivot column → monic row whose smallest column is the pivot.
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        let mut from = Bound::Unbounded;
        loop {
            let next = v.range((from, Bound::Unbounded)).find(|(k, _)| self.rows.contains_key(k));
            let Some((col, c)) = next.map(|(k, c)| (*k, c.clone())) else { break };
            for (k, a) in &self.rows[&col] {
                let e = v.entry(*k).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            from = Bound::Excluded(col);
        }
        v
    }

    /// Adds `v` to the span; returns the new pivot when the rank grows.
    pub fn insert(&mut self, v: SparseRow) -> Option<usize> {
        let mut v = self.reduce(v);
        let (&pivot, lead) = v.iter().next()?;
        if !lead.is_one() {
            let inv = lead.recip();
            for c in v.values_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(pivot, v);
        Some(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(k, c)| (k, rat(c))).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(row(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(e.insert(row(&[(0, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(row(&[(1, 1), (2, -1)])), None);
        assert_eq!(e.rank(), 2);
        let r = e.reduce(row(&[(0, 2), (1, 2), (2, 5)]));
        assert_eq!(r, row(&[(2, 5)]));
    }
}
