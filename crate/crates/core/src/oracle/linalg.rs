//! Exact row echelon forms over the rationals. Pivots are the leftmost
//! nonzero column; no tolerances anywhere.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

/// Sparse row, entries sorted by column, no zeros.
pub type Row = Vec<(usize, BigRational)>;

/// `target -= factor * row`, both sorted.
fn subtract_scaled(target: &Row, factor: &BigRational, row: &Row) -> Row {
    let mut out = Vec::with_capacity(target.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < row.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = row.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &row[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - factor * &row[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rows in insertion order, each with a distinct pivot normalized to one and
/// zero in every earlier pivot column at the time it was inserted.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    by_pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row][0].0
    }

    /// Reduces `v` against the stored rows until its leading column is not a
    /// pivot or it vanishes.
    pub fn reduce_leading(&self, mut v: Row) -> Row {
        while let Some((col, c)) = v.first().cloned() {
            match self.by_pivot.get(&col) {
                Some(&r) => v = subtract_scaled(&v, &c, &self.rows[r]),
                None => break,
            }
        }
        v
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Row) -> bool {
        let v = self.reduce_leading(v);
        let Some((col, c)) = v.first().cloned() else {
            return false;
        };
        let inv = c.recip();
        let row: Row = v.into_iter().map(|(k, a)| (k, a * &inv)).collect();
        self.by_pivot.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: Row) -> bool {
        // a nonzero vector of the span always leads with a pivot column
        self.reduce_leading(v).is_empty()
    }
}

/// Reduced row echelon form of the span of `rows`.
pub fn rref(rows: impl IntoIterator<Item = Row>) -> Vec<Row> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let mut order: Vec<usize> = (0..ech.rows.len()).collect();
    order.sort_by_key(|&i| ech.rows[i][0].0);
    let mut out: Vec<Row> = order.into_iter().map(|i| ech.rows[i].clone()).collect();
    // back substitution, bottom up
    for i in (0..out.len()).rev() {
        let pivot = out[i][0].0;
        for j in 0..i {
            if let Some((_, a)) = out[j].iter().find(|(c, _)| *c == pivot).cloned() {
                let reduced = subtract_scaled(&out[j], &a, &out[i]);
                out[j] = reduced;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn row(entries: &[(usize, i64)]) -> Row {
        entries.iter().map(|(c, v)| (*c, q(*v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, 1)])));
        assert!(e.insert(row(&[(1, 1), (2, 1)])));
        assert!(!e.insert(row(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[(0, 2), (1, 1), (2, -1)])));
        assert!(!e.contains(row(&[(2, 1)])));
    }

    #[test]
    fn rref_is_canonical() {
        let a = rref(vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)])]);
        let b = rref(vec![
            row(&[(0, 1), (1, 2), (2, 1)]),
            row(&[(0, 2), (1, 1), (2, -1)]),
        ]);
        assert_eq!(a, b);
        assert_eq!(a, vec![row(&[(0, 1), (2, -1)]), row(&[(1, 1), (2, 1)])]);
    }
}
