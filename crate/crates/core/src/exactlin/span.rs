use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::Rational;
use super::sparse::SparseVec;

#[derive(Clone, Debug)]
struct Row {
    vector: SparseVec,
    coords: SparseVec,
}

/// Incrementally maintained echelon basis of a subspace.
///
/// Every stored row has a unit leading entry at its pivot, and remembers how
/// it is built from the vectors passed to [`Span::insert`] (numbered in
/// insertion order, dependent insertions included).
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(vs: I) -> Self {
        let mut s = Span::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the stored rows. Returns the remainder (zero at
    /// every pivot) and the coefficients `c` with `v = sum c_k inserted_k + remainder`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut coords = SparseVec::new();
        for (&p, row) in &self.rows {
            let c = rem.get(p);
            if !c.is_zero() {
                rem.axpy(&-&c, &row.vector);
                coords.axpy(&c, &row.coords);
            }
        }
        (rem, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, coords) = self.reduce(v);
        rem.is_zero().then_some(coords)
    }

    /// Adds `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, coords) = self.reduce(v);
        let Some((p, lead)) = rem.leading() else {
            return false;
        };
        let inv = lead.recip();
        let mut row_coords = SparseVec::unit(id);
        row_coords.axpy(&Rational::from_integer((-1).into()), &coords);
        let row = Row {
            vector: rem.scaled(&inv),
            coords: row_coords.scaled(&inv),
        };
        self.rows.insert(p, row);
        true
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().map(|r| r.vector.clone()).collect()
    }
}

/// Keeps the vectors of `candidates` that are independent modulo `base`
/// and of the previously kept ones, in order.
pub fn extend_basis(base: &Span, candidates: &[SparseVec]) -> Vec<SparseVec> {
    let mut span = base.clone();
    candidates
        .iter()
        .filter(|v| span.insert(v))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;

    #[test]
    fn expresses_in_inserted_coordinates() {
        let a = SparseVec::from_dense(&[int(1), int(1), int(0)]);
        let b = SparseVec::from_dense(&[int(0), int(1), int(1)]);
        let mut s = Span::new();
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&(&a + &b)));
        let target = SparseVec::from_dense(&[int(2), int(-1), int(-3)]);
        let c = s.express(&target).unwrap();
        assert_eq!(c, SparseVec::from_dense(&[int(2), int(-3)]));
        assert!(s.express(&SparseVec::unit(0)).is_none());
    }
}
