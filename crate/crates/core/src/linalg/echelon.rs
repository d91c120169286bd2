use std::collections::BTreeMap;

use super::SparseVec;
use crate::field::Field;

/// Incrementally built row echelon basis of a row space.
///
/// Every stored row has leading coefficient 1 at its pivot column. After
/// [`RowEchelon::reduce_fully`] the rows are in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowEchelon<F: Field> {
    field: F,
    cols: usize,
    pivots: BTreeMap<usize, SparseVec<F::El>>,
    entries: usize,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        RowEchelon {
            field,
            cols,
            pivots: BTreeMap::new(),
            entries: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn stored_entries(&self) -> usize {
        self.entries
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduces `row` against the stored pivots, left to right.
    pub fn reduce(&self, row: SparseVec<F::El>) -> SparseVec<F::El> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::El> = BTreeMap::new();
        for (c, v) in row {
            if !f.is_zero(&v) {
                let slot = acc.entry(c).or_insert_with(|| f.zero());
                *slot = f.add(slot, &v);
            }
        }
        let mut out = Vec::new();
        while let Some((c, v)) = acc.pop_first() {
            if f.is_zero(&v) {
                continue;
            }
            match self.pivots.get(&c) {
                Some(prow) => {
                    for (pc, pv) in &prow[1..] {
                        let t = f.mul(&v, pv);
                        let slot = acc.entry(*pc).or_insert_with(|| f.zero());
                        *slot = f.sub(slot, &t);
                    }
                }
                None => out.push((c, v)),
            }
        }
        out
    }

    /// Adds a row; returns whether it enlarged the row space.
    pub fn insert(&mut self, row: SparseVec<F::El>) -> bool {
        let mut r = self.reduce(row);
        let Some((c, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead).expect("nonzero lead");
        for e in r.iter_mut() {
            e.1 = self.field.mul(&e.1, &inv);
        }
        self.entries += r.len();
        self.pivots.insert(c, r);
        true
    }

    /// Clears entries above each pivot, giving reduced echelon form.
    pub fn reduce_fully(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &keys {
            let row = self.pivots.remove(&c).expect("pivot present");
            let (head, tail) = row.split_first().expect("nonempty pivot row");
            let reduced_tail = self.reduce_against_later(tail.to_vec(), c);
            let mut full = vec![head.clone()];
            full.extend(reduced_tail);
            self.pivots.insert(c, full);
        }
        self.entries = self.pivots.values().map(|r| r.len()).sum();
    }

    // pivots after `c` are already reduced, so one pass suffices
    fn reduce_against_later(&self, tail: SparseVec<F::El>, c: usize) -> SparseVec<F::El> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::El> = tail.into_iter().collect();
        let later: Vec<usize> = self.pivots.range(c + 1..).map(|(k, _)| *k).collect();
        for p in later {
            if let Some(v) = acc.remove(&p) {
                if f.is_zero(&v) {
                    continue;
                }
                for (pc, pv) in &self.pivots[&p][1..] {
                    let t = f.mul(&v, pv);
                    let slot = acc.entry(*pc).or_insert_with(|| f.zero());
                    *slot = f.sub(slot, &t);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
    }

    /// Null-space basis of the stored rows; requires reduced echelon form.
    pub fn kernel(&self) -> Vec<SparseVec<F::El>> {
        let f = &self.field;
        // column -> list of (pivot, coefficient) over pivot rows containing it
        let mut by_col: BTreeMap<usize, Vec<(usize, F::El)>> = BTreeMap::new();
        for (&p, row) in &self.pivots {
            for (c, v) in &row[1..] {
                by_col.entry(*c).or_default().push((p, v.clone()));
            }
        }
        (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v: SparseVec<F::El> = by_col
                    .get(&free)
                    .map(|list| list.iter().map(|(p, a)| (*p, f.neg(a))).collect())
                    .unwrap_or_default();
                v.push((free, f.one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: SparseVec<F::El>) -> bool {
        self.reduce(row).is_empty()
    }
}
