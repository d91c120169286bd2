use super::{LinalgError, SparseVec};
use crate::field::{Field, PrimeField};

/// Column-compressed sparse matrix with no stored zeros.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<F::El>,
}

impl<F: Field> PartialEq for SparseMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.col_ptr == other.col_ptr && self.row_idx == other.row_idx && self.vals == other.vals
    }
}

impl<F: Field> SparseMatrix<F> {
    /// An empty matrix with `rows` rows and no columns yet.
    pub fn new(field: F, rows: usize) -> Self {
        assert!(rows <= u32::MAX as usize, "row count exceeds u32 indexing");
        SparseMatrix {
            field,
            rows,
            col_ptr: vec![0],
            row_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let mut m = Self::new(field, rows);
        m.col_ptr.resize(cols + 1, 0);
        m
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::new(field.clone(), n);
        for j in 0..n {
            m.push_column(vec![(j, field.one())]);
        }
        m
    }

    pub fn from_columns(field: F, rows: usize, cols: impl IntoIterator<Item = SparseVec<F::El>>) -> Self {
        let mut m = Self::new(field, rows);
        for c in cols {
            m.push_column(c);
        }
        m
    }

    /// Appends a column; duplicate row indices are summed and zeros dropped.
    pub fn push_column(&mut self, mut entries: SparseVec<F::El>) {
        entries.sort_by_key(|e| e.0);
        let start = self.row_idx.len();
        for (r, v) in entries {
            assert!(r < self.rows, "row index {r} out of range {}", self.rows);
            if self.row_idx.len() > start && *self.row_idx.last().unwrap() as usize == r {
                let last = self.vals.last_mut().unwrap();
                *last = self.field.add(last, &v);
            } else {
                self.row_idx.push(r as u32);
                self.vals.push(v);
            }
        }
        // drop zeros produced by merging
        let mut w = start;
        for i in start..self.row_idx.len() {
            if !self.field.is_zero(&self.vals[i]) {
                self.row_idx.swap(w, i);
                self.vals.swap(w, i);
                w += 1;
            }
        }
        self.row_idx.truncate(w);
        self.vals.truncate(w);
        self.col_ptr.push(w);
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, j: usize) -> (&[u32], &[F::El]) {
        let (a, b) = (self.col_ptr[j], self.col_ptr[j + 1]);
        (&self.row_idx[a..b], &self.vals[a..b])
    }

    pub fn column_iter(&self, j: usize) -> impl Iterator<Item = (usize, &F::El)> {
        let (r, v) = self.column(j);
        r.iter().map(|&i| i as usize).zip(v.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> F::El {
        let (r, v) = self.column(j);
        match r.binary_search(&(i as u32)) {
            Ok(pos) => v[pos].clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        let mut counts = vec![0usize; self.rows + 1];
        for &r in &self.row_idx {
            counts[r as usize + 1] += 1;
        }
        for i in 0..self.rows {
            counts[i + 1] += counts[i];
        }
        let mut next = counts.clone();
        let mut row_idx = vec![0u32; self.nnz()];
        let mut vals: Vec<Option<F::El>> = vec![None; self.nnz()];
        for j in 0..self.cols() {
            for (i, v) in self.column_iter(j) {
                let slot = next[i];
                next[i] += 1;
                row_idx[slot] = j as u32;
                vals[slot] = Some(v.clone());
            }
        }
        SparseMatrix {
            field: self.field.clone(),
            rows: self.cols(),
            col_ptr: counts,
            row_idx,
            vals: vals.into_iter().map(|v| v.expect("filled")).collect(),
        }
    }

    /// `M x` for a sparse vector `x`, as a sorted sparse vector.
    pub fn mul_sparse(&self, x: &SparseVec<F::El>) -> SparseVec<F::El> {
        let mut acc: std::collections::BTreeMap<usize, F::El> = Default::default();
        for (j, xj) in x {
            for (i, a) in self.column_iter(*j) {
                let slot = acc.entry(i).or_insert_with(|| self.field.zero());
                self.field.mul_add_assign(slot, a, xj);
            }
        }
        acc.into_iter().filter(|(_, v)| !self.field.is_zero(v)).collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols(), rhs.rows(), "inner dimensions differ");
        let mut out = SparseMatrix::new(self.field.clone(), self.rows);
        for j in 0..rhs.cols() {
            let col: SparseVec<F::El> = rhs.column_iter(j).map(|(i, v)| (i, v.clone())).collect();
            out.push_column(self.mul_sparse(&col));
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: F, blocks: &[SparseMatrix<F>]) -> SparseMatrix<F> {
        let cols = blocks.first().map(|b| b.cols()).unwrap_or(0);
        let rows: usize = blocks.iter().map(|b| b.rows()).sum();
        let mut out = SparseMatrix::new(field, rows);
        for j in 0..cols {
            let mut col = Vec::new();
            let mut offset = 0;
            for b in blocks {
                assert_eq!(b.cols(), cols, "column counts differ");
                col.extend(b.column_iter(j).map(|(i, v)| (i + offset, v.clone())));
                offset += b.rows();
            }
            out.push_column(col);
        }
        out
    }

    /// Entry-wise image in `F_p`.
    pub fn reduce_mod(&self, fp: &PrimeField) -> Result<SparseMatrix<PrimeField>, LinalgError> {
        let mut out = SparseMatrix::new(*fp, self.rows);
        for j in 0..self.cols() {
            let mut col = Vec::with_capacity(self.col_ptr[j + 1] - self.col_ptr[j]);
            for (i, v) in self.column_iter(j) {
                let r = self.field.residue(v, fp).ok_or(LinalgError::BadPrime(fp.modulus()))?;
                col.push((i, r));
            }
            out.push_column(col);
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<F::El>> {
        let mut d = vec![vec![self.field.zero(); self.cols()]; self.rows];
        for j in 0..self.cols() {
            for (i, v) in self.column_iter(j) {
                d[i][j] = v.clone();
            }
        }
        d
    }

    /// Raw compressed-column view: column pointers, row indices, values.
    pub fn raw_parts(&self) -> (&[usize], &[u32], &[F::El]) {
        (&self.col_ptr, &self.row_idx, &self.vals)
    }
}
