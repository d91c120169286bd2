use super::SparseMatrix;
use crate::field::Field;

/// Rank by Gaussian elimination on a dense copy.
pub fn dense_rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let mut d = m.to_dense();
    if m.rows() > m.cols() {
        d = transpose(&d, m.field());
    }
    let (_, pivots) = rref_in_place(m.field(), &mut d, false);
    pivots.len()
}

/// Reduced row echelon form of a dense row-major matrix, with pivot columns.
pub fn dense_rref<F: Field>(field: &F, mut rows: Vec<Vec<F::El>>) -> (Vec<Vec<F::El>>, Vec<usize>) {
    let (_, pivots) = rref_in_place(field, &mut rows, true);
    rows.truncate(pivots.len());
    (rows, pivots)
}

fn transpose<F: Field>(d: &[Vec<F::El>], field: &F) -> Vec<Vec<F::El>> {
    let cols = d.first().map(|r| r.len()).unwrap_or(0);
    let mut t = vec![vec![field.zero(); d.len()]; cols];
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

fn rref_in_place<F: Field>(field: &F, rows: &mut [Vec<F::El>], reduce_up: bool) -> (usize, Vec<usize>) {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for v in rows[r][c..].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        let start = if reduce_up { 0 } else { r + 1 };
        for i in start..rows.len() {
            if i == r || field.is_zero(&rows[i][c]) {
                continue;
            }
            let f = rows[i][c].clone();
            for (v, pv) in rows[i][c..].iter_mut().zip(&pivot_row[c..]) {
                if !field.is_zero(pv) {
                    let t = field.mul(&f, pv);
                    *v = field.sub(v, &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}
