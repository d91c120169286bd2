//! Black-box rank over `F_p` from matrix-vector products only.
//!
//! For `A` of shape `m × N` with `m ≤ N`, the symmetric operator
//! `B = D1 A D2 Aᵀ D1` (random nonsingular diagonals `D1`, `D2`) has, with
//! high probability over a large field, rank equal to `rank A` and a minimal
//! polynomial of degree `rank + 1` when singular. The minimal polynomial is
//! recovered from the scalar sequence `uᵀ Bⁱ v` by Berlekamp-Massey.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseMatrix;
use crate::field::{Field, PrimeField};

/// Consecutive zero discrepancies required before stopping early.
const SETTLE: usize = 24;

struct Compressed {
    ptr: Vec<usize>,
    idx: Vec<u32>,
    val: Vec<u64>,
}

impl Compressed {
    fn from_matrix(m: &SparseMatrix<PrimeField>) -> Self {
        let (ptr, idx, val) = m.raw_parts();
        Compressed {
            ptr: ptr.to_vec(),
            idx: idx.to_vec(),
            val: val.to_vec(),
        }
    }

    /// `out[j] = Σ_i M[i, j] x[i]` over the stored columns.
    fn gather(&self, fp: &PrimeField, x: &[u64], out: &mut [u64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for k in self.ptr[j]..self.ptr[j + 1] {
                acc += (self.val[k] * x[self.idx[k] as usize]) as u128;
            }
            *o = fp.reduce_wide(acc);
        }
    }
}

/// Rank of `m` over its prime field; Monte-Carlo, never above the true rank
/// except with negligible probability.
pub fn blackbox_rank(m: &SparseMatrix<PrimeField>, seed: u64) -> usize {
    let fp = *m.field();
    if m.nnz() == 0 {
        return 0;
    }
    // columns of `cols` are the short side's coordinates' duals
    let (short, long) = if m.rows() <= m.cols() { (m.transpose(), m.clone()) } else { (m.clone(), m.transpose()) };
    // `long` has `small` rows and `large` columns; `short` is its transpose.
    let small = long.rows();
    let large = long.cols();
    let by_col = Compressed::from_matrix(&long); // gives Aᵀ x
    let by_row = Compressed::from_matrix(&short); // gives A y

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fp.modulus());
    let d1: Vec<u64> = (0..small).map(|_| fp.random_nonzero(&mut rng)).collect();
    let d2: Vec<u64> = (0..large).map(|_| fp.random_nonzero(&mut rng)).collect();
    let u: Vec<u64> = (0..small).map(|_| rng.gen_range(0..fp.modulus())).collect();
    let mut v: Vec<u64> = (0..small).map(|_| rng.gen_range(0..fp.modulus())).collect();

    let mut tmp_small = vec![0u64; small];
    let mut tmp_large = vec![0u64; large];
    let mut bm = BerlekampMassey::new(fp);
    let limit = 2 * small + 2 * SETTLE;
    for _ in 0..limit {
        let s = dot(&fp, &u, &v);
        bm.push(s);
        if bm.settled(SETTLE) {
            break;
        }
        // v <- D1 A D2 Aᵀ D1 v
        for (t, (a, b)) in tmp_small.iter_mut().zip(v.iter().zip(&d1)) {
            *t = a * b % fp.modulus();
        }
        by_col.gather(&fp, &tmp_small, &mut tmp_large);
        for (t, d) in tmp_large.iter_mut().zip(&d2) {
            *t = *t * d % fp.modulus();
        }
        by_row.gather(&fp, &tmp_large, &mut tmp_small);
        for (o, (a, b)) in v.iter_mut().zip(tmp_small.iter().zip(&d1)) {
            *o = a * b % fp.modulus();
        }
    }
    let generator = bm.generator();
    rank_from_minpoly(&generator)
}

fn dot(fp: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
    let mut acc: u128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc += (x * y) as u128;
    }
    fp.reduce_wide(acc)
}

/// Coefficients low-to-high of a monic minimal polynomial; the rank is its
/// degree minus one when `x` divides it.
fn rank_from_minpoly(poly: &[u64]) -> usize {
    let degree = poly.len() - 1;
    if poly[0] == 0 {
        degree - 1
    } else {
        degree
    }
}

/// Streaming Berlekamp-Massey over `F_p`.
struct BerlekampMassey {
    fp: PrimeField,
    seq: Vec<u64>,
    conn: Vec<u64>,
    prev: Vec<u64>,
    len: usize,
    shift: usize,
    prev_disc: u64,
    zero_run: usize,
}

impl BerlekampMassey {
    fn new(fp: PrimeField) -> Self {
        BerlekampMassey {
            fp,
            seq: Vec::new(),
            conn: vec![1],
            prev: vec![1],
            len: 0,
            shift: 1,
            prev_disc: 1,
            zero_run: 0,
        }
    }

    fn push(&mut self, s: u64) {
        let fp = self.fp;
        self.seq.push(s);
        let n = self.seq.len() - 1;
        let mut acc: u128 = 0;
        for (i, c) in self.conn.iter().enumerate().take(self.len + 1) {
            acc += (c * self.seq[n - i]) as u128;
        }
        let disc = fp.reduce_wide(acc);
        if disc == 0 {
            self.shift += 1;
            self.zero_run += 1;
            return;
        }
        self.zero_run = 0;
        let coef = fp.mul(&disc, &fp.inv(&self.prev_disc).expect("nonzero"));
        let needed = self.prev.len() + self.shift;
        let snapshot = (2 * self.len <= n).then(|| self.conn.clone());
        if self.conn.len() < needed {
            self.conn.resize(needed, 0);
        }
        for (i, b) in self.prev.iter().enumerate() {
            let t = fp.mul(&coef, b);
            let slot = &mut self.conn[i + self.shift];
            *slot = fp.sub(slot, &t);
        }
        if let Some(old) = snapshot {
            self.len = n + 1 - self.len;
            self.prev = old;
            self.prev_disc = disc;
            self.shift = 1;
        } else {
            self.shift += 1;
        }
    }

    fn settled(&self, run: usize) -> bool {
        self.zero_run >= run && self.seq.len() >= 2 * self.len + run
    }

    /// Minimal generator `x^L C(1/x)`, coefficients low-to-high.
    fn generator(&self) -> Vec<u64> {
        let mut c = self.conn.clone();
        c.resize(self.len + 1, 0);
        c.reverse();
        c
    }
}

/// Minimal linear generator of a sequence, coefficients low-to-high and monic.
pub fn berlekamp_massey(fp: PrimeField, seq: &[u64]) -> Vec<u64> {
    let mut bm = BerlekampMassey::new(fp);
    for &s in seq {
        bm.push(s);
    }
    bm.generator()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_massey_fibonacci() {
        let fp = PrimeField::new(1_000_000_007);
        let mut seq = vec![0u64, 1];
        for i in 2..20 {
            let next = fp.add(&seq[i - 1], &seq[i - 2]);
            seq.push(next);
        }
        // x^2 - x - 1
        let g = berlekamp_massey(fp, &seq);
        assert_eq!(g, vec![fp.neg(&1), fp.neg(&1), 1]);
    }

    #[test]
    fn blackbox_rank_of_structured_matrix() {
        let fp = PrimeField::new(1_000_000_009);
        // 30 x 200 with rank 20: rows 20..30 repeat rows 0..10
        let mut m = SparseMatrix::new(fp, 30);
        for j in 0..200u64 {
            let mut col = Vec::new();
            for i in 0..20u64 {
                if (i * 7 + j * 13) % 5 == 0 {
                    col.push((i as usize, (i + j + 1) % 11 + 1));
                }
            }
            let copies: Vec<(usize, u64)> = col.iter().filter(|e| e.0 < 10).map(|e| (e.0 + 20, e.1)).collect();
            col.extend(copies);
            m.push_column(col);
        }
        let exact = crate::linalg::dense_rank(&m);
        assert_eq!(exact, 20);
        for seed in 0..5 {
            assert_eq!(blackbox_rank(&m, seed), exact);
            assert_eq!(blackbox_rank(&m.transpose(), seed), exact);
        }
    }
}
