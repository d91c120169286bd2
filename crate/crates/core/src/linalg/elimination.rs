use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{LinalgError, SparseMatrix};
use crate::field::Field;

/// Outcome of a sparse elimination run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElimStats {
    pub rank: usize,
    /// Largest number of simultaneously stored entries.
    pub peak_entries: usize,
}

/// Rank by right-looking sparse elimination.
///
/// The vectors being eliminated are the items of the longer side of the
/// matrix (typically boundary columns, which are short). At each step the
/// shortest remaining vector is the pivot vector, and within it the
/// coordinate held by the fewest other vectors is the pivot coordinate: the
/// Markowitz product `(r - 1)(c - 1)` is minimised along the pivot vector.
pub fn sparse_rank<F: Field>(m: &SparseMatrix<F>, cap: usize) -> Result<ElimStats, LinalgError> {
    let source = if m.cols() >= m.rows() { m.clone() } else { m.transpose() };
    let f = source.field().clone();
    let coords = source.rows();
    let mut vecs: Vec<Vec<(u32, F::El)>> = (0..source.cols())
        .map(|j| source.column_iter(j).map(|(i, v)| (i as u32, v.clone())).collect())
        .collect();
    drop(source);

    let bytes_per_entry = 4 + f.el_bytes();
    let mut holders: Vec<Vec<u32>> = vec![Vec::new(); coords];
    let mut count = vec![0u32; coords];
    let mut entries = 0usize;
    let mut heap = BinaryHeap::new();
    for (id, v) in vecs.iter().enumerate() {
        for (c, _) in v {
            holders[*c as usize].push(id as u32);
            count[*c as usize] += 1;
        }
        entries += v.len();
        if !v.is_empty() {
            heap.push(Reverse((v.len(), id)));
        }
    }
    let mut peak = entries;
    let mut done = vec![false; vecs.len()];
    let mut rank = 0;
    let mut scratch: Vec<(u32, F::El)> = Vec::new();

    while let Some(Reverse((len, id))) = heap.pop() {
        if done[id] || vecs[id].len() != len || len == 0 {
            continue;
        }
        done[id] = true;
        let pivot = std::mem::take(&mut vecs[id]);
        let (ppos, _) = pivot
            .iter()
            .enumerate()
            .min_by_key(|(_, (c, _))| count[*c as usize])
            .expect("nonempty pivot");
        let pc = pivot[ppos].0;
        let pinv = f.inv(&pivot[ppos].1).expect("nonzero pivot");
        for (c, _) in &pivot {
            count[*c as usize] -= 1;
        }
        entries -= pivot.len();
        rank += 1;

        let targets = std::mem::take(&mut holders[pc as usize]);
        for t in targets {
            let t = t as usize;
            if done[t] {
                continue;
            }
            let Ok(tpos) = vecs[t].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = f.mul(&vecs[t][tpos].1, &pinv);
            let old = std::mem::take(&mut vecs[t]);
            entries -= old.len();
            // old - factor * pivot, merged by coordinate
            scratch.clear();
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot.len() {
                let take_old = b == pivot.len() || (a < old.len() && old[a].0 < pivot[b].0);
                let take_piv = a == old.len() || (b < pivot.len() && pivot[b].0 < old[a].0);
                if take_old {
                    scratch.push(old[a].clone());
                    a += 1;
                } else if take_piv {
                    let (c, pv) = &pivot[b];
                    let v = f.neg(&f.mul(&factor, pv));
                    count[*c as usize] += 1;
                    holders[*c as usize].push(t as u32);
                    scratch.push((*c, v));
                    b += 1;
                } else {
                    let (c, ov) = &old[a];
                    let v = f.sub(ov, &f.mul(&factor, &pivot[b].1));
                    if f.is_zero(&v) {
                        count[*c as usize] -= 1;
                    } else {
                        scratch.push((*c, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            entries += scratch.len();
            vecs[t] = std::mem::take(&mut scratch);
            if !vecs[t].is_empty() {
                heap.push(Reverse((vecs[t].len(), t)));
            }
        }
        peak = peak.max(entries);
        if entries.saturating_mul(bytes_per_entry) > cap {
            return Err(LinalgError::MemoryCap {
                cap,
                pivots: rank,
                entries,
            });
        }
    }
    Ok(ElimStats { rank, peak_entries: peak })
}
