//! Monomial enumeration by weight and boundary-column generation over a
//! [`StructureTable`].
//!
//! Monomials are packed into `u64` codes:
//! * tensors: mixed radix over letter positions, first slot most significant;
//! * wedges: bitmask of letter positions (sorted codes of one popcount are in
//!   colexicographic order);
//! * coefficient wedges: `module position << L | mask`.
//!
//! These agree with the index order of the matching `ModuleSpace`.

use std::collections::{BTreeMap, HashSet};

use super::{ComplexError, Convention};
use crate::field::Field;
use crate::liealg::StructureTable;
use crate::linalg::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ShapeKind {
    Tensor,
    Wedge,
    CoeffWedge,
}

/// Weight vectors packed linearly as `Σ w_c · 4096^c`; sums of packed keys
/// are packed sums while every coordinate stays below 2048 in size.
fn pack(w: &[i32]) -> i64 {
    w.iter().rev().fold(0i64, |acc, &x| acc * 4096 + x as i64)
}

pub(crate) struct Shape<'a, F: Field> {
    table: &'a StructureTable<F>,
    kind: ShapeKind,
    letters: Vec<usize>,
    letter_pos: Vec<Option<usize>>,
    module: Vec<usize>,
    module_pos: Vec<Option<usize>>,
    letter_key: Vec<i64>,
    module_key: Vec<i64>,
    conv: Convention,
}

fn positions(d: usize, idx: &[usize]) -> Vec<Option<usize>> {
    let mut pos = vec![None; d];
    for (p, &i) in idx.iter().enumerate() {
        pos[i] = Some(p);
    }
    pos
}

impl<'a, F: Field> Shape<'a, F> {
    /// `letters` must span a subalgebra and `module` a subspace stable under
    /// brackets with the letters.
    pub(crate) fn new(
        table: &'a StructureTable<F>,
        kind: ShapeKind,
        letters: Vec<usize>,
        module: Vec<usize>,
        conv: Convention,
    ) -> Result<Self, ComplexError> {
        let d = table.dim();
        let letter_pos = positions(d, &letters);
        let module_pos = positions(d, &module);
        for &i in &letters {
            for &j in &letters {
                if table.bracket(i, j).iter().any(|(k, _)| letter_pos[*k].is_none()) {
                    return Err(ComplexError::NotClosed);
                }
            }
            for &m in &module {
                if table.bracket(m, i).iter().any(|(k, _)| module_pos[*k].is_none()) {
                    return Err(ComplexError::NotClosed);
                }
            }
        }
        let bits = letters.len() + (usize::BITS - module.len().leading_zeros()) as usize;
        if kind != ShapeKind::Tensor && bits > 63 {
            return Err(ComplexError::TooManyLetters(letters.len()));
        }
        let letter_key = letters.iter().map(|&i| pack(table.weight(i))).collect();
        let module_key = module.iter().map(|&i| pack(table.weight(i))).collect();
        Ok(Shape {
            table,
            kind,
            letters,
            letter_pos,
            module,
            module_pos,
            letter_key,
            module_key,
            conv,
        })
    }

    pub(crate) fn letters(&self) -> usize {
        self.letters.len()
    }

    /// Number of monomials of degree `k`, or `None` past `u64`.
    pub(crate) fn full_dim(&self, k: usize) -> Option<u64> {
        let l = self.letters.len() as u64;
        match self.kind {
            ShapeKind::Tensor => (0..k).try_fold(1u64, |acc, _| acc.checked_mul(l)),
            ShapeKind::Wedge => Some(crate::multilinear::codec::binomial(l, k as u64)),
            ShapeKind::CoeffWedge => {
                (self.module.len() as u64).checked_mul(crate::multilinear::codec::binomial(l, k as u64))
            }
        }
    }

    /// Packed weight sums reachable with `r` letters, for `r = 0..=k`.
    fn tensor_reach(&self, k: usize) -> Vec<HashSet<i64>> {
        let distinct: HashSet<i64> = self.letter_key.iter().copied().collect();
        let mut reach = vec![HashSet::from([0i64])];
        for r in 0..k {
            let next = reach[r].iter().flat_map(|s| distinct.iter().map(move |w| s + w)).collect();
            reach.push(next);
        }
        reach
    }

    /// `reach[start][r]`: sums of `r` distinct letters at positions ≥ `start`.
    fn wedge_reach(&self, k: usize) -> Vec<Vec<HashSet<i64>>> {
        let l = self.letters.len();
        let mut reach = vec![vec![HashSet::new(); k + 1]; l + 1];
        reach[l][0].insert(0);
        for start in (0..l).rev() {
            let w = self.letter_key[start];
            for r in 0..=k {
                let mut set = reach[start + 1][r].clone();
                if r > 0 {
                    set.extend(reach[start + 1][r - 1].iter().map(|s| s + w));
                }
                reach[start][r] = set;
            }
        }
        reach
    }

    /// Sorted codes of the degree-`k` monomials of packed weight `target`
    /// (all monomials when `target` is `None`).
    pub(crate) fn enumerate(&self, k: usize, target: Option<i64>) -> Vec<u64> {
        let mut out = Vec::new();
        match self.kind {
            ShapeKind::Tensor => {
                let reach = self.tensor_reach(k);
                let mut slots = Vec::with_capacity(k);
                self.tensor_dfs(k, target, 0, &reach, &mut slots, &mut out);
            }
            ShapeKind::Wedge => {
                let reach = self.wedge_reach(k);
                self.wedge_dfs(k, target, 0, 0, &reach, 0, &mut out);
                out.sort_unstable();
            }
            ShapeKind::CoeffWedge => {
                let reach = self.wedge_reach(k);
                let l = self.letters.len();
                for m in 0..self.module.len() {
                    let t = target.map(|t| t - self.module_key[m]);
                    let mut part = Vec::new();
                    self.wedge_dfs(k, t, 0, 0, &reach, 0, &mut part);
                    part.sort_unstable();
                    out.extend(part.into_iter().map(|mask| ((m as u64) << l) | mask));
                }
            }
        }
        out
    }

    fn tensor_dfs(
        &self,
        k: usize,
        target: Option<i64>,
        sum: i64,
        reach: &[HashSet<i64>],
        slots: &mut Vec<usize>,
        out: &mut Vec<u64>,
    ) {
        let left = k - slots.len();
        if left == 0 {
            if target.is_none_or(|t| t == sum) {
                let l = self.letters.len() as u64;
                out.push(slots.iter().fold(0u64, |acc, &p| acc * l + p as u64));
            }
            return;
        }
        for p in 0..self.letters.len() {
            let s = sum + self.letter_key[p];
            if let Some(t) = target {
                if !reach[left - 1].contains(&(t - s)) {
                    continue;
                }
            }
            slots.push(p);
            self.tensor_dfs(k, target, s, reach, slots, out);
            slots.pop();
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn wedge_dfs(
        &self,
        left: usize,
        target: Option<i64>,
        sum: i64,
        start: usize,
        reach: &[Vec<HashSet<i64>>],
        mask: u64,
        out: &mut Vec<u64>,
    ) {
        if left == 0 {
            if target.is_none_or(|t| t == sum) {
                out.push(mask);
            }
            return;
        }
        if let Some(t) = target {
            if !reach[start][left].contains(&(t - sum)) {
                return;
            }
        }
        for p in start..self.letters.len() {
            if self.letters.len() - p < left {
                break;
            }
            self.wedge_dfs(left - 1, target, sum + self.letter_key[p], p + 1, reach, mask | 1 << p, out);
        }
    }

    /// Degree-`k` monomials grouped by packed weight.
    pub(crate) fn by_weight(&self, k: usize) -> BTreeMap<i64, Vec<u64>> {
        let mut groups: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
        for code in self.enumerate(k, None) {
            groups.entry(self.weight_of(code, k)).or_default().push(code);
        }
        groups
    }

    pub(crate) fn weight_of(&self, code: u64, k: usize) -> i64 {
        match self.kind {
            ShapeKind::Tensor => self.decode_tensor(code, k).iter().map(|&p| self.letter_key[p]).sum(),
            ShapeKind::Wedge => mask_positions(code).map(|p| self.letter_key[p]).sum(),
            ShapeKind::CoeffWedge => {
                let l = self.letters.len();
                let m = (code >> l) as usize;
                self.module_key[m] + mask_positions(code & ((1u64 << l) - 1)).map(|p| self.letter_key[p]).sum::<i64>()
            }
        }
    }

    fn decode_tensor(&self, mut code: u64, k: usize) -> Vec<usize> {
        let l = self.letters.len() as u64;
        let mut out = vec![0; k];
        for s in out.iter_mut().rev() {
            *s = (code % l) as usize;
            code /= l;
        }
        out
    }

    /// Converts between codes and slot lists of table indices (coefficient
    /// first for coefficient wedges).
    pub(crate) fn code_of(&self, slots: &[usize]) -> Option<u64> {
        match self.kind {
            ShapeKind::Tensor => {
                let l = self.letters.len() as u64;
                slots
                    .iter()
                    .try_fold(0u64, |acc, &i| Some(acc * l + self.letter_pos[i]? as u64))
            }
            ShapeKind::Wedge => slots.iter().try_fold(0u64, |acc, &i| Some(acc | 1 << self.letter_pos[i]?)),
            ShapeKind::CoeffWedge => {
                let m = self.module_pos[*slots.first()?]? as u64;
                let mask = slots[1..]
                    .iter()
                    .try_fold(0u64, |acc, &i| Some(acc | 1 << self.letter_pos[i]?))?;
                Some(m << self.letters.len() | mask)
            }
        }
    }

    pub(crate) fn slots_of(&self, code: u64, k: usize) -> Vec<usize> {
        match self.kind {
            ShapeKind::Tensor => self.decode_tensor(code, k).into_iter().map(|p| self.letters[p]).collect(),
            ShapeKind::Wedge => mask_positions(code).map(|p| self.letters[p]).collect(),
            ShapeKind::CoeffWedge => {
                let l = self.letters.len();
                let mut out = vec![self.module[(code >> l) as usize]];
                out.extend(mask_positions(code & ((1u64 << l) - 1)).map(|p| self.letters[p]));
                out
            }
        }
    }

    /// Appends the boundary of the degree-`k` monomial `code` to `out`
    /// (unmerged; duplicates possible).
    pub(crate) fn boundary(&self, code: u64, k: usize, out: &mut Vec<(u64, F::El)>) {
        let f = self.table.field();
        match self.kind {
            ShapeKind::Tensor => {
                let slots = self.decode_tensor(code, k);
                let l = self.letters.len() as u64;
                for j in 1..k {
                    // (-1)^(j+1) for zero-based j
                    let negative = j % 2 == 0;
                    for i in 0..j {
                        for (t, c) in self.table.bracket(self.letters[slots[i]], self.letters[slots[j]]) {
                            let p = self.letter_pos[*t].expect("closed");
                            let mut acc = 0u64;
                            for (s, &q) in slots.iter().enumerate() {
                                if s == j {
                                    continue;
                                }
                                acc = acc * l + if s == i { p } else { q } as u64;
                            }
                            out.push((acc, if negative { f.neg(c) } else { c.clone() }));
                        }
                    }
                }
            }
            ShapeKind::Wedge => self.wedge_part(code, 0, out),
            ShapeKind::CoeffWedge => {
                let l = self.letters.len();
                let m = (code >> l) as usize;
                let mask = code & ((1u64 << l) - 1);
                for (j, p) in mask_positions(mask).enumerate() {
                    let negative = j % 2 == 0;
                    let (x, y) = if self.conv.reverse_coefficient_bracket {
                        (self.letters[p], self.module[m])
                    } else {
                        (self.module[m], self.letters[p])
                    };
                    let rest = mask & !(1u64 << p);
                    for (t, c) in self.table.bracket(x, y) {
                        let mp = self.module_pos[*t].expect("stable module") as u64;
                        out.push((mp << l | rest, if negative { f.neg(c) } else { c.clone() }));
                    }
                }
                self.wedge_part(mask, (m as u64) << l, out);
            }
        }
    }

    /// `Σ_{i<j} (-1)^{i+j-1} [g_i,g_j]∧…` on a bitmask, with `high` or-ed in.
    fn wedge_part(&self, mask: u64, high: u64, out: &mut Vec<(u64, F::El)>) {
        let f = self.table.field();
        let pos: Vec<usize> = mask_positions(mask).collect();
        for j in 0..pos.len() {
            for i in 0..j {
                let br = self.table.bracket(self.letters[pos[i]], self.letters[pos[j]]);
                if br.is_empty() {
                    continue;
                }
                let rest = mask & !(1u64 << pos[i]) & !(1u64 << pos[j]);
                // one-based i+j-1 equals zero-based i+j+1
                let base_negative = (i + j + 1) % 2 == 1;
                for (t, c) in br {
                    let p = self.letter_pos[*t].expect("closed");
                    if rest >> p & 1 == 1 {
                        continue;
                    }
                    let moves = (rest & ((1u64 << p) - 1)).count_ones() as usize;
                    let negative = base_negative ^ (moves % 2 == 1) ^ self.conv.flip_second_sum;
                    out.push((high | rest | 1 << p, if negative { f.neg(c) } else { c.clone() }));
                }
            }
        }
    }

    /// Matrix of `d_k` from the monomials `domain` (degree `k`) to `codomain`
    /// (degree `k-1`); both sorted.
    pub(crate) fn assemble(&self, k: usize, domain: &[u64], codomain: &[u64]) -> SparseMatrix<F> {
        let f = self.table.field().clone();
        let mut m = SparseMatrix::new(f, codomain.len());
        let mut buf = Vec::new();
        for &code in domain {
            buf.clear();
            if k > 0 {
                self.boundary(code, k, &mut buf);
            }
            let col = buf
                .drain(..)
                .map(|(c, v)| {
                    let row = codomain.binary_search(&c).expect("boundary preserves weight");
                    (row, v)
                })
                .collect();
            m.push_column(col);
        }
        m
    }
}

pub(crate) fn mask_positions(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let p = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(p)
        }
    })
}
