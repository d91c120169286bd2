use std::sync::Arc;

use super::codec::{binomial, checked_power, colex_rank, colex_unrank, tuple_code, tuple_decode};
use super::MultilinearError;
use crate::liealg::{Component, LieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `Λ^k(V)`
    Wedge,
    /// `V^{⊗k}`
    Tensor,
    /// `W ⊗ Λ^k(V)`
    CoeffWedge,
}

/// An enumerated basis of `Λ^k(V)`, `V^{⊗k}` or `W ⊗ Λ^k(V)`, where `V` and
/// `W` are spans of basis vectors of one algebra.
///
/// Monomials are addressed by *positions* into `base` (and `coeff`); a
/// coefficient-wedge monomial is `[w, v_1, …, v_k]` with `w` a position in
/// `coeff`. Index layout of `W ⊗ Λ^k`: `w · C(dim V, k) + colex(v)`.
#[derive(Clone, Debug)]
pub struct ModuleSpace {
    algebra: Arc<LieAlgebra>,
    kind: SpaceKind,
    coeff: Vec<usize>,
    base: Vec<usize>,
    k: usize,
    dim: u64,
    base_pos: Vec<Option<usize>>,
    coeff_pos: Vec<Option<usize>>,
}

impl PartialEq for ModuleSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.k == other.k
            && self.base == other.base
            && self.coeff == other.coeff
            && self.algebra.name() == other.algebra.name()
            && self.algebra.n() == other.algebra.n()
    }
}

fn positions(dim: usize, idx: &[usize]) -> Result<Vec<Option<usize>>, MultilinearError> {
    let mut pos = vec![None; dim];
    for (p, &i) in idx.iter().enumerate() {
        if i >= dim || pos[i].is_some() {
            return Err(MultilinearError::BadBasisSubset);
        }
        pos[i] = Some(p);
    }
    if idx.windows(2).any(|w| w[0] > w[1]) {
        return Err(MultilinearError::BadBasisSubset);
    }
    Ok(pos)
}

impl ModuleSpace {
    fn build(
        algebra: Arc<LieAlgebra>,
        kind: SpaceKind,
        coeff: Vec<usize>,
        base: Vec<usize>,
        k: usize,
    ) -> Result<Arc<Self>, MultilinearError> {
        let d = algebra.dim();
        let base_pos = positions(d, &base)?;
        let coeff_pos = positions(d, &coeff)?;
        let dim = match kind {
            SpaceKind::Wedge => Some(binomial(base.len() as u64, k as u64)),
            SpaceKind::Tensor => checked_power(base.len(), k),
            SpaceKind::CoeffWedge => {
                (coeff.len() as u64).checked_mul(binomial(base.len() as u64, k as u64))
            }
        }
        .filter(|&d| d < u64::MAX)
        .ok_or(MultilinearError::TooLarge)?;
        Ok(Arc::new(ModuleSpace {
            algebra,
            kind,
            coeff,
            base,
            k,
            dim,
            base_pos,
            coeff_pos,
        }))
    }

    /// `Λ^k` of the span of the algebra basis vectors `base` (sorted).
    pub fn wedge(algebra: Arc<LieAlgebra>, base: Vec<usize>, k: usize) -> Result<Arc<Self>, MultilinearError> {
        Self::build(algebra, SpaceKind::Wedge, Vec::new(), base, k)
    }

    pub fn tensor(algebra: Arc<LieAlgebra>, base: Vec<usize>, k: usize) -> Result<Arc<Self>, MultilinearError> {
        Self::build(algebra, SpaceKind::Tensor, Vec::new(), base, k)
    }

    pub fn coeff_wedge(
        algebra: Arc<LieAlgebra>,
        coeff: Vec<usize>,
        base: Vec<usize>,
        k: usize,
    ) -> Result<Arc<Self>, MultilinearError> {
        if coeff.is_empty() {
            return Err(MultilinearError::BadBasisSubset);
        }
        Self::build(algebra, SpaceKind::CoeffWedge, coeff, base, k)
    }

    /// Wedge of the components' span, e.g. `Λ^k(I_n)`.
    pub fn wedge_of(algebra: Arc<LieAlgebra>, comps: &[Component], k: usize) -> Result<Arc<Self>, MultilinearError> {
        let base = algebra.component_indices(comps);
        Self::wedge(algebra, base, k)
    }

    pub fn tensor_of(algebra: Arc<LieAlgebra>, comps: &[Component], k: usize) -> Result<Arc<Self>, MultilinearError> {
        let base = algebra.component_indices(comps);
        Self::tensor(algebra, base, k)
    }

    pub fn coeff_wedge_of(
        algebra: Arc<LieAlgebra>,
        coeff: &[Component],
        base: &[Component],
        k: usize,
    ) -> Result<Arc<Self>, MultilinearError> {
        let c = algebra.component_indices(coeff);
        let b = algebra.component_indices(base);
        Self::coeff_wedge(algebra, c, b, k)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Number of wedge or tensor factors (the coefficient slot not counted).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn coeff(&self) -> &[usize] {
        &self.coeff
    }

    /// Position of algebra basis vector `i` in `base`.
    pub fn base_position(&self, i: usize) -> Option<usize> {
        self.base_pos.get(i).copied().flatten()
    }

    pub fn coeff_position(&self, i: usize) -> Option<usize> {
        self.coeff_pos.get(i).copied().flatten()
    }

    /// Number of slots in a monomial: `k`, plus one for the coefficient.
    pub fn slots(&self) -> usize {
        self.k + usize::from(self.kind == SpaceKind::CoeffWedge)
    }

    /// Index of a canonical monomial given by positions (wedge parts strictly
    /// increasing).
    pub fn encode(&self, m: &[usize]) -> u64 {
        debug_assert_eq!(m.len(), self.slots());
        match self.kind {
            SpaceKind::Wedge => colex_rank(m),
            SpaceKind::Tensor => tuple_code(m, self.base.len()),
            SpaceKind::CoeffWedge => {
                let block = binomial(self.base.len() as u64, self.k as u64);
                m[0] as u64 * block + colex_rank(&m[1..])
            }
        }
    }

    pub fn decode(&self, idx: u64) -> Vec<usize> {
        debug_assert!(idx < self.dim);
        match self.kind {
            SpaceKind::Wedge => colex_unrank(idx, self.k),
            SpaceKind::Tensor => tuple_decode(idx, self.base.len(), self.k),
            SpaceKind::CoeffWedge => {
                let block = binomial(self.base.len() as u64, self.k as u64);
                let mut out = vec![(idx / block) as usize];
                out.extend(colex_unrank(idx % block, self.k));
                out
            }
        }
    }

    /// Algebra basis indices of the monomial's slots.
    pub fn algebra_indices(&self, idx: u64) -> Vec<usize> {
        let m = self.decode(idx);
        let off = usize::from(self.kind == SpaceKind::CoeffWedge);
        m.iter()
            .enumerate()
            .map(|(s, &p)| if s < off { self.coeff[p] } else { self.base[p] })
            .collect()
    }

    /// Labels of the monomial's slots, e.g. `["X12", "y1", "y4"]`.
    pub fn labels(&self, idx: u64) -> Vec<String> {
        self.algebra_indices(idx)
            .into_iter()
            .map(|i| self.algebra.label(i))
            .collect()
    }

    pub fn render_monomial(&self, idx: u64) -> String {
        let labels = self.labels(idx);
        match self.kind {
            SpaceKind::Wedge => labels.join("∧"),
            SpaceKind::Tensor => labels.join("⊗"),
            SpaceKind::CoeffWedge => {
                if self.k == 0 {
                    labels[0].clone()
                } else {
                    format!("{}⊗{}", labels[0], labels[1..].join("∧"))
                }
            }
        }
    }
}
