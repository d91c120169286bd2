//! Invariant subspaces of the action modules `Λ^k(I)`, `sl2⊗Λ^k(I)`,
//! `so(n)⊗Λ^k(I)` and `I⊗Λ^k(I)`, and the suite comparing them with the
//! expected dimensions.

mod suite;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Rational, Rationals};
use crate::liealg::{BasisKind, Component, Element, LieAlgebra};
use crate::linalg::{kernel_basis, LinalgError, RowEchelon, SparseMatrix};
use crate::multilinear::{action_matrix, Chain, ModuleSpace, MultilinearError, SpaceKind};

pub use suite::{lemma_suite, LemmaCell, LemmaSuite, MembershipCheck};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("space of dimension {0} is over the budget")]
    Budget(u64),
    #[error("unknown acting algebra `{0}`")]
    UnknownActing(String),
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] crate::liealg::LieError),
}

/// Memory budget for the exact kernel computations.
const KERNEL_CAP: usize = 1 << 30;
const MAX_SPACE: u64 = 200_000;

/// Generator sets of the acting subalgebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Acting {
    /// `so(n) ⊕ sl(2)`
    Hbar,
    So,
    Sl2,
    /// The single generator `a`.
    A,
}

impl FromStr for Acting {
    type Err = InvariantError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hbar" => Ok(Acting::Hbar),
            "so" => Ok(Acting::So),
            "sl2" => Ok(Acting::Sl2),
            "a" => Ok(Acting::A),
            other => Err(InvariantError::UnknownActing(other.to_string())),
        }
    }
}

pub fn acting_generators(alg: &LieAlgebra, acting: Acting) -> Vec<Element> {
    let comps: &[Component] = match acting {
        Acting::Hbar => &[Component::So, Component::Sl2],
        Acting::So => &[Component::So],
        Acting::Sl2 => &[Component::Sl2],
        Acting::A => return alg.element(BasisKind::A).into_iter().collect(),
    };
    alg.component_indices(comps)
        .into_iter()
        .map(|i| Element::basis(alg.dim(), i))
        .collect()
}

/// The four module families, each `W ⊗ Λ^k(I_n)` for some `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleKind {
    #[serde(rename = "wedge")]
    Wedge,
    #[serde(rename = "sl2⊗wedge")]
    Sl2Wedge,
    #[serde(rename = "so⊗wedge")]
    SoWedge,
    #[serde(rename = "I⊗wedge")]
    IdealWedge,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 4] = [ModuleKind::Wedge, ModuleKind::Sl2Wedge, ModuleKind::SoWedge, ModuleKind::IdealWedge];

    pub fn space(self, alg: &Arc<LieAlgebra>, k: usize) -> Result<Arc<ModuleSpace>, InvariantError> {
        const IDEAL: [Component; 2] = [Component::Boosts, Component::Momenta];
        let coeff: &[Component] = match self {
            ModuleKind::Wedge => return Ok(ModuleSpace::wedge_of(alg.clone(), &IDEAL, k)?),
            ModuleKind::Sl2Wedge => &[Component::Sl2],
            ModuleKind::SoWedge => &[Component::So],
            ModuleKind::IdealWedge => &IDEAL,
        };
        Ok(ModuleSpace::coeff_wedge_of(alg.clone(), coeff, &IDEAL, k)?)
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::Wedge => "wedge",
            ModuleKind::Sl2Wedge => "sl2⊗wedge",
            ModuleKind::SoWedge => "so⊗wedge",
            ModuleKind::IdealWedge => "I⊗wedge",
        })
    }
}

impl FromStr for ModuleKind {
    type Err = InvariantError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace("⊗", "x").replace('*', "x").to_lowercase();
        match norm.as_str() {
            "wedge" => Ok(ModuleKind::Wedge),
            "sl2xwedge" => Ok(ModuleKind::Sl2Wedge),
            "soxwedge" => Ok(ModuleKind::SoWedge),
            "ixwedge" | "idealxwedge" => Ok(ModuleKind::IdealWedge),
            _ => Err(InvariantError::UnknownModule(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub module: String,
    pub k: usize,
    /// `(r, s)`: numbers of boost and momentum wedge factors.
    pub bidegree: Option<(usize, usize)>,
    pub dim: usize,
    #[serde(skip)]
    pub basis: Vec<Chain>,
    #[serde(rename = "basis")]
    pub rendered: Vec<String>,
}

impl InvariantReport {
    /// Whether `c` lies in the span of the computed invariants (exact).
    pub fn contains(&self, c: &Chain) -> bool {
        let Some(first) = self.basis.first() else {
            return c.is_zero();
        };
        if c.space() != first.space() {
            return false;
        }
        let cols = first.space().dim() as usize;
        let mut ech = RowEchelon::new(Rationals, cols);
        for b in &self.basis {
            ech.insert(to_vec(b));
        }
        ech.contains(to_vec(c))
    }

    /// Every basis chain is annihilated by every generator.
    pub fn recheck(&self, gens: &[Element]) -> Result<bool, InvariantError> {
        for b in &self.basis {
            for g in gens {
                if !crate::multilinear::act(g, b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn to_vec(c: &Chain) -> Vec<(usize, Rational)> {
    c.entries().iter().map(|(i, v)| (*i as usize, v.clone())).collect()
}

/// Right-action weight of each algebra basis vector under `a`, when `a` acts
/// diagonally.
fn a_weights(alg: &LieAlgebra) -> Option<Vec<Rational>> {
    let a = alg.element(BasisKind::A)?;
    (0..alg.dim())
        .map(|i| {
            let br = alg.bracket(&Element::basis(alg.dim(), i), &a).ok()?;
            match br.terms() {
                [] => Some(Rational::zero()),
                [(j, c)] if *j == i => Some(c.clone()),
                _ => None,
            }
        })
        .collect()
}

fn bidegree_of(space: &ModuleSpace, idx: u64) -> (usize, usize) {
    let slots = space.algebra_indices(idx);
    let off = usize::from(space.kind() == SpaceKind::CoeffWedge);
    let alg = space.algebra();
    let boosts = slots[off..]
        .iter()
        .filter(|&&i| alg.basis()[i].component() == Component::Boosts)
        .count();
    (boosts, slots.len() - off - boosts)
}

/// Kernel of all generator actions on the span of the monomials accepted by
/// `keep`, restricted further to `a`-weight zero when `a` is a generator.
fn kernel_on(
    gens: &[Element],
    space: &Arc<ModuleSpace>,
    keep: &dyn Fn(u64) -> bool,
) -> Result<Vec<Chain>, InvariantError> {
    if space.dim() > MAX_SPACE {
        return Err(InvariantError::Budget(space.dim()));
    }
    let alg = space.algebra();
    let a = alg.element(BasisKind::A);
    let weights = a_weights(alg).filter(|_| a.as_ref().is_some_and(|a| gens.contains(a)));
    let selected: Vec<u64> = (0..space.dim())
        .filter(|&idx| keep(idx))
        .filter(|&idx| match &weights {
            Some(w) => {
                let total: Rational = space.algebra_indices(idx).iter().map(|&i| w[i].clone()).sum();
                total.is_zero()
            }
            None => true,
        })
        .collect();
    if selected.is_empty() {
        return Ok(Vec::new());
    }
    let mut blocks = Vec::new();
    for g in gens {
        let full = action_matrix(g, space)?;
        let mut m = SparseMatrix::new(Rationals, full.rows());
        for &idx in &selected {
            m.push_column(full.column_iter(idx as usize).map(|(i, v)| (i, v.clone())).collect());
        }
        blocks.push(m);
    }
    let stacked = if blocks.is_empty() {
        SparseMatrix::zero(Rationals, 0, selected.len())
    } else {
        SparseMatrix::vstack(Rationals, &blocks)
    };
    let kernel = kernel_basis(&stacked, KERNEL_CAP)?;
    Ok(kernel
        .into_iter()
        .map(|v| Chain::from_entries(space.clone(), v.into_iter().map(|(j, c)| (selected[j], c))))
        .collect())
}

fn report(module: String, space: &ModuleSpace, bidegree: Option<(usize, usize)>, basis: Vec<Chain>) -> InvariantReport {
    InvariantReport {
        module,
        k: space.k(),
        bidegree,
        dim: basis.len(),
        rendered: basis.iter().map(|b| b.render()).collect(),
        basis,
    }
}

fn describe(space: &ModuleSpace) -> String {
    match space.kind() {
        SpaceKind::Wedge => "wedge".to_string(),
        SpaceKind::Tensor => "tensor".to_string(),
        SpaceKind::CoeffWedge => format!("{}-dim⊗wedge", space.coeff().len()),
    }
}

/// Invariants of `space` under the algebra generated by `gens`.
pub fn invariant_subspace(gens: &[Element], space: &Arc<ModuleSpace>) -> Result<InvariantReport, InvariantError> {
    let basis = kernel_on(gens, space, &|_| true)?;
    Ok(report(describe(space), space, None, basis))
}

/// Invariants inside the bidegree-`(r, s)` part of the wedge factor.
pub fn invariant_subspace_bidegree(
    gens: &[Element],
    space: &Arc<ModuleSpace>,
    r: usize,
    s: usize,
) -> Result<InvariantReport, InvariantError> {
    let basis = kernel_on(gens, space, &|idx| bidegree_of(space, idx) == (r, s))?;
    Ok(report(describe(space), space, Some((r, s)), basis))
}

/// Named-module convenience: invariants of `module` in degree `k`.
pub fn module_invariants(alg: &Arc<LieAlgebra>, acting: Acting, module: ModuleKind, k: usize) -> Result<InvariantReport, InvariantError> {
    let space = module.space(alg, k)?;
    let mut r = invariant_subspace(&acting_generators(alg, acting), &space)?;
    r.module = module.to_string();
    Ok(r)
}
