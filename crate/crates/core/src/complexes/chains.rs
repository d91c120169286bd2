//! Boundary matrices on full chain spaces and boundaries of explicit chains.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::graded::{Shape, ShapeKind};
use super::{ComplexError, ComplexSpec, Convention, Flavor, DEFAULT_BUDGET};
use crate::field::{Field, Rational, Rationals};
use crate::liealg::{LieAlgebra, StructureTable};
use crate::linalg::{rank, RankStrategy, SparseMatrix};
use crate::multilinear::{Chain, ModuleSpace, SpaceKind};

fn full_matrix(shape: &Shape<'_, Rationals>, k: usize, budget: u64) -> Result<SparseMatrix<Rationals>, ComplexError> {
    let columns = shape.full_dim(k).unwrap_or(u64::MAX);
    if columns > budget {
        return Err(ComplexError::Budget { k, columns, budget });
    }
    let domain = shape.enumerate(k, None);
    let codomain = if k == 0 { Vec::new() } else { shape.enumerate(k - 1, None) };
    Ok(shape.assemble(k, &domain, &codomain))
}

/// `d_k : L^{⊗k} → L^{⊗(k-1)}` in the tensor basis order of
/// `ModuleSpace::tensor` over all of `L`.
pub fn loday_boundary(alg: &LieAlgebra, k: usize) -> Result<SparseMatrix<Rationals>, ComplexError> {
    if k == 0 {
        return Err(ComplexError::Degree(0));
    }
    let table = StructureTable::rational(alg);
    let shape = Shape::new(&table, ShapeKind::Tensor, (0..alg.dim()).collect(), Vec::new(), Convention::P)?;
    full_matrix(&shape, k, DEFAULT_BUDGET)
}

/// `d_k` of a CE complex on the whole chain space (no weight reduction), in
/// the index order of the matching `ModuleSpace`.
pub fn ce_boundary(spec: &ComplexSpec, k: usize, conv: Convention) -> Result<SparseMatrix<Rationals>, ComplexError> {
    if spec.flavor == Flavor::Loday {
        return loday_boundary(&spec.algebra, k);
    }
    let (letters, module) = spec.letters_and_module()?;
    if k == 0 || k > letters.len() {
        return Err(ComplexError::Degree(k));
    }
    let table = StructureTable::rational(&spec.algebra);
    let shape = Shape::new(&table, spec.shape_kind(), letters, module, conv)?;
    full_matrix(&shape, k, spec.budget_columns)
}

/// Applies a shape's boundary to a chain whose monomials the shape encodes,
/// collecting the result into `target`.
fn apply(shape: &Shape<'_, Rationals>, w: &Chain, target: Arc<ModuleSpace>) -> Result<Chain, ComplexError> {
    let k = w.space().k();
    let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
    let mut buf = Vec::new();
    for (idx, c) in w.entries() {
        let code = shape
            .code_of(&w.space().algebra_indices(*idx))
            .ok_or(ComplexError::WrongSpace)?;
        buf.clear();
        shape.boundary(code, k, &mut buf);
        for (code, v) in buf.drain(..) {
            *acc.entry(code).or_insert_with(|| Rationals.zero()) += v * c;
        }
    }
    let mut out = Chain::zero(target);
    for (code, v) in acc {
        out.add_term(&shape.slots_of(code, k - 1), v)?;
    }
    Ok(out)
}

/// Loday boundary of a chain in `V^{⊗k}`, for `V` a subalgebra.
pub fn loday_boundary_chain(w: &Chain) -> Result<Chain, ComplexError> {
    let space = w.space();
    if space.kind() != SpaceKind::Tensor || space.k() == 0 {
        return Err(ComplexError::WrongSpace);
    }
    let alg = space.algebra();
    let table = StructureTable::rational(alg);
    let shape = Shape::new(&table, ShapeKind::Tensor, space.base().to_vec(), Vec::new(), Convention::P)?;
    let target = ModuleSpace::tensor(alg.clone(), space.base().to_vec(), space.k() - 1)?;
    apply(&shape, w, target)
}

/// CE boundary of a chain in `Λ^k(V)` (trivial coefficients) or in
/// `W⊗Λ^k(V)`; in the latter case `W` is enlarged to the whole algebra, so
/// the result lives in `g⊗Λ^{k-1}(V)`.
pub fn ce_boundary_chain(w: &Chain, conv: Convention) -> Result<Chain, ComplexError> {
    let space = w.space();
    if space.k() == 0 {
        return Err(ComplexError::WrongSpace);
    }
    let alg = space.algebra();
    let table = StructureTable::rational(alg);
    let base = space.base().to_vec();
    let (shape, target) = match space.kind() {
        SpaceKind::Wedge => (
            Shape::new(&table, ShapeKind::Wedge, base.clone(), Vec::new(), conv)?,
            ModuleSpace::wedge(alg.clone(), base, space.k() - 1)?,
        ),
        SpaceKind::CoeffWedge => {
            let all: Vec<usize> = (0..alg.dim()).collect();
            (
                Shape::new(&table, ShapeKind::CoeffWedge, base.clone(), all.clone(), conv)?,
                ModuleSpace::coeff_wedge(alg.clone(), all, base, space.k() - 1)?,
            )
        }
        SpaceKind::Tensor => return Err(ComplexError::WrongSpace),
    };
    apply(&shape, w, target)
}

/// Whether a chain of `Λ^k(g)` is a CE boundary with trivial coefficients,
/// decided exactly over the rationals one weight block at a time.
pub fn is_ce_boundary(w: &Chain, alg: &Arc<LieAlgebra>) -> Result<bool, ComplexError> {
    let k = w.space().k();
    let full = ModuleSpace::wedge(alg.clone(), (0..alg.dim()).collect(), k)?;
    let w = w.embed(&full)?;
    let table = StructureTable::rational(alg);
    let shape = Shape::new(&table, ShapeKind::Wedge, (0..alg.dim()).collect(), Vec::new(), Convention::P)?;
    let mut parts: BTreeMap<i64, Vec<(u64, Rational)>> = BTreeMap::new();
    for (idx, c) in w.entries() {
        let code = shape.code_of(&full.algebra_indices(*idx)).expect("full wedge");
        parts.entry(shape.weight_of(code, k)).or_default().push((code, c.clone()));
    }
    for (weight, part) in parts {
        let codomain = shape.enumerate(k, Some(weight));
        let domain = shape.enumerate(k + 1, Some(weight));
        let mut d = shape.assemble(k + 1, &domain, &codomain);
        let before = rank(&d, &RankStrategy::exact())?.rank;
        d.push_column(
            part.into_iter()
                .map(|(code, c)| (codomain.binary_search(&code).expect("same weight"), c))
                .collect(),
        );
        if rank(&d, &RankStrategy::exact())?.rank != before {
            return Ok(false);
        }
    }
    Ok(true)
}
