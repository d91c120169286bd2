//! The rotation, `sl(2)`, Schrödinger and Galilei algebras, built from their
//! realisation by linear vector fields on `R^{n+2}`.
//!
//! Structure constants are never typed in: every bracket is the commutator of
//! realising matrices, decomposed back into the basis.

mod realization;
mod table;
mod tables;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use realization::{commutator, field_bracket, matrix_of, IntMatrix};
pub use table::{StructureTable, TorusUnit};
pub use tables::{check_tables, RelationCheck, TableReport};

use crate::field::{Field, Rational, Rationals};
use crate::linalg::dense_rref;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("element of dimension {got} used with an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("torus does not act diagonalisably over F_{0}")]
    NotDiagonalisable(u64),
    #[error("F_{0} has no square root of -1")]
    NoImaginaryUnit(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisKind {
    /// `X_ij`, with `i < j`.
    Rotation(usize, usize),
    A,
    B,
    C,
    /// Dilation of the full Galilei algebra.
    D,
    /// `y_i = x_i ∂/∂x^{n+1}`.
    Boost(usize),
    /// `y_{n+i} = x_i ∂/∂x^{n+2}`.
    Momentum(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisLabel {
    pub kind: BasisKind,
    pub n: usize,
}

impl BasisLabel {
    pub fn new(kind: BasisKind, n: usize) -> Self {
        match kind {
            BasisKind::Rotation(i, j) => assert!(1 <= i && i < j && j <= n, "bad rotation X_{i}{j} for n = {n}"),
            BasisKind::Boost(i) | BasisKind::Momentum(i) => assert!(1 <= i && i <= n, "bad index {i} for n = {n}"),
            _ => {}
        }
        BasisLabel { kind, n }
    }

    pub fn component(&self) -> Component {
        match self.kind {
            BasisKind::Rotation(..) => Component::So,
            BasisKind::A | BasisKind::B | BasisKind::C => Component::Sl2,
            BasisKind::Boost(_) => Component::Boosts,
            BasisKind::Momentum(_) => Component::Momenta,
            BasisKind::D => Component::Dilation,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BasisKind::Rotation(i, j) if j < 10 => write!(f, "X{i}{j}"),
            BasisKind::Rotation(i, j) => write!(f, "X{i}.{j}"),
            BasisKind::A => write!(f, "a"),
            BasisKind::B => write!(f, "b"),
            BasisKind::C => write!(f, "c"),
            BasisKind::D => write!(f, "d"),
            BasisKind::Boost(i) => write!(f, "y{i}"),
            BasisKind::Momentum(i) => write!(f, "y{}", self.n + i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    So,
    Sl2,
    /// `I¹`
    Boosts,
    /// `I²`
    Momenta,
    Dilation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraName {
    So,
    Sl2,
    Hbar,
    Schrodinger,
    Galilei,
    AbelianI,
}

impl FromStr for AlgebraName {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, LieError> {
        Ok(match s {
            "so" => AlgebraName::So,
            "sl2" => AlgebraName::Sl2,
            "hbar" => AlgebraName::Hbar,
            "schrodinger" | "sch" => AlgebraName::Schrodinger,
            "galilei" => AlgebraName::Galilei,
            "abelian_I" | "abelian_i" => AlgebraName::AbelianI,
            other => return Err(LieError::UnknownName(other.to_string())),
        })
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraName::So => "so",
            AlgebraName::Sl2 => "sl2",
            AlgebraName::Hbar => "hbar",
            AlgebraName::Schrodinger => "schrodinger",
            AlgebraName::Galilei => "galilei",
            AlgebraName::AbelianI => "abelian_I",
        })
    }
}

/// Sparse vector over an algebra basis with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    dim: usize,
    terms: Vec<(usize, Rational)>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element { dim, terms: Vec::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range {dim}");
        Element {
            dim,
            terms: vec![(i, Rational::one())],
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
        for (i, c) in terms {
            assert!(i < dim, "basis index {i} out of range {dim}");
            *acc.entry(i).or_insert_with(Rational::zero) += c;
        }
        Element {
            dim,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.terms
            .iter()
            .find(|t| t.0 == i)
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element::from_terms(self.dim, self.terms.iter().map(|(i, v)| (*i, v * c)))
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.dim, other.dim);
        Element::from_terms(self.dim, self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// A finite-dimensional Lie algebra with a labelled basis and exact
/// structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: AlgebraName,
    n: usize,
    basis: Vec<BasisLabel>,
    brackets: Vec<Vec<(usize, Rational)>>,
}

/// Constructs one of the named algebras for spatial dimension `n ≥ 2`.
pub fn build_algebra(name: AlgebraName, n: usize) -> Result<LieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::InvalidN(n));
    }
    let rotations = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| BasisKind::Rotation(i, j)));
    let sl2 = [BasisKind::A, BasisKind::B, BasisKind::C];
    let boosts = (1..=n).map(BasisKind::Boost);
    let momenta = (1..=n).map(BasisKind::Momentum);
    let kinds: Vec<BasisKind> = match name {
        AlgebraName::So => rotations.collect(),
        AlgebraName::Sl2 => sl2.to_vec(),
        AlgebraName::Hbar => rotations.chain(sl2).collect(),
        AlgebraName::Schrodinger => rotations.chain(sl2).chain(boosts).chain(momenta).collect(),
        AlgebraName::Galilei => rotations
            .chain(sl2)
            .chain(boosts)
            .chain(momenta)
            .chain([BasisKind::D])
            .collect(),
        AlgebraName::AbelianI => boosts.chain(momenta).collect(),
    };
    let basis: Vec<BasisLabel> = kinds.into_iter().map(|k| BasisLabel::new(k, n)).collect();
    let brackets = derive_structure(&basis);
    Ok(LieAlgebra {
        name,
        n,
        basis,
        brackets,
    })
}

impl FromStr for LieAlgebra {
    type Err = LieError;
    /// Parses `name:n`, e.g. `schrodinger:3`.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let (name, n) = s.split_once(':').ok_or_else(|| LieError::UnknownName(s.to_string()))?;
        let n: usize = n.parse().map_err(|_| LieError::UnknownName(s.to_string()))?;
        build_algebra(name.parse()?, n)
    }
}

/// Decomposes every commutator of basis matrices back into the basis.
fn derive_structure(basis: &[BasisLabel]) -> Vec<Vec<(usize, Rational)>> {
    let dim = basis.len();
    let mats: Vec<IntMatrix> = basis.iter().map(matrix_of).collect();
    let size = mats[0].len();
    let q = |v: i64| Rational::from_integer(v.into());
    // one augmented system [basis | commutators], rows indexed by matrix entry
    let mut rows = vec![Vec::with_capacity(dim + dim * dim); size * size];
    for (r, row) in rows.iter_mut().enumerate() {
        let (i, j) = (r / size, r % size);
        row.extend(mats.iter().map(|m| q(m[i][j])));
    }
    let mut comms = Vec::with_capacity(dim * dim);
    for x in &mats {
        for y in &mats {
            comms.push(commutator(x, y));
        }
    }
    for (r, row) in rows.iter_mut().enumerate() {
        let (i, j) = (r / size, r % size);
        row.extend(comms.iter().map(|m| q(m[i][j])));
    }
    let (rref, pivots) = dense_rref(&Rationals, rows);
    assert_eq!(&pivots[..dim], &(0..dim).collect::<Vec<_>>()[..], "realising matrices are dependent");
    assert!(pivots.len() == dim, "commutator leaves the span of the realisation");
    (0..dim * dim)
        .map(|p| {
            (0..dim)
                .filter_map(|k| {
                    let v = &rref[k][dim + p];
                    (!v.is_zero()).then(|| (k, v.clone()))
                })
                .collect()
        })
        .collect()
}

impl LieAlgebra {
    pub fn name(&self) -> AlgebraName {
        self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> String {
        self.basis[i].to_string()
    }

    pub fn index_of(&self, kind: BasisKind) -> Option<usize> {
        self.basis.iter().position(|b| b.kind == kind)
    }

    /// `X_ij` as an element, extended antisymmetrically to `i > j`.
    pub fn rotation(&self, i: usize, j: usize) -> Option<Element> {
        if i == j {
            return None;
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.index_of(BasisKind::Rotation(lo, hi))
            .map(|k| Element::basis(self.dim(), k).scale(&Rational::from_integer(sign.into())))
    }

    pub fn element(&self, kind: BasisKind) -> Option<Element> {
        self.index_of(kind).map(|k| Element::basis(self.dim(), k))
    }

    /// Indices of basis vectors belonging to the given components, in order.
    pub fn component_indices(&self, comps: &[Component]) -> Vec<usize> {
        (0..self.dim()).filter(|&i| comps.contains(&self.basis[i].component())).collect()
    }

    /// Indices spanning the abelian ideal `I = I¹ ⊕ I²`.
    pub fn ideal_indices(&self) -> Vec<usize> {
        self.component_indices(&[Component::Boosts, Component::Momenta])
    }

    /// Structure constants of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, LieError> {
        for e in [x, y] {
            if e.dim() != self.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim(),
                    got: e.dim(),
                });
            }
        }
        let mut terms = Vec::new();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let ab = a * b;
                for (k, c) in self.basis_bracket(*i, *j) {
                    terms.push((*k, &ab * c));
                }
            }
        }
        Ok(Element::from_terms(self.dim(), terms))
    }

    /// Commuting elements whose adjoint actions are diagonalisable: `a` and
    /// `d` with real eigenvalues, and `X_{2l-1,2l}` with eigenvalues in `i·Z`.
    pub fn torus(&self) -> Vec<(Element, TorusUnit)> {
        let mut out = Vec::new();
        if let Some(a) = self.element(BasisKind::A) {
            out.push((a, TorusUnit::Real));
        }
        let mut i = 1;
        while i < self.n {
            if let Some(x) = self.element(BasisKind::Rotation(i, i + 1)) {
                out.push((x, TorusUnit::Imaginary));
            }
            i += 2;
        }
        if let Some(d) = self.element(BasisKind::D) {
            out.push((d, TorusUnit::Real));
        }
        out
    }

    /// Rendering of an element with basis labels.
    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.terms()
            .iter()
            .map(|(i, c)| format!("{}*{}", Rationals.render(c), self.label(*i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let x = Element::from_terms(d, self.basis_bracket(i, j).iter().cloned());
                let y = Element::from_terms(d, self.basis_bracket(j, i).iter().cloned());
                x.add(&y).is_zero()
            })
        })
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` on all basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim();
        let e = |i| Element::basis(d, i);
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let b = |x: &Element, y: &Element| self.bracket(x, y).expect("same algebra");
                    let t1 = b(&b(&e(i), &e(j)), &e(k));
                    let t2 = b(&b(&e(j), &e(k)), &e(i));
                    let t3 = b(&b(&e(k), &e(i)), &e(j));
                    t1.add(&t2).add(&t3).is_zero()
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn dimensions() {
        for n in 2..=6 {
            let sch = build_algebra(AlgebraName::Schrodinger, n).unwrap();
            assert_eq!(sch.dim(), n * (n - 1) / 2 + 3 + 2 * n);
            let gal = build_algebra(AlgebraName::Galilei, n).unwrap();
            assert_eq!(gal.dim(), sch.dim() + 1);
        }
        assert_eq!(build_algebra(AlgebraName::Schrodinger, 2).unwrap().dim(), 8);
        assert_eq!(build_algebra(AlgebraName::Galilei, 3).unwrap().dim(), 13);
    }

    #[test]
    fn rejects_small_n_and_unknown_names() {
        assert_eq!(build_algebra(AlgebraName::So, 1).unwrap_err(), LieError::InvalidN(1));
        assert!(matches!("poincare".parse::<AlgebraName>(), Err(LieError::UnknownName(_))));
    }

    #[test]
    fn basis_order() {
        let g = build_algebra(AlgebraName::Galilei, 3).unwrap();
        let labels: Vec<String> = (0..g.dim()).map(|i| g.label(i)).collect();
        assert_eq!(labels, ["X12", "X13", "X23", "a", "b", "c", "y1", "y2", "y3", "y4", "y5", "y6", "d"]);
    }

    #[test]
    fn so4_constants_are_unit() {
        let so4 = build_algebra(AlgebraName::So, 4).unwrap();
        assert_eq!(so4.dim(), 6);
        for i in 0..6 {
            for j in 0..6 {
                for (_, c) in so4.basis_bracket(i, j) {
                    assert!(*c == q(1) || *c == q(-1));
                }
            }
        }
    }

    #[test]
    fn sample_brackets() {
        let sch2 = build_algebra(AlgebraName::Schrodinger, 2).unwrap();
        let a = sch2.element(BasisKind::A).unwrap();
        let b = sch2.element(BasisKind::B).unwrap();
        assert_eq!(sch2.bracket(&a, &b).unwrap(), b.scale(&q(-2)));
        let y1 = sch2.element(BasisKind::Boost(1)).unwrap();
        let y3 = sch2.element(BasisKind::Momentum(1)).unwrap();
        assert!(sch2.bracket(&y1, &y3).unwrap().is_zero());
        assert!(sch2.bracket(&a, &a).unwrap().is_zero());

        let sch3 = build_algebra(AlgebraName::Schrodinger, 3).unwrap();
        let x12 = sch3.rotation(1, 2).unwrap();
        let x13 = sch3.rotation(1, 3).unwrap();
        assert_eq!(sch3.bracket(&x12, &x13).unwrap(), sch3.rotation(2, 3).unwrap());

        let so3 = build_algebra(AlgebraName::So, 3).unwrap();
        assert!(matches!(so3.bracket(&x12, &x13), Err(LieError::DimensionMismatch { .. })));
    }

    #[test]
    fn jacobi_and_antisymmetry_all_algebras() {
        use AlgebraName::*;
        for n in 2..=4 {
            for name in [So, Sl2, Hbar, Schrodinger, Galilei, AbelianI] {
                let g = build_algebra(name, n).unwrap();
                assert!(g.is_antisymmetric(), "{name} {n}");
                assert!(g.satisfies_jacobi(), "{name} {n}");
            }
        }
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let g = build_algebra(AlgebraName::Galilei, 3).unwrap();
        let mats: Vec<IntMatrix> = g.basis().iter().map(matrix_of).collect();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let comm = commutator(&mats[i], &mats[j]);
                let size = comm.len();
                let mut rebuilt = vec![vec![0i64; size]; size];
                for (k, c) in g.basis_bracket(i, j) {
                    let c: i64 = c.to_integer().try_into().unwrap();
                    for r in 0..size {
                        for s in 0..size {
                            rebuilt[r][s] += c * mats[*k][r][s];
                        }
                    }
                }
                assert_eq!(rebuilt, comm);
            }
        }
    }

    #[test]
    fn ideal_is_abelian_and_stable() {
        for n in 2..=6 {
            let g = build_algebra(AlgebraName::Galilei, n).unwrap();
            let ideal = g.ideal_indices();
            for &i in &ideal {
                for &j in &ideal {
                    assert!(g.basis_bracket(i, j).is_empty());
                }
                for j in 0..g.dim() {
                    assert!(g.basis_bracket(j, i).iter().all(|(k, _)| ideal.contains(k)));
                }
            }
        }
    }

    #[test]
    fn galilei_restricts_to_schrodinger() {
        for n in 2..=6 {
            let sch = build_algebra(AlgebraName::Schrodinger, n).unwrap();
            let gal = build_algebra(AlgebraName::Galilei, n).unwrap();
            for i in 0..sch.dim() {
                for j in 0..sch.dim() {
                    assert_eq!(sch.basis_bracket(i, j), gal.basis_bracket(i, j));
                }
            }
        }
    }
}
