use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::codec::{signed_permutations, sort_with_sign};
use super::space::{ModuleSpace, SpaceKind};
use super::MultilinearError;
use crate::field::{Field, Rational, Rationals};
use crate::liealg::Element;
use crate::linalg::SparseMatrix;

/// Largest `k` for which [`antisymmetrize`] expands `k!` permutations.
pub const DEFAULT_FACTORIAL_CAP: usize = 8;

/// A finite linear combination of basis monomials of a [`ModuleSpace`].
#[derive(Clone, Debug)]
pub struct Chain {
    space: Arc<ModuleSpace>,
    entries: BTreeMap<u64, Rational>,
}

impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.entries == other.entries
    }
}

/// Puts wedge slots in increasing order; `None` if the monomial vanishes.
fn canonicalize(kind: SpaceKind, m: &mut [usize]) -> Option<i32> {
    match kind {
        SpaceKind::Wedge => sort_with_sign(m),
        SpaceKind::Tensor => Some(1),
        SpaceKind::CoeffWedge => sort_with_sign(&mut m[1..]),
    }
}

fn accumulate(entries: &mut BTreeMap<u64, Rational>, idx: u64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = entries.entry(idx).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        entries.remove(&idx);
    }
}

impl Chain {
    pub fn zero(space: Arc<ModuleSpace>) -> Self {
        Chain {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn monomial(space: Arc<ModuleSpace>, idx: u64) -> Self {
        assert!(idx < space.dim(), "monomial index out of range");
        let mut entries = BTreeMap::new();
        entries.insert(idx, Rational::one());
        Chain { space, entries }
    }

    pub fn from_entries(space: Arc<ModuleSpace>, entries: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut out = Chain::zero(space);
        for (idx, c) in entries {
            assert!(idx < out.space.dim(), "monomial index out of range");
            accumulate(&mut out.entries, idx, c);
        }
        out
    }

    /// Adds `c` times the monomial whose slots hold the given algebra basis
    /// indices, in the given order (wedge slots are sorted with sign).
    pub fn add_term(&mut self, slots: &[usize], c: Rational) -> Result<(), MultilinearError> {
        let space = &self.space;
        if slots.len() != space.slots() {
            return Err(MultilinearError::WrongDegree {
                expected: space.slots(),
                got: slots.len(),
            });
        }
        let off = usize::from(space.kind() == SpaceKind::CoeffWedge);
        let mut m = Vec::with_capacity(slots.len());
        for (s, &i) in slots.iter().enumerate() {
            let p = if s < off {
                space.coeff_position(i)
            } else {
                space.base_position(i)
            };
            m.push(p.ok_or(MultilinearError::OutsideSpace(space.algebra().label(i)))?);
        }
        if let Some(sign) = canonicalize(space.kind(), &mut m) {
            let idx = space.encode(&m);
            accumulate(&mut self.entries, idx, if sign < 0 { -c } else { c });
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<ModuleSpace> {
        &self.space
    }

    pub fn entries(&self) -> &BTreeMap<u64, Rational> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, idx: u64) -> Rational {
        self.entries.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Chain {
        Chain::from_entries(self.space.clone(), self.entries.iter().map(|(i, v)| (*i, v * c)))
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, MultilinearError> {
        if self.space != other.space {
            return Err(MultilinearError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (i, v) in &other.entries {
            accumulate(&mut out.entries, *i, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, MultilinearError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `Some(c)` with `self = c · other` when `other ≠ 0` and the two are
    /// proportional.
    pub fn ratio_to(&self, other: &Chain) -> Option<Rational> {
        if self.space != other.space {
            return None;
        }
        let (idx, v) = other.entries.iter().next()?;
        let c = self.coeff(*idx) / v;
        (self == &other.scale(&c)).then_some(c)
    }

    /// Re-expresses the chain in a space of the same kind and degree over
    /// the same algebra whose factors contain this chain's factors.
    pub fn embed(&self, target: &Arc<ModuleSpace>) -> Result<Chain, MultilinearError> {
        if target.kind() != self.space.kind()
            || target.k() != self.space.k()
            || !Arc::ptr_eq(target.algebra(), self.space.algebra())
                && target.algebra().dim() != self.space.algebra().dim()
        {
            return Err(MultilinearError::SpaceMismatch);
        }
        let mut out = Chain::zero(target.clone());
        for (idx, c) in &self.entries {
            out.add_term(&self.space.algebra_indices(*idx), c.clone())?;
        }
        Ok(out)
    }

    /// `(slot labels, coefficient)` pairs in index order.
    pub fn terms(&self) -> Vec<(Vec<String>, Rational)> {
        self.entries
            .iter()
            .map(|(i, c)| (self.space.labels(*i), c.clone()))
            .collect()
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.entries
            .iter()
            .map(|(i, c)| format!("{}*{}", Rationals.render(c), self.space.render_monomial(*i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `[e_i, X]` for each factor basis vector, expressed in positions.
struct ActionTables {
    base: Vec<Vec<(usize, Rational)>>,
    coeff: Vec<Vec<(usize, Rational)>>,
}

fn bracket_table(space: &ModuleSpace, x: &Element, idx: &[usize], coeff: bool) -> Result<Vec<Vec<(usize, Rational)>>, MultilinearError> {
    let alg = space.algebra();
    idx.iter()
        .map(|&i| {
            let br = alg
                .bracket(&Element::basis(alg.dim(), i), x)
                .map_err(|_| MultilinearError::ElementMismatch)?;
            br.terms()
                .iter()
                .map(|(j, c)| {
                    let p = if coeff {
                        space.coeff_position(*j)
                    } else {
                        space.base_position(*j)
                    };
                    p.map(|p| (p, c.clone()))
                        .ok_or_else(|| MultilinearError::NotStable(alg.label(i), alg.render(x)))
                })
                .collect()
        })
        .collect()
}

impl ActionTables {
    fn new(space: &ModuleSpace, x: &Element) -> Result<Self, MultilinearError> {
        if x.dim() != space.algebra().dim() {
            return Err(MultilinearError::ElementMismatch);
        }
        Ok(ActionTables {
            base: bracket_table(space, x, space.base(), false)?,
            coeff: bracket_table(space, x, space.coeff(), true)?,
        })
    }

    fn apply(&self, space: &ModuleSpace, idx: u64, c: &Rational, out: &mut BTreeMap<u64, Rational>) {
        let m = space.decode(idx);
        let off = usize::from(space.kind() == SpaceKind::CoeffWedge);
        for s in 0..m.len() {
            let table = if s < off { &self.coeff } else { &self.base };
            for (q, cq) in &table[m[s]] {
                let mut m2 = m.clone();
                m2[s] = *q;
                if let Some(sign) = canonicalize(space.kind(), &mut m2) {
                    let v = c * cq;
                    accumulate(out, space.encode(&m2), if sign < 0 { -v } else { v });
                }
            }
        }
    }
}

/// Right action `w ↦ [w, X]`, extended to every slot as a derivation.
/// Fails if some factor space is not stable under `ad X`.
pub fn act(x: &Element, w: &Chain) -> Result<Chain, MultilinearError> {
    let space = w.space();
    let tables = ActionTables::new(space, x)?;
    let mut out = BTreeMap::new();
    for (idx, c) in w.entries() {
        tables.apply(space, *idx, c, &mut out);
    }
    Ok(Chain {
        space: space.clone(),
        entries: out,
    })
}

/// Matrix of `w ↦ [w, X]` on the whole space, one column per monomial.
pub fn action_matrix(x: &Element, space: &Arc<ModuleSpace>) -> Result<SparseMatrix<Rationals>, MultilinearError> {
    let dim = usize::try_from(space.dim()).map_err(|_| MultilinearError::TooLarge)?;
    let tables = ActionTables::new(space, x)?;
    let mut m = SparseMatrix::zero(Rationals, dim, 0);
    let one = Rational::one();
    for idx in 0..space.dim() {
        let mut col = BTreeMap::new();
        tables.apply(space, idx, &one, &mut col);
        m.push_column(col.into_iter().map(|(i, v)| (i as usize, v)).collect());
    }
    Ok(m)
}

/// `v_1∧…∧v_k ↦ (1/k!) Σ_σ sgn(σ) v_σ(1)⊗…⊗v_σ(k)`. A coefficient wedge
/// `g⊗ω` maps to `g⊗antisymmetrize(ω)` in the tensor power of the union of
/// both factor spaces.
pub fn antisymmetrize(w: &Chain) -> Result<Chain, MultilinearError> {
    antisymmetrize_with_cap(w, DEFAULT_FACTORIAL_CAP)
}

pub fn antisymmetrize_with_cap(w: &Chain, cap: usize) -> Result<Chain, MultilinearError> {
    let space = w.space();
    let k = space.k();
    if k > cap {
        return Err(MultilinearError::FactorialCap { k, cap });
    }
    let (target, off) = match space.kind() {
        SpaceKind::Wedge => (ModuleSpace::tensor(space.algebra().clone(), space.base().to_vec(), k)?, 0),
        SpaceKind::CoeffWedge => {
            let mut union: Vec<usize> = space.base().iter().chain(space.coeff()).copied().collect();
            union.sort_unstable();
            union.dedup();
            (ModuleSpace::tensor(space.algebra().clone(), union, k + 1)?, 1)
        }
        SpaceKind::Tensor => return Err(MultilinearError::WrongKind),
    };
    let perms = signed_permutations(k);
    let factorial: u64 = (1..=k as u64).product();
    let norm = Rational::new(1.into(), factorial.into());
    let mut out = Chain::zero(target);
    let mut slots = vec![0; k + off];
    for (idx, c) in w.entries() {
        let m = space.algebra_indices(*idx);
        let c = c * &norm;
        slots[..off].copy_from_slice(&m[..off]);
        for (p, sign) in &perms {
            for (s, &q) in p.iter().enumerate() {
                slots[off + s] = m[off + q];
            }
            out.add_term(&slots, if *sign < 0 { -c.clone() } else { c.clone() })?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_algebra, AlgebraName, BasisKind, Component, LieAlgebra};
    use proptest::prelude::*;

    const IDEAL: [Component; 2] = [Component::Boosts, Component::Momenta];

    fn sch(n: usize) -> Arc<LieAlgebra> {
        Arc::new(build_algebra(AlgebraName::Schrodinger, n).unwrap())
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn a_scales_boost_wedge() {
        let g = sch(2);
        let space = ModuleSpace::wedge_of(g.clone(), &IDEAL, 2).unwrap();
        let y1 = g.index_of(BasisKind::Boost(1)).unwrap();
        let y2 = g.index_of(BasisKind::Boost(2)).unwrap();
        let mut w = Chain::zero(space);
        w.add_term(&[y1, y2], q(1)).unwrap();
        let a = g.element(BasisKind::A).unwrap();
        assert_eq!(act(&a, &w).unwrap(), w.scale(&q(-2)));
        let zero = Chain::zero(w.space().clone());
        assert!(act(&a, &zero).unwrap().is_zero());
    }

    #[test]
    fn unstable_factor_is_an_error() {
        let g = sch(2);
        let space = ModuleSpace::coeff_wedge_of(g.clone(), &[Component::So], &IDEAL, 1).unwrap();
        let w = Chain::monomial(space, 0);
        let y1 = g.element(BasisKind::Boost(1)).unwrap();
        assert!(matches!(act(&y1, &w), Err(MultilinearError::NotStable(..))));
        let other = sch(3).element(BasisKind::A).unwrap();
        assert!(matches!(act(&other, &w), Err(MultilinearError::ElementMismatch)));
    }

    #[test]
    fn two_fold_antisymmetrization() {
        let g = sch(2);
        let space = ModuleSpace::wedge_of(g.clone(), &IDEAL, 2).unwrap();
        let y1 = g.index_of(BasisKind::Boost(1)).unwrap();
        let y2 = g.index_of(BasisKind::Boost(2)).unwrap();
        let mut w = Chain::zero(space);
        w.add_term(&[y1, y2], q(1)).unwrap();
        let t = antisymmetrize(&w).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let mut expect = Chain::zero(t.space().clone());
        expect.add_term(&[y1, y2], half.clone()).unwrap();
        expect.add_term(&[y2, y1], -half).unwrap();
        assert_eq!(t, expect);

        let one = ModuleSpace::wedge_of(g.clone(), &IDEAL, 1).unwrap();
        let w1 = Chain::monomial(one, 0);
        let t1 = antisymmetrize(&w1).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1.coeff(0), q(1));
    }

    #[test]
    fn cap_is_enforced() {
        let g = sch(5);
        let space = ModuleSpace::wedge_of(g, &IDEAL, 9).unwrap();
        let w = Chain::monomial(space, 0);
        assert!(matches!(antisymmetrize(&w), Err(MultilinearError::FactorialCap { k: 9, cap: 8 })));
    }

    #[test]
    fn action_matrix_matches_act() {
        let g = sch(2);
        let space = ModuleSpace::coeff_wedge_of(g.clone(), &[Component::Sl2], &IDEAL, 2).unwrap();
        let b = g.element(BasisKind::B).unwrap();
        let m = action_matrix(&b, &space).unwrap();
        for idx in 0..space.dim() {
            let col = act(&b, &Chain::monomial(space.clone(), idx)).unwrap();
            let got: Vec<(usize, Rational)> = col.entries().iter().map(|(i, v)| (*i as usize, v.clone())).collect();
            let have: Vec<(usize, Rational)> = m.column_iter(idx as usize).map(|(i, v)| (i, v.clone())).collect();
            assert_eq!(have, got);
        }
    }

    fn random_chain(space: &Arc<ModuleSpace>, seeds: &[(u64, i64)]) -> Chain {
        Chain::from_entries(
            space.clone(),
            seeds.iter().map(|(i, c)| (i % space.dim().max(1), q(*c))),
        )
    }

    fn random_element(g: &LieAlgebra, seeds: &[(usize, i64)]) -> Element {
        Element::from_terms(g.dim(), seeds.iter().map(|(i, c)| (i % g.dim(), q(*c))))
    }

    fn space_for(g: &Arc<LieAlgebra>, kind: u8, k: usize) -> Arc<ModuleSpace> {
        let all: Vec<usize> = (0..g.dim()).collect();
        match kind % 3 {
            0 => ModuleSpace::wedge(g.clone(), all, k).unwrap(),
            1 => ModuleSpace::tensor(g.clone(), all, k.min(3)).unwrap(),
            _ => ModuleSpace::coeff_wedge(g.clone(), all, g.ideal_indices(), k).unwrap(),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn right_lie_action(
            n in 2usize..5, kind in 0u8..3, k in 1usize..5,
            w in prop::collection::vec((0u64..1_000_000, -3i64..4), 1..6),
            x in prop::collection::vec((0usize..40, -2i64..3), 1..4),
            y in prop::collection::vec((0usize..40, -2i64..3), 1..4),
        ) {
            let g = sch(n);
            let space = space_for(&g, kind, k);
            prop_assume!(space.dim() > 0);
            let w = random_chain(&space, &w);
            let x = random_element(&g, &x);
            let y = random_element(&g, &y);
            let lhs = act(&y, &act(&x, &w).unwrap()).unwrap()
                .sub(&act(&x, &act(&y, &w).unwrap()).unwrap()).unwrap();
            let rhs = act(&g.bracket(&x, &y).unwrap(), &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn antisymmetrization_alternates_and_commutes_with_action(
            n in 2usize..4, k in 2usize..5,
            w in prop::collection::vec((0u64..1_000_000, -3i64..4), 1..4),
            x in prop::collection::vec((0usize..40, -2i64..3), 1..4),
            slot in 0usize..4,
        ) {
            let g = sch(n);
            let space = ModuleSpace::wedge(g.clone(), (0..g.dim()).collect(), k).unwrap();
            let w = random_chain(&space, &w);
            let t = antisymmetrize(&w).unwrap();
            let s = slot % (k - 1);
            let tspace = t.space().clone();
            let swapped = Chain::from_entries(tspace.clone(), t.entries().iter().map(|(idx, c)| {
                let mut m = tspace.decode(*idx);
                m.swap(s, s + 1);
                (tspace.encode(&m), c.clone())
            }));
            prop_assert_eq!(swapped, t.scale(&q(-1)));

            let x = random_element(&g, &x);
            let lhs = antisymmetrize(&act(&x, &w).unwrap()).unwrap();
            prop_assert_eq!(lhs, act(&x, &t).unwrap());
        }
    }
}
