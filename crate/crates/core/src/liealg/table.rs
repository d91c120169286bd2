//! Structure constants over an arbitrary field, with a weight grading by a
//! torus of inner derivations.

use num_traits::Zero;

use super::{Element, LieAlgebra, LieError};
use crate::field::{Field, PrimeField, Rational, Rationals};
use crate::linalg::{dense_rref, RowEchelon, SparseVec};

/// How a torus element's adjoint eigenvalues are scaled: `m` or `m·√-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusUnit {
    Real,
    Imaginary,
}

/// Bracket table `[v_i, v_j] = Σ_k c_ij^k v_k` over a field `F`, where each
/// basis vector `v_i` is a joint eigenvector of a torus and carries integer
/// weights. The bracket of weight vectors adds weights.
#[derive(Clone, Debug)]
pub struct StructureTable<F: Field> {
    field: F,
    labels: Vec<String>,
    weights: Vec<Vec<i32>>,
    brackets: Vec<SparseVec<F::El>>,
}

impl<F: Field> StructureTable<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn weight(&self, i: usize) -> &[i32] {
        &self.weights[i]
    }

    /// Number of weight coordinates (torus rank).
    pub fn weight_rank(&self) -> usize {
        self.weights.first().map(|w| w.len()).unwrap_or(0)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, F::El)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|b| b.is_empty())
    }

    /// Weights add under the bracket.
    pub fn grading_is_consistent(&self) -> bool {
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                self.bracket(i, j).iter().all(|(k, _)| {
                    self.weights[*k]
                        .iter()
                        .zip(self.weights[i].iter().zip(&self.weights[j]))
                        .all(|(wk, (wi, wj))| *wk == wi + wj)
                })
            })
        })
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let f = &self.field;
        let d = self.dim();
        let nested = |i: usize, j: usize, k: usize, acc: &mut Vec<F::El>| {
            for (m, c) in self.bracket(i, j) {
                for (l, e) in self.bracket(*m, k) {
                    let t = f.mul(c, e);
                    acc[*l] = f.add(&acc[*l], &t);
                }
            }
        };
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let mut acc = vec![f.zero(); d];
                    nested(i, j, k, &mut acc);
                    nested(j, k, i, &mut acc);
                    nested(k, i, j, &mut acc);
                    acc.iter().all(|v| f.is_zero(v))
                })
            })
        })
    }

    /// The same table with all weights erased.
    pub fn ungraded(&self) -> Self {
        let mut t = self.clone();
        t.weights = vec![Vec::new(); self.dim()];
        t
    }
}

impl StructureTable<Rationals> {
    /// The algebra's own basis, graded by those torus elements whose adjoint
    /// action is diagonal in it (`a`, and `d` when present).
    pub fn rational(alg: &LieAlgebra) -> Self {
        let d = alg.dim();
        let diagonal: Vec<usize> = alg
            .torus()
            .into_iter()
            .filter(|(_, u)| *u == TorusUnit::Real)
            .filter_map(|(h, _)| (h.terms().len() == 1).then(|| h.terms()[0].0))
            .filter(|&h| (0..d).all(|j| alg.basis_bracket(h, j).iter().all(|(k, _)| *k == j)))
            .collect();
        let weights = (0..d)
            .map(|j| {
                diagonal
                    .iter()
                    .map(|&h| {
                        let c = alg.basis_bracket(h, j).first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero);
                        crate::field::rational_to_i64(&c).expect("integral weight") as i32
                    })
                    .collect()
            })
            .collect();
        StructureTable {
            field: Rationals,
            labels: (0..d).map(|i| alg.label(i)).collect(),
            weights,
            brackets: (0..d * d).map(|p| alg.basis_bracket(p / d, p % d).to_vec()).collect(),
        }
    }

    /// Entry-wise reduction modulo `p`, keeping basis and weights.
    pub fn reduce_mod(&self, fp: &PrimeField) -> Result<StructureTable<PrimeField>, LieError> {
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(k, c)| fp.from_rational(c).map(|r| (*k, r)).ok_or(LieError::NotDiagonalisable(fp.modulus())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StructureTable {
            field: *fp,
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            brackets,
        })
    }
}

const WEIGHT_RANGE: i32 = 3;

impl StructureTable<PrimeField> {
    /// Rewrites the algebra in a joint eigenbasis of its full torus over
    /// `F_p`. Rotation generators have eigenvalues in `√-1·Z`, so `p` must be
    /// `1 mod 4` whenever the algebra contains rotations.
    pub fn torus_eigenbasis(alg: &LieAlgebra, fp: &PrimeField) -> Result<Self, LieError> {
        let d = alg.dim();
        let torus = alg.torus();
        let iota = if torus.iter().any(|(_, u)| *u == TorusUnit::Imaginary) {
            fp.sqrt_minus_one().ok_or(LieError::NoImaginaryUnit(fp.modulus()))?
        } else {
            1
        };
        let reduce = |q: &Rational| fp.from_rational(q).ok_or(LieError::NotDiagonalisable(fp.modulus()));
        // ad(h) columns: ad(h) e_j = [h, e_j]
        let mut ads: Vec<Vec<Vec<u64>>> = Vec::new();
        for (h, _) in &torus {
            let mut m = vec![vec![0u64; d]; d];
            for j in 0..d {
                let img = alg.bracket(h, &Element::basis(d, j))?;
                for (k, c) in img.terms() {
                    m[*k][j] = reduce(c)?;
                }
            }
            ads.push(m);
        }
        let units: Vec<u64> = torus
            .iter()
            .map(|(_, u)| if *u == TorusUnit::Imaginary { iota } else { 1 })
            .collect();

        let mut eigvecs: Vec<Vec<u64>> = Vec::new();
        let mut weights: Vec<Vec<i32>> = Vec::new();
        let t = torus.len();
        let span = (2 * WEIGHT_RANGE + 1) as usize;
        for code in 0..span.pow(t as u32) {
            let w: Vec<i32> = (0..t)
                .map(|s| (code / span.pow(s as u32) % span) as i32 - WEIGHT_RANGE)
                .collect();
            let mut ech = RowEchelon::new(*fp, d);
            for s in 0..t {
                let lambda = fp.mul(&fp.from_i64(w[s] as i64), &units[s]);
                for r in 0..d {
                    let row: SparseVec<u64> = (0..d)
                        .filter_map(|c| {
                            let mut v = ads[s][r][c];
                            if r == c {
                                v = fp.sub(&v, &lambda);
                            }
                            (v != 0).then_some((c, v))
                        })
                        .collect();
                    ech.insert(row);
                }
            }
            if ech.rank() == d {
                continue;
            }
            ech.reduce_fully();
            for kv in ech.kernel() {
                let mut dense = vec![0u64; d];
                for (i, v) in kv {
                    dense[i] = v;
                }
                eigvecs.push(dense);
                weights.push(w.clone());
            }
        }
        if eigvecs.len() != d {
            return Err(LieError::NotDiagonalisable(fp.modulus()));
        }
        // order by weight for stable labels, keeping kernel order within a weight
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&x, &y| weights[x].cmp(&weights[y]).then(x.cmp(&y)));
        let eigvecs: Vec<Vec<u64>> = order.iter().map(|&i| eigvecs[i].clone()).collect();
        let weights: Vec<Vec<i32>> = order.iter().map(|&i| weights[i].clone()).collect();

        // P has the eigenvectors as columns; invert via [P | I]
        let aug: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                let mut row: Vec<u64> = (0..d).map(|c| eigvecs[c][r]).collect();
                row.extend((0..d).map(|c| u64::from(c == r)));
                row
            })
            .collect();
        let (rref, pivots) = dense_rref(fp, aug);
        if pivots.len() != d || pivots[d - 1] != d - 1 {
            return Err(LieError::NotDiagonalisable(fp.modulus()));
        }
        let pinv: Vec<Vec<u64>> = rref.iter().map(|row| row[d..].to_vec()).collect();

        let mut old = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                old[i * d + j] = alg
                    .basis_bracket(i, j)
                    .iter()
                    .map(|(k, c)| reduce(c).map(|v| (*k, v)))
                    .collect::<Result<Vec<_>, _>>()?;
            }
        }
        let mut brackets = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = vec![0u64; d];
                for (a, pa) in eigvecs[i].iter().enumerate().filter(|x| *x.1 != 0) {
                    for (b, pb) in eigvecs[j].iter().enumerate().filter(|x| *x.1 != 0) {
                        let s = fp.mul(pa, pb);
                        for (k, c) in &old[a * d + b] {
                            acc[*k] = fp.add(&acc[*k], &fp.mul(&s, c));
                        }
                    }
                }
                let entry: SparseVec<u64> = (0..d)
                    .filter_map(|r| {
                        let mut v = 0u64;
                        for (k, x) in acc.iter().enumerate() {
                            if *x != 0 {
                                v = fp.add(&v, &fp.mul(&pinv[r][k], x));
                            }
                        }
                        (v != 0).then_some((r, v))
                    })
                    .collect();
                brackets.push(entry);
            }
        }
        let labels = weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                format!("v{i}[{}]", ws.join(","))
            })
            .collect();
        let table = StructureTable {
            field: *fp,
            labels,
            weights,
            brackets,
        };
        debug_assert!(table.grading_is_consistent());
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_algebra, AlgebraName};

    #[test]
    fn rational_grading() {
        let sch = build_algebra(AlgebraName::Schrodinger, 2).unwrap();
        let t = StructureTable::rational(&sch);
        let w: Vec<i32> = (0..t.dim()).map(|i| t.weight(i)[0]).collect();
        // X12, a, b, c, y1, y2, y3, y4
        assert_eq!(w, vec![0, 0, -2, 2, 1, 1, -1, -1]);
        assert!(t.grading_is_consistent());
        let g = build_algebra(AlgebraName::Galilei, 2).unwrap();
        let t = StructureTable::rational(&g);
        assert_eq!(t.weight_rank(), 2);
        assert_eq!(t.weight(4), &[1, -1]);
    }

    #[test]
    fn eigenbasis_is_graded_lie_algebra() {
        let fp = PrimeField::new(1_000_000_009);
        for n in 2..=4 {
            for name in [AlgebraName::Schrodinger, AlgebraName::Galilei, AlgebraName::So] {
                let alg = build_algebra(name, n).unwrap();
                let t = StructureTable::torus_eigenbasis(&alg, &fp).unwrap();
                assert_eq!(t.dim(), alg.dim());
                assert!(t.grading_is_consistent());
                assert!(t.satisfies_jacobi(), "{name} {n}");
            }
        }
        let sch3 = build_algebra(AlgebraName::Schrodinger, 3).unwrap();
        let t = StructureTable::torus_eigenbasis(&sch3, &fp).unwrap();
        let zero = (0..t.dim()).filter(|&i| t.weight(i).iter().all(|w| *w == 0)).count();
        assert_eq!(zero, 2);
    }

    #[test]
    fn rotations_need_imaginary_unit() {
        let fp = PrimeField::new(1_000_000_007); // 3 mod 4
        let sch = build_algebra(AlgebraName::Schrodinger, 2).unwrap();
        assert!(matches!(StructureTable::torus_eigenbasis(&sch, &fp), Err(LieError::NoImaginaryUnit(_))));
        let sl2 = build_algebra(AlgebraName::Sl2, 2).unwrap();
        assert!(StructureTable::torus_eigenbasis(&sl2, &fp).is_ok());
    }
}
