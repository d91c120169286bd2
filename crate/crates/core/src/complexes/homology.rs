//! Betti numbers from block ranks of the boundary maps.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::time::Instant;

use serde::Serialize;

use super::graded::Shape;
use super::{ComplexError, ComplexSpec, Convention, Reduction};
use crate::field::{Field, PrimeField, Rationals};
use crate::liealg::StructureTable;
use crate::linalg::{certify, rank, rank_mod_p, LinalgError, RankMethod, RankStrategy, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub k: usize,
    /// Dimension of the computed (possibly weight-reduced) chain space.
    pub dim: u64,
    /// Dimension of the unreduced chain space, when it fits in 64 bits.
    pub full_dim: Option<u64>,
    pub rank_dk: Option<usize>,
    pub rank_dk1: Option<usize>,
    pub betti: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub k: usize,
    pub rank: usize,
    pub rows: u64,
    pub cols: u64,
    pub method: RankMethod,
    pub primes: Vec<u64>,
    pub agreement: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub algebra: String,
    pub n: usize,
    pub flavor: String,
    pub reduction: Reduction,
    pub degrees: Vec<DegreeReport>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub ranks: Vec<RankRecord>,
}

impl HomologyReport {
    pub fn betti_numbers(&self) -> Vec<Option<u64>> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Betti numbers when every requested degree was computed.
    pub fn betti_vector(&self) -> Option<Vec<u64>> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// `Σ (-1)^k dim C_k = Σ (-1)^k b_k` over the computed complex; `None`
    /// unless the report covers every nonzero degree from 0.
    pub fn euler_holds(&self, top: usize) -> Option<bool> {
        if self.degrees.first()?.k != 0 || self.degrees.last()?.k < top {
            return None;
        }
        let mut chi_c = 0i64;
        let mut chi_b = 0i64;
        for d in &self.degrees {
            let s = if d.k % 2 == 0 { 1 } else { -1 };
            chi_c += s * d.dim as i64;
            chi_b += s * d.betti? as i64;
        }
        Some(chi_c == chi_b)
    }

    /// Zeroes wall-clock fields so reports compare byte for byte.
    pub fn without_timings(mut self) -> Self {
        self.elapsed_ms = 0;
        for r in &mut self.ranks {
            r.elapsed_ms = 0;
        }
        self
    }
}

/// Pairs of (domain, codomain) monomial lists making up `d_k`.
type Blocks = Vec<(Vec<u64>, Vec<u64>)>;

struct Run {
    dims: BTreeMap<usize, u64>,
    /// `None` for ranks skipped by the budget.
    ranks: BTreeMap<usize, Option<(usize, RankMethod, u64, u64, u64)>>,
}

fn blocks<F: Field>(shape: &Shape<'_, F>, reduction: Reduction, k: usize) -> Blocks {
    let below = |k: usize| k.checked_sub(1);
    match reduction {
        Reduction::None => vec![(
            shape.enumerate(k, None),
            below(k).map(|j| shape.enumerate(j, None)).unwrap_or_default(),
        )],
        Reduction::WeightZero => vec![(
            shape.enumerate(k, Some(0)),
            below(k).map(|j| shape.enumerate(j, Some(0))).unwrap_or_default(),
        )],
        Reduction::AllWeights => {
            let top = shape.by_weight(k);
            let mut bottom = below(k).map(|j| shape.by_weight(j)).unwrap_or_default();
            top.into_iter()
                .map(|(w, dom)| (dom, bottom.remove(&w).unwrap_or_default()))
                .collect()
        }
    }
}

fn run<F: Field>(
    spec: &ComplexSpec,
    table: &StructureTable<F>,
    degrees: &RangeInclusive<usize>,
    rank_of: &dyn Fn(&SparseMatrix<F>) -> Result<(usize, RankMethod), LinalgError>,
) -> Result<Run, ComplexError> {
    let (letters, module) = spec.letters_and_module()?;
    let shape = Shape::new(table, spec.shape_kind(), letters, module, Convention::P)?;
    let wedge_top = match spec.flavor {
        super::Flavor::Loday => usize::MAX,
        _ => shape.letters(),
    };
    let mut dims = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for k in *degrees.start()..=degrees.end() + 1 {
        if k > wedge_top {
            dims.insert(k, 0);
            ranks.insert(k, Some((0, RankMethod::DenseEchelon, 0, 0, 0)));
            continue;
        }
        let full = shape.full_dim(k).unwrap_or(u64::MAX);
        if spec.reduction != Reduction::WeightZero && full > spec.budget_columns {
            ranks.insert(k, None);
            continue;
        }
        let bl = blocks(&shape, spec.reduction, k);
        let cols: u64 = bl.iter().map(|b| b.0.len() as u64).sum();
        let rows: u64 = bl.iter().map(|b| b.1.len() as u64).sum();
        if k <= *degrees.end() {
            dims.insert(k, cols);
        }
        if k == 0 {
            ranks.insert(k, Some((0, RankMethod::DenseEchelon, rows, cols, 0)));
            continue;
        }
        if bl.iter().any(|b| b.0.len() as u64 > spec.budget_columns) {
            ranks.insert(k, None);
            continue;
        }
        let start = Instant::now();
        let mut total = 0;
        let mut method = RankMethod::DenseEchelon;
        for (dom, cod) in &bl {
            if dom.is_empty() || cod.is_empty() {
                continue;
            }
            let m = shape.assemble(k, dom, cod);
            if m.nnz() == 0 {
                continue;
            }
            let (r, meth) = rank_of(&m)?;
            total += r;
            if meth != RankMethod::DenseEchelon {
                method = meth;
            }
        }
        ranks.insert(k, Some((total, method, rows, cols, start.elapsed().as_millis() as u64)));
    }
    Ok(Run { dims, ranks })
}

fn modular_run(spec: &ComplexSpec, degrees: &RangeInclusive<usize>, strategy: &RankStrategy, p: u64, salt: u64) -> Result<Run, ComplexError> {
    let fp = PrimeField::new(p);
    let table = if spec.reduction == Reduction::WeightZero {
        StructureTable::torus_eigenbasis(&spec.algebra, &fp)?
    } else {
        StructureTable::rational(&spec.algebra).reduce_mod(&fp)?
    };
    let seed = strategy.seed.wrapping_add(salt);
    run(spec, &table, degrees, &|m| rank_mod_p(m, strategy.method, strategy.memory_cap, seed))
}

/// Betti numbers of the complex in the given degrees.
///
/// Exact strategies work over the rationals in the algebra's own basis,
/// graded by `a` and `d`; modular strategies work in a torus eigenbasis over
/// each prime (weight-zero reduction) or in the reduced rational basis.
pub fn betti(spec: &ComplexSpec, degrees: RangeInclusive<usize>, strategy: &RankStrategy) -> Result<HomologyReport, ComplexError> {
    if spec.reduction == Reduction::WeightZero
        && spec.flavor == super::Flavor::CeCoefficients(super::CoeffModule::IdealInAdjoint)
    {
        return Err(ComplexError::InvalidReduction);
    }
    let start = Instant::now();
    let mut primes = Vec::new();
    let (dims, ranks): (BTreeMap<usize, u64>, BTreeMap<usize, Option<RankRecord>>) = if !strategy.modular {
        let table = StructureTable::rational(&spec.algebra);
        let r = run(spec, &table, &degrees, &|m: &SparseMatrix<Rationals>| {
            rank(m, strategy).map(|c| (c.rank, c.method))
        })?;
        let ranks = r
            .ranks
            .into_iter()
            .map(|(k, v)| {
                (
                    k,
                    v.map(|(rank, method, rows, cols, ms)| RankRecord {
                        k,
                        rank,
                        rows,
                        cols,
                        method,
                        primes: Vec::new(),
                        agreement: true,
                        elapsed_ms: ms,
                    }),
                )
            })
            .collect();
        (r.dims, ranks)
    } else {
        primes = strategy.prime_list();
        let runs = primes
            .iter()
            .enumerate()
            .map(|(i, &p)| modular_run(spec, &degrees, strategy, p, i as u64 + 1))
            .collect::<Result<Vec<_>, _>>()?;
        let mut extra: Option<Run> = None;
        let extra_prime = strategy.extra_prime();
        let mut ranks = BTreeMap::new();
        for k in *degrees.start()..=degrees.end() + 1 {
            let per: Option<Vec<(u64, (usize, RankMethod, u64, u64, u64))>> =
                primes.iter().zip(&runs).map(|(p, r)| r.ranks[&k].clone().map(|x| (*p, x))).collect();
            let Some(per) = per else {
                ranks.insert(k, None);
                continue;
            };
            let method = per[0].1 .1.clone();
            let (rows, cols) = (per[0].1 .2, per[0].1 .3);
            let ms = per.iter().map(|x| x.1 .4).sum();
            let mut retry_err = None;
            let cert = certify(per.iter().map(|(p, x)| (*p, x.0)).collect(), method.clone(), || {
                if extra.is_none() {
                    match modular_run(spec, &degrees, strategy, extra_prime, 0x9e37) {
                        Ok(r) => extra = Some(r),
                        Err(e) => {
                            retry_err = Some(e);
                            return Err(LinalgError::PrimeDisagreement(Vec::new()));
                        }
                    }
                }
                let r = extra.as_ref().expect("extra run").ranks[&k].clone().map(|x| x.0).unwrap_or(0);
                Ok((extra_prime, r))
            });
            if let Some(e) = retry_err {
                return Err(e);
            }
            let cert = cert?;
            ranks.insert(
                k,
                Some(RankRecord {
                    k,
                    rank: cert.rank,
                    rows,
                    cols,
                    method,
                    primes: cert.primes_used,
                    agreement: cert.agreement,
                    elapsed_ms: ms,
                }),
            );
        }
        (runs[0].dims.clone(), ranks)
    };

    let (letters, module) = spec.letters_and_module()?;
    let table = StructureTable::rational(&spec.algebra);
    let shape = Shape::new(&table, spec.shape_kind(), letters, module, Convention::P)?;
    let mut out = Vec::new();
    for k in degrees.clone() {
        let rk = ranks.get(&k).cloned().flatten();
        let rk1 = ranks.get(&(k + 1)).cloned().flatten();
        let dim = dims.get(&k).copied();
        let betti = match (dim, &rk, &rk1) {
            (Some(d), Some(a), Some(b)) => {
                let used = (a.rank + b.rank) as u64;
                if used > d {
                    return Err(ComplexError::Inconsistent(k));
                }
                Some(d - used)
            }
            _ => None,
        };
        out.push(DegreeReport {
            k,
            dim: dim.unwrap_or(0),
            full_dim: shape.full_dim(k),
            rank_dk: rk.as_ref().map(|r| r.rank),
            rank_dk1: rk1.as_ref().map(|r| r.rank),
            betti,
            skipped: betti.is_none().then(|| "over the column budget".to_string()),
        });
    }
    Ok(HomologyReport {
        algebra: spec.algebra.name().to_string(),
        n: spec.algebra.n(),
        flavor: spec.flavor.to_string(),
        reduction: spec.reduction,
        degrees: out,
        primes,
        seed: strategy.seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
        ranks: ranks.into_values().flatten().collect(),
    })
}
