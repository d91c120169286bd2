//! Sparse exact linear algebra over the rationals and prime fields.
//!
//! Three rank backends share one entry point ([`rank`]): dense echelon for
//! small matrices, Markowitz-ordered sparse elimination for medium ones, and
//! a Wiedemann black-box method over prime fields for large ones.

mod dense;
mod echelon;
mod elimination;
mod sparse;
mod wiedemann;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use dense::{dense_rank, dense_rref};
pub use echelon::RowEchelon;
pub use elimination::{sparse_rank, ElimStats};
pub use sparse::SparseMatrix;
pub use wiedemann::{berlekamp_massey, blackbox_rank};

use crate::field::{random_primes, Field, PrimeField};

pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("memory cap of {cap} bytes exceeded after {pivots} pivots with {entries} stored entries")]
    MemoryCap {
        cap: usize,
        pivots: usize,
        entries: usize,
    },
    #[error("primes disagree on rank: {0:?}")]
    PrimeDisagreement(Vec<(u64, usize)>),
    #[error("black-box rank requires modular arithmetic")]
    BlackBoxNeedsPrime,
    #[error("matrix entry has a denominator divisible by {0}")]
    BadPrime(u64),
}

/// Backend selection for [`rank`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Dense,
    Sparse,
    Blackbox,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "dense" => Ok(Method::Dense),
            "sparse" => Ok(Method::Sparse),
            "blackbox" => Ok(Method::Blackbox),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

/// Matrices whose larger side is below this go to dense echelon.
pub const DENSE_LIMIT: usize = 512;
/// Matrices whose larger side is below this try sparse elimination first.
pub const SPARSE_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankStrategy {
    pub method: Method,
    /// Work modulo random primes instead of over the matrix's own field.
    pub modular: bool,
    /// Number of primes for modular mode (at least 1).
    pub primes: usize,
    pub seed: u64,
    /// Budget in bytes for elimination fill-in and dense storage.
    pub memory_cap: usize,
}

impl RankStrategy {
    pub fn exact() -> Self {
        RankStrategy {
            method: Method::Auto,
            modular: false,
            primes: 0,
            seed: 0,
            memory_cap: 2 << 30,
        }
    }

    pub fn modular(primes: usize, seed: u64) -> Self {
        RankStrategy {
            method: Method::Auto,
            modular: true,
            primes: primes.max(1),
            seed,
            memory_cap: 2 << 30,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_memory_cap(mut self, cap: usize) -> Self {
        self.memory_cap = cap;
        self
    }

    /// The primes modular mode uses for this seed, in order.
    pub fn prime_list(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        random_primes(&mut rng, self.primes.max(1), &[])
    }

    /// One prime beyond [`Self::prime_list`], drawn on disagreement.
    pub fn extra_prime(&self) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let all = random_primes(&mut rng, self.primes.max(1) + 1, &[]);
        *all.last().expect("nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    DenseEchelon,
    SparseElimination,
    Blackbox,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub method: RankMethod,
    /// Empty for exact rational ranks.
    pub primes_used: Vec<u64>,
    pub agreement: bool,
}

impl RankCertificate {
    fn exact(rank: usize, method: RankMethod) -> Self {
        RankCertificate {
            rank,
            method,
            primes_used: Vec::new(),
            agreement: true,
        }
    }
}

/// Rank of `m`.
///
/// Over a prime field, or in exact mode, the result is the rank over the
/// matrix's own field. In modular mode a rational matrix is reduced modulo
/// each strategy prime; when the primes disagree one extra prime is drawn and
/// the largest rank is accepted if at least two primes produced it.
pub fn rank<F: Field>(m: &SparseMatrix<F>, strategy: &RankStrategy) -> Result<RankCertificate, LinalgError> {
    let field = m.field();
    if field.characteristic() != 0 {
        let fp = PrimeField::new(field.characteristic());
        let reduced = m.reduce_mod(&fp)?;
        let (r, method) = rank_mod_p(&reduced, strategy.method, strategy.memory_cap, strategy.seed)?;
        return Ok(RankCertificate {
            rank: r,
            method,
            primes_used: vec![fp.modulus()],
            agreement: true,
        });
    }
    if !strategy.modular {
        let (r, method) = rank_exact(m, strategy.method, strategy.memory_cap)?;
        return Ok(RankCertificate::exact(r, method));
    }
    let primes = strategy.prime_list();
    let results: Vec<Result<(u64, usize, RankMethod), LinalgError>> = primes
        .par_iter()
        .enumerate()
        .map(|(i, &p)| {
            let fp = PrimeField::new(p);
            let reduced = m.reduce_mod(&fp)?;
            let seed = strategy.seed.wrapping_add(i as u64 + 1);
            rank_mod_p(&reduced, strategy.method, strategy.memory_cap, seed).map(|(r, meth)| (p, r, meth))
        })
        .collect();
    let mut per_prime = Vec::new();
    let mut method = RankMethod::DenseEchelon;
    for res in results {
        let (p, r, meth) = res?;
        per_prime.push((p, r));
        method = meth;
    }
    certify(per_prime, method, || {
        let p = strategy.extra_prime();
        let fp = PrimeField::new(p);
        let reduced = m.reduce_mod(&fp)?;
        rank_mod_p(&reduced, strategy.method, strategy.memory_cap, strategy.seed ^ 0x9e37)
            .map(|(r, _)| (p, r))
    })
}

/// Combines per-prime ranks into a certificate, drawing one extra prime via
/// `retry` when they disagree.
pub fn certify(
    mut per_prime: Vec<(u64, usize)>,
    method: RankMethod,
    retry: impl FnOnce() -> Result<(u64, usize), LinalgError>,
) -> Result<RankCertificate, LinalgError> {
    let agree = |v: &[(u64, usize)]| v.windows(2).all(|w| w[0].1 == w[1].1);
    if agree(&per_prime) {
        let rank = per_prime.first().map(|x| x.1).unwrap_or(0);
        return Ok(RankCertificate {
            rank,
            method,
            primes_used: per_prime.iter().map(|x| x.0).collect(),
            agreement: true,
        });
    }
    per_prime.push(retry()?);
    let best = per_prime.iter().map(|x| x.1).max().unwrap_or(0);
    let supporting: Vec<u64> = per_prime.iter().filter(|x| x.1 == best).map(|x| x.0).collect();
    if supporting.len() >= 2 {
        Ok(RankCertificate {
            rank: best,
            method,
            primes_used: supporting,
            agreement: false,
        })
    } else {
        Err(LinalgError::PrimeDisagreement(per_prime))
    }
}

fn rank_exact<F: Field>(m: &SparseMatrix<F>, method: Method, cap: usize) -> Result<(usize, RankMethod), LinalgError> {
    let large = m.rows().max(m.cols());
    match method {
        Method::Blackbox => Err(LinalgError::BlackBoxNeedsPrime),
        Method::Dense => dense_checked(m, cap),
        Method::Sparse => Ok((sparse_rank(m, cap)?.rank, RankMethod::SparseElimination)),
        Method::Auto if large < DENSE_LIMIT => dense_checked(m, cap),
        Method::Auto => Ok((sparse_rank(m, cap)?.rank, RankMethod::SparseElimination)),
    }
}

fn dense_checked<F: Field>(m: &SparseMatrix<F>, cap: usize) -> Result<(usize, RankMethod), LinalgError> {
    let bytes = m.rows() * m.cols() * m.field().el_bytes();
    if bytes > cap {
        return Err(LinalgError::MemoryCap {
            cap,
            pivots: 0,
            entries: m.rows() * m.cols(),
        });
    }
    Ok((dense_rank(m), RankMethod::DenseEchelon))
}

/// Rank over a prime field with the given backend; `Auto` falls back from
/// sparse elimination to the black-box method when fill-in hits the cap.
pub fn rank_mod_p(
    m: &SparseMatrix<PrimeField>,
    method: Method,
    cap: usize,
    seed: u64,
) -> Result<(usize, RankMethod), LinalgError> {
    let large = m.rows().max(m.cols());
    match method {
        Method::Dense => dense_checked(m, cap),
        Method::Sparse => Ok((sparse_rank(m, cap)?.rank, RankMethod::SparseElimination)),
        Method::Blackbox => Ok((blackbox_rank(m, seed), RankMethod::Blackbox)),
        Method::Auto if large < DENSE_LIMIT => dense_checked(m, cap),
        Method::Auto if large < SPARSE_LIMIT => match sparse_rank(m, cap) {
            Ok(stats) => Ok((stats.rank, RankMethod::SparseElimination)),
            Err(LinalgError::MemoryCap { .. }) => Ok((blackbox_rank(m, seed), RankMethod::Blackbox)),
            Err(e) => Err(e),
        },
        Method::Auto => Ok((blackbox_rank(m, seed), RankMethod::Blackbox)),
    }
}

/// Basis of the right null space `{x : M x = 0}`.
///
/// One vector per non-pivot column `f` of the reduced row echelon form, with
/// coefficient 1 at `f`; vectors are ordered by `f`.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>, cap: usize) -> Result<Vec<SparseVec<F::El>>, LinalgError> {
    let mut ech = RowEchelon::new(m.field().clone(), m.cols());
    let rows = m.transpose();
    for r in 0..rows.cols() {
        let row: SparseVec<F::El> = rows.column_iter(r).map(|(i, v)| (i, v.clone())).collect();
        ech.insert(row);
        if ech.stored_entries() * m.field().el_bytes() > cap {
            return Err(LinalgError::MemoryCap {
                cap,
                pivots: ech.rank(),
                entries: ech.stored_entries(),
            });
        }
    }
    ech.reduce_fully();
    Ok(ech.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rows(rows: &[Vec<i64>]) -> SparseMatrix<Rationals> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = SparseMatrix::new(Rationals, r);
        for j in 0..c {
            m.push_column((0..r).map(|i| (i, q(rows[i][j]))).collect());
        }
        m
    }

    #[test]
    fn identity_and_zero_ranks() {
        let id = SparseMatrix::identity(Rationals, 5);
        assert_eq!(rank(&id, &RankStrategy::exact()).unwrap().rank, 5);
        let z = SparseMatrix::zero(Rationals, 4, 7);
        assert_eq!(rank(&z, &RankStrategy::exact()).unwrap().rank, 0);
        let cert = rank(&z, &RankStrategy::modular(2, 1)).unwrap();
        assert_eq!(cert.rank, 0);
        assert_eq!(cert.primes_used.len(), 2);
    }

    #[test]
    fn kernel_of_zero_and_of_single_row() {
        let z = SparseMatrix::zero(Rationals, 3, 3);
        let k = kernel_basis(&z, usize::MAX).unwrap();
        assert_eq!(k, vec![vec![(0, q(1))], vec![(1, q(1))], vec![(2, q(1))]]);
        let m = from_rows(&[vec![1, 1]]);
        let k = kernel_basis(&m, usize::MAX).unwrap();
        assert_eq!(k, vec![vec![(0, q(-1)), (1, q(1))]]);
    }

    #[test]
    fn blackbox_refused_over_rationals() {
        let id = SparseMatrix::identity(Rationals, 2);
        let s = RankStrategy::exact().with_method(Method::Blackbox);
        assert_eq!(rank(&id, &s), Err(LinalgError::BlackBoxNeedsPrime));
    }

    #[test]
    fn memory_cap_reported() {
        let id = SparseMatrix::identity(Rationals, 50);
        let s = RankStrategy::exact().with_method(Method::Dense).with_memory_cap(100);
        assert!(matches!(rank(&id, &s), Err(LinalgError::MemoryCap { .. })));
    }

    #[test]
    fn certify_retries_on_disagreement() {
        let c = certify(vec![(5, 3), (13, 2)], RankMethod::DenseEchelon, || Ok((17, 3))).unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.primes_used, vec![5, 17]);
        assert!(!c.agreement);
        let e = certify(vec![(5, 3), (13, 2)], RankMethod::DenseEchelon, || Ok((17, 1)));
        assert!(matches!(e, Err(LinalgError::PrimeDisagreement(_))));
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            let entries = prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..4], r * c);
            (Just(r), Just(c), entries)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity_and_backends_agree((r, c, e) in small_matrix()) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| e[i * c..(i + 1) * c].to_vec()).collect();
            let m = from_rows(&rows);
            let dense = rank(&m, &RankStrategy::exact().with_method(Method::Dense)).unwrap().rank;
            let sparse = rank(&m, &RankStrategy::exact().with_method(Method::Sparse)).unwrap().rank;
            prop_assert_eq!(dense, sparse);
            let kernel = kernel_basis(&m, usize::MAX).unwrap();
            prop_assert_eq!(dense + kernel.len(), c);
            for v in &kernel {
                let image = m.mul_sparse(v);
                prop_assert!(image.is_empty());
            }
            let modular = rank(&m, &RankStrategy::modular(2, 3)).unwrap();
            prop_assert!(modular.rank <= dense);
            prop_assert_eq!(modular.rank, dense);
            let bb = rank(&m, &RankStrategy::modular(2, 3).with_method(Method::Blackbox)).unwrap();
            prop_assert_eq!(bb.rank, dense);
        }
    }
}
