//! Truncated Poincaré series and the predicted homology series.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::complexes::{betti, ComplexError, ComplexSpec, Flavor, Reduction};
use crate::liealg::{build_algebra, AlgebraName, LieError};
use crate::linalg::RankStrategy;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("truncations differ: {0} and {1}")]
    Truncation(usize, usize),
    #[error("constant term must be 1, got {0}")]
    NotConnected(u64),
    #[error("coefficient of degree {0} is negative")]
    Negative(usize),
    #[error("coefficient overflow at degree {0}")]
    Overflow(usize),
    #[error("n must be at least 2")]
    InvalidN,
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `Σ c_k t^k` for `k ≤ truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    coefficients: Vec<u64>,
    truncation: usize,
}

impl PoincareSeries {
    /// Pads with zeros or cuts to exactly `truncation + 1` coefficients.
    pub fn new(mut coefficients: Vec<u64>, truncation: usize) -> Self {
        coefficients.resize(truncation + 1, 0);
        PoincareSeries { coefficients, truncation }
    }

    pub fn one(truncation: usize) -> Self {
        Self::new(vec![1], truncation)
    }

    /// `1 + t^d + t^{2d} + …`
    pub fn geometric(d: usize, truncation: usize) -> Self {
        assert!(d > 0, "geometric series needs a positive step");
        let c = (0..=truncation).map(|k| u64::from(k % d == 0)).collect();
        PoincareSeries { coefficients: c, truncation }
    }

    /// `Σ t^d` over the listed degrees, with multiplicity.
    pub fn from_degrees(degrees: &[usize], truncation: usize) -> Self {
        let mut c = vec![0; truncation + 1];
        for &d in degrees {
            if d <= truncation {
                c[d] += 1;
            }
        }
        PoincareSeries { coefficients: c, truncation }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coefficients.get(k).copied().unwrap_or(0)
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        Self::new(self.coefficients.clone(), truncation)
    }

    fn same_truncation(&self, other: &Self) -> Result<usize, SeriesError> {
        if self.truncation == other.truncation {
            Ok(self.truncation)
        } else {
            Err(SeriesError::Truncation(self.truncation, other.truncation))
        }
    }

    /// Graded tensor product (convolution).
    pub fn tensor(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.same_truncation(other)?;
        let mut c = vec![0u64; n + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients[..=n - i].iter().enumerate() {
                c[i + j] = a
                    .checked_mul(b)
                    .and_then(|p| c[i + j].checked_add(p))
                    .ok_or(SeriesError::Overflow(i + j))?;
            }
        }
        Ok(PoincareSeries { coefficients: c, truncation: n })
    }

    /// Free product of connected graded spaces: `1/P = 1/P_A + 1/P_B − 1`.
    pub fn free_product(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.same_truncation(other)?;
        let ia = invert(&signed(self)?, n);
        let ib = invert(&signed(other)?, n);
        let mut sum: Vec<i128> = ia.iter().zip(&ib).map(|(a, b)| a + b).collect();
        sum[0] -= 1;
        unsigned(invert(&sum, n))
    }
}

fn signed(p: &PoincareSeries) -> Result<Vec<i128>, SeriesError> {
    if p.coefficients[0] != 1 {
        return Err(SeriesError::NotConnected(p.coefficients[0]));
    }
    Ok(p.coefficients.iter().map(|&c| i128::from(c)).collect())
}

fn unsigned(c: Vec<i128>) -> Result<PoincareSeries, SeriesError> {
    let truncation = c.len() - 1;
    let coefficients = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            if v < 0 {
                Err(SeriesError::Negative(k))
            } else {
                u64::try_from(v).map_err(|_| SeriesError::Overflow(k))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(PoincareSeries { coefficients, truncation })
}

/// Inverse of a series with constant term 1, truncated at `n`.
fn invert(p: &[i128], n: usize) -> Vec<i128> {
    debug_assert_eq!(p[0], 1);
    let mut q = vec![0i128; n + 1];
    q[0] = 1;
    for k in 1..=n {
        q[k] = -(1..=k).map(|i| p[i] * q[k - i]).sum::<i128>();
    }
    q
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&terms.join(" + "))?;
        }
        write!(f, " + O(t^{})", self.truncation + 1)
    }
}

/// Counts alternating words in the positive-degree parts of `a` and `b` by
/// direct enumeration of letters.
pub fn count_alternating_words(a: &PoincareSeries, b: &PoincareSeries, max_degree: usize) -> Vec<u64> {
    let letters = |p: &PoincareSeries, side: u8| -> Vec<(u8, usize)> {
        (1..=max_degree)
            .flat_map(|d| std::iter::repeat((side, d)).take(p.coeff(d) as usize))
            .collect()
    };
    let mut all = letters(a, 0);
    all.extend(letters(b, 1));
    let mut counts = vec![0u64; max_degree + 1];
    fn walk(all: &[(u8, usize)], last: Option<u8>, degree: usize, max: usize, counts: &mut [u64]) {
        counts[degree] += 1;
        for &(side, d) in all {
            if Some(side) != last && degree + d <= max {
                walk(all, Some(side), degree + d, max, counts);
            }
        }
    }
    walk(&all, None, 0, max_degree, &mut counts);
    counts
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    LieSch,
    LeibnizSch,
    LeibnizGalilei,
}

impl FromStr for Target {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lie_sch" => Ok(Target::LieSch),
            "leibniz_sch" => Ok(Target::LeibnizSch),
            "leibniz_galilei" => Ok(Target::LeibnizGalilei),
            other => Err(SeriesError::UnknownTarget(other.to_string())),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::LieSch => "lie_sch",
            Target::LeibnizSch => "leibniz_sch",
            Target::LeibnizGalilei => "leibniz_galilei",
        })
    }
}

/// Degree of the tensor-algebra generator in the Leibniz prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaDegree {
    /// `2n − 2`
    #[serde(rename = "2n-2")]
    TwoNMinus2,
    /// `2n − 1`
    #[serde(rename = "2n-1")]
    TwoNMinus1,
}

impl GammaDegree {
    pub fn degree(self, n: usize) -> usize {
        match self {
            GammaDegree::TwoNMinus2 => 2 * n - 2,
            GammaDegree::TwoNMinus1 => 2 * n - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesOptions {
    pub beta_included: bool,
    pub gamma_degree: GammaDegree,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { beta_included: false, gamma_degree: GammaDegree::TwoNMinus2 }
    }
}

/// Lie homology series of a small algebra, from its CE complex (exact).
pub fn lie_homology_series(name: AlgebraName, n: usize, truncation: usize) -> Result<PoincareSeries, SeriesError> {
    let alg = Arc::new(build_algebra(name, n)?);
    let top = alg.dim().min(truncation);
    let spec = ComplexSpec::new(alg, Flavor::CeTrivial, top).with_reduction(Reduction::WeightZero);
    let report = betti(&spec, 0..=top, &RankStrategy::exact())?;
    let b: Vec<u64> = report.betti_numbers().into_iter().map(|b| b.unwrap_or(0)).collect();
    Ok(PoincareSeries::new(b, truncation))
}

/// The series predicted for `target`. The `warning` is set when the
/// truncation cannot tell the two gamma-degree options apart.
pub fn predicted_series(
    target: Target,
    n: usize,
    options: SeriesOptions,
    truncation: usize,
) -> Result<PoincareSeries, SeriesError> {
    if n < 2 {
        return Err(SeriesError::InvalidN);
    }
    match target {
        Target::LieSch => {
            let so = lie_homology_series(AlgebraName::So, n, truncation)?;
            let sl2 = lie_homology_series(AlgebraName::Sl2, n, truncation)?;
            let mut degrees = vec![0, 2 * n - 2, 2 * n];
            if options.beta_included {
                degrees.push(2);
            }
            let invariants = PoincareSeries::from_degrees(&degrees, truncation);
            sl2.tensor(&so)?.tensor(&invariants)
        }
        Target::LeibnizSch => {
            let base = PoincareSeries::from_degrees(&[0, 2 * n - 2, 2 * n], truncation);
            base.tensor(&PoincareSeries::geometric(options.gamma_degree.degree(n), truncation))
        }
        Target::LeibnizGalilei => {
            let sch = predicted_series(Target::LeibnizSch, n, options, truncation)?;
            sch.free_product(&PoincareSeries::geometric(1, truncation))
        }
    }
}

/// Whether `truncation` reaches the first degree where the two gamma-degree
/// options differ.
pub fn distinguishes_gamma_options(target: Target, n: usize, truncation: usize) -> bool {
    target == Target::LieSch || truncation >= 2 * n - 2
}
