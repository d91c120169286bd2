//! Chevalley–Eilenberg and Loday complexes, their boundary matrices and
//! homology.
//!
//! The boundary conventions are
//!
//! ```text
//! CE:    d(v⊗g_1∧…∧g_k) = Σ_j (-1)^j [v,g_j]⊗g_1∧…ĝ_j…∧g_k
//!                       + Σ_{i<j} (-1)^{i+j-1} v⊗[g_i,g_j]∧g_1∧…ĝ_i…ĝ_j…∧g_k
//! Loday: d(g_1⊗…⊗g_k)   = Σ_{i<j} (-1)^j g_1⊗…⊗[g_i,g_j]⊗…ĝ_j…⊗g_k
//! ```
//!
//! with the bracket in slot `i`. Both square to zero for right modules.

mod chains;
mod claims;
mod graded;
mod homology;
mod square;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::liealg::{AlgebraName, LieAlgebra};
use crate::linalg::LinalgError;
use crate::multilinear::MultilinearError;

pub use chains::{ce_boundary, ce_boundary_chain, is_ce_boundary, loday_boundary, loday_boundary_chain};
pub use claims::{claims_report, ClaimRow, ClaimsReport, Verdict};
pub use homology::{betti, DegreeReport, HomologyReport, RankRecord};
pub use square::boundary_square;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("letters are not closed under the bracket or the module is not stable")]
    NotClosed,
    #[error("{0} letters do not fit a 64-bit wedge code")]
    TooManyLetters(usize),
    #[error("degree {k} needs {columns} columns, above the budget of {budget}")]
    Budget { k: usize, columns: u64, budget: u64 },
    #[error("weight-zero reduction needs the torus inside the algebra whose homology is taken")]
    InvalidReduction,
    #[error("{0} has no abelian ideal")]
    NoIdeal(AlgebraName),
    #[error("chain is not in a space this boundary accepts")]
    WrongSpace,
    #[error("degree {0} is out of range")]
    Degree(usize),
    #[error("inconsistent ranks at degree {0}")]
    Inconsistent(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Lie(#[from] crate::liealg::LieError),
}

/// Coefficient modules for the CE complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffModule {
    /// The algebra as a module over its abelian ideal, `CE(I; g)`.
    IdealInAdjoint,
    /// The adjoint module, `CE(g; g)`.
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    CeTrivial,
    CeCoefficients(CoeffModule),
    Loday,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::CeTrivial => "ce-trivial",
            Flavor::CeCoefficients(CoeffModule::IdealInAdjoint) => "ce-ideal-adjoint",
            Flavor::CeCoefficients(CoeffModule::Adjoint) => "ce-adjoint",
            Flavor::Loday => "leibniz",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "ce-trivial" => Flavor::CeTrivial,
            "ce-ideal-adjoint" => Flavor::CeCoefficients(CoeffModule::IdealInAdjoint),
            "ce-adjoint" => Flavor::CeCoefficients(CoeffModule::Adjoint),
            "leibniz" | "loday" => Flavor::Loday,
            other => return Err(format!("unknown flavor `{other}`")),
        })
    }
}

/// How much of the complex is kept.
///
/// The adjoint action of a torus element `h` is null-homotopic on every
/// complex here, and equals multiplication by the weight on a weight space;
/// so homology is concentrated in weight zero. `AllWeights` keeps the full
/// complex but splits each boundary into weight blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    None,
    WeightZero,
    AllWeights,
}

impl std::str::FromStr for Reduction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "none" => Reduction::None,
            "weight-zero" => Reduction::WeightZero,
            "all-weights" => Reduction::AllWeights,
            other => return Err(format!("unknown reduction `{other}`")),
        })
    }
}

/// Sign choices for the CE boundary; `P` is the convention above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Convention {
    /// Use `[g_j, v]` in place of `[v, g_j]`.
    pub reverse_coefficient_bracket: bool,
    /// Negate the second sum.
    pub flip_second_sum: bool,
}

impl Convention {
    pub const P: Convention = Convention {
        reverse_coefficient_bracket: false,
        flip_second_sum: false,
    };

    pub const ALL: [Convention; 4] = [
        Convention::P,
        Convention {
            reverse_coefficient_bracket: true,
            flip_second_sum: false,
        },
        Convention {
            reverse_coefficient_bracket: false,
            flip_second_sum: true,
        },
        Convention {
            reverse_coefficient_bracket: true,
            flip_second_sum: true,
        },
    ];

    pub fn name(&self) -> &'static str {
        match (self.reverse_coefficient_bracket, self.flip_second_sum) {
            (false, false) => "P",
            (true, false) => "coefficient-reversed",
            (false, true) => "second-sum-flipped",
            (true, true) => "both",
        }
    }
}

/// Eager assembly limit on the columns of one (reduced) boundary matrix.
pub const DEFAULT_BUDGET: u64 = 3_000_000;

#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub algebra: Arc<LieAlgebra>,
    pub flavor: Flavor,
    pub max_degree: usize,
    pub reduction: Reduction,
    pub budget_columns: u64,
}

impl ComplexSpec {
    /// Uses weight-zero reduction where it is valid and weight blocks
    /// otherwise.
    pub fn new(algebra: Arc<LieAlgebra>, flavor: Flavor, max_degree: usize) -> Self {
        let reduction = match flavor {
            Flavor::CeCoefficients(CoeffModule::IdealInAdjoint) => Reduction::AllWeights,
            _ => Reduction::WeightZero,
        };
        ComplexSpec {
            algebra,
            flavor,
            max_degree: max_degree.max(1),
            reduction,
            budget_columns: DEFAULT_BUDGET,
        }
    }

    pub fn with_reduction(mut self, reduction: Reduction) -> Self {
        self.reduction = reduction;
        self
    }

    pub fn with_budget(mut self, columns: u64) -> Self {
        self.budget_columns = columns;
        self
    }

    /// `(letters, module)` as algebra basis indices.
    pub(crate) fn letters_and_module(&self) -> Result<(Vec<usize>, Vec<usize>), ComplexError> {
        let all: Vec<usize> = (0..self.algebra.dim()).collect();
        Ok(match self.flavor {
            Flavor::CeTrivial | Flavor::Loday => (all, Vec::new()),
            Flavor::CeCoefficients(CoeffModule::Adjoint) => (all.clone(), all),
            Flavor::CeCoefficients(CoeffModule::IdealInAdjoint) => {
                let ideal = self.algebra.ideal_indices();
                if ideal.is_empty() {
                    return Err(ComplexError::NoIdeal(self.algebra.name()));
                }
                (ideal, all)
            }
        })
    }

    pub(crate) fn shape_kind(&self) -> graded::ShapeKind {
        match self.flavor {
            Flavor::CeTrivial => graded::ShapeKind::Wedge,
            Flavor::CeCoefficients(_) => graded::ShapeKind::CoeffWedge,
            Flavor::Loday => graded::ShapeKind::Tensor,
        }
    }
}

#[cfg(test)]
mod tests;
