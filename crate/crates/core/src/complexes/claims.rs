//! Chain-level evaluation of the two boundary identities for `ρ̄_n` and `ρ_n`
//! under each sign convention.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::chains::{ce_boundary_chain, is_ce_boundary, loday_boundary_chain};
use super::{ComplexError, Convention};
use crate::field::{Field, Rational, Rationals};
use crate::liealg::{build_algebra, AlgebraName, BasisKind};
use crate::multilinear::{antisymmetrize, named_chain_in, Chain, ChainName, ModuleSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "factor", rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    /// A nonzero multiple of the reference chain, with the factor.
    Multiple(String),
    Other,
}

fn verdict(x: &Chain, reference: &Chain) -> Verdict {
    if x.is_zero() {
        Verdict::Zero
    } else {
        match x.ratio_to(reference) {
            Some(c) => Verdict::Multiple(Rationals.render(&c)),
            None => Verdict::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub convention: String,
    /// `d(ρ̄_n)` in `Λ²(sch_n)` against `β_n`.
    pub d_rho_bar: Verdict,
    pub rho_bar_identity_holds: bool,
    pub d_rho_bar_chain: String,
    /// `d(ρ_n)` in `sch_n⊗I_n` against `Σ y_i⊗y_{n+i}`.
    pub d_rho: Verdict,
    pub rho_identity_holds: bool,
    pub d_rho_nonzero: bool,
    pub d_rho_chain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub n: usize,
    pub rows: Vec<ClaimRow>,
    /// Whether some convention gives exactly `-2(n-1) β_n` for `d(ρ̄_n)`.
    pub rho_bar_identity_in_some_convention: bool,
    /// `β_n` lies in the image of the CE boundary of `sch_n`.
    pub beta_is_boundary: bool,
    /// Loday boundary of `Σ X_ij⊗antisym(y_i∧y_{n+j}) - …` in `sch_n^{⊗2}`,
    /// compared with `Σ y_i⊗y_{n+i}`.
    pub loday_rho: Verdict,
    pub loday_rho_chain: String,
}

pub fn claims_report(n: usize) -> Result<ClaimsReport, ComplexError> {
    let g = Arc::new(build_algebra(AlgebraName::Schrodinger, n)?);
    let all: Vec<usize> = (0..g.dim()).collect();
    let y = |i: usize| {
        g.index_of(if i <= n { BasisKind::Boost(i) } else { BasisKind::Momentum(i - n) })
            .expect("ideal")
    };
    let factor = Rational::from_integer((-2 * (n as i64 - 1)).into());

    let beta = named_chain_in(&g, ChainName::Beta)?.embed(&ModuleSpace::wedge(g.clone(), all.clone(), 2)?)?;
    let rho_bar = named_chain_in(&g, ChainName::RhoBar)?;
    let rho = named_chain_in(&g, ChainName::Rho)?;
    let mut sigma = Chain::zero(ModuleSpace::coeff_wedge(g.clone(), all.clone(), g.ideal_indices(), 1)?);
    for i in 1..=n {
        sigma.add_term(&[y(i), y(n + i)], Rational::one())?;
    }

    let mut rows = Vec::new();
    for conv in Convention::ALL {
        let drb = ce_boundary_chain(&rho_bar, conv)?;
        let dr = ce_boundary_chain(&rho, conv)?;
        rows.push(ClaimRow {
            convention: conv.name().to_string(),
            d_rho_bar: verdict(&drb, &beta),
            rho_bar_identity_holds: drb == beta.scale(&factor),
            d_rho_bar_chain: drb.render(),
            d_rho: verdict(&dr, &sigma),
            rho_identity_holds: dr == sigma.scale(&factor),
            d_rho_nonzero: !dr.is_zero(),
            d_rho_chain: dr.render(),
        });
    }

    let tensor_rho = antisymmetrize(&rho)?.embed(&ModuleSpace::tensor(g.clone(), all.clone(), 3)?)?;
    let loday = loday_boundary_chain(&tensor_rho)?;
    let mut sigma_t = Chain::zero(ModuleSpace::tensor(g.clone(), all, 2)?);
    for i in 1..=n {
        sigma_t.add_term(&[y(i), y(n + i)], Rational::one())?;
    }
    debug_assert!(!factor.is_zero());
    Ok(ClaimsReport {
        n,
        rho_bar_identity_in_some_convention: rows.iter().any(|r| r.rho_bar_identity_holds),
        rows,
        beta_is_boundary: is_ce_boundary(&beta, &g)?,
        loday_rho: verdict(&loday, &sigma_t),
        loday_rho_chain: loday.render(),
    })
}
