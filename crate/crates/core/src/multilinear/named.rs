use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;

use super::chain::{antisymmetrize, Chain};
use super::space::ModuleSpace;
use super::MultilinearError;
use crate::field::Rational;
use crate::liealg::{build_algebra, AlgebraName, BasisKind, Component, LieAlgebra};

const IDEAL: [Component; 2] = [Component::Boosts, Component::Momenta];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainName {
    Alpha,
    Beta,
    Zeta,
    Rho,
    RhoBar,
    Gamma,
    AlphaTilde,
    ZetaTilde,
    GammaTilde,
}

impl ChainName {
    pub const ALL: [ChainName; 9] = [
        ChainName::Alpha,
        ChainName::Beta,
        ChainName::Zeta,
        ChainName::Rho,
        ChainName::RhoBar,
        ChainName::Gamma,
        ChainName::AlphaTilde,
        ChainName::ZetaTilde,
        ChainName::GammaTilde,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChainName::Alpha => "alpha",
            ChainName::Beta => "beta",
            ChainName::Zeta => "zeta",
            ChainName::Rho => "rho",
            ChainName::RhoBar => "rho_bar",
            ChainName::Gamma => "gamma",
            ChainName::AlphaTilde => "alpha_tilde",
            ChainName::ZetaTilde => "zeta_tilde",
            ChainName::GammaTilde => "gamma_tilde",
        }
    }
}

impl fmt::Display for ChainName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for ChainName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for ChainName {
    type Err = MultilinearError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChainName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| MultilinearError::UnknownChain(s.to_string()))
    }
}

/// Builds a named chain for `sch_n` (constructing the algebra).
pub fn named_chain(name: ChainName, n: usize) -> Result<Chain, MultilinearError> {
    if n < 2 {
        return Err(MultilinearError::InvalidN(n));
    }
    let g = Arc::new(build_algebra(AlgebraName::Schrodinger, n).map_err(|_| MultilinearError::InvalidN(n))?);
    named_chain_in(&g, name)
}

/// Builds a named chain over an existing Schrödinger or Galilei algebra.
///
/// `alpha`, `beta`, `zeta` live in `Λ^*(I_n)`; `rho`, `gamma` in
/// `so(n) ⊗ Λ^*(I_n)`; `rho_bar` in `Λ^3(g)`; `alpha_tilde`, `zeta_tilde` in
/// `I_n^{⊗*}`; `gamma_tilde` in `g^{⊗(2n-1)}`.
pub fn named_chain_in(g: &Arc<LieAlgebra>, name: ChainName) -> Result<Chain, MultilinearError> {
    if !matches!(g.name(), AlgebraName::Schrodinger | AlgebraName::Galilei) {
        return Err(MultilinearError::WrongAlgebra(g.name().to_string()));
    }
    let n = g.n();
    let y = |i: usize| {
        let kind = if i <= n {
            BasisKind::Boost(i)
        } else {
            BasisKind::Momentum(i - n)
        };
        g.index_of(kind).expect("ideal basis vector")
    };
    let x = |i: usize, j: usize| g.index_of(BasisKind::Rotation(i, j)).expect("rotation");
    let one = Rational::one();
    // y_1 ∧ … ∧ y_2n with y_p and y_q left out
    let omit = |p: usize, q: usize| -> Vec<usize> { (1..=2 * n).filter(|&i| i != p && i != q).map(y).collect() };
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();

    let chain = match name {
        ChainName::Alpha => {
            let mut c = Chain::zero(ModuleSpace::wedge_of(g.clone(), &IDEAL, 2 * n)?);
            c.add_term(&omit(0, 0), one)?;
            c
        }
        ChainName::Beta => {
            let mut c = Chain::zero(ModuleSpace::wedge_of(g.clone(), &IDEAL, 2)?);
            for i in 1..=n {
                c.add_term(&[y(i), y(n + i)], one.clone())?;
            }
            c
        }
        ChainName::Zeta => {
            let mut c = Chain::zero(ModuleSpace::wedge_of(g.clone(), &IDEAL, 2 * n - 2)?);
            for i in 1..=n {
                c.add_term(&omit(i, n + i), one.clone())?;
            }
            c
        }
        ChainName::Rho => {
            let space = ModuleSpace::coeff_wedge_of(g.clone(), &[Component::So], &IDEAL, 2)?;
            let mut c = Chain::zero(space);
            for &(i, j) in &pairs {
                c.add_term(&[x(i, j), y(i), y(n + j)], one.clone())?;
                c.add_term(&[x(i, j), y(j), y(n + i)], -one.clone())?;
            }
            c
        }
        ChainName::RhoBar => {
            let mut c = Chain::zero(ModuleSpace::wedge(g.clone(), (0..g.dim()).collect(), 3)?);
            for &(i, j) in &pairs {
                c.add_term(&[x(i, j), y(i), y(n + j)], one.clone())?;
                c.add_term(&[x(i, j), y(j), y(n + i)], -one.clone())?;
            }
            c
        }
        ChainName::Gamma => {
            let space = ModuleSpace::coeff_wedge_of(g.clone(), &[Component::So], &IDEAL, 2 * n - 2)?;
            let mut c = Chain::zero(space);
            for &(i, j) in &pairs {
                let mut plus = vec![x(i, j)];
                plus.extend(omit(i, n + j));
                c.add_term(&plus, one.clone())?;
                let mut minus = vec![x(i, j)];
                minus.extend(omit(j, n + i));
                c.add_term(&minus, -one.clone())?;
            }
            c
        }
        ChainName::AlphaTilde => antisymmetrize(&named_chain_in(g, ChainName::Alpha)?)?,
        ChainName::ZetaTilde => antisymmetrize(&named_chain_in(g, ChainName::Zeta)?)?,
        ChainName::GammaTilde => {
            let t = antisymmetrize(&named_chain_in(g, ChainName::Gamma)?)?;
            t.embed(&ModuleSpace::tensor(g.clone(), (0..g.dim()).collect(), 2 * n - 1)?)?
        }
    };
    Ok(chain)
}
