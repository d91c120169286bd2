//! Bases of exterior and tensor powers, the right derivation action and
//! antisymmetrization.

mod chain;
pub mod codec;
mod named;
mod space;

pub use chain::{act, action_matrix, antisymmetrize, antisymmetrize_with_cap, Chain, DEFAULT_FACTORIAL_CAP};
pub use named::{named_chain, named_chain_in, ChainName};
pub use space::{ModuleSpace, SpaceKind};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MultilinearError {
    #[error("basis subset must be strictly increasing algebra indices")]
    BadBasisSubset,
    #[error("space dimension does not fit in 64 bits")]
    TooLarge,
    #[error("element does not belong to the space's algebra")]
    ElementMismatch,
    #[error("chains live in different spaces")]
    SpaceMismatch,
    #[error("factor space is not stable: [{0}, {1}] leaves it")]
    NotStable(String, String),
    #[error("{0} is not a factor basis vector of this space")]
    OutsideSpace(String),
    #[error("monomial has {got} slots, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("antisymmetrization of degree {k} exceeds the factorial cap {cap}")]
    FactorialCap { k: usize, cap: usize },
    #[error("operation needs a wedge or coefficient-wedge space")]
    WrongKind,
    #[error("unknown chain name `{0}`")]
    UnknownChain(String),
    #[error("named chains need n >= 2, got {0}")]
    InvalidN(usize),
    #[error("named chains are defined over schrodinger or galilei, not {0}")]
    WrongAlgebra(String),
}
