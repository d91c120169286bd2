//! Exact Lie-algebra and Leibniz homology of the Schrödinger algebra
//! `sch_n` and the full Galilei algebra, together with the invariant-theory
//! computations that describe them.

pub mod field;
pub mod liealg;
pub mod linalg;
pub mod complexes;
pub mod multilinear;
pub mod invariants;
pub mod series;
