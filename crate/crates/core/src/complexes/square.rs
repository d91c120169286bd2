//! Exact `d∘d = 0` checks that stream monomials instead of storing matrices.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::graded::Shape;
use super::{ComplexError, ComplexSpec, Convention};
use crate::field::{Rational, Rationals};
use crate::liealg::StructureTable;

/// Whether `d_{k-1} ∘ d_k` vanishes on the whole unreduced degree-`k` chain
/// space, over the rationals. Returns the first offending monomial code.
pub fn boundary_square(spec: &ComplexSpec, k: usize, conv: Convention) -> Result<Option<u64>, ComplexError> {
    if k < 2 {
        return Ok(None);
    }
    let table = StructureTable::<Rationals>::rational(&spec.algebra);
    let (letters, module) = spec.letters_and_module()?;
    let shape = Shape::new(&table, spec.shape_kind(), letters, module, conv)?;
    let full = shape.full_dim(k).unwrap_or(u64::MAX);
    if full > spec.budget_columns {
        return Err(ComplexError::Budget { k, columns: full, budget: spec.budget_columns });
    }
    let domain = shape.enumerate(k, None);
    let bad = domain.par_iter().find_map_any(|&code| {
        let mut first = Vec::new();
        shape.boundary(code, k, &mut first);
        let mut second = Vec::new();
        for (c, v) in first {
            let start = second.len();
            shape.boundary(c, k - 1, &mut second);
            for (_, w) in &mut second[start..] {
                *w *= &v;
            }
        }
        let mut acc: HashMap<u64, Rational> = HashMap::new();
        for (c, v) in second {
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        acc.values().any(|v| !v.is_zero()).then_some(code)
    });
    Ok(bad)
}
