//! Linear vector fields `x_a ∂/∂x^b` realised as elementary matrices `E_ab`
//! of size `(n+2) × (n+2)`. Coordinates `1..=n` are spatial, `n+1` and `n+2`
//! are the two extra coordinates of the `sl(2)` block.

use super::{BasisKind, BasisLabel};

pub type IntMatrix = Vec<Vec<i64>>;

fn elementary(size: usize, a: usize, b: usize) -> IntMatrix {
    let mut m = vec![vec![0; size]; size];
    m[a - 1][b - 1] = 1;
    m
}

fn combine(terms: &[(i64, IntMatrix)]) -> IntMatrix {
    let size = terms[0].1.len();
    let mut out = vec![vec![0; size]; size];
    for (c, m) in terms {
        for i in 0..size {
            for j in 0..size {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

/// The matrix of a basis vector field.
pub fn matrix_of(label: &BasisLabel) -> IntMatrix {
    let n = label.n;
    let size = n + 2;
    let (t1, t2) = (n + 1, n + 2);
    let e = |a, b| elementary(size, a, b);
    match label.kind {
        // X_ij = -x_i ∂/∂x^j + x_j ∂/∂x^i
        BasisKind::Rotation(i, j) => combine(&[(-1, e(i, j)), (1, e(j, i))]),
        // a = -x_{n+1} ∂/∂x^{n+1} + x_{n+2} ∂/∂x^{n+2}
        BasisKind::A => combine(&[(-1, e(t1, t1)), (1, e(t2, t2))]),
        BasisKind::B => e(t1, t2),
        BasisKind::C => combine(&[(-1, e(t2, t1))]),
        BasisKind::D => combine(&[(1, e(t1, t1)), (1, e(t2, t2))]),
        BasisKind::Boost(i) => e(i, t1),
        BasisKind::Momentum(i) => e(i, t2),
    }
}

pub fn commutator(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let size = x.len();
    let mut out = vec![vec![0; size]; size];
    for i in 0..size {
        for j in 0..size {
            let mut s = 0;
            for k in 0..size {
                s += x[i][k] * y[k][j] - y[i][k] * x[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Bracket of the vector fields `x_a ∂/∂x^b` and `x_c ∂/∂x^d`, computed on
/// the fields themselves: `δ_bc x_a ∂/∂x^d - δ_da x_c ∂/∂x^b`.
pub fn field_bracket(ab: (usize, usize), cd: (usize, usize)) -> Vec<(i64, (usize, usize))> {
    let (a, b) = ab;
    let (c, d) = cd;
    let mut out = Vec::new();
    if b == c {
        out.push((1, (a, d)));
    }
    if d == a {
        out.push((-1, (c, b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_fields(size: usize, terms: &[(i64, (usize, usize))]) -> IntMatrix {
        let mut out = vec![vec![0; size]; size];
        for (c, (a, b)) in terms {
            out[a - 1][b - 1] += c;
        }
        out
    }

    #[test]
    fn matrix_commutator_realises_field_bracket() {
        let size = 5;
        for a in 1..=size {
            for b in 1..=size {
                for c in 1..=size {
                    for d in 1..=size {
                        let lhs = commutator(&elementary(size, a, b), &elementary(size, c, d));
                        let rhs = from_fields(size, &field_bracket((a, b), (c, d)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
