//! The defining bracket relations, evaluated against derived constants.

use serde::Serialize;

use super::{BasisKind, Element, LieAlgebra};
use crate::field::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub algebra: String,
    pub n: usize,
    pub relations: Vec<RelationCheck>,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

/// Checks every relation that applies to `alg`. Rotation relations are
/// checked for all ordered index pairs, using `X_ji = -X_ij`.
pub fn check_tables(alg: &LieAlgebra) -> TableReport {
    let n = alg.n();
    let d = alg.dim();
    let mut out = Vec::new();
    let q = |v: i64| Rational::from_integer(v.into());
    let mut check = |text: String, x: &Element, y: &Element, expected: Element| {
        let got = alg.bracket(x, y).expect("elements of alg");
        out.push(RelationCheck {
            relation: text,
            computed: alg.render(&got),
            passed: got == expected,
        });
    };
    let el = |k: BasisKind| alg.element(k);
    let zero = Element::zero(d);
    let (a, b, c, dd) = (el(BasisKind::A), el(BasisKind::B), el(BasisKind::C), el(BasisKind::D));
    let y = |i: usize| el(BasisKind::Boost(i));
    let yn = |i: usize| el(BasisKind::Momentum(i));

    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();

    for &(i, j) in &pairs {
        let Some(xij) = alg.rotation(i, j) else { continue };
        for k in (1..=n).filter(|&k| k != i && k != j) {
            let xik = alg.rotation(i, k).expect("rotation");
            let xjk = alg.rotation(j, k).expect("rotation");
            check(format!("[X{i}{j},X{i}{k}] = X{j}{k}"), &xij, &xik, xjk);
        }
        for (name, g) in [("a", &a), ("b", &b), ("c", &c), ("d", &dd)] {
            if let Some(g) = g {
                check(format!("[X{i}{j},{name}] = 0"), &xij, g, zero.clone());
            }
        }
        if let (Some(yi), Some(yj)) = (y(i), y(j)) {
            check(format!("[X{i}{j},y{i}] = y{j}"), &xij, &yi, yj);
        }
        if let (Some(yi), Some(yj)) = (yn(i), yn(j)) {
            check(format!("[X{i}{j},y{}] = y{}", n + i, n + j), &xij, &yi, yj);
        }
    }
    if let (Some(a), Some(b), Some(c)) = (&a, &b, &c) {
        check("[a,b] = -2b".into(), a, b, b.scale(&q(-2)));
        check("[a,c] = 2c".into(), a, c, c.scale(&q(2)));
        check("[b,c] = a".into(), b, c, a.clone());
    }
    for i in 1..=n {
        let (Some(yi), Some(ni)) = (y(i), yn(i)) else { continue };
        let m = n + i;
        if let (Some(a), Some(b), Some(c)) = (&a, &b, &c) {
            check(format!("[a,y{i}] = y{i}"), a, &yi, yi.clone());
            check(format!("[a,y{m}] = -y{m}"), a, &ni, ni.scale(&q(-1)));
            check(format!("[b,y{i}] = -y{m}"), b, &yi, ni.scale(&q(-1)));
            check(format!("[b,y{m}] = 0"), b, &ni, zero.clone());
            check(format!("[c,y{i}] = 0"), c, &yi, zero.clone());
            check(format!("[c,y{m}] = y{i}"), c, &ni, yi.clone());
        }
        if let Some(dd) = &dd {
            check(format!("[d,y{i}] = -y{i}"), dd, &yi, yi.scale(&q(-1)));
            check(format!("[d,y{m}] = -y{m}"), dd, &ni, ni.scale(&q(-1)));
        }
        for j in 1..=n {
            let nj = yn(j).expect("momentum");
            check(format!("[y{i},y{}] = 0", n + j), &yi, &nj, zero.clone());
        }
    }
    if let Some(dd) = &dd {
        for (name, g) in [("a", &a), ("b", &b), ("c", &c)] {
            if let Some(g) = g {
                check(format!("[{name},d] = 0"), g, dd, zero.clone());
            }
        }
    }
    // an abelian algebra: every basis bracket vanishes
    if alg.name() == super::AlgebraName::AbelianI {
        for i in 0..d {
            for j in 0..d {
                let (ei, ej) = (Element::basis(d, i), Element::basis(d, j));
                check(format!("[{},{}] = 0", alg.label(i), alg.label(j)), &ei, &ej, zero.clone());
            }
        }
    }
    TableReport {
        algebra: alg.name().to_string(),
        n,
        relations: out,
    }
}
