//! Built-in example algebras.

use crate::error::{Error, Result};
use crate::homlie::{AlgebraBuilder, SuperAlgebra, SuperBasis};
use crate::parity::Parity;
use crate::scalars::{FieldSpec, Rational, Scalar};

fn basis(even: &[&str], odd: &[&str]) -> SuperBasis {
    let entries = even
        .iter()
        .map(|l| (l.to_string(), Parity::Even))
        .chain(odd.iter().map(|l| (l.to_string(), Parity::Odd)))
        .collect();
    SuperBasis::new(entries).expect("catalog bases are valid")
}

/// The orthosymplectic Hom-Lie superalgebra with even part `H, X, Y`, odd part
/// `F, G`, twisted by `alpha(X) = l^2 X`, `alpha(Y) = Y / l^2`, `alpha(H) = H`,
/// `alpha(F) = F / l`, `alpha(G) = l G`.
pub fn osp12(lambda: &Rational) -> Result<SuperAlgebra> {
    if lambda.is_zero() {
        return Err(Error::Input("lambda must be nonzero".into()));
    }
    let field = FieldSpec::rational();
    let r = |x: Rational| Scalar::Rat(x);
    let l = lambda.clone();
    let l2 = &l * &l;
    let il = l.inv()?;
    let il2 = l2.inv()?;
    let two = Rational::from_int(2);
    let mut b = AlgebraBuilder::new(field, basis(&["H", "X", "Y"], &["F", "G"]));
    b.bracket("H", "X", &[("X", r(&two * &l2))])?
        .bracket("H", "Y", &[("Y", r(-(&two * &il2)))])?
        .bracket("X", "Y", &[("H", r(Rational::one()))])?
        .bracket("Y", "G", &[("F", r(il.clone()))])?
        .bracket("X", "F", &[("G", r(l.clone()))])?
        .bracket("H", "F", &[("F", r(-&il))])?
        .bracket("H", "G", &[("G", r(l.clone()))])?
        .bracket("G", "F", &[("H", r(Rational::one()))])?
        .bracket("G", "G", &[("X", r(-(&two * &l2)))])?
        .bracket("F", "F", &[("Y", r(&two * &il2))])?;
    b.alpha("X", &[("X", r(l2.clone()))])?
        .alpha("Y", &[("Y", r(il2))])?
        .alpha("F", &[("F", r(il))])?
        .alpha("G", &[("G", r(l))])?;
    b.build()
}

/// Three-dimensional example: even `e1`, odd `e2, e3`, with `[e1, e2] = 2 e2`,
/// `[e1, e3] = 2 e3`, `[e2, e3] = e1`, `[e2, e2] = [e3, e3] = 0`,
/// `alpha(e2) = e3`, `alpha(e3) = -e2`.
pub fn example_3dim() -> SuperAlgebra {
    let field = FieldSpec::rational();
    let f = |n: i64| field.int(n);
    let mut b = AlgebraBuilder::new(field.clone(), basis(&["e1"], &["e2", "e3"]));
    b.bracket("e1", "e2", &[("e2", f(2))])
        .and_then(|b| b.bracket("e1", "e3", &[("e3", f(2))]))
        .and_then(|b| b.bracket("e2", "e3", &[("e1", f(1))]))
        .and_then(|b| b.alpha("e2", &[("e3", f(1))]))
        .and_then(|b| b.alpha("e3", &[("e2", f(-1))]))
        .expect("labels exist");
    b.build().expect("example data is well formed")
}

/// `sl(2)` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`, untwisted.
pub fn sl2() -> SuperAlgebra {
    let field = FieldSpec::rational();
    let f = |n: i64| field.int(n);
    let mut b = AlgebraBuilder::new(field.clone(), basis(&["h", "e", "f"], &[]));
    b.bracket("h", "e", &[("e", f(2))])
        .and_then(|b| b.bracket("h", "f", &[("f", f(-2))]))
        .and_then(|b| b.bracket("e", "f", &[("h", f(1))]))
        .expect("labels exist");
    b.build().expect("sl2 data is well formed")
}

/// Abelian superalgebra with the given numbers of even and odd generators, untwisted.
pub fn abelian(even: usize, odd: usize) -> SuperAlgebra {
    let ev: Vec<String> = (1..=even).map(|i| format!("a{i}")).collect();
    let od: Vec<String> = (1..=odd).map(|i| format!("b{i}")).collect();
    let ev: Vec<&str> = ev.iter().map(String::as_str).collect();
    let od: Vec<&str> = od.iter().map(String::as_str).collect();
    AlgebraBuilder::new(FieldSpec::rational(), basis(&ev, &od))
        .build()
        .expect("abelian data is well formed")
}

/// `osp12(lambda)` plus a one-dimensional even abelian summand `Z`.
pub fn osp12_plus_line(lambda: &Rational) -> Result<SuperAlgebra> {
    let osp = osp12(lambda)?;
    let mut entries: Vec<(String, Parity)> = osp
        .basis()
        .labels()
        .iter()
        .cloned()
        .zip(osp.basis().parities().iter().copied())
        .collect();
    entries.insert(3, ("Z".into(), Parity::Even));
    let b = SuperBasis::new(entries)?;
    let shift = |i: usize| if i < 3 { i } else { i + 1 };
    let mut builder = AlgebraBuilder::new(osp.field().clone(), b);
    for i in 0..osp.dim() {
        for j in i..osp.dim() {
            builder.set_bracket(shift(i), shift(j), osp.bracket_basis(i, j).reindex(shift))?;
        }
    }
    let mut alpha = crate::linalg::Matrix::identity(osp.mode(), osp.dim() + 1);
    for i in 0..osp.dim() {
        for j in 0..osp.dim() {
            alpha.set(shift(i), shift(j), osp.alpha().get(i, j).clone());
        }
    }
    builder.set_alpha(alpha);
    builder.build()
}

/// Expected checker outcomes for a catalog entry. `None` means the status is
/// computed rather than asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedStatus {
    pub hom_lie: Option<bool>,
    pub multiplicative: Option<bool>,
}

/// A named catalog entry with its builder parameters.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub expected: ExpectedStatus,
    pub algebra: SuperAlgebra,
}

/// Looks up an entry by name. Accepted names: `osp12` (optionally `osp12:<lambda>`,
/// default 2), `example3`, `sl2`, `abelian:<even>:<odd>`, and
/// `qwitt:<N>:<q>` for a truncated q-Witt window.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let rest: Vec<&str> = parts.collect();
    let param = |i: usize, default: &str| rest.get(i).copied().unwrap_or(default).to_string();
    let known = |hom_lie, multiplicative| ExpectedStatus {
        hom_lie,
        multiplicative,
    };
    match head {
        "osp12" => {
            let l = param(0, "2");
            let lambda: Rational = l.parse()?;
            Ok(CatalogEntry {
                name: name.into(),
                parameters: vec![("lambda".into(), lambda.to_string())],
                expected: known(Some(true), Some(true)),
                algebra: osp12(&lambda)?,
            })
        }
        "example3" => Ok(CatalogEntry {
            name: name.into(),
            parameters: vec![],
            expected: known(None, None),
            algebra: example_3dim(),
        }),
        "sl2" => Ok(CatalogEntry {
            name: name.into(),
            parameters: vec![],
            expected: known(Some(true), Some(true)),
            algebra: sl2(),
        }),
        "abelian" => {
            let parse = |s: String| {
                s.parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad count {s:?}")))
            };
            let (e, o) = (parse(param(0, "1"))?, parse(param(1, "1"))?);
            Ok(CatalogEntry {
                name: name.into(),
                parameters: vec![
                    ("even".into(), e.to_string()),
                    ("odd".into(), o.to_string()),
                ],
                expected: known(Some(true), Some(true)),
                algebra: abelian(e, o),
            })
        }
        "qwitt" => {
            let n: i64 = param(0, "4")
                .parse()
                .map_err(|_| Error::Input("bad window size".into()))?;
            let q = param(1, "2");
            let field = if q == "q" {
                FieldSpec::symbolic()
            } else {
                FieldSpec::specialized(q.parse()?)
            };
            let window = crate::qwitt::Window::new(n, field)?;
            Ok(CatalogEntry {
                name: name.into(),
                parameters: vec![("N".into(), n.to_string()), ("q".into(), q)],
                expected: known(None, Some(false)),
                algebra: window.truncated_algebra()?,
            })
        }
        _ => Err(Error::Input(format!("unknown catalog entry {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp_bracket_values() {
        let a = osp12(&Rational::from_int(2)).unwrap();
        let idx = |l: &str| a.basis().index_of(l).unwrap();
        assert_eq!(a.bracket_basis(idx("X"), idx("Y")), &a.unit(idx("H")));
        assert!(a.bracket_basis(idx("G"), idx("X")).is_zero());
        assert!(a.bracket_basis(idx("Y"), idx("F")).is_zero());
        assert!(osp12(&Rational::zero()).is_err());
    }

    #[test]
    fn example3_twist() {
        let a = example_3dim();
        let m = a.alpha();
        assert_eq!(m.get(2, 1), &a.field().int(1));
        assert_eq!(m.get(1, 2), &a.field().int(-1));
        assert_eq!(
            a.basis().parity_of(a.bracket_basis(1, 2)),
            Some(Parity::Even)
        );
    }
}
