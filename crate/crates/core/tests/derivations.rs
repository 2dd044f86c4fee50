use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homlie_core::catalog::{abelian, osp12, osp12_plus_line, sl2};
use homlie_core::cohomology::SignConvention;
use homlie_core::derivations::{
    alpha_commutator, alphak_derivations, derivation_commutator, inner_derivations,
    is_alpha_derivation, leibniz_defect, map_parity, z1_equals_der, DerivationSpace,
};
use homlie_core::homlie::SuperAlgebra;
use homlie_core::linalg::{unflatten, Matrix, SparseVec};
use homlie_core::scalars::{FieldMode, Rational, Scalar};
use homlie_core::{Error, Parity};

const Q: FieldMode = FieldMode::Rational;

fn osp() -> SuperAlgebra {
    osp12(&Rational::from_int(2)).unwrap()
}

fn catalog() -> Vec<SuperAlgebra> {
    vec![osp(), osp12_plus_line(&Rational::from_int(3)).unwrap(), sl2(), abelian(2, 1)]
}

fn random_element(rng: &mut ChaCha8Rng, d: &DerivationSpace) -> Matrix {
    let mut v = SparseVec::new();
    for b in d.space.basis() {
        v = v.add_scaled(&Scalar::from_int(Q, rng.gen_range(-3..=3)), b);
    }
    unflatten(&v, d.dim_algebra, d.dim_algebra, Q)
}

#[test]
fn abelian_derivations_are_alpha_commuting_maps() {
    let a = abelian(2, 1);
    assert_eq!(alphak_derivations(&a, 0, Parity::Even).unwrap().dim(), 5);
    assert_eq!(alphak_derivations(&a, 0, Parity::Odd).unwrap().dim(), 4);
    for p in Parity::BOTH {
        assert_eq!(inner_derivations(&a, 1, p).unwrap().dim(), 0);
    }
}

#[test]
fn minus_one_derivations_kill_brackets() {
    for a in catalog() {
        for p in Parity::BOTH {
            let d = alphak_derivations(&a, -1, p).unwrap();
            for m in d.basis_maps() {
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        assert!(m.apply(a.bracket_basis(i, j)).is_zero());
                    }
                }
                assert!(alpha_commutator(&a, &m).is_zero());
            }
        }
    }
    // the derived algebra of osp is everything
    assert_eq!(alphak_derivations(&osp(), -1, Parity::Even).unwrap().dim(), 0);
}

#[test]
fn basis_elements_have_zero_residual() {
    for a in catalog() {
        for k in -1..=2 {
            for p in Parity::BOTH {
                let d = alphak_derivations(&a, k, p).unwrap();
                for m in d.basis_maps() {
                    assert_eq!(map_parity(a.basis(), &m), Some(p));
                    assert!(leibniz_defect(&a, &m, k, p).is_zero());
                    assert!(is_alpha_derivation(&a, &m, k, p));
                }
            }
        }
    }
}

#[test]
fn osp_derivation_dimensions() {
    let a = osp();
    let dims: Vec<usize> = (0..=2)
        .flat_map(|k| Parity::BOTH.map(|p| alphak_derivations(&a, k, p).unwrap().dim()))
        .collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0]);
    let inner = inner_derivations(&a, 1, Parity::Even).unwrap();
    assert_eq!(inner.dim(), 1);
    // Inn_alpha = span{ad_0(H)}
    let h = a.basis().index_of("H").unwrap();
    let n = a.dim();
    let ad_h = Matrix::from_columns(Q, n, &(0..n).map(|j| a.bracket(&a.unit(h), &a.unit(j))).collect::<Vec<_>>());
    assert!(inner.contains(&ad_h));
}

#[test]
fn input_errors() {
    let a = osp();
    assert!(matches!(alphak_derivations(&a, -2, Parity::Even), Err(Error::Input(_))));
    assert!(matches!(inner_derivations(&a, -1, Parity::Even), Err(Error::Input(_))));
    let w = homlie_core::catalog::entry("qwitt:4:2").unwrap().algebra;
    assert!(matches!(inner_derivations(&w, 1, Parity::Even), Err(Error::Precondition(_))));
}

#[test]
fn inner_derivations_are_derivations() {
    for a in catalog() {
        for k in 0..=3 {
            for p in Parity::BOTH {
                let inn = inner_derivations(&a, k, p).unwrap();
                let der = alphak_derivations(&a, k, p).unwrap();
                assert!(inn.space.is_subspace_of(&der.space), "k={k}");
            }
        }
    }
}

#[test]
fn commutator_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in catalog() {
        for (k, s) in [(0, 0), (0, 1), (1, 1), (2, 0), (-1, 0), (0, -1)] {
            for (p, q) in [(Parity::Even, Parity::Even), (Parity::Even, Parity::Odd), (Parity::Odd, Parity::Odd)] {
                let dk = alphak_derivations(&a, k, p).unwrap();
                let ds = alphak_derivations(&a, s, q).unwrap();
                let d = random_element(&mut rng, &dk);
                let e = random_element(&mut rng, &ds);
                let c = derivation_commutator(&a, &d, k, &e, s).unwrap();
                assert!(is_alpha_derivation(&a, &c, k + s, p + q));
            }
        }
    }
}

#[test]
fn commutator_signs() {
    let a = abelian(1, 1);
    let der = alphak_derivations(&a, 0, Parity::Even).unwrap();
    let d = der.basis_maps()[0].clone();
    assert!(derivation_commutator(&a, &d, 0, &d, 0).unwrap().is_zero());
    let odd = alphak_derivations(&a, 0, Parity::Odd).unwrap().basis_maps();
    let e = odd[0].clone();
    let c = derivation_commutator(&a, &d, 0, &e, 0).unwrap();
    assert_eq!(c, d.mul(&e).unwrap().sub(&e.mul(&d).unwrap()).unwrap());
    // odd with odd uses the anticommutator
    let f = odd[odd.len() - 1].clone();
    let c = derivation_commutator(&a, &e, 0, &f, 0).unwrap();
    assert_eq!(c, e.mul(&f).unwrap().add(&f.mul(&e).unwrap()).unwrap());
}

#[test]
fn commutator_rejects_non_derivations() {
    let a = osp();
    let mut bad = Matrix::zeros(Q, 5, 5);
    bad.set(0, 0, Scalar::one(Q));
    let d = alphak_derivations(&a, 0, Parity::Even).unwrap().basis_maps()[0].clone();
    assert!(matches!(derivation_commutator(&a, &bad, 0, &d, 0), Err(Error::Precondition(_))));
}

#[test]
fn one_cocycles_are_derivations() {
    for a in catalog() {
        for s in -1..=2 {
            for p in Parity::BOTH {
                let c = z1_equals_der(&a, s, p, SignConvention::Standard).unwrap();
                assert!(c.equal(), "s={s} parity={p}");
            }
        }
    }
}
