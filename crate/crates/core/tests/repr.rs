use homlie_core::catalog::{abelian, entry, osp12, osp12_plus_line, sl2};
use homlie_core::homlie::SuperBasis;
use homlie_core::linalg::{Matrix, SparseVec};
use homlie_core::repr::{ActionKind, Representation};
use homlie_core::scalars::{FieldMode, Rational, Scalar};
use homlie_core::{Error, Parity};

const Q: FieldMode = FieldMode::Rational;

fn multiplicative_catalog() -> Vec<homlie_core::homlie::SuperAlgebra> {
    vec![
        osp12(&Rational::from_int(2)).unwrap(),
        osp12(&"1/2".parse().unwrap()).unwrap(),
        osp12_plus_line(&Rational::from_int(3)).unwrap(),
        sl2(),
        abelian(1, 2),
    ]
}

#[test]
fn adjoint_representations_are_valid() {
    for a in multiplicative_catalog() {
        for s in -1..=3 {
            let rep = Representation::adjoint(&a, s).unwrap();
            assert_eq!(rep.kind(), ActionKind::Adjoint { shift: s });
            let r = rep.check();
            assert!(r.passed(), "s={s}: {:?}", r.first());
        }
    }
}

#[test]
fn adjoint_preconditions() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    assert!(matches!(Representation::adjoint(&a, -2), Err(Error::Input(_))));
    let w = entry("qwitt:4:2").unwrap().algebra;
    assert!(matches!(Representation::adjoint(&w, 0), Err(Error::Precondition(_))));
}

#[test]
fn adjoint_minus_one_acts_by_zero() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    assert!(Representation::adjoint(&a, -1).unwrap().is_zero_action());
}

#[test]
fn perturbed_action_fails() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let rep = Representation::adjoint(&a, 0).unwrap();
    let mut table = rep.action_table().to_vec();
    let (h, x) = (a.basis().index_of("H").unwrap(), a.basis().index_of("X").unwrap());
    table[h * 5 + x] = table[h * 5 + x].scale(&Scalar::from_int(Q, 3));
    let bad = Representation::new(a.clone(), a.basis().clone(), a.alpha().clone(), table).unwrap();
    let r = bad.check();
    assert!(!r.passed());
    assert!(r.first().is_some());
}

#[test]
fn constructor_validates_shapes() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let space = SuperBasis::new(vec![("v".into(), Parity::Even)]).unwrap();
    assert!(matches!(
        Representation::new(a.clone(), space.clone(), Matrix::identity(Q, 2), vec![SparseVec::new(); 5]),
        Err(Error::Dimension(_))
    ));
    assert!(matches!(
        Representation::new(a.clone(), space.clone(), Matrix::identity(Q, 1), vec![SparseVec::new(); 4]),
        Err(Error::Dimension(_))
    ));
    // an odd element mapping an even vector to an even vector
    let mut action = vec![SparseVec::new(); 5];
    action[a.basis().index_of("F").unwrap()] = SparseVec::unit(0, Q);
    assert!(matches!(
        Representation::new(a, space, Matrix::identity(Q, 1), action),
        Err(Error::InvalidRepresentation(_))
    ));
}

#[test]
fn trivial_module_with_any_beta() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let space = SuperBasis::new(vec![("u".into(), Parity::Even), ("w".into(), Parity::Odd)]).unwrap();
    let mut beta = Matrix::identity(Q, 2);
    beta.set(0, 0, Scalar::from_int(Q, 7));
    let rep = Representation::trivial(&a, space, beta).unwrap();
    assert!(rep.is_zero_action());
    assert!(rep.check().passed());
}

#[test]
fn semidirect_product_of_adjoint() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let rep = Representation::adjoint(&a, 0).unwrap();
    let s = rep.semidirect_product().unwrap();
    assert_eq!(s.dim(), 10);
    assert_eq!(s.basis().even_dim(), 6);
    let r = s.check_hom_lie();
    assert!(r.passed(), "{:?}", r.first());
    assert!(s.is_multiplicative());
}

#[test]
fn coadjoint_is_computed() {
    for a in multiplicative_catalog() {
        let rep = Representation::adjoint(&a, 0).unwrap();
        let out = rep.coadjoint();
        match (&out.dual, &out.dual_check) {
            (Some(d), Some(c)) => {
                assert!(out.admissibility.passed());
                assert_eq!(d.dim(), a.dim());
                assert_eq!(d.beta(), &a.alpha().transpose());
                let _ = c.passed();
            }
            (None, None) => assert!(!out.admissibility.passed()),
            _ => panic!("inconsistent outcome"),
        }
    }
    // an untwisted Lie algebra always admits its coadjoint module
    let out = Representation::adjoint(&sl2(), 0).unwrap().coadjoint();
    assert!(out.admissibility.passed());
    assert!(out.dual_check.unwrap().passed());
}

#[test]
fn twisted_action_composes_shifts() {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let r0 = Representation::adjoint(&a, 0).unwrap();
    let r2 = Representation::adjoint(&a, 2).unwrap();
    assert_eq!(r0.twisted_action(2), r2.action_table());
}
