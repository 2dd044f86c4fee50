use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homlie_core::catalog::{abelian, osp12, osp12_plus_line, sl2};
use homlie_core::cohomology::{
    abelian_extension, canonical_tuples, canonicalize, central_extension, central_extension_data,
    coboundary, coboundary_preimage, cohomology, deformation_check, extension_to_cocycle,
    extensions_equivalent, hom_cochain_space, verify_complex, Coboundary, Cochain, CochainSpace,
    SignConvention,
};
use homlie_core::homlie::SuperAlgebra;
use homlie_core::linalg::{SparseVec, Subspace};
use homlie_core::repr::Representation;
use homlie_core::scalars::{FieldMode, Rational, Scalar};
use homlie_core::{Error, Parity};

const Q: FieldMode = FieldMode::Rational;
const STD: SignConvention = SignConvention::Standard;

fn osp() -> SuperAlgebra {
    osp12(&Rational::from_int(2)).unwrap()
}

fn multiplicative_catalog() -> Vec<SuperAlgebra> {
    vec![osp(), osp12_plus_line(&"1/2".parse().unwrap()).unwrap(), sl2(), abelian(1, 2)]
}

fn random_in(rng: &mut ChaCha8Rng, s: &Subspace) -> SparseVec {
    let mut v = SparseVec::new();
    for b in s.basis() {
        v = v.add_scaled(&Scalar::from_int(Q, rng.gen_range(-3..=3)), b);
    }
    v
}

#[test]
fn coboundary_of_scalar_one_cochain() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let h = a.basis().index_of("H").unwrap();
    let (x, y) = (a.basis().index_of("X").unwrap(), a.basis().index_of("Y").unwrap());
    let mut g = Cochain::zero_for(&a, &triv, 1, Parity::Even);
    g.set(&[h], SparseVec::unit(0, Q)).unwrap();
    for convention in [STD, SignConvention::CochainParity] {
        let dg = coboundary(&g, &a, &triv, 1, convention).unwrap();
        assert_eq!(dg.value_at(&[x, y]), SparseVec::unit(0, Q).scale(&Scalar::from_int(Q, -1)));
        assert_eq!(dg.degree(), 2);
    }
    let zero = Cochain::zero_for(&a, &triv, 1, Parity::Even);
    assert!(coboundary(&zero, &a, &triv, 1, STD).unwrap().is_zero());
}

#[test]
fn coboundary_rejects_incompatible_cochains() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let mut g = Cochain::zero_for(&a, &triv, 1, Parity::Even);
    g.set(&[a.basis().index_of("X").unwrap()], SparseVec::unit(0, Q)).unwrap();
    assert!(matches!(coboundary(&g, &a, &triv, 1, STD), Err(Error::Precondition(_))));
}

#[test]
fn coboundary_squares_to_zero_on_catalog() {
    for a in multiplicative_catalog() {
        let reps = [Representation::trivial_scalar(&a), Representation::adjoint(&a, 0).unwrap(), Representation::adjoint(&a, 1).unwrap()];
        for rep in &reps {
            for r in 1..=3 {
                let report = verify_complex(&a, rep, r, 3, STD).unwrap();
                assert!(report.passed(), "dim {} r={r}: {:?}", a.dim(), report.first());
                assert!(report.evaluated > 0);
            }
        }
    }
}

#[test]
fn both_conventions_square_to_zero_on_osp() {
    let a = osp();
    let ad = Representation::adjoint(&a, 0).unwrap();
    assert!(verify_complex(&a, &ad, 1, 3, SignConvention::CochainParity).unwrap().passed());
}

#[test]
fn convention_names_round_trip() {
    for c in [STD, SignConvention::CochainParity] {
        assert_eq!(c.name().parse::<SignConvention>().unwrap(), c);
    }
    assert!("other".parse::<SignConvention>().is_err());
    assert_eq!(SignConvention::default(), STD);
}

#[test]
fn coboundary_preserves_compatibility() {
    // delta f stays in C_{alpha,beta} whenever f is
    let a = osp();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for rep in [Representation::trivial_scalar(&a), Representation::adjoint(&a, 1).unwrap()] {
        let d = Coboundary::new(&a, &rep, 2, STD).unwrap();
        for k in 0..=2 {
            for p in Parity::BOTH {
                let (space, sub) = hom_cochain_space(&a, &rep, k, p);
                for _ in 0..4 {
                    let f = space.to_cochain(&random_in(&mut rng, &sub));
                    let df = d.apply(&f);
                    assert!(df.compatibility_defect(&a, rep.beta()).is_zero());
                }
            }
        }
    }
}

#[test]
fn cochain_spaces() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let (space, sub) = hom_cochain_space(&a, &triv, 0, Parity::Even);
    assert_eq!((space.dim(), sub.dim()), (1, 1));
    // scalar maps fixed by alpha: only H survives among even basis vectors
    let (_, sub) = hom_cochain_space(&a, &triv, 1, Parity::Even);
    assert_eq!(sub.dim(), 1);
    let (_, sub) = hom_cochain_space(&a, &triv, 1, Parity::Odd);
    assert_eq!(sub.dim(), 0);
    let line = abelian(1, 0);
    let t = Representation::trivial_scalar(&line);
    assert_eq!(CochainSpace::for_module(&line, &t, 2, Parity::Even).dim(), 0);
}

#[test]
fn osp_second_cohomology_vanishes_for_all_r() {
    for l in ["2", "1/2", "3"] {
        let a = osp12(&l.parse().unwrap()).unwrap();
        let triv = Representation::trivial_scalar(&a);
        for r in 1..=3 {
            for p in Parity::BOTH {
                assert_eq!(cohomology(&a, &triv, 2, r, p, STD).unwrap().dim_h(), 0);
            }
        }
    }
}

#[test]
fn trivial_coefficients_make_the_coboundary_r_independent() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let d: Vec<_> = (1..=3).map(|r| Coboundary::new(&a, &triv, r, STD).unwrap()).collect();
    for k in 0..=2 {
        for p in Parity::BOTH {
            let (space, sub) = hom_cochain_space(&a, &triv, k, p);
            for b in sub.basis() {
                let f = space.to_cochain(b);
                assert_eq!(d[0].apply(&f), d[1].apply(&f));
                assert_eq!(d[0].apply(&f), d[2].apply(&f));
            }
        }
    }
}

#[test]
fn h0_with_minus_one_adjoint_is_the_fixed_space() {
    for a in multiplicative_catalog() {
        let rep = Representation::adjoint(&a, -1).unwrap();
        let n = a.dim();
        let mut fixed = 0;
        for p in Parity::BOTH {
            let c = cohomology(&a, &rep, 0, 1, p, STD).unwrap();
            fixed += c.dim_h();
            for v in c.z.basis() {
                let x = c.space.to_cochain(v).value_at(&[]);
                assert_eq!(a.apply_alpha(&x), x);
            }
        }
        let id = homlie_core::linalg::Matrix::identity(Q, n);
        let expected = n - a.alpha().sub(&id).unwrap().rank();
        assert_eq!(fixed, expected);
    }
}

#[test]
fn central_extension_basics() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let zero = Cochain::zero_for(&a, &triv, 2, Parity::Even);
    let e = central_extension(&a, &zero).unwrap();
    assert!(e.is_hom_lie());
    assert_eq!(e.dim(), 6);
    assert_eq!(e.center().dim(), 1);
    let data = central_extension_data(&a, &zero).unwrap();
    let back = extension_to_cocycle(&data).unwrap();
    assert!(back.is_cocycle && back.cocycle.is_zero());
}

#[test]
fn non_cocycle_gives_a_failing_extension() {
    let b = osp12_plus_line(&Rational::from_int(2)).unwrap();
    let triv = Representation::trivial_scalar(&b);
    let (space, compat) = hom_cochain_space(&b, &triv, 2, Parity::Even);
    let z = cohomology(&b, &triv, 2, 1, Parity::Even, STD).unwrap().z;
    let f = compat.basis().iter().find(|v| !z.contains(v)).expect("a non-cocycle exists");
    let theta = space.to_cochain(f);
    let r = central_extension(&b, &theta).unwrap().check_hom_lie();
    assert!(!r.passed());
    assert_eq!(r.first().unwrap().witness.len(), 3);
}

#[test]
fn changed_section_shifts_by_a_coboundary() {
    let b = osp12_plus_line(&Rational::from_int(2)).unwrap();
    let triv = Representation::trivial_scalar(&b);
    let c = cohomology(&b, &triv, 2, 1, Parity::Even, STD).unwrap();
    let theta = c.space.to_cochain(&c.z.basis()[0]);
    let mut data = central_extension_data(&b, &theta).unwrap();
    let (hspace, hsub) = hom_cochain_space(&b, &triv, 1, Parity::Even);
    let h = hspace.to_cochain(&hsub.basis()[0]);
    // s'(x) = s(x) + i(h(x))
    for j in 0..b.dim() {
        for (u, v) in h.value_at(&[j]).iter() {
            let col = data.injection.column(u);
            for (row, c) in col.iter() {
                let old = data.section.get(row, j).clone();
                data.section.set(row, j, &old + &(c * v));
            }
        }
    }
    let back = extension_to_cocycle(&data).unwrap();
    assert!(back.is_cocycle);
    let dh = coboundary(&h, &b, &triv, 1, STD).unwrap();
    assert!(!dh.is_zero());
    assert_eq!(back.cocycle.sub(&theta).unwrap(), dh);
}

#[test]
fn invalid_section_is_rejected() {
    let a = osp();
    let triv = Representation::trivial_scalar(&a);
    let zero = Cochain::zero_for(&a, &triv, 2, Parity::Even);
    let mut data = central_extension_data(&a, &zero).unwrap();
    data.section = data.section.scale(&Scalar::from_int(Q, 2));
    assert!(matches!(extension_to_cocycle(&data), Err(Error::Precondition(_))));
}

#[test]
fn equivalence_of_extensions() {
    // h0 chosen as a nonzero compatible 1-cochain, g = f + delta h0
    let b = osp12_plus_line(&Rational::from_int(2)).unwrap();
    let triv = Representation::trivial_scalar(&b);
    let f = Cochain::zero_for(&b, &triv, 2, Parity::Even);
    let same = extensions_equivalent(&b, &triv, &f, &f, STD).unwrap();
    assert!(same.equivalent);
    assert!(same.h.unwrap().is_zero());
    let (hspace, hsub) = hom_cochain_space(&b, &triv, 1, Parity::Even);
    let h0 = hspace.to_cochain(&hsub.basis()[0]);
    let g = f.add_scaled(&Scalar::one(Q), &coboundary(&h0, &b, &triv, 1, STD).unwrap()).unwrap();
    let eq = extensions_equivalent(&b, &triv, &f, &g, STD).unwrap();
    assert!(eq.equivalent);
    assert_eq!(eq.phi_is_isomorphism, Some(true));
    let h = eq.h.unwrap();
    assert_eq!(coboundary(&h, &b, &triv, 1, STD).unwrap(), f.sub(&g).unwrap());
    assert!(abelian_extension(&b, &triv, &g).unwrap().is_hom_lie());

    // distinct classes on an abelian algebra with two-dimensional H^2
    let a = abelian(2, 1);
    let t = Representation::trivial_scalar(&a);
    let c = cohomology(&a, &t, 2, 1, Parity::Even, STD).unwrap();
    assert_eq!(c.dim_h(), 2);
    let (r0, r1) = (&c.representatives[0], &c.representatives[1]);
    let eq = extensions_equivalent(&a, &t, r0, r1, STD).unwrap();
    assert!(!eq.equivalent && eq.h.is_none() && eq.phi.is_none());
    assert!(coboundary_preimage(&r0.sub(r1).unwrap(), &a, &t, 1, STD).unwrap().is_none());
}

#[test]
fn deformation_checks() {
    let a = osp();
    let p = a.basis().parities();
    let zero = Cochain::zero(Q, p, p, 2, Parity::Even);
    let r = deformation_check(&a, &zero).unwrap();
    assert!(r.first_order.passed() && r.integrability.passed());
    // omega = bracket: both conditions reduce to the Hom-Jacobi identity
    let r = deformation_check(&a, &Cochain::from_bracket(&a)).unwrap();
    assert!(r.first_order.passed() && r.integrability.passed());
    let one = Cochain::zero(Q, p, p, 1, Parity::Even);
    assert!(matches!(deformation_check(&a, &one), Err(Error::Input(_))));
}

#[test]
fn cohomology_complements() {
    let a = sl2();
    let ad = Representation::adjoint(&a, 0).unwrap();
    for k in 0..=3 {
        let c = cohomology(&a, &ad, k, 1, Parity::Even, STD).unwrap();
        assert!(c.b.is_subspace_of(&c.z));
        assert_eq!(c.representatives.len(), c.dim_h());
        assert_eq!(c.dim_h(), c.dim_z() - c.dim_b());
    }
}

fn parities() -> impl Strategy<Value = Vec<Parity>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { Parity::Odd } else { Parity::Even }), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn koszul_sign_rule(par in parities(), k in 1usize..4, seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = par.len();
        let tuple: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let mut f = Cochain::zero(Q, &par, &[Parity::Even, Parity::Odd], k, Parity::Even);
        for (i, t) in canonical_tuples(&par, k).into_iter().enumerate() {
            let target = usize::from(t.iter().map(|&j| par[j].bit()).sum::<u8>() % 2 == 1);
            f.set(&t, SparseVec::unit(target, Q).scale(&Scalar::from_int(Q, i as i64 + 1))).unwrap();
        }
        let value = f.value_at(&tuple);
        match canonicalize(&tuple, &par) {
            None => prop_assert!(value.is_zero()),
            Some((t, neg)) => {
                let c = f.value_at(&t);
                let expected = if neg { c.scale(&Scalar::from_int(Q, -1)) } else { c };
                prop_assert_eq!(value, expected);
            }
        }
        // one adjacent swap multiplies by -(-1)^{|a||b|}
        if k >= 2 {
            let mut swapped = tuple.clone();
            swapped.swap(0, 1);
            let s = if Parity::both_odd(par[tuple[0]], par[tuple[1]]) { 1 } else { -1 };
            prop_assert_eq!(f.value_at(&swapped), f.value_at(&tuple).scale(&Scalar::from_int(Q, s)));
        }
    }

    #[test]
    fn round_trip_of_central_extensions(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = abelian(2, 1);
        let t = Representation::trivial_scalar(&a);
        let c = cohomology(&a, &t, 2, 1, Parity::Even, STD).unwrap();
        let theta = c.space.to_cochain(&random_in(&mut rng, &c.z));
        let data = central_extension_data(&a, &theta).unwrap();
        prop_assert!(data.extended.is_hom_lie());
        let back = extension_to_cocycle(&data).unwrap();
        prop_assert!(back.is_cocycle);
        prop_assert_eq!(back.cocycle, theta);
    }
}
