use proptest::prelude::*;

use homlie_core::scalars::{FieldMode, FieldSpec, Poly, RatFunc, Rational, Scalar};
use homlie_core::Error;

fn sym(text: &str) -> Scalar {
    FieldSpec::symbolic().parse(text).unwrap()
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn canonical_printing_round_trips() {
    assert_eq!(sym("(1-q^3)/(1-q)").to_string(), "q^2+q+1");
    assert_eq!(sym("q^-2").to_string(), "(1)/(q^2)");
    assert_eq!(sym("(2*q)/(4*q^2)").to_string(), "(1/2)/(q)");
    for text in ["q^2+q+1", "(q+1)/(q^2+1)", "-3/4", "0", "(1)/(q^2)", "(1/2)/(q)"] {
        let v = sym(text);
        assert_eq!(sym(&v.to_string()), v, "{text}");
    }
}

#[test]
fn rational_field_rejects_q() {
    let err = FieldSpec::rational().parse("q+1").unwrap_err();
    assert!(matches!(err, Error::Parse { .. }));
    assert_eq!(FieldSpec::rational().parse("6/4").unwrap().to_string(), "3/2");
}

#[test]
fn specialization_evaluates() {
    let f = FieldSpec::specialized(Rational::from_int(2));
    assert_eq!(f.parse("(1-q^3)/(1-q)").unwrap().to_string(), "7");
    assert_eq!(f.qnum(3).unwrap(), f.int(7));
    assert_eq!(sym("q").eval_at(&r(1, 2)).unwrap(), r(1, 2));
}

#[test]
fn poles_name_the_factor() {
    let err = sym("1/(1-q)").eval_at(&Rational::one()).unwrap_err();
    assert_eq!(err, Error::Pole { at: "1".into(), factor: "(q-1)".into() });
    assert!(FieldSpec::specialized(Rational::one()).parse("1/(1-q)").is_err());
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(Scalar::zero(FieldMode::Rational).inv().unwrap_err(), Error::DivisionByZero);
    assert!(RatFunc::zero().inv().is_err());
}

#[test]
fn modes_do_not_mix() {
    let a = Scalar::one(FieldMode::Rational);
    let b = Scalar::one(FieldMode::RatFunc);
    assert!(matches!(a.checked_add(&b), Err(Error::ModeMismatch(..))));
}

#[test]
fn parse_errors_carry_positions() {
    match FieldSpec::symbolic().parse("1+*q") {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
        other => panic!("unexpected {other:?}"),
    }
    assert!(FieldSpec::symbolic().parse("(q+1").is_err());
    assert!(FieldSpec::symbolic().parse("").is_err());
}

#[test]
fn qnumber_recurrence() {
    let f = FieldSpec::symbolic();
    let q = f.q().unwrap();
    for n in -20..=20 {
        let lhs = f.qnum(n + 1).unwrap();
        let rhs = &f.one() + &(&q * &f.qnum(n).unwrap());
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| r(n, d))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..4).prop_map(Poly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| Scalar::Func(RatFunc::new(n, d).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in ratfunc()) {
        prop_assert_eq!(sym(&a.to_string()), a);
    }

    #[test]
    fn normalization_ignores_common_factors(n in small_poly(), d in small_poly(), h in small_poly()) {
        prop_assume!(!d.is_zero() && !h.is_zero());
        let x = RatFunc::new(n.clone(), d.clone()).unwrap();
        let y = RatFunc::new(&n * &h, &d * &h).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert!(y.den().leading().is_one());
    }

    #[test]
    fn qnumber_difference(m in -12i64..12, n in -12i64..12) {
        let f = FieldSpec::symbolic();
        let q = f.q().unwrap();
        let lhs = &f.qnum(m).unwrap() - &f.qnum(n).unwrap();
        let rhs = (&q.pow(n).unwrap() - &q.pow(m).unwrap()).checked_div(&(&f.one() - &q)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_printing_round_trips(a in small_rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}
