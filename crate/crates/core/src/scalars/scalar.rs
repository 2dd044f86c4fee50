use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{parse, RatFunc, Rational};
use crate::error::{Error, Result};

/// Which ground field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldMode {
    /// The rationals, possibly with `q` specialized to a rational number.
    Rational,
    /// Rational functions in the indeterminate `q`.
    RatFunc,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Rational => "rational",
            FieldMode::RatFunc => "ratfunc",
        })
    }
}

/// A scalar tagged with its field mode. Arithmetic between different modes is
/// rejected: the `checked_*` methods return an error and the operators panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Func(RatFunc),
}

impl Scalar {
    pub fn zero(mode: FieldMode) -> Self {
        Scalar::from_int(mode, 0)
    }

    pub fn one(mode: FieldMode) -> Self {
        Scalar::from_int(mode, 1)
    }

    pub fn from_int(mode: FieldMode, n: i64) -> Self {
        Scalar::from_rational(mode, Rational::from_int(n))
    }

    pub fn from_rational(mode: FieldMode, r: Rational) -> Self {
        match mode {
            FieldMode::Rational => Scalar::Rat(r),
            FieldMode::RatFunc => Scalar::Func(RatFunc::constant(r)),
        }
    }

    pub fn mode(&self) -> FieldMode {
        match self {
            Scalar::Rat(_) => FieldMode::Rational,
            Scalar::Func(_) => FieldMode::RatFunc,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Func(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Func(f) => f.is_one(),
        }
    }

    /// The value as a rational number if it is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Func(f) => f.as_constant(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.inv()?),
            Scalar::Func(f) => Scalar::Func(f.inv()?),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(e)?),
            Scalar::Func(f) => Scalar::Func(f.pow(e)?),
        })
    }

    fn same_mode(&self, other: &Scalar) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch(
                self.mode().to_string(),
                other.mode().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self * &other.inv()?)
    }

    /// Evaluates at `q = x`; rational scalars are returned unchanged.
    pub fn eval_at(&self, x: &Rational) -> Result<Rational> {
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Func(f) => f.eval_at(x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Func(g) => write!(f, "{g}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed field modes: {} and {}", a.mode(), b.mode())
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.$method(b)),
                    (Scalar::Func(a), Scalar::Func(b)) => Scalar::Func(a.$method(b)),
                    _ => mismatch(self, rhs),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Func(f) => Scalar::Func(-f),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Field description: a mode plus an optional specialization of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub mode: FieldMode,
    pub q: Option<Rational>,
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec {
            mode: FieldMode::Rational,
            q: None,
        }
    }

    pub fn specialized(q: Rational) -> Self {
        FieldSpec {
            mode: FieldMode::Rational,
            q: Some(q),
        }
    }

    pub fn symbolic() -> Self {
        FieldSpec {
            mode: FieldMode::RatFunc,
            q: None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.mode)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.mode)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(self.mode, n)
    }

    /// The deformation parameter as a scalar of this field.
    pub fn q(&self) -> Result<Scalar> {
        match (self.mode, &self.q) {
            (FieldMode::RatFunc, _) => Ok(Scalar::Func(RatFunc::q())),
            (FieldMode::Rational, Some(q)) => Ok(Scalar::Rat(q.clone())),
            (FieldMode::Rational, None) => Err(Error::Input(
                "q is not available in a rational field without a specialization".into(),
            )),
        }
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(&self, n: i64) -> Result<Scalar> {
        self.q()?.pow(n)
    }

    /// The q-number `{n} = (1 - q^n)/(1 - q)`.
    pub fn qnum(&self, n: i64) -> Result<Scalar> {
        let one = self.one();
        let q = self.q()?;
        let den = &one - &q;
        if den.is_zero() {
            return Err(Error::Pole {
                at: "1".into(),
                factor: "(q-1)".into(),
            });
        }
        (&one - &q.pow(n)?).checked_div(&den)
    }

    /// Parses scalar text: integers, `a/b`, and expressions in `q` built from
    /// `+ - * / ^` and parentheses, e.g. `(1-q^3)/(1-q)`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let (value, uses_q) = parse::parse_expr(text)?;
        match (self.mode, &self.q) {
            (FieldMode::RatFunc, _) => Ok(Scalar::Func(value)),
            (FieldMode::Rational, Some(q0)) => Ok(Scalar::Rat(value.eval_at(q0)?)),
            (FieldMode::Rational, None) => {
                if uses_q {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!(
                            "{text:?} mentions q but the field is rational without a q value"
                        ),
                    });
                }
                value
                    .as_constant()
                    .map(Scalar::Rat)
                    .ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: format!("{text:?} is not a rational number"),
                    })
            }
        }
    }

    /// Brings a scalar into this field, evaluating rational functions at `q` if needed.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match (self.mode, s) {
            (FieldMode::RatFunc, Scalar::Func(_)) | (FieldMode::Rational, Scalar::Rat(_)) => {
                Ok(s.clone())
            }
            (FieldMode::RatFunc, Scalar::Rat(r)) => Ok(Scalar::Func(RatFunc::constant(r.clone()))),
            (FieldMode::Rational, Scalar::Func(f)) => match (&self.q, f.as_constant()) {
                (_, Some(c)) => Ok(Scalar::Rat(c)),
                (Some(q0), None) => Ok(Scalar::Rat(f.eval_at(q0)?)),
                (None, None) => Err(Error::ModeMismatch("rational".into(), "ratfunc".into())),
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.q {
            Some(q) => write!(f, "{} (q = {q})", self.mode),
            None => write!(f, "{}", self.mode),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qnumber_three_is_cyclotomic() {
        let f = FieldSpec::symbolic();
        assert_eq!(f.qnum(3).unwrap().to_string(), "q^2+q+1");
        assert_eq!(f.qnum(0).unwrap(), f.zero());
        assert_eq!(f.qnum(-1).unwrap().to_string(), "(-1)/(q)");
    }

    #[test]
    fn qnumber_at_one_is_an_error() {
        let f = FieldSpec::specialized(Rational::one());
        assert!(matches!(f.qnum(2), Err(Error::Pole { .. })));
    }

    #[test]
    fn specialized_parse_evaluates() {
        let f = FieldSpec::specialized(Rational::from_int(2));
        assert_eq!(f.parse("(1-q^3)/(1-q)").unwrap(), f.int(7));
        assert!(matches!(f.parse("1/(q-2)"), Err(Error::Pole { .. })));
    }

    #[test]
    fn mixed_modes_are_rejected() {
        let a = Scalar::one(FieldMode::Rational);
        let b = Scalar::one(FieldMode::RatFunc);
        assert!(matches!(a.checked_add(&b), Err(Error::ModeMismatch(..))));
    }

    #[test]
    fn rational_mode_refuses_q() {
        assert!(FieldSpec::rational().parse("q+1").is_err());
        assert_eq!(
            FieldSpec::rational().parse("-3/6").unwrap().to_string(),
            "-1/2"
        );
    }
}
