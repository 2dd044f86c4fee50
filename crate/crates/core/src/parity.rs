use std::fmt;
use std::ops::Add;

use crate::scalars::{FieldMode, Scalar};

/// Grading of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(b: u8) -> Option<Parity> {
        match b {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Parity of a sum of degrees.
    pub fn sum(items: impl IntoIterator<Item = Parity>) -> Parity {
        items.into_iter().fold(Parity::Even, |a, b| a + b)
    }

    /// Whether the Koszul sign `(-1)^{|a||b|}` is negative.
    pub fn both_odd(a: Parity, b: Parity) -> bool {
        a.is_odd() && b.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.bit()
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;
    fn try_from(b: u8) -> Result<Self, String> {
        Parity::from_bit(b).ok_or_else(|| format!("parity must be 0 or 1, got {b}"))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(-1)^e` as a scalar, where `negative` says whether `e` is odd.
pub fn sign(mode: FieldMode, negative: bool) -> Scalar {
    Scalar::from_int(mode, if negative { -1 } else { 1 })
}
