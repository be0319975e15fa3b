//! Reduced rationals and the group `Q/Z`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Ring};

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(Ratio<i64>);

impl Rat {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Rat {
        Rat(Ratio::from_integer(n))
    }

    pub fn zero() -> Rat {
        Rat::int(0)
    }

    pub fn one() -> Rat {
        Rat::int(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> i64 {
        *self.0.floor().numer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    /// Integer value, if integral.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $f(self, o: Rat) -> Rat {
                Rat(self.0 $op o.0)
            }
        }
        impl $tr<i64> for Rat {
            type Output = Rat;
            fn $f(self, o: i64) -> Rat {
                Rat(self.0 $op Ratio::from_integer(o))
            }
        }
    };
}
rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);
rat_binop!(Div, div, /);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(it: I) -> Rat {
        it.fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Rat::int).map_err(|_| err()),
            Some((a, b)) => {
                let a = a.trim().parse::<i64>().map_err(|_| err())?;
                let b = b.trim().parse::<i64>().map_err(|_| err())?;
                if b == 0 {
                    return Err(err());
                }
                Ok(Rat::new(a, b))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatWire {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        match RatWire::deserialize(d)? {
            RatWire::Int(n) => Ok(Rat::int(n)),
            RatWire::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Rat {
        Rat::zero()
    }
    fn one_like(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, o: &Rat) -> Rat {
        *self + *o
    }
    fn minus(&self, o: &Rat) -> Rat {
        *self - *o
    }
    fn times(&self, o: &Rat) -> Rat {
        *self * *o
    }
    fn negate(&self) -> Rat {
        -*self
    }
    fn from_i64_like(&self, n: i64) -> Rat {
        Rat::int(n)
    }
}

impl Field for Rat {
    fn inverse(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Least common multiple of the denominators; 1 for an empty input.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> i64 {
    xs.into_iter().fold(1i64, |acc, r| acc.lcm(&r.denom()))
}

/// An element of `Q/Z`, stored as its representative in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QmodZ(Rat);

impl QmodZ {
    pub fn new(r: Rat) -> QmodZ {
        QmodZ(r - Rat::int(r.floor()))
    }

    pub fn zero() -> QmodZ {
        QmodZ(Rat::zero())
    }

    /// Representative in `[0, 1)`.
    pub fn rep(&self) -> Rat {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Order of the element in `Q/Z`.
    pub fn order(&self) -> i64 {
        self.0.denom()
    }

    pub fn mul_int(&self, n: i64) -> QmodZ {
        QmodZ::new(self.0 * n)
    }
}

impl From<Rat> for QmodZ {
    fn from(r: Rat) -> QmodZ {
        QmodZ::new(r)
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, o: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + o.0)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, o: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - o.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl std::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(it: I) -> QmodZ {
        it.fold(QmodZ::zero(), |a, b| a + b)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<QmodZ, D::Error> {
        Rat::deserialize(d).map(QmodZ::new)
    }
}

/// Canonical representative of `r` in `Q/Z`.
pub fn qmodz(r: Rat) -> QmodZ {
    QmodZ::new(r)
}
