use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always normalized (positive denominator,
/// reduced). Serializes as the string `"num/den"`, with `/den` omitted when
/// the denominator is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        Self::from_parts(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_parts(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidInput("rational with zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.recip()?)
    }

    pub fn to_f64(&self) -> f64 {
        // Good enough for rendering and approximate metrics; exact paths
        // never call this.
        let n = self.0.numer();
        let d = self.0.denom();
        let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
        nf / df
    }

}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|_| Error::InvalidInput(format!("bad integer `{t}` in rational")))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::from_parts(parse_int(n)?, parse_int(d)?),
            None => Ok(Self::from_bigint(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

/// A fraction of a full rotation, constrained to the half-open interval
/// (0, 1]. Used for the angles of abstract (non-geometric) configurations,
/// mirroring the (0, 2π] parametrization of the circle: a turn of 1 is the
/// maximal angle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Turn(Rational);

impl Turn {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() || value > Rational::one() {
            return Err(Error::InvalidInput(format!(
                "turn {value} outside (0, 1]"
            )));
        }
        Ok(Turn(value))
    }

    pub fn full() -> Self {
        Turn(Rational::one())
    }

    /// Wraps an arbitrary positive rational into (0, 1], identifying 0 with 1.
    pub fn wrapped(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::InvalidInput(format!(
                "cannot wrap non-positive turn {value}"
            )));
        }
        let mut v = value;
        let one = Rational::one();
        while v > one {
            v = v - one.clone();
        }
        if v.is_zero() {
            v = one;
        }
        Ok(Turn(v))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Rotation by `delta`, wrapping around the full turn.
    pub fn advance(&self, delta: &Rational) -> Result<Turn> {
        Turn::wrapped(self.0.clone() + delta.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Turn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Turn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = Rational::deserialize(deserializer)?;
        Turn::new(r).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_eagerly() {
        let a = Rational::new(2, 4).unwrap();
        let b = Rational::new(1, 2).unwrap();
        assert_eq!(a, b);
        let c = Rational::new(3, -6).unwrap();
        assert_eq!(c, Rational::new(-1, 2).unwrap());
        assert!(c.denom() > &BigInt::from(0));
    }

    #[test]
    fn display_and_parse() {
        let r = Rational::new(-7, 3).unwrap();
        assert_eq!(r.to_string(), "-7/3");
        assert_eq!("-7/3".parse::<Rational>().unwrap(), r);
        assert_eq!(Rational::from_int(5).to_string(), "5");
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_int(5));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn turn_wrapping() {
        let t = Turn::wrapped(Rational::new(7, 3).unwrap()).unwrap();
        assert_eq!(t.value(), &Rational::new(1, 3).unwrap());
        let full = Turn::wrapped(Rational::from_int(2)).unwrap();
        assert_eq!(full, Turn::full());
        assert!(Turn::new(Rational::zero()).is_err());
        assert!(Turn::new(Rational::new(3, 2).unwrap()).is_err());
    }
}
