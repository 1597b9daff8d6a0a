use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Sign of an exact determinant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Pos
        } else if r.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => write!(f, "+"),
            Sign::Neg => write!(f, "-"),
            Sign::Zero => write!(f, "0"),
        }
    }
}

/// Point in the plane with exact rational coordinates.
///
/// Serializes as the pair `["x", "y"]` of rational strings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point2(pub Rational, pub Rational);

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2(x, y)
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn x(&self) -> &Rational {
        &self.0
    }

    pub fn y(&self) -> &Rational {
        &self.1
    }

    pub fn sub(&self, other: &Point2) -> (Rational, Rational) {
        (&self.0 - &other.0, &self.1 - &other.1)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Orientation of the ordered triple (p, q, r): the sign of
/// det [q - p; r - p]. Positive means counter-clockwise.
pub fn orient(p: &Point2, q: &Point2, r: &Point2) -> Sign {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    Sign::of(&(&ax * &by - &ay * &bx))
}
