use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{Point2, Sign};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A nonzero integer vector in primitive form (components divided by their
/// gcd). Stands for the angle of the vector in the half-open interval
/// (0, 2π]: the direction (1, 0) carries the angle 2π and is the maximum of
/// the angular order. Two directions compare equal exactly when they are
/// positive scalar multiples of each other.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: BigInt,
    dy: BigInt,
}

impl Direction {
    pub fn new(dx: impl Into<BigInt>, dy: impl Into<BigInt>) -> Result<Self> {
        let (dx, dy) = (dx.into(), dy.into());
        if dx.is_zero() && dy.is_zero() {
            return Err(Error::InvalidInput("zero vector is not a direction".into()));
        }
        let g = dx.gcd(&dy);
        Ok(Direction {
            dx: dx / &g,
            dy: dy / &g,
        })
    }

    /// Direction of the exact difference b - a of two rational points.
    pub fn between_points(a: &Point2, b: &Point2) -> Result<Self> {
        let (vx, vy) = b.sub(a);
        // Clear denominators: scale by denom(vx) * denom(vy), positive.
        let sx = vx.numer() * vy.denom();
        let sy = vy.numer() * vx.denom();
        Direction::new(sx, sy)
    }

    pub fn dx(&self) -> &BigInt {
        &self.dx
    }

    pub fn dy(&self) -> &BigInt {
        &self.dy
    }

    pub fn neg(&self) -> Direction {
        Direction {
            dx: -&self.dx,
            dy: -&self.dy,
        }
    }

    /// Counter-clockwise quarter rotation.
    pub fn rot90(&self) -> Direction {
        Direction {
            dx: -&self.dy,
            dy: self.dx.clone(),
        }
    }

    /// Clockwise quarter rotation; the outward normal of a directed tangent
    /// line that keeps the bodies on its left.
    pub fn rot270(&self) -> Direction {
        Direction {
            dx: self.dy.clone(),
            dy: -&self.dx,
        }
    }

    /// ⟨d, p⟩ for a rational point.
    pub fn dot(&self, p: &Point2) -> Rational {
        Rational::from_bigint(self.dx.clone()) * p.x().clone()
            + Rational::from_bigint(self.dy.clone()) * p.y().clone()
    }

    fn cross(&self, other: &Direction) -> BigInt {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    /// Which quarter of the angular order (0, 2π] this direction falls in:
    /// 0 for the open upper half plane, 1 for angle π, 2 for the open lower
    /// half plane, 3 for angle 2π.
    fn half_class(&self) -> u8 {
        if self.dy.is_positive() {
            0
        } else if self.dy.is_zero() {
            if self.dx.is_negative() {
                1
            } else {
                3
            }
        } else {
            2
        }
    }

    /// Approximate angle as a fraction of a full turn in (0, 1], for
    /// rendering and diagnostics only.
    pub fn turn_f64(&self) -> f64 {
        let x = self.dx.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let y = self.dy.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let mut t = y.atan2(x) / (2.0 * std::f64::consts::PI);
        if t <= 0.0 {
            t += 1.0;
        }
        t
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.dx, self.dy)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.dx, self.dy)
    }
}

/// Total order on angle classes in (0, 2π]. Equal exactly on positive scalar
/// multiples.
pub fn cmp_angle(a: &Direction, b: &Direction) -> Ordering {
    let (ca, cb) = (a.half_class(), b.half_class());
    if ca != cb {
        return ca.cmp(&cb);
    }
    match Sign::of(&Rational::from_bigint(a.cross(b))) {
        Sign::Pos => Ordering::Less,
        Sign::Neg => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_angle(self, other)
    }
}

/// A direction strictly between `a` and `b` in the angular order.
///
/// Requires `a < b` and the counter-clockwise arc from `a` to `b` to be
/// shorter than π; the primitive form of a + b then lies strictly inside the
/// open cone spanned by the two.
pub fn direction_between(a: &Direction, b: &Direction) -> Result<Direction> {
    if cmp_angle(a, b) != Ordering::Less {
        return Err(Error::InvalidInput(format!(
            "direction_between: {a} is not strictly before {b}"
        )));
    }
    if !a.cross(b).is_positive() {
        return Err(Error::InvalidInput(format!(
            "direction_between: arc from {a} to {b} is at least π"
        )));
    }
    Direction::new(&a.dx + &b.dx, &a.dy + &b.dy)
}

/// A direction strictly inside the counter-clockwise arc from `a` to `b`,
/// for distinct `a`, `b` anywhere on the circle. Used to sample test
/// directions between consecutive sweep events, which may be arbitrarily far
/// apart.
pub fn sample_in_cyclic_arc(a: &Direction, b: &Direction) -> Result<Direction> {
    if a == b {
        return Err(Error::InvalidInput(
            "cannot sample inside an empty arc".into(),
        ));
    }
    if a.cross(b).is_positive() {
        // CCW arc shorter than π.
        return Direction::new(&a.dx + &b.dx, &a.dy + &b.dy);
    }
    // Arc of at least π: a quarter turn from `a` is strictly inside.
    Ok(a.rot90())
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // `[dx, dy]`, components as JSON integers when they fit in i64 and
        // as decimal strings otherwise.
        let mut seq = serializer.serialize_seq(Some(2))?;
        for c in [&self.dx, &self.dy] {
            match i64::try_from(c.clone()) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

struct DirVisitor;

impl<'de> Visitor<'de> for DirVisitor {
    type Value = Direction;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a [dx, dy] integer pair")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Direction, A::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum IntOrStr {
            Int(i64),
            Str(String),
        }
        let mut next = |idx: usize| -> std::result::Result<BigInt, A::Error> {
            let v: IntOrStr = seq
                .next_element()?
                .ok_or_else(|| de::Error::invalid_length(idx, &self))?;
            match v {
                IntOrStr::Int(i) => Ok(BigInt::from(i)),
                IntOrStr::Str(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("bad integer `{s}`"))),
            }
        };
        let dx = next(0)?;
        let dy = next(1)?;
        Direction::new(dx, dy).map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_seq(DirVisitor)
    }
}
