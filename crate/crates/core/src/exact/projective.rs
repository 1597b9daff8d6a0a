use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::rational::Rational;
use crate::error::{Error, Result};

type Row = [Rational; 3];

/// Invertible projective transformation of the plane, stored as a 3×3
/// rational matrix acting on homogeneous coordinates (x, y, 1).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProjectiveMap {
    m: [Row; 3],
}

fn det3(m: &[Row; 3]) -> Rational {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    &(&(&m[0][0] * &minor(1, 2, 1, 2)) - &(&m[0][1] * &minor(1, 2, 0, 2)))
        + &(&m[0][2] * &minor(1, 2, 0, 1))
}

/// Adjugate (transposed cofactor matrix); m * adj(m) = det(m) * I, so the
/// adjugate serves as an inverse up to scale, which is all projective maps
/// need.
fn adjugate(m: &[Row; 3]) -> [Row; 3] {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    [
        [c(1, 2, 1, 2), -&c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-&c(1, 2, 0, 2), c(0, 2, 0, 2), -&c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -&c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

fn mat_mul(a: &[Row; 3], b: &[Row; 3]) -> [Row; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Rational::zero();
            for (k, b_row) in b.iter().enumerate() {
                acc += &a[i][k] * &b_row[j];
            }
            acc
        })
    })
}

fn mat_vec(m: &[Row; 3], v: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|i| {
        let mut acc = Rational::zero();
        for (k, vk) in v.iter().enumerate() {
            acc += &m[i][k] * vk;
        }
        acc
    })
}

fn homogeneous(p: &Point2) -> [Rational; 3] {
    [p.x().clone(), p.y().clone(), Rational::one()]
}

/// Matrix sending the projective basis e1, e2, e3, e1+e2+e3 to the four
/// given points (in homogeneous coordinates, up to scale).
fn basis_map(pts: &[Point2; 4]) -> Result<[Row; 3]> {
    let cols: Vec<[Rational; 3]> = pts.iter().take(3).map(homogeneous).collect();
    let m: [Row; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    if det3(&m).is_zero() {
        return Err(Error::Degenerate(
            "three of the four correspondence points are collinear".into(),
        ));
    }
    // Solve m * c = p4 up to scale via the adjugate.
    let c = mat_vec(&adjugate(&m), &homogeneous(&pts[3]));
    if c.iter().any(Rational::is_zero) {
        return Err(Error::Degenerate(
            "fourth correspondence point is collinear with two others".into(),
        ));
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| &m[i][j] * &c[j])
    }))
}

impl ProjectiveMap {
    pub fn identity() -> Self {
        let row = |i: usize| -> Row {
            std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
        };
        ProjectiveMap {
            m: [row(0), row(1), row(2)],
        }
    }

    pub fn from_matrix(m: [[Rational; 3]; 3]) -> Result<Self> {
        if det3(&m).is_zero() {
            return Err(Error::Degenerate("singular projective matrix".into()));
        }
        Ok(ProjectiveMap { m })
    }

    /// The unique projective map (up to scale) sending each `src[i]` to
    /// `dst[i]`. Both quadruples must be in general position (no three
    /// collinear). The result is re-verified by direct application.
    pub fn from_correspondence(src: &[Point2; 4], dst: &[Point2; 4]) -> Result<Self> {
        let a = basis_map(src)?;
        let b = basis_map(dst)?;
        let m = mat_mul(&b, &adjugate(&a));
        let map = ProjectiveMap::from_matrix(m)?;
        for (s, d) in src.iter().zip(dst) {
            let image = map.apply(s)?;
            if &image != d {
                return Err(Error::Inconsistent(format!(
                    "projective correspondence failed to verify: {s:?} -> {image:?}, expected {d:?}"
                )));
            }
        }
        Ok(map)
    }

    /// Image of a point; errors when the point is sent to the line at
    /// infinity.
    pub fn apply(&self, p: &Point2) -> Result<Point2> {
        let h = mat_vec(&self.m, &homogeneous(p));
        if h[2].is_zero() {
            return Err(Error::Degenerate(format!(
                "{p:?} maps to the line at infinity"
            )));
        }
        Ok(Point2::new(
            h[0].checked_div(&h[2])?,
            h[1].checked_div(&h[2])?,
        ))
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }
}
