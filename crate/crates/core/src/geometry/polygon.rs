use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{orient, Direction, Point2, Rational, Sign};

/// A convex body given by its vertices in counter-clockwise order. One
/// vertex is a point, two a segment; with three or more every consecutive
/// triple must turn strictly left. Points and segments are first-class
/// bodies, not degenerate cases.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Polygon {
    vertices: Vec<Point2>,
}

/// The face of a polygon extreme in some direction: a single vertex, or a
/// whole edge when the direction is an outward edge normal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Face {
    Vertex(usize),
    Edge(usize, usize),
}

impl Polygon {
    /// Convex hull of the input in CCW order, dropping duplicate and
    /// interior-collinear points. Accepts any nonempty list.
    pub fn from_hull(points: &[Point2]) -> Result<Polygon> {
        if points.is_empty() {
            return Err(Error::InvalidInput("polygon needs at least one point".into()));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Ok(Polygon { vertices: pts });
        }
        // Monotone chain, strict turns only.
        let chain = |iter: &mut dyn Iterator<Item = &Point2>| {
            let mut out: Vec<Point2> = Vec::new();
            for p in iter {
                while out.len() >= 2
                    && orient(&out[out.len() - 2], &out[out.len() - 1], p) != Sign::Pos
                {
                    out.pop();
                }
                out.push(p.clone());
            }
            out
        };
        let mut lower = chain(&mut pts.iter());
        let mut upper = chain(&mut pts.iter().rev());
        lower.pop();
        upper.pop();
        lower.append(&mut upper);
        if lower.len() == 2 {
            // All points collinear; keep the extreme pair.
            return Ok(Polygon { vertices: lower });
        }
        Ok(Polygon { vertices: lower })
    }

    /// Validates that the input is already a strictly convex CCW vertex list
    /// and wraps it without reordering.
    pub fn strict(points: &[Point2]) -> Result<Polygon> {
        let hull = Polygon::from_hull(points)?;
        if hull.vertices.len() != points.len() {
            return Err(Error::InvalidInput(format!(
                "vertex list is not strictly convex: {} of {} points on the hull",
                hull.vertices.len(),
                points.len()
            )));
        }
        if points.len() <= 2 {
            return Ok(Polygon {
                vertices: points.to_vec(),
            });
        }
        // Same cyclic sequence as the hull, any starting vertex.
        let start = hull
            .vertices
            .iter()
            .position(|v| v == &points[0])
            .ok_or_else(|| Error::InvalidInput("vertex list is not convex CCW".into()))?;
        let n = points.len();
        for (i, point) in points.iter().enumerate() {
            if &hull.vertices[(start + i) % n] != point {
                return Err(Error::InvalidInput(
                    "vertex list is not in counter-clockwise order".into(),
                ));
            }
        }
        Ok(Polygon {
            vertices: points.to_vec(),
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Support function h(d) = max over vertices of ⟨d, v⟩ at the stored
    /// (primitive) direction vector. Values scale with |d|; comparisons are
    /// only ever made between bodies at a shared d.
    pub fn support_value(&self, d: &Direction) -> Rational {
        self.vertices
            .iter()
            .map(|v| d.dot(v))
            .max()
            .expect("polygon is nonempty")
    }

    /// Support evaluation at a raw integer vector, without reduction to
    /// primitive form.
    pub fn support_along(&self, dx: i64, dy: i64) -> Rational {
        let (dx, dy) = (Rational::from_int(dx), Rational::from_int(dy));
        self.vertices
            .iter()
            .map(|v| &(&dx * v.x()) + &(&dy * v.y()))
            .max()
            .expect("polygon is nonempty")
    }

    /// The face maximizing ⟨d, ·⟩.
    pub fn support_face(&self, d: &Direction) -> Face {
        let values: Vec<Rational> = self.vertices.iter().map(|v| d.dot(v)).collect();
        let best = values.iter().max().unwrap().clone();
        let arg: Vec<usize> = (0..values.len()).filter(|&i| values[i] == best).collect();
        match arg.as_slice() {
            [i] => Face::Vertex(*i),
            [i, j] => {
                let n = self.vertices.len();
                // Orient the edge with the boundary: (i, i+1) in CCW order.
                if (*i + 1) % n == *j {
                    Face::Edge(*i, *j)
                } else {
                    Face::Edge(*j, *i)
                }
            }
            _ => unreachable!("strictly convex polygon has at most two extreme vertices"),
        }
    }

    /// Right derivative of the support function with respect to angle at
    /// direction d: max of ⟨rot90(d), v⟩ over the extreme vertices. This is
    /// the symbolic perturbation used to order curves just after a shared
    /// angle.
    pub fn support_right_derivative(&self, d: &Direction) -> Rational {
        let values: Vec<Rational> = self.vertices.iter().map(|v| d.dot(v)).collect();
        let best = values.iter().max().unwrap().clone();
        let perp = d.rot90();
        (0..values.len())
            .filter(|&i| values[i] == best)
            .map(|i| perp.dot(&self.vertices[i]))
            .max()
            .unwrap()
    }

    /// All outward edge normals (directions where the support face is an
    /// edge), primitive. Points have none; a segment has two antipodal ones.
    pub fn edge_normals(&self) -> Vec<Direction> {
        let n = self.vertices.len();
        match n {
            1 => Vec::new(),
            2 => {
                let d = Direction::between_points(&self.vertices[0], &self.vertices[1])
                    .expect("segment endpoints are distinct");
                vec![d.rot270(), d.rot90()]
            }
            _ => (0..n)
                .map(|i| {
                    Direction::between_points(&self.vertices[i], &self.vertices[(i + 1) % n])
                        .expect("polygon vertices are distinct")
                        .rot270()
                })
                .collect(),
        }
    }

    pub fn translated(&self, dx: &Rational, dy: &Rational) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Point2::new(v.x() + dx, v.y() + dy))
                .collect(),
        }
    }

    pub fn scaled(&self, s: &Rational) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Point2::new(v.x() * s, v.y() * s))
                .collect(),
        }
    }
}

impl TryFrom<Vec<Point2>> for Polygon {
    type Error = Error;
    fn try_from(v: Vec<Point2>) -> Result<Polygon> {
        Polygon::strict(&v)
    }
}

impl From<Polygon> for Vec<Point2> {
    fn from(p: Polygon) -> Vec<Point2> {
        p.vertices
    }
}
