use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::polygon::Polygon;
use super::tangents::{common_tangents, Crossing};
use crate::comb::SwapPair;
use crate::error::{Error, Result};
use crate::exact::{Direction, Point2, Rational};
use crate::label::Label;
use crate::ordertype::Chirotope;

/// A finite indexed family of convex bodies satisfying the genericity
/// conditions: pairwise transversal support-curve crossings, no tangent
/// shared by three bodies, finitely many tangents. Validated exhaustively on
/// construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement", into = "RawArrangement")]
pub struct Arrangement {
    bodies: BTreeMap<Label, Polygon>,
    config: SupportConfiguration,
}

#[derive(Serialize, Deserialize)]
struct RawArrangement {
    bodies: Vec<RawBody>,
}

#[derive(Serialize, Deserialize)]
struct RawBody {
    label: Label,
    vertices: Polygon,
}

/// The support configuration of an arrangement: every common supporting
/// tangent (i, j, θ), sorted lexicographically by angle and then by the
/// height of the crossing on the cylinder.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SupportConfiguration {
    pub crossings: Vec<Crossing>,
}

impl Arrangement {
    pub fn new(bodies: BTreeMap<Label, Polygon>) -> Result<Arrangement> {
        if bodies.is_empty() {
            return Err(Error::InvalidInput("arrangement needs at least one body".into()));
        }
        let config = compute_support_configuration(&bodies)?;
        Ok(Arrangement { bodies, config })
    }

    pub fn bodies(&self) -> &BTreeMap<Label, Polygon> {
        &self.bodies
    }

    pub fn body(&self, label: &Label) -> Option<&Polygon> {
        self.bodies.get(label)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.bodies.keys().cloned().collect()
    }

    pub fn n(&self) -> usize {
        self.bodies.len()
    }

    /// The sorted, validated support configuration.
    pub fn support_configuration(&self) -> &SupportConfiguration {
        &self.config
    }

    /// The swap pair of the arrangement: ρ is the bottom-to-top order of the
    /// support values just after angle 0 (ties at (1, 0) broken by the right
    /// derivative of the support function), and σ records the height of each
    /// crossing in sweep order. The sweep is replayed and must close up.
    pub fn swap_pair(&self) -> Result<SwapPair> {
        let rho = self.initial_order()?;
        let mut order = rho.clone();
        let mut sigma = Vec::with_capacity(self.config.crossings.len());
        for c in &self.config.crossings {
            let pos_second = order
                .iter()
                .position(|l| l == &c.second)
                .expect("crossing labels come from the body map");
            let above = pos_second + 1;
            if order.get(above) != Some(&c.first) {
                return Err(Error::Genericity(format!(
                    "crossing ({}, {}) at {} does not happen between adjacent curves",
                    c.first, c.second, c.dir
                )));
            }
            order.swap(pos_second, above);
            sigma.push(above);
        }
        if order != rho {
            return Err(Error::Genericity(
                "sweep of the support configuration does not close up".into(),
            ));
        }
        SwapPair::new(rho, sigma)
    }

    /// Labels sorted bottom to top by support value at the direction (1, 0),
    /// which carries the maximal angle 2π; ties are broken by the right
    /// derivative, i.e. the order just after the sweep origin.
    fn initial_order(&self) -> Result<Vec<Label>> {
        let east = Direction::new(1, 0).expect("nonzero");
        let mut keyed: Vec<(Rational, Rational, Label)> = self
            .bodies
            .iter()
            .map(|(l, p)| {
                (
                    p.support_value(&east),
                    p.support_right_derivative(&east),
                    l.clone(),
                )
            })
            .collect();
        keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::Genericity(format!(
                    "bodies {} and {} are indistinguishable at the sweep origin",
                    w[0].2, w[1].2
                )));
            }
        }
        Ok(keyed.into_iter().map(|(_, _, l)| l).collect())
    }

    /// The order type of all vertices of the arrangement, indexed by
    /// (body label, 1-based vertex index). Errors on any collinear triple.
    pub fn vertex_chirotope(&self) -> Result<Chirotope<(Label, usize)>> {
        let mut points = Vec::new();
        for (l, poly) in &self.bodies {
            for (i, v) in poly.vertices().iter().enumerate() {
                points.push(((l.clone(), i + 1), v.clone()));
            }
        }
        Chirotope::of_points(&points)
    }

    /// Approximate Hausdorff-metric distance: the maximum over labels of the
    /// supremum of |h_A - h_B| over sampled unit directions (all edge
    /// normals of both bodies plus a uniform refinement). Floating point by
    /// design; used for diagnostics, never for predicates.
    pub fn hausdorff_distance(&self, other: &Arrangement) -> Result<f64> {
        if self.labels() != other.labels() {
            return Err(Error::LabelMismatch(
                "arrangements are over different label sets".into(),
            ));
        }
        let mut worst = 0.0_f64;
        for (label, a) in &self.bodies {
            let b = &other.bodies[label];
            let mut angles: Vec<f64> = Vec::new();
            for poly in [a, b] {
                for d in poly.edge_normals() {
                    angles.push(d.turn_f64() * std::f64::consts::TAU);
                }
            }
            for k in 0..720 {
                angles.push(k as f64 / 720.0 * std::f64::consts::TAU);
            }
            let eval = |poly: &Polygon, t: f64| -> f64 {
                poly.vertices()
                    .iter()
                    .map(|v| v.x().to_f64() * t.cos() + v.y().to_f64() * t.sin())
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            for t in angles {
                let d = (eval(a, t) - eval(b, t)).abs();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }
}

fn compute_support_configuration(
    bodies: &BTreeMap<Label, Polygon>,
) -> Result<SupportConfiguration> {
    let labels: Vec<&Label> = bodies.keys().collect();
    let mut crossings: Vec<Crossing> = Vec::new();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            crossings.extend(common_tangents(a, &bodies[*a], b, &bodies[*b])?);
        }
    }
    // Lexicographic order on S^1 x R^1: angle first, then the height of the
    // crossing, i.e. the shared support value at that direction.
    crossings.sort_by(|x, y| {
        x.dir.cmp(&y.dir).then_with(|| {
            let hx = bodies[&x.first].support_value(&x.dir);
            let hy = bodies[&y.first].support_value(&y.dir);
            hx.cmp(&hy)
        })
    });
    // No three bodies share a tangent: crossings at one angle must have
    // pairwise disjoint labels.
    let mut i = 0;
    while i < crossings.len() {
        let mut j = i;
        let mut seen: Vec<&Label> = Vec::new();
        while j < crossings.len() && crossings[j].dir == crossings[i].dir {
            for l in [&crossings[j].first, &crossings[j].second] {
                if seen.contains(&l) {
                    return Err(Error::Genericity(format!(
                        "three bodies share a common supporting tangent with normal {} (label {l})",
                        crossings[i].dir
                    )));
                }
                seen.push(l);
            }
            j += 1;
        }
        i = j;
    }
    Ok(SupportConfiguration { crossings })
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = Error;
    fn try_from(raw: RawArrangement) -> Result<Arrangement> {
        let mut bodies = BTreeMap::new();
        for b in raw.bodies {
            if bodies.insert(b.label.clone(), b.vertices).is_some() {
                return Err(Error::InvalidInput(format!("duplicate body label {}", b.label)));
            }
        }
        Arrangement::new(bodies)
    }
}

impl From<Arrangement> for RawArrangement {
    fn from(a: Arrangement) -> RawArrangement {
        RawArrangement {
            bodies: a
                .bodies
                .into_iter()
                .map(|(label, vertices)| RawBody { label, vertices })
                .collect(),
        }
    }
}

/// Builds an arrangement of one-point bodies from labeled points.
pub fn points_arrangement(points: &[(Label, Point2)]) -> Result<Arrangement> {
    let mut bodies = BTreeMap::new();
    for (l, p) in points {
        let poly = Polygon::from_hull(std::slice::from_ref(p))?;
        if bodies.insert(l.clone(), poly).is_some() {
            return Err(Error::InvalidInput(format!("duplicate label {l}")));
        }
    }
    Arrangement::new(bodies)
}
