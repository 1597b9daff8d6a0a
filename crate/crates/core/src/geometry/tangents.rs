use serde::{Deserialize, Serialize};

use super::polygon::{Face, Polygon};
use crate::error::{Error, Result};
use crate::exact::{sample_in_cyclic_arc, Direction, Rational, Sign};
use crate::label::Label;

/// A common supporting tangent of the pair (first, second): a directed line
/// touching both bodies with both on its left, meeting the body `first`
/// before the body `second`, with outward normal `dir`. In the dual this is
/// a transversal crossing of the two support curves at the angle of `dir`,
/// with the curve of `first` crossing downward.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub first: Label,
    pub second: Label,
    pub dir: Direction,
}

/// All common supporting tangents of a generic pair of bodies, sorted by the
/// angle of the outward normal.
///
/// Works on the dual curves. The circle splits at the outward edge normals
/// of the two bodies; on each open arc both support functions are plain
/// inner products with a fixed extreme vertex, so the difference has at most
/// two exactly computable zeros (perpendicular to the vertex difference),
/// which are transversal crossings. Meetings at the arc endpoints are
/// corner crossings and must change sign; a touch without a sign change or
/// two curves agreeing on a whole arc is a genericity error.
pub fn common_tangents(
    a_label: &Label,
    a: &Polygon,
    b_label: &Label,
    b: &Polygon,
) -> Result<Vec<Crossing>> {
    if a.vertices() == b.vertices() {
        return Err(Error::Genericity(format!(
            "bodies {a_label} and {b_label} coincide"
        )));
    }

    // Event angles: outward edge normals of both bodies; for a pair of
    // one-point bodies, the two perpendiculars of their difference.
    let mut events: Vec<Direction> = Vec::new();
    events.extend(a.edge_normals());
    events.extend(b.edge_normals());
    if events.is_empty() {
        let d = Direction::between_points(&b.vertices()[0], &a.vertices()[0])?;
        events.push(d.rot90());
        events.push(d.rot270());
    }
    events.sort();
    events.dedup();
    if events.len() == 1 {
        let d = events[0].neg();
        events.push(d);
        events.sort();
    }
    let m = events.len();

    // Per event: the exact value of h_A - h_B.
    let value_at: Vec<Rational> = events
        .iter()
        .map(|e| a.support_value(e) - b.support_value(e))
        .collect();

    // Per open arc (event t to event t+1): extreme vertices of both bodies,
    // read off at an exact sample strictly inside the arc.
    struct Arc {
        sign_after_start: Sign,
        sign_before_end: Sign,
        interior: Vec<(Direction, Sign)>, // zero angle, sign just before it
    }
    let mut arcs: Vec<Arc> = Vec::with_capacity(m);
    for t in 0..m {
        let start = &events[t];
        let end = &events[(t + 1) % m];
        let sample = sample_in_cyclic_arc(start, end)?;
        let p = match a.support_face(&sample) {
            Face::Vertex(i) => a.vertices()[i].clone(),
            Face::Edge(..) => {
                return Err(Error::Inconsistent(
                    "edge extreme strictly between edge normals".into(),
                ))
            }
        };
        let q = match b.support_face(&sample) {
            Face::Vertex(i) => b.vertices()[i].clone(),
            Face::Edge(..) => {
                return Err(Error::Inconsistent(
                    "edge extreme strictly between edge normals".into(),
                ))
            }
        };
        if p == q {
            return Err(Error::Genericity(format!(
                "support curves of {a_label} and {b_label} agree on an arc: shared extreme point {p:?}"
            )));
        }
        let diff = Direction::between_points(&q, &p)?;
        // Zeros of <θ, p - q> and the sign just before each.
        let mut interior = Vec::new();
        for (zero, before) in [(diff.rot90(), Sign::Pos), (diff.rot270(), Sign::Neg)] {
            if in_open_cyclic_arc(start, end, &zero) {
                interior.push((zero, before));
            }
        }
        interior.sort_by(|x, y| x.0.cmp(&y.0));
        let sign_of = |endpoint_value: &Rational, e: &Direction, just_after: bool| -> Sign {
            let s = Sign::of(endpoint_value);
            if s != Sign::Zero {
                return s;
            }
            // Meeting exactly at the endpoint: the sign on this side of it
            // follows from the angular derivative <rot90(e), p - q>.
            let d = Sign::of(&e.rot90().dot_dir(&diff));
            if just_after {
                d
            } else {
                d.flip()
            }
        };
        let sign_after_start = sign_of(&value_at[t], start, true);
        let sign_before_end = sign_of(&value_at[(t + 1) % m], end, false);
        arcs.push(Arc {
            sign_after_start,
            sign_before_end,
            interior,
        });
    }

    let label_for = |above_before: Sign| -> Result<(Label, Label)> {
        match above_before {
            Sign::Pos => Ok((a_label.clone(), b_label.clone())),
            Sign::Neg => Ok((b_label.clone(), a_label.clone())),
            Sign::Zero => Err(Error::Inconsistent("zero sign at crossing".into())),
        }
    };

    let mut crossings: Vec<Crossing> = Vec::new();
    for t in 0..m {
        // Corner meeting at event t: must change sign across it.
        if value_at[t].is_zero() {
            let before = arcs[(t + m - 1) % m].sign_before_end;
            let after = arcs[t].sign_after_start;
            if before == after || before == Sign::Zero || after == Sign::Zero {
                return Err(Error::Genericity(format!(
                    "bodies {a_label} and {b_label} touch without crossing at {}",
                    events[t]
                )));
            }
            let (first, second) = label_for(before)?;
            crossings.push(Crossing {
                first,
                second,
                dir: events[t].clone(),
            });
        }
        for (zero, before) in &arcs[t].interior {
            let (first, second) = label_for(*before)?;
            crossings.push(Crossing {
                first,
                second,
                dir: zero.clone(),
            });
        }
        // Arc-consistency: the recorded boundary signs must match the
        // interior zero pattern, otherwise the pair is degenerate in a way
        // the face structure missed.
        let expected_flips = arcs[t].interior.len();
        let flips_needed = usize::from(arcs[t].sign_after_start != arcs[t].sign_before_end);
        if expected_flips % 2 != flips_needed % 2 {
            return Err(Error::Genericity(format!(
                "inconsistent support ordering of {a_label}, {b_label} between {} and {}",
                events[t],
                events[(t + 1) % m]
            )));
        }
    }

    crossings.sort_by(|x, y| x.dir.cmp(&y.dir));
    for w in crossings.windows(2) {
        if w[0].dir == w[1].dir {
            return Err(Error::Genericity(format!(
                "pair {a_label},{b_label} has two tangents with the same normal {}",
                w[0].dir
            )));
        }
    }
    // Transversal crossings alternate around the full circle.
    let n = crossings.len();
    if !n.is_multiple_of(2) {
        return Err(Error::Genericity(format!(
            "odd number of crossings between {a_label} and {b_label}"
        )));
    }
    for t in 0..n {
        if crossings[t].first == crossings[(t + 1) % n].first {
            return Err(Error::Genericity(format!(
                "crossings of {a_label},{b_label} fail to alternate at {}",
                crossings[t].dir
            )));
        }
    }
    Ok(crossings)
}

/// Whether x lies strictly inside the counter-clockwise arc from a to b.
fn in_open_cyclic_arc(a: &Direction, b: &Direction, x: &Direction) -> bool {
    if x == a || x == b {
        return false;
    }
    use std::cmp::Ordering::Less;
    if a.cmp(b) == Less {
        a.cmp(x) == Less && x.cmp(b) == Less
    } else {
        a.cmp(x) == Less || x.cmp(b) == Less
    }
}

impl Direction {
    /// ⟨self, other⟩ as integer vectors, exposed for the tangent sweep.
    fn dot_dir(&self, other: &Direction) -> Rational {
        Rational::from_bigint(self.dx() * other.dx() + self.dy() * other.dy())
    }
}
