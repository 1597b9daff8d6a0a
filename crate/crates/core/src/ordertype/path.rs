use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::chirotope::Chirotope;
use super::triples::chirotope_of;
use crate::comb::{bump_closure, SwapPair, Tableau};
use crate::error::{Error, Result};
use crate::exact::{cmp_angle, Direction, Point2};
use crate::label::Label;

/// A wiring diagram over an interval: paths enter at the left edge in the
/// `initial` bottom-to-top order and cross according to `swaps`, read left
/// to right.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPathSystem", into = "RawPathSystem")]
pub struct PathSystem {
    initial: Vec<Label>,
    swaps: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPathSystem {
    initial: Vec<Label>,
    swaps: Vec<usize>,
}

impl PathSystem {
    pub fn new(initial: Vec<Label>, swaps: Vec<usize>) -> Result<PathSystem> {
        let n = initial.len();
        if n == 0 {
            return Err(Error::InvalidInput("path system needs at least one path".into()));
        }
        let distinct: BTreeSet<&Label> = initial.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidInput("duplicate labels in path system".into()));
        }
        for &h in &swaps {
            if h == 0 || h >= n {
                return Err(Error::InvalidInput(format!(
                    "swap height {h} out of range 1..={}",
                    n.saturating_sub(1)
                )));
            }
        }
        Ok(PathSystem { initial, swaps })
    }

    pub fn initial(&self) -> &[Label] {
        &self.initial
    }

    pub fn swaps(&self) -> &[usize] {
        &self.swaps
    }

    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn final_order(&self) -> Vec<Label> {
        let mut order = self.initial.clone();
        for &h in &self.swaps {
            order.swap(h - 1, h);
        }
        order
    }

    /// Concatenation: identifies this system's right end-points with the
    /// other's left end-points, which must agree label for label.
    pub fn concat(&self, other: &PathSystem) -> Result<PathSystem> {
        if self.final_order() != other.initial {
            return Err(Error::LabelMismatch(
                "concatenation seam orders do not match".into(),
            ));
        }
        let mut swaps = self.swaps.clone();
        swaps.extend_from_slice(&other.swaps);
        PathSystem::new(self.initial.clone(), swaps)
    }

    /// Vertical flip (x, y) -> (x, -y): the initial order reverses and each
    /// swap height h becomes n - h.
    pub fn vflip(&self) -> PathSystem {
        let n = self.initial.len();
        PathSystem {
            initial: self.initial.iter().rev().cloned().collect(),
            swaps: self.swaps.iter().map(|&h| n - h).collect(),
        }
    }

    /// Closes the path system into a system of curves on the cylinder by
    /// identifying the left and right edges; requires each path to end at
    /// the height it started.
    pub fn cyclecat(&self) -> Result<SwapPair> {
        if self.final_order() != self.initial {
            return Err(Error::InvalidInput(
                "cannot identify edges: end order differs from start order".into(),
            ));
        }
        SwapPair::new(self.initial.clone(), self.swaps.clone())
    }
}

impl TryFrom<RawPathSystem> for PathSystem {
    type Error = Error;
    fn try_from(raw: RawPathSystem) -> Result<PathSystem> {
        PathSystem::new(raw.initial, raw.swaps)
    }
}

impl From<PathSystem> for RawPathSystem {
    fn from(p: PathSystem) -> RawPathSystem {
        RawPathSystem {
            initial: p.initial,
            swaps: p.swaps,
        }
    }
}

/// The full-reversal block: each path from bottom to top crosses all paths
/// below itself, emitting heights (1), (2,1), (3,2,1), ... The final order
/// is the reverse of the input.
pub fn u_block(order: &[Label]) -> PathSystem {
    let n = order.len();
    let mut swaps = Vec::with_capacity(n * (n - 1) / 2);
    for i in 2..=n {
        for h in (1..i).rev() {
            swaps.push(h);
        }
    }
    PathSystem {
        initial: order.to_vec(),
        swaps,
    }
}

/// The system of curves obtained by gluing the path system to its vertical
/// flip around the cylinder: cyclecat(L · vflip L). For a pseudoline
/// representation this recovers the full dual system of its order type.
pub fn swap_pair_from_half(half: &PathSystem) -> Result<SwapPair> {
    half.concat(&half.vflip())?.cyclecat()
}

/// The half-period wiring diagram of the dual line arrangement of a generic
/// point set: the initial order is the projection order just after angle 0,
/// and each unordered pair swaps at the angle in (0, π] perpendicular to its
/// connecting line. Requires general position and pairwise non-parallel
/// connecting lines.
pub fn allowable_sequence(points: &[(Label, Point2)]) -> Result<PathSystem> {
    check_distinct(points)?;
    let initial = projection_order(points);
    if points.len() == 1 {
        return PathSystem::new(initial, Vec::new());
    }

    // One event per unordered pair, at the connecting-line normal folded
    // into the upper half-turn (0, π].
    let mut events: Vec<(Direction, Label, Label)> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = upper_half_normal(&points[i].1, &points[j].1)?;
            events.push((d, points[i].0.clone(), points[j].0.clone()));
        }
    }
    events.sort_by(|a, b| cmp_angle(&a.0, &b.0));
    for w in events.windows(2) {
        if w[0].0 == w[1].0 {
            let shared = [&w[0].1, &w[0].2].iter().any(|l| **l == w[1].1 || **l == w[1].2);
            return Err(if shared {
                Error::Genericity(format!(
                    "collinear points: {}, {} and {}, {} swap at the same angle {}",
                    w[0].1, w[0].2, w[1].1, w[1].2, w[0].0
                ))
            } else {
                Error::Degenerate(format!(
                    "parallel connecting lines: {{{}, {}}} and {{{}, {}}}",
                    w[0].1, w[0].2, w[1].1, w[1].2
                ))
            });
        }
    }

    let mut order = initial.clone();
    let mut swaps = Vec::with_capacity(events.len());
    for (d, a, b) in &events {
        let pa = order.iter().position(|l| l == a).unwrap();
        let pb = order.iter().position(|l| l == b).unwrap();
        if pa.abs_diff(pb) != 1 {
            return Err(Error::Inconsistent(format!(
                "pair {{{a}, {b}}} is not adjacent at its swap angle {d}"
            )));
        }
        swaps.push(pa.min(pb) + 1);
        order.swap(pa, pb);
    }
    let rev: Vec<Label> = initial.iter().rev().cloned().collect();
    if order != rev {
        return Err(Error::Inconsistent(
            "half-period sweep did not reverse the projection order".into(),
        ));
    }
    PathSystem::new(initial, swaps)
}

fn check_distinct(points: &[(Label, Point2)]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].0 == points[j].0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate label {}",
                    points[i].0
                )));
            }
            if points[i].1 == points[j].1 {
                return Err(Error::Degenerate(format!(
                    "points {} and {} coincide",
                    points[i].0, points[j].0
                )));
            }
        }
    }
    Ok(())
}

/// Bottom-to-top order of the dual curves just after angle 0: by x, ties by
/// the derivative y.
fn projection_order(points: &[(Label, Point2)]) -> Vec<Label> {
    let mut keyed: Vec<(&Point2, &Label)> = points.iter().map(|(l, p)| (p, l)).collect();
    keyed.sort_by(|a, b| (a.0.x(), a.0.y()).cmp(&(b.0.x(), b.0.y())));
    keyed.into_iter().map(|(_, l)| l.clone()).collect()
}

/// The normal of the line through a and b, folded into the half-turn (0, π].
fn upper_half_normal(a: &Point2, b: &Point2) -> Result<Direction> {
    let d = Direction::between_points(a, b)?.rot90();
    Ok(if d.dy().sign() == num::bigint::Sign::Minus
        || (d.dy().sign() == num::bigint::Sign::NoSign
            && d.dx().sign() == num::bigint::Sign::Plus)
    {
        d.neg()
    } else {
        d
    })
}

/// A pseudoline representation of the order type of `points` in which the
/// distinguished path starts on top and crosses every other path before any
/// other crossing happens.
///
/// Preconditions from the indexing convention: the distinguished point is a
/// vertex of the convex hull and the rays towards the other points, sorted
/// counter-clockwise across their half-plane, list the other labels in
/// ascending order.
pub fn firstpath_representation(
    points: &[(Label, Point2)],
    distinguished: &Label,
) -> Result<PathSystem> {
    check_distinct(points)?;
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "firstpath representation needs at least two points".into(),
        ));
    }
    let q = points
        .iter()
        .find(|(l, _)| l == distinguished)
        .ok_or_else(|| Error::LabelMismatch(format!("no point labeled {distinguished}")))?
        .1
        .clone();
    let mut others: Vec<Label> = points
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| l != distinguished)
        .collect();
    others.sort();
    validate_indexing_convention(points, distinguished, &q, &others)?;

    // Full dual system of the point set and its tableau. Rows are the
    // cyclic local sequences; the firstpath tableau is the same data read
    // from the cut just before the distinguished curve descends.
    let half = allowable_sequence(points)?;
    let full = swap_pair_from_half(&half)?;
    let tab = Tableau::of(&full);

    // Row start offsets: each other row starts at its crossing where the
    // distinguished curve passes downward through it.
    let mut row_offset: std::collections::BTreeMap<Label, usize> = Default::default();
    let mut seen: std::collections::BTreeMap<Label, usize> = Default::default();
    for pair in full.incidence_sequence() {
        for l in [&pair.upper, &pair.lower] {
            *seen.entry(l.clone()).or_insert(0) += 1;
        }
        if &pair.upper == distinguished {
            row_offset.insert(pair.lower.clone(), seen[&pair.lower] - 1);
        }
    }

    let mut order: Vec<Label> = others.iter().rev().cloned().collect();
    order.push(distinguished.clone());
    let mut rows: Vec<Vec<Label>> = Vec::with_capacity(n);
    for l in &order {
        let row = tab.row(l).expect("label present");
        let offset = if l == distinguished {
            // (2, ..., n, 2, ..., n): both cuts work; pick the one already
            // in that shape.
            let mut want = others.clone();
            want.extend(others.iter().cloned());
            if row == want.as_slice() {
                0
            } else {
                row.iter()
                    .position(|x| x == &others[0])
                    .ok_or_else(|| Error::Inconsistent("distinguished row mismatch".into()))?
            }
        } else {
            row_offset
                .get(l)
                .copied()
                .ok_or_else(|| Error::Inconsistent(format!("no descent crossing with {l}")))?
        };
        let mut rotated = row[offset..].to_vec();
        rotated.extend_from_slice(&row[..offset]);
        rows.push(rotated);
    }
    let cut = Tableau::from_parts(order, rows)?;

    if !bump_closure(&Tableau::of(&full))?.contains(&cut) {
        return Err(Error::InvalidInput(format!(
            "points do not satisfy the firstpath indexing convention for {distinguished}"
        )));
    }

    let word = linearize_first_half(&cut, distinguished)?;
    let half_len = n * (n - 1) / 2;
    let system = PathSystem::new(cut_initial(&cut), word[..half_len].to_vec())?;

    // Structural guarantees: the distinguished path descends first, the
    // half reverses, and the represented order type is that of the points.
    for (t, &h) in system.swaps[..n - 1].iter().enumerate() {
        if h != n - 1 - t {
            return Err(Error::Inconsistent(
                "distinguished path does not descend first".into(),
            ));
        }
    }
    if n >= 3 {
        let rebuilt = chirotope_of(&swap_pair_from_half(&system)?)?;
        let oracle = Chirotope::of_points(points)?;
        if rebuilt != oracle {
            return Err(Error::Inconsistent(
                "firstpath representation changed the order type".into(),
            ));
        }
    }
    Ok(system)
}

fn cut_initial(cut: &Tableau) -> Vec<Label> {
    cut.order().to_vec()
}

/// Checks the indexing convention required of the point sets fed to the
/// universality constructions, without building anything.
pub(crate) fn check_firstpath_convention(
    points: &[(Label, Point2)],
    distinguished: &Label,
) -> Result<()> {
    check_distinct(points)?;
    let q = points
        .iter()
        .find(|(l, _)| l == distinguished)
        .ok_or_else(|| Error::LabelMismatch(format!("no point labeled {distinguished}")))?
        .1
        .clone();
    let mut others: Vec<Label> = points
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| l != distinguished)
        .collect();
    others.sort();
    validate_indexing_convention(points, distinguished, &q, &others)
}

/// Validates the indexing convention: distinguished on the hull, rays to the
/// others sorted counter-clockwise in ascending label order.
fn validate_indexing_convention(
    points: &[(Label, Point2)],
    distinguished: &Label,
    q: &Point2,
    others: &[Label],
) -> Result<()> {
    use crate::geometry::Polygon;
    let all: Vec<Point2> = points.iter().map(|(_, p)| p.clone()).collect();
    let hull = Polygon::from_hull(&all)?;
    if !hull.vertices().contains(q) {
        return Err(Error::InvalidInput(format!(
            "distinguished point {distinguished} is not on the convex boundary"
        )));
    }
    let mut rays: Vec<(Direction, Label)> = Vec::new();
    for (l, p) in points {
        if l == distinguished {
            continue;
        }
        rays.push((Direction::between_points(q, p)?, l.clone()));
    }
    rays.sort_by(|a, b| cmp_angle(&a.0, &b.0));
    for w in rays.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Degenerate(format!(
                "points {} and {} are collinear with {distinguished}",
                w[0].1, w[1].1
            )));
        }
    }
    // The rays span less than a half turn; rotate the sorted list to start
    // after the unique long gap.
    let m = rays.len();
    let start = if m == 1 {
        0
    } else {
        let mut wide_gap = None;
        for i in 0..m {
            let cur = &rays[i].0;
            let next = &rays[(i + 1) % m].0;
            // The CCW arc from cur to next is at least π when the cross
            // product is non-positive (equal directions were excluded).
            let cross_nonpos = {
                use num::Signed;
                !(cur.dx() * next.dy() - cur.dy() * next.dx()).is_positive()
            };
            if cross_nonpos {
                if wide_gap.is_some() {
                    return Err(Error::InvalidInput(format!(
                        "rays from {distinguished} do not fit in a half plane"
                    )));
                }
                wide_gap = Some((i + 1) % m);
            }
        }
        wide_gap.ok_or_else(|| {
            Error::InvalidInput(format!(
                "rays from {distinguished} wrap around; point is interior"
            ))
        })?
    };
    let seq: Vec<&Label> = (0..m).map(|i| &rays[(start + i) % m].1).collect();
    let want: Vec<&Label> = others.iter().collect();
    if seq != want {
        return Err(Error::InvalidInput(format!(
            "local sequence of {distinguished} is {seq:?}, expected ascending labels {want:?}"
        )));
    }
    Ok(())
}

/// Emits a full linearization of the cut tableau, preferring crossings of
/// pairs that have not crossed yet so the first half-period contains each
/// pair exactly once.
fn linearize_first_half(cut: &Tableau, distinguished: &Label) -> Result<Vec<usize>> {
    let n = cut.n();
    let total = cut.total_entries() / 2;
    let mut current = cut.clone();
    let mut crossed: BTreeSet<(Label, Label)> = BTreeSet::new();
    let mut word = Vec::with_capacity(total);
    for step in 0..total {
        let pairs = current.adjacent_pairs()?;
        if pairs.is_empty() {
            return Err(Error::Inconsistent(
                "linearization stalled before exhausting the tableau".into(),
            ));
        }
        let key = |lo: &usize| -> (Label, Label) {
            let a = current.order()[*lo].clone();
            let b = current.order()[*lo + 1].clone();
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let lo = pairs
            .iter()
            .find(|p| !crossed.contains(&key(p)))
            .or_else(|| pairs.first())
            .copied()
            .unwrap();
        let pair_key = key(&lo);
        if step < n * (n - 1) / 2 && crossed.contains(&pair_key) {
            return Err(Error::Inconsistent(format!(
                "pair {pair_key:?} repeats inside the first half-period of {distinguished}"
            )));
        }
        crossed.insert(pair_key);
        word.push(lo + 1);
        current = current.sweep_step(lo)?;
    }
    Ok(word)
}
