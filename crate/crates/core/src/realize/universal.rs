use std::collections::BTreeMap;

use crate::comb::{equivalent, SwapPair};
use crate::error::{Error, Result};
use crate::exact::{cmp_angle, orient, Point2, ProjectiveMap, Rational, Sign};
use crate::geometry::{Arrangement, Polygon};
use crate::label::Label;
use crate::ordertype::{firstpath_representation, u_block, PathSystem};

use super::ngons::circle_direction_near;

/// The dual universality construction: interleaves the given pseudoline
/// representations with full-reversal blocks and closes the result around
/// the cylinder, T = cyclecat(L_1 · U · L_2 · U · ... · L_k · U).
///
/// Every system must be a firstpath representation over the same labels
/// (same initial order, distinguished minimal label descending first) and
/// must reverse its order. Warns when the cyclic sequence of blocks is
/// periodic with period smaller than k; the construction still goes
/// through, only the uniqueness arguments need non-periodicity.
pub fn universal_dual(systems: &[PathSystem]) -> Result<SwapPair> {
    let k = systems.len();
    if k < 2 {
        return Err(Error::InvalidInput(
            "universality needs at least two blocks".into(),
        ));
    }
    let first = &systems[0];
    for l in systems {
        if l.initial() != first.initial() {
            return Err(Error::LabelMismatch(
                "all blocks must start in the same order".into(),
            ));
        }
        check_firstpath_shape(l)?;
    }
    for p in 1..k {
        if k.is_multiple_of(p) && (0..k).all(|i| systems[i] == systems[(i + p) % k]) {
            log::warn!(
                "block sequence is periodic with period {p} < {k}; the combinatorial type is still well defined"
            );
            break;
        }
    }

    let mut cur = systems[0].clone();
    cur = cur.concat(&u_block(&cur.final_order()))?;
    for l in &systems[1..] {
        cur = cur.concat(l)?;
        cur = cur.concat(&u_block(&cur.final_order()))?;
    }
    let sp = cur.cyclecat()?;

    let labels: Vec<&Label> = first.initial().iter().collect();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            let c = sp.crossing_count(a, b);
            if c != 2 * k {
                return Err(Error::Inconsistent(format!(
                    "pair {{{a}, {b}}} crosses {c} times, expected {}",
                    2 * k
                )));
            }
        }
    }
    Ok(sp)
}

/// Structural firstpath check: the minimal label starts on top and its
/// descent to the bottom fills the first n-1 swaps; the block reverses its
/// order overall.
fn check_firstpath_shape(l: &PathSystem) -> Result<()> {
    let n = l.n();
    if n < 2 {
        return Err(Error::InvalidInput("blocks need at least two paths".into()));
    }
    let min = l.initial().iter().min().unwrap();
    if l.initial().last() != Some(min) {
        return Err(Error::InvalidInput(format!(
            "distinguished label {min} does not start on top"
        )));
    }
    if l.swaps().len() < n - 1 || (0..n - 1).any(|t| l.swaps()[t] != n - 1 - t) {
        return Err(Error::InvalidInput(
            "distinguished path does not cross all others first".into(),
        ));
    }
    let rev: Vec<Label> = l.initial().iter().rev().cloned().collect();
    if l.final_order() != rev {
        return Err(Error::InvalidInput("block does not reverse its order".into()));
    }
    Ok(())
}

/// The primal universality construction: 2k anchor points in convex
/// position whose gap chords bound a convex region, one projective copy of
/// each input point set placed in each gap, and bodies A^s spanning the
/// s-th point of every copy. Cross-validated against the dual construction.
pub fn universal_primal(point_sets: &[Vec<(Label, Point2)>]) -> Result<Arrangement> {
    let k = point_sets.len();
    if k < 2 {
        return Err(Error::InvalidInput(
            "universality needs at least two point sets".into(),
        ));
    }
    let labels = sorted_labels(&point_sets[0])?;
    let n = labels.len();
    if n < 3 {
        return Err(Error::InvalidInput("point sets need at least three points".into()));
    }
    let distinguished = labels[0].clone();
    for ps in point_sets {
        if sorted_labels(ps)? != labels {
            return Err(Error::LabelMismatch(
                "all point sets must share one label set".into(),
            ));
        }
        crate::ordertype::check_firstpath_convention(ps, &distinguished)?;
    }

    let anchors = anchor_points(k)?;
    let mut images: Vec<BTreeMap<Label, Point2>> = Vec::with_capacity(k);
    for (i, ps) in point_sets.iter().enumerate() {
        let (q1, qn) = augment(ps, &distinguished, &labels)?;
        let p1 = point_of(ps, &distinguished);
        let pn = point_of(ps, labels.last().unwrap());
        // phi_i: (q^n, p^1, p^n, q^1) -> (a_{i-1}^n, a_i^1, a_i^n, a_{i+1}^1).
        let src = [qn.clone(), p1.clone(), pn.clone(), q1.clone()];
        let dst = [
            anchors[(i + k - 1) % k].1.clone(),
            anchors[i].0.clone(),
            anchors[i].1.clone(),
            anchors[(i + 1) % k].0.clone(),
        ];
        let phi = ProjectiveMap::from_correspondence(&src, &dst)?;
        verify_embedding(&phi, ps, &q1, &qn, &anchors)?;
        let mapped: Result<BTreeMap<Label, Point2>> = ps
            .iter()
            .map(|(l, p)| phi.apply(p).map(|img| (l.clone(), img)))
            .collect();
        images.push(mapped?);
    }

    let mut bodies = BTreeMap::new();
    for s in &labels {
        let verts: Vec<Point2> = images.iter().map(|m| m[s].clone()).collect();
        let poly = Polygon::from_hull(&verts)?;
        if poly.len() != k {
            return Err(Error::Inconsistent(format!(
                "body {s} degenerated to {} vertices, expected {k}",
                poly.len()
            )));
        }
        bodies.insert(s.clone(), poly);
    }
    let arrangement = Arrangement::new(bodies)?;

    // The executable content of the equality of the two constructions:
    // the primal arrangement sweeps to the dual's combinatorial type.
    let blocks: Result<Vec<PathSystem>> = point_sets
        .iter()
        .map(|ps| firstpath_representation(ps, &distinguished))
        .collect();
    let dual = universal_dual(&blocks?)?;
    if !equivalent(&arrangement.swap_pair()?, &dual)? {
        return Err(Error::Inconsistent(
            "primal and dual universality constructions disagree".into(),
        ));
    }
    Ok(arrangement)
}

fn sorted_labels(ps: &[(Label, Point2)]) -> Result<Vec<Label>> {
    let mut ls: Vec<Label> = ps.iter().map(|(l, _)| l.clone()).collect();
    ls.sort();
    ls.dedup();
    if ls.len() != ps.len() {
        return Err(Error::InvalidInput("duplicate labels in point set".into()));
    }
    Ok(ls)
}

fn point_of(ps: &[(Label, Point2)], l: &Label) -> Point2 {
    ps.iter().find(|(x, _)| x == l).unwrap().1.clone()
}

/// The 2k anchor points a_1^1, a_1^n, ..., a_k^1, a_k^n on the rational
/// unit circle in counter-clockwise order, block i centered at i/k of a
/// turn, validated so that the chords a_i^n a_{i+1}^1 leave all other
/// anchors strictly left.
fn anchor_points(k: usize) -> Result<Vec<(Point2, Point2)>> {
    let mut width = 1.0 / (8.0 * k as f64);
    'outer: for _ in 0..8 {
        let tol = width / 8.0;
        let mut pairs = Vec::with_capacity(k);
        for i in 0..k {
            let center = (i as f64 + 1.0) / k as f64;
            let lo = circle_direction_near(center - width, tol)?;
            let hi = circle_direction_near(center + width, tol)?;
            pairs.push((unit(&lo)?, unit(&hi)?));
        }
        // Strict CCW cyclic order of all 2k anchors.
        let flat: Vec<&Point2> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
        let origin = Point2::from_ints(0, 0);
        let dirs: Result<Vec<_>> = flat
            .iter()
            .map(|p| crate::exact::Direction::between_points(&origin, p))
            .collect();
        let dirs = dirs?;
        let lowest = (0..dirs.len())
            .min_by(|&a, &b| cmp_angle(&dirs[a], &dirs[b]))
            .unwrap();
        for t in 0..dirs.len() - 1 {
            let cur = &dirs[(lowest + t) % dirs.len()];
            let next = &dirs[(lowest + t + 1) % dirs.len()];
            if cmp_angle(cur, next) != std::cmp::Ordering::Less {
                width /= 2.0;
                continue 'outer;
            }
        }
        // Chord from a_i^n to a_{i+1}^1 keeps every other anchor strictly
        // left; for k = 2 this admits parallel chords.
        for i in 0..k {
            let from = &pairs[i].1;
            let to = &pairs[(i + 1) % k].0;
            for p in &flat {
                if *p == from || *p == to {
                    continue;
                }
                if orient(from, to, p) != Sign::Pos {
                    width /= 2.0;
                    continue 'outer;
                }
            }
        }
        return Ok(pairs);
    }
    Err(Error::Degenerate(
        "could not place anchor points in convex position".into(),
    ))
}

fn unit(dir: &crate::exact::Direction) -> Result<Point2> {
    let norm2 = dir.dx() * dir.dx() + dir.dy() * dir.dy();
    let s = norm2.sqrt();
    if &s * &s != norm2 {
        return Err(Error::Degenerate("not an exact circle point".into()));
    }
    Ok(Point2::new(
        Rational::from_parts(dir.dx().clone(), s.clone())?,
        Rational::from_parts(dir.dy().clone(), s)?,
    ))
}

/// Chooses the two augmentation points q^1, q^n for a point set: both in
/// the open feasible region beyond the hull edge (p^n, p^1), on p^1's side
/// of every connecting line, arranged so that p^n, q^1, q^n, p^1 are
/// consecutive counter-clockwise on the augmented hull.
fn augment(
    ps: &[(Label, Point2)],
    distinguished: &Label,
    labels: &[Label],
) -> Result<(Point2, Point2)> {
    let p1 = point_of(ps, distinguished);
    let pn = point_of(ps, labels.last().unwrap());
    let all: Vec<Point2> = ps.iter().map(|(_, p)| p.clone()).collect();
    let hull = Polygon::from_hull(&all)?;
    let hv = hull.vertices();
    let pos_pn = hv
        .iter()
        .position(|v| v == &pn)
        .ok_or_else(|| Error::InvalidInput("p^n is not on the convex boundary".into()))?;
    if hv[(pos_pn + 1) % hv.len()] != p1 {
        return Err(Error::InvalidInput(
            "p^n is not followed by p^1 on the counter-clockwise boundary".into(),
        ));
    }
    let prev = hv[(pos_pn + hv.len() - 1) % hv.len()].clone();
    let next = hv[(hv.iter().position(|v| v == &p1).unwrap() + 1) % hv.len()].clone();

    // Open half-plane constraints (a, b, keep-positive): x must satisfy
    // orient(a, b, x) == Pos.
    let mut constraints: Vec<(Point2, Point2)> = Vec::new();
    for i in 0..all.len() {
        for j in 0..all.len() {
            if i == j || all[i] == p1 || all[j] == p1 {
                continue;
            }
            let side = orient(&all[i], &all[j], &p1);
            match side {
                Sign::Pos => constraints.push((all[i].clone(), all[j].clone())),
                Sign::Neg => constraints.push((all[j].clone(), all[i].clone())),
                Sign::Zero => {
                    return Err(Error::Degenerate(
                        "p^1 lies on a line through two other points".into(),
                    ))
                }
            }
        }
    }
    constraints.push((p1.clone(), pn.clone())); // beyond the edge: orient(pn, p1, x) = Neg
    constraints.push((prev.clone(), pn.clone()));
    constraints.push((p1.clone(), next.clone()));

    let region = clip_region(&all, &constraints)?;
    let x0 = vertex_centroid(&region)?;
    for (a, b) in &constraints {
        if orient(a, b, &x0) != Sign::Pos {
            return Err(Error::Degenerate(
                "augmentation centroid violates its constraints".into(),
            ));
        }
    }

    // q^1 = x0 and q^n slightly towards p^1 - p^n: this direction always
    // satisfies the two chain orientations; shrink until the open
    // constraints hold for q^n as well.
    let (dx, dy) = p1.sub(&pn);
    let mut eps = Rational::new(1, 1024)?;
    for _ in 0..24 {
        let qn = Point2::new(x0.x() + &(&dx * &eps), x0.y() + &(&dy * &eps));
        let ok = constraints.iter().all(|(a, b)| orient(a, b, &qn) == Sign::Pos)
            && orient(&pn, &x0, &qn) == Sign::Pos
            && orient(&x0, &qn, &p1) == Sign::Pos
            && ps.iter().all(|(l, v)| {
                l == distinguished
                    || (orient(&p1, v, &x0) == orient(&p1, v, &qn)
                        && orient(&p1, v, &x0) != Sign::Zero)
            });
        if ok {
            return Ok((x0, qn));
        }
        eps = eps * Rational::new(1, 16).unwrap();
    }
    Err(Error::Degenerate(
        "could not place augmentation points in the feasible region".into(),
    ))
}

/// Intersects the open half-planes over a generous bounding box of the data
/// and returns the resulting convex polygon's vertices.
fn clip_region(data: &[Point2], constraints: &[(Point2, Point2)]) -> Result<Vec<Point2>> {
    let mut lo_x = data[0].x().clone();
    let mut hi_x = lo_x.clone();
    let mut lo_y = data[0].y().clone();
    let mut hi_y = lo_y.clone();
    for p in data {
        if p.x() < &lo_x {
            lo_x = p.x().clone();
        }
        if p.x() > &hi_x {
            hi_x = p.x().clone();
        }
        if p.y() < &lo_y {
            lo_y = p.y().clone();
        }
        if p.y() > &hi_y {
            hi_y = p.y().clone();
        }
    }
    let pad = (&hi_x - &lo_x) + (&hi_y - &lo_y) + Rational::from_int(1);
    let pad = pad * Rational::from_int(4);
    let mut poly = vec![
        Point2::new(&lo_x - &pad, &lo_y - &pad),
        Point2::new(&hi_x + &pad, &lo_y - &pad),
        Point2::new(&hi_x + &pad, &hi_y + &pad),
        Point2::new(&lo_x - &pad, &hi_y + &pad),
    ];
    for (a, b) in constraints {
        poly = clip_by_halfplane(&poly, a, b);
        if poly.len() < 3 {
            return Err(Error::Degenerate(
                "augmentation region is empty; the input is too degenerate".into(),
            ));
        }
    }
    Ok(poly)
}

/// Sutherland-Hodgman step: keeps the side orient(a, b, x) >= 0.
fn clip_by_halfplane(poly: &[Point2], a: &Point2, b: &Point2) -> Vec<Point2> {
    let f = |x: &Point2| -> Rational {
        let (ux, uy) = b.sub(a);
        let (vx, vy) = x.sub(a);
        &ux * &vy - &uy * &vx
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % poly.len()];
        let (fc, fn_) = (f(cur), f(nxt));
        let cur_in = !fc.is_negative();
        let nxt_in = !fn_.is_negative();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != nxt_in {
            // Exact intersection of the edge with the clip line.
            let t = fc.clone() / (fc - fn_);
            let (dx, dy) = nxt.sub(cur);
            out.push(Point2::new(
                cur.x() + &(&dx * &t),
                cur.y() + &(&dy * &t),
            ));
        }
    }
    out
}

fn vertex_centroid(poly: &[Point2]) -> Result<Point2> {
    if poly.len() < 3 {
        return Err(Error::Degenerate("region degenerated".into()));
    }
    let count = Rational::from_int(poly.len() as i64);
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for p in poly {
        sx += p.x().clone();
        sy += p.y().clone();
    }
    Ok(Point2::new(sx / count.clone(), sy / count))
}

/// phi must embed the augmented set into the anchor region preserving
/// orientation: every image is strictly left of every gap chord (the four
/// correspondence points lie on the chords themselves and are exempt), and
/// all triple orientations survive.
fn verify_embedding(
    phi: &ProjectiveMap,
    ps: &[(Label, Point2)],
    q1: &Point2,
    qn: &Point2,
    anchors: &[(Point2, Point2)],
) -> Result<()> {
    let k = anchors.len();
    let mut originals: Vec<Point2> = ps.iter().map(|(_, p)| p.clone()).collect();
    originals.push(q1.clone());
    originals.push(qn.clone());
    let images: Result<Vec<Point2>> = originals.iter().map(|p| phi.apply(p)).collect();
    let images = images?;
    for (orig, img) in originals.iter().zip(&images) {
        for i in 0..k {
            let from = &anchors[i].1;
            let to = &anchors[(i + 1) % k].0;
            let s = orient(from, to, img);
            if s == Sign::Neg || (s == Sign::Zero && img != from && img != to) {
                return Err(Error::Inconsistent(format!(
                    "projective image of {orig:?} escapes the anchor region"
                )));
            }
        }
    }
    for i in 0..originals.len() {
        for j in i + 1..originals.len() {
            for l in j + 1..originals.len() {
                let before = orient(&originals[i], &originals[j], &originals[l]);
                let after = orient(&images[i], &images[j], &images[l]);
                if before != after {
                    return Err(Error::Inconsistent(
                        "projective map does not preserve orientation on the point set".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}
