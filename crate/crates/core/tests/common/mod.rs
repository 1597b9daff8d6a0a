//! Shared helpers for the integration and acceptance suites: seeded random
//! generators, independent brute-force oracles, and the perturbed-Pappus
//! wiring-diagram fixture. Not every target uses every helper.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cak_core::comb::SwapPair;
use cak_core::exact::{cmp_angle, orient, Direction, Point2, Rational, Sign};
use cak_core::geometry::Polygon;
use cak_core::ordertype::{allowable_sequence, swap_pair_from_half, PathSystem};
use cak_core::Label;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lab(s: &str) -> Label {
    Label::new(s)
}

pub fn numbered(n: usize) -> Vec<Label> {
    Label::numbered(n)
}

/// Random rational with numerator and denominator bounded by `bound`.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    Rational::new(numer, denom).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, bound: i64) -> Point2 {
    Point2::new(random_rational(rng, bound), random_rational(rng, bound))
}

fn pair_direction(a: &Point2, b: &Point2) -> Direction {
    Direction::between_points(a, b).unwrap()
}

/// True when the set is in general position with pairwise non-parallel
/// connecting lines (what the sweep pipeline needs).
pub fn is_generic(points: &[Point2]) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    let mut dirs: Vec<Direction> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = pair_direction(&points[i], &points[j]);
            let folded = if cmp_angle(&d, &d.neg()) == std::cmp::Ordering::Less {
                d
            } else {
                d.neg()
            };
            dirs.push(folded);
        }
    }
    dirs.sort();
    for w in dirs.windows(2) {
        if w[0] == w[1] {
            return false;
        }
    }
    true
}

/// A labeled random point set in general position with no parallel
/// connecting lines, labels "1".."n".
pub fn random_generic_points(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<(Label, Point2)> {
    loop {
        let pts: Vec<Point2> = (0..n).map(|_| random_point(rng, bound)).collect();
        if is_generic(&pts) {
            return numbered(n).into_iter().zip(pts).collect();
        }
    }
}

/// Relabels a generic point set to satisfy the firstpath indexing
/// convention: label "1" on a hull vertex, the rest by counter-clockwise
/// ray order.
pub fn with_firstpath_convention(points: Vec<(Label, Point2)>) -> Vec<(Label, Point2)> {
    let raw: Vec<Point2> = points.iter().map(|(_, p)| p.clone()).collect();
    let hull = Polygon::from_hull(&raw).unwrap();
    let q = hull.vertices()[0].clone();
    let mut rays: Vec<(Direction, Point2)> = raw
        .iter()
        .filter(|p| **p != q)
        .map(|p| (pair_direction(&q, p), p.clone()))
        .collect();
    rays.sort_by(|a, b| cmp_angle(&a.0, &b.0));
    // Rotate so the fan starts after the unique wide gap.
    let m = rays.len();
    let mut start = 0;
    for i in 0..m {
        let cur = &rays[i].0;
        let next = &rays[(i + 1) % m].0;
        let cross = cur.dx() * next.dy() - cur.dy() * next.dx();
        if num::Signed::is_negative(&cross) || num::Zero::is_zero(&cross) {
            start = (i + 1) % m;
        }
    }
    let labels = numbered(raw.len());
    let mut out = vec![(labels[0].clone(), q)];
    for (t, l) in labels[1..].iter().enumerate() {
        out.push((l.clone(), rays[(start + t) % m].1.clone()));
    }
    out
}

/// Random convex-position point set on a parabola satisfying the firstpath
/// convention for label "1".
pub fn random_convex_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<(Label, Point2)> {
    'outer: loop {
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < n {
            let x = rng.gen_range(-40..=40i64);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.sort();
        // Pairwise non-parallel on the parabola means all x_i + x_j differ.
        let mut sums = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if !sums.insert(xs[i] + xs[j]) {
                    continue 'outer;
                }
            }
        }
        let pts: Vec<Point2> = xs
            .iter()
            .map(|&x| Point2::new(Rational::from_int(x), Rational::new(x * x, 8).unwrap()))
            .collect();
        if !is_generic(&pts) {
            continue;
        }
        return numbered(n).into_iter().zip(pts).collect();
    }
}

/// Random valid swap pair on n labels with exactly `crossings` swaps, by
/// rejection on the identity-composition condition.
pub fn random_swap_pair(rng: &mut ChaCha8Rng, n: usize, crossings: usize) -> Option<SwapPair> {
    if n < 2 {
        return (crossings == 0).then(|| SwapPair::trivial(lab("1")));
    }
    let labels = numbered(n);
    for _ in 0..200_000 {
        let word: Vec<usize> = (0..crossings).map(|_| rng.gen_range(1..n)).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for &h in &word {
            perm.swap(h - 1, h);
        }
        if perm.iter().enumerate().all(|(i, &v)| i == v) {
            return Some(SwapPair::new(labels, word).unwrap());
        }
    }
    None
}

/// Brute-force common-tangent oracle: tries every ordered vertex pair and
/// keeps the directed lines with all other vertices strictly left, plus the
/// corner-to-corner supporting lines that carry collinear tangency edges.
/// Returns None when the pair has an edge-supported tangent (where the
/// simple strictly-left rule is ambiguous); callers resample.
pub fn brute_force_tangent_count(a: &Polygon, b: &Polygon) -> Option<usize> {
    let mut count = 0;
    // Both directed orders: a tangent meeting A first runs from a vertex of
    // A to one of B, and vice versa.
    for (first, second) in [(a, b), (b, a)] {
        for p in first.vertices() {
            for q in second.vertices() {
                if p == q {
                    return None;
                }
                let mut strict = true;
                let mut any_on_line = false;
                for w in a.vertices().iter().chain(b.vertices()) {
                    if w == p || w == q {
                        continue;
                    }
                    match orient(p, q, w) {
                        Sign::Neg => {
                            strict = false;
                            break;
                        }
                        Sign::Zero => any_on_line = true,
                        Sign::Pos => {}
                    }
                }
                if strict && any_on_line {
                    return None;
                }
                if strict {
                    count += 1;
                }
            }
        }
    }
    Some(count)
}

/// A perturbed Pappus configuration: nine exact rational points, in general
/// position with pairwise non-parallel connecting lines, whose labels 7, 8,
/// 9 form a nearly collinear triple with an angularly isolated direction
/// cluster. Deterministic.
pub fn perturbed_pappus_points() -> Vec<(Label, Point2)> {
    // Base Pappus configuration scaled by 1024, with the three cross-join
    // points 7, 8, 9 exactly collinear; then integer nudges chosen (by a
    // deterministic search, frozen here) to break every collinearity and
    // parallelism while keeping 7, 8, 9 nearly collinear.
    let base: [(i64, i64); 9] = [
        (0, 0),
        (32, 0),
        (64, 0),
        (16, 32),
        (48, 32),
        (80, 32),
        (24, 16),
        (40, 16),
        (56, 16),
    ];
    let nudges: [(i64, i64); 9] = [
        (-2, -5),
        (-1, 3),
        (-7, -6),
        (6, 1),
        (-6, -2),
        (2, -7),
        (7, 1),
        (-4, 0),
        (-6, 0),
    ];
    let pts: Vec<Point2> = base
        .iter()
        .zip(&nudges)
        .map(|(&(x, y), &(dx, dy))| Point2::from_ints(1024 * x + dx, 1024 * y + dy))
        .collect();
    assert!(is_generic(&pts), "frozen Pappus perturbation degenerated");
    numbered(9).into_iter().zip(pts).collect()
}

/// The non-Pappus wiring diagram: the allowable sequence of the perturbed
/// Pappus configuration with the orientation of the nearly collinear triple
/// {7, 8, 9} reversed. The three swaps of that triple are consecutive up to
/// label-disjoint events, so reversing their relative order yields another
/// valid simple allowable sequence; the resulting order type differs from
/// the point order type exactly on that triple and is not realizable by
/// points without violating Pappus's theorem.
pub fn non_pappus_half() -> PathSystem {
    let points = perturbed_pappus_points();
    let straight = allowable_sequence(&points).unwrap();

    // Rebuild the event list as label pairs in word order.
    let mut order = straight.initial().to_vec();
    let mut events: Vec<(Label, Label)> = Vec::new();
    for &h in straight.swaps() {
        events.push((order[h - 1].clone(), order[h].clone()));
        order.swap(h - 1, h);
    }
    let trio: BTreeSet<Label> = [lab("7"), lab("8"), lab("9")].into();
    let positions: Vec<usize> = events
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| trio.contains(a) && trio.contains(b))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(positions.len(), 3);
    for (a, b) in &events[positions[0]..=positions[2]] {
        assert!(
            (trio.contains(a) && trio.contains(b))
                || (!trio.contains(a) && !trio.contains(b)),
            "event {a},{b} straddles the flipped triple"
        );
    }
    events.swap(positions[0], positions[2]);

    // Replay the modified event order into a new height word.
    let mut order = straight.initial().to_vec();
    let mut swaps = Vec::with_capacity(events.len());
    for (a, b) in &events {
        let pa = order.iter().position(|l| l == a).unwrap();
        let pb = order.iter().position(|l| l == b).unwrap();
        assert_eq!(pa.abs_diff(pb), 1, "flip broke adjacency at {a},{b}");
        swaps.push(pa.min(pb) + 1);
        order.swap(pa, pb);
    }
    let flipped = PathSystem::new(straight.initial().to_vec(), swaps).unwrap();
    // The flipped half must still reverse and double to a valid pair.
    swap_pair_from_half(&flipped).unwrap();
    flipped
}
