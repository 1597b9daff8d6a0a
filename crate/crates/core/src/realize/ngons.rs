use std::collections::BTreeMap;

use num::bigint::BigInt;

use crate::comb::{equivalent, SwapPair};
use crate::error::{Error, Result};
use crate::exact::{cmp_angle, Direction, Point2, Rational};
use crate::geometry::{Arrangement, Polygon};
use crate::label::Label;

/// Options for the N-gon realization.
#[derive(Clone, Debug)]
pub struct RealizeOptions {
    /// Multiplier on the base radius bound; at least 1.
    pub radius_scale: Rational,
    /// How many times to escalate (double the radius, halve the angular
    /// deviation) before giving up.
    pub max_retries: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            radius_scale: Rational::one(),
            max_retries: 3,
        }
    }
}

/// A verified realization together with how many escalations it took.
#[derive(Clone, Debug)]
pub struct Realization {
    pub arrangement: Arrangement,
    pub retries: usize,
}

/// An exact point on the rational unit circle whose angle approximates the
/// given fraction of a turn. Uses the tangent half-angle parametrization
/// t -> ((1 - t^2), 2t) / (1 + t^2), searching continued-fraction
/// convergents of tan(π·turn) until the angle error drops below `tol_turns`.
/// Deterministic for fixed inputs.
pub fn circle_direction_near(turn_target: f64, tol_turns: f64) -> Result<Direction> {
    let frac = turn_target - turn_target.floor();
    let frac = if frac == 0.0 { 1.0 } else { frac };
    if (frac - 1.0).abs() < 1e-15 {
        return Direction::new(1, 0);
    }
    if (frac - 0.5).abs() < 1e-15 {
        return Direction::new(-1, 0);
    }
    let t_star = (std::f64::consts::PI * frac).tan();
    let mut best: Option<(f64, Direction)> = None;
    for denom_cap in [8i64, 64, 512, 4096, 32768, 1 << 20, 1 << 26] {
        let (p, q) = rational_approx(t_star, denom_cap);
        let dir = half_angle_point(p, q)?;
        let err = turn_error(&dir, frac);
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, dir));
        }
        if best.as_ref().unwrap().0 <= tol_turns {
            break;
        }
    }
    let (err, dir) = best.unwrap();
    if err > tol_turns {
        return Err(Error::Degenerate(format!(
            "no rational circle point within {tol_turns} turns of {frac} (best {err})"
        )));
    }
    Ok(dir)
}

fn half_angle_point(p: i64, q: i64) -> Result<Direction> {
    // t = p/q, point = ((q^2 - p^2), 2pq) / (q^2 + p^2); the scale is
    // dropped since directions are projective.
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let dx = &q * &q - &p * &p;
    let dy = BigInt::from(2) * &p * &q;
    if dx == BigInt::from(0) && dy == BigInt::from(0) {
        return Err(Error::Degenerate("degenerate half-angle parameter".into()));
    }
    Direction::new(dx, dy)
}

fn turn_error(dir: &Direction, target: f64) -> f64 {
    let mut d = (dir.turn_f64() - target).abs();
    if d > 0.5 {
        d = 1.0 - d;
    }
    d
}

/// Best rational approximation p/q of x with q bounded, by truncating the
/// continued-fraction expansion.
fn rational_approx(x: f64, denom_cap: i64) -> (i64, i64) {
    let neg = x < 0.0;
    let mut rem = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, rem.floor() as i64, 1i64);
    for _ in 0..64 {
        let frac = rem - rem.floor();
        if frac < 1e-15 {
            break;
        }
        rem = 1.0 / frac;
        let a = rem.floor() as i64;
        let (p2, q2) = (
            a.saturating_mul(p1).saturating_add(p0),
            a.saturating_mul(q1).saturating_add(q0),
        );
        if q2 > denom_cap || q2 <= 0 || p2 < 0 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    (if neg { -p1 } else { p1 }, q1)
}

/// N exact rational unit-circle directions, strictly increasing in angle,
/// the t-th near the angle t/N of a turn (the last is exactly (1, 0), the
/// maximal angle).
pub fn rational_circle_directions(n: usize, max_deviation: &Rational) -> Result<Vec<Direction>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one direction".into()));
    }
    let tol = max_deviation.to_f64();
    let dirs: Vec<Direction> = (1..=n)
        .map(|t| circle_direction_near(t as f64 / n as f64, tol))
        .collect::<Result<_>>()?;
    for w in dirs.windows(2) {
        if cmp_angle(&w[0], &w[1]) != std::cmp::Ordering::Less {
            return Err(Error::Degenerate(
                "circle directions failed to be strictly increasing; tighten the deviation".into(),
            ));
        }
    }
    Ok(dirs)
}

/// Realizes a swap pair by an arrangement of N-gons, wrapping a wiring
/// diagram of σ around a large circle: the t-th vertex of body i sits at
/// radius r + rank_t(i) in the t-th circle direction, where rank_t is the
/// bottom-to-top position of i after the first t swaps. The result is
/// verified to sweep back to an equivalent swap pair; on failure the radius
/// doubles and the angular spacing tightens.
pub fn realize_ngons(sp: &SwapPair, opts: &RealizeOptions) -> Result<Realization> {
    if opts.radius_scale < Rational::one() {
        return Err(Error::InvalidInput("radius scale must be at least 1".into()));
    }
    let n = sp.n();
    let big_n = sp.crossings();
    if big_n == 0 {
        return realize_nested(sp);
    }
    // Two antipodal fan directions would flatten every body onto one line,
    // so a third direction is added when curves that never cross exist.
    let fans = if big_n == 2 && n > 2 { 3 } else { big_n };

    // r >= (1 - cos(2π/N))^{-1} suffices in the limit of even spacing;
    // doubled for slack against rational spacing error.
    let base = {
        let c = (std::f64::consts::TAU / fans as f64).cos();
        let bound = (1.0 / (1.0 - c)).ceil() as i64 + 1;
        Rational::from_int(2 * bound)
    };
    let mut radius = opts.radius_scale.clone() * base;
    let mut deviation = Rational::new(1, 8 * fans as i64)?;

    let ranks = rank_table(sp);
    let mut last_err = String::new();
    for attempt in 0..=opts.max_retries {
        let dirs = rational_circle_directions(fans, &deviation)?;
        let mut bodies: BTreeMap<Label, Vec<Point2>> =
            sp.rho().iter().map(|l| (l.clone(), Vec::new())).collect();
        for (t, dir) in dirs.iter().enumerate() {
            // Unit point with exact coordinates dir / |dir|; |dir| is an
            // integer for half-angle circle points. Fans beyond the last
            // crossing keep the final (initial) order.
            let unit = unit_point(dir)?;
            for (i, label) in sp.rho().iter().enumerate() {
                let rank = ranks[(t + 1).min(big_n)][i];
                let scale = &radius + &Rational::from_int(rank as i64);
                bodies
                    .get_mut(label)
                    .unwrap()
                    .push(Point2::new(unit.x() * &scale, unit.y() * &scale));
            }
        }
        let polys: Result<BTreeMap<Label, Polygon>> = bodies
            .into_iter()
            .map(|(l, pts)| Polygon::from_hull(&pts).map(|p| (l, p)))
            .collect();
        match polys.and_then(Arrangement::new).and_then(|arr| {
            let swept = arr.swap_pair()?;
            Ok((arr, equivalent(&swept, sp)?))
        }) {
            Ok((arr, true)) => {
                return Ok(Realization {
                    arrangement: arr,
                    retries: attempt,
                })
            }
            Ok((_, false)) => last_err = "swept type differs from the input".to_string(),
            Err(e) => last_err = e.to_string(),
        }
        radius = radius * Rational::from_int(2);
        deviation = deviation * Rational::new(1, 2)?;
    }
    Err(Error::RealizationFailed {
        retries: opts.max_retries,
        detail: last_err,
    })
}

/// rank_table[t][i] = position (1-based) of rho[i] after the first t swaps.
fn rank_table(sp: &SwapPair) -> Vec<Vec<usize>> {
    let n = sp.n();
    let index_of: BTreeMap<&Label, usize> =
        sp.rho().iter().enumerate().map(|(i, l)| (l, i)).collect();
    let snapshot = |order: &[&Label]| -> Vec<usize> {
        let mut ranks = vec![0; n];
        for (pos, l) in order.iter().enumerate() {
            ranks[index_of[*l]] = pos + 1;
        }
        ranks
    };
    let mut order: Vec<&Label> = sp.rho().iter().collect();
    let mut table = Vec::with_capacity(sp.crossings() + 1);
    table.push(snapshot(&order));
    for &h in sp.sigma() {
        order.swap(h - 1, h);
        table.push(snapshot(&order));
    }
    table
}

fn unit_point(dir: &Direction) -> Result<Point2> {
    // Half-angle circle points satisfy dx^2 + dy^2 = s^2 exactly.
    let norm2 = dir.dx() * dir.dx() + dir.dy() * dir.dy();
    let s = norm2.sqrt();
    if &s * &s != norm2 {
        return Err(Error::Degenerate(format!(
            "direction {dir} is not an exact circle point"
        )));
    }
    Ok(Point2::new(
        Rational::from_parts(dir.dx().clone(), s.clone())?,
        Rational::from_parts(dir.dy().clone(), s)?,
    ))
}

/// A type with no crossings: the bodies never exchange support order, so
/// they are realized as nested concentric triangles, scaled by rank.
fn realize_nested(sp: &SwapPair) -> Result<Realization> {
    let tri = [
        Point2::from_ints(2, 0),
        Point2::from_ints(-1, 1),
        Point2::from_ints(-1, -1),
    ];
    let mut bodies = BTreeMap::new();
    for (i, label) in sp.rho().iter().enumerate() {
        let scale = Rational::from_int(i as i64 + 1);
        let pts: Vec<Point2> = tri
            .iter()
            .map(|p| Point2::new(p.x() * &scale, p.y() * &scale))
            .collect();
        bodies.insert(label.clone(), Polygon::from_hull(&pts)?);
    }
    let arrangement = Arrangement::new(bodies)?;
    let swept = arrangement.swap_pair()?;
    if &swept != sp {
        return Err(Error::RealizationFailed {
            retries: 0,
            detail: "nested realization swept to a different pair".into(),
        });
    }
    Ok(Realization {
        arrangement,
        retries: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labs(names: &[&str]) -> Vec<Label> {
        names.iter().map(|s| Label::new(*s)).collect()
    }

    #[test]
    fn circle_directions_are_exact_and_ordered() {
        let dirs = rational_circle_directions(4, &Rational::new(1, 64).unwrap()).unwrap();
        assert_eq!(dirs.len(), 4);
        assert_eq!(dirs[3], Direction::new(1, 0).unwrap());
        for d in &dirs {
            let n2 = d.dx() * d.dx() + d.dy() * d.dy();
            let s = n2.sqrt();
            assert_eq!(&s * &s, n2, "not a circle point: {d}");
        }
        for w in dirs.windows(2) {
            assert_eq!(cmp_angle(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
        // Tightening the deviation keeps the count and the ordering.
        let tight = rational_circle_directions(4, &Rational::new(1, 4096).unwrap()).unwrap();
        assert_eq!(tight.len(), 4);
    }

    #[test]
    fn pair_type_round_trips() {
        let sp = SwapPair::new(labs(&["a", "b"]), vec![1, 1]).unwrap();
        let r = realize_ngons(&sp, &RealizeOptions::default()).unwrap();
        assert_eq!(r.retries, 0);
        for poly in r.arrangement.bodies().values() {
            assert!(poly.len() <= 2);
        }
    }

    #[test]
    fn worked_four_curve_type_round_trips() {
        let sp = SwapPair::new(labs(&["a", "b", "c", "d"]), vec![1, 2, 2, 3, 1, 3]).unwrap();
        let r = realize_ngons(&sp, &RealizeOptions::default()).unwrap();
        let swept = r.arrangement.swap_pair().unwrap();
        assert!(equivalent(&swept, &sp).unwrap());
        for poly in r.arrangement.bodies().values() {
            assert!(poly.len() <= 6);
        }
    }

    #[test]
    fn nested_type_round_trips() {
        let sp = SwapPair::new(labs(&["a", "b", "c"]), vec![]).unwrap();
        let r = realize_ngons(&sp, &RealizeOptions::default()).unwrap();
        assert_eq!(r.arrangement.swap_pair().unwrap(), sp);
    }

    #[test]
    fn single_label_realizes() {
        let sp = SwapPair::trivial(Label::new("z"));
        let r = realize_ngons(&sp, &RealizeOptions::default()).unwrap();
        assert_eq!(r.arrangement.n(), 1);
    }
}
