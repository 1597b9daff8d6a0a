use std::collections::{BTreeMap, BTreeSet};

use super::chirotope::Chirotope;
use crate::comb::SwapPair;
use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::label::Label;

/// Orientation of a triple of curves in a swap pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TripleType {
    Pos,
    Neg,
    NonOrientable,
}

/// A triple is orientable when its restriction has the combinatorial type of
/// three generic points: every pair crosses exactly twice and the topmost
/// curve changes exactly three times per sweep, each curve topping a single
/// arc. The sign is positive when the topmost arcs appear in the cyclic
/// order (i, j, k) with increasing angle; this convention is calibrated
/// against the determinant orientation of points.
pub fn triple_type(sp: &SwapPair, i: &Label, j: &Label, k: &Label) -> Result<TripleType> {
    if i == j || j == k || i == k {
        return Err(Error::InvalidInput("triple labels must be distinct".into()));
    }
    let subset: BTreeSet<Label> = [i.clone(), j.clone(), k.clone()].into();
    let r = sp.restrict(&subset)?;
    for (a, b) in [(i, j), (i, k), (j, k)] {
        if r.crossing_count(a, b) != 2 {
            return Ok(TripleType::NonOrientable);
        }
    }
    // Topmost curve on each of the six arcs between consecutive crossings.
    let mut order = r.rho().to_vec();
    let mut tops = vec![order.last().unwrap().clone()];
    for &h in r.sigma() {
        order.swap(h - 1, h);
        tops.push(order.last().unwrap().clone());
    }
    tops.pop(); // the last arc wraps to the first
    let runs = cyclic_runs(&tops);
    if runs.len() != 3 {
        return Ok(TripleType::NonOrientable);
    }
    let distinct: BTreeSet<&Label> = runs.iter().collect();
    if distinct.len() != 3 {
        return Ok(TripleType::NonOrientable);
    }
    let start = runs.iter().position(|l| l == i).unwrap();
    Ok(if &runs[(start + 1) % 3] == j {
        TripleType::Pos
    } else {
        TripleType::Neg
    })
}

/// Collapses a cyclic sequence into its runs of equal consecutive values.
fn cyclic_runs(seq: &[Label]) -> Vec<Label> {
    let mut runs: Vec<Label> = Vec::new();
    for l in seq {
        if runs.last() != Some(l) {
            runs.push(l.clone());
        }
    }
    while runs.len() > 1 && runs.first() == runs.last() {
        runs.pop();
    }
    runs
}

/// The order type of an orientable swap pair: the sign of every triple.
/// Errors on the first non-orientable triple, naming it.
pub fn chirotope_of(sp: &SwapPair) -> Result<Chirotope<Label>> {
    let labels: Vec<Label> = {
        let mut ls = sp.rho().to_vec();
        ls.sort();
        ls
    };
    if labels.len() < 3 {
        return Err(Error::InvalidInput(
            "orientation needs at least three curves".into(),
        ));
    }
    let mut signs = BTreeMap::new();
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            for c in b + 1..labels.len() {
                let (i, j, k) = (&labels[a], &labels[b], &labels[c]);
                match triple_type(sp, i, j, k)? {
                    TripleType::Pos => {
                        signs.insert([i.clone(), j.clone(), k.clone()], Sign::Pos);
                    }
                    TripleType::Neg => {
                        signs.insert([i.clone(), j.clone(), k.clone()], Sign::Neg);
                    }
                    TripleType::NonOrientable => {
                        return Err(Error::NonOrientable(
                            i.to_string(),
                            j.to_string(),
                            k.to_string(),
                        ));
                    }
                }
            }
        }
    }
    Chirotope::from_sorted_signs(labels, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::points_arrangement;
    use crate::exact::Point2;

    fn lab(s: &str) -> Label {
        Label::new(s)
    }

    fn dual_of_points(coords: &[(i64, i64)]) -> SwapPair {
        let pts: Vec<(Label, Point2)> = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| (Label::new(format!("{}", i + 1)), Point2::from_ints(x, y)))
            .collect();
        points_arrangement(&pts).unwrap().swap_pair().unwrap()
    }

    #[test]
    fn sign_calibrated_against_determinant() {
        // (0,0), (1,0), (0,1) is a counter-clockwise triple.
        let sp = dual_of_points(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(
            triple_type(&sp, &lab("1"), &lab("2"), &lab("3")).unwrap(),
            TripleType::Pos
        );
        assert_eq!(
            triple_type(&sp, &lab("1"), &lab("3"), &lab("2")).unwrap(),
            TripleType::Neg
        );
        assert_eq!(
            triple_type(&sp, &lab("2"), &lab("3"), &lab("1")).unwrap(),
            TripleType::Pos
        );
    }

    #[test]
    fn chirotope_of_dual_matches_points() {
        let coords = [(0, 0), (4, 1), (2, 5), (7, 3)];
        let sp = dual_of_points(&coords);
        let chi = chirotope_of(&sp).unwrap();
        let pts: Vec<(Label, Point2)> = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| (Label::new(format!("{}", i + 1)), Point2::from_ints(x, y)))
            .collect();
        let oracle = Chirotope::of_points(&pts).unwrap();
        assert_eq!(chi, oracle);
    }

    #[test]
    fn four_crossing_pair_is_non_orientable() {
        use crate::geometry::{Arrangement, Polygon};
        // Two rectangles crossing like a plus sign, and a far point.
        let sq = |v: &[(i64, i64)]| {
            Polygon::from_hull(
                &v.iter()
                    .map(|&(x, y)| Point2::from_ints(x, y))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let a = sq(&[(-4, -1), (4, -1), (4, 1), (-4, 1)]);
        let b = sq(&[(-1, -4), (1, -4), (1, 4), (-1, 4)]);
        let c = sq(&[(10, 7)]);
        let arr = Arrangement::new(
            [(lab("a"), a), (lab("b"), b), (lab("c"), c)].into(),
        )
        .unwrap();
        let sp = arr.swap_pair().unwrap();
        assert_eq!(sp.crossing_count(&lab("a"), &lab("b")), 4);
        assert_eq!(
            triple_type(&sp, &lab("a"), &lab("b"), &lab("c")).unwrap(),
            TripleType::NonOrientable
        );
        match chirotope_of(&sp) {
            Err(Error::NonOrientable(x, y, z)) => {
                assert_eq!((x.as_str(), y.as_str(), z.as_str()), ("a", "b", "c"));
            }
            other => panic!("expected non-orientable error, got {other:?}"),
        }
    }
}
