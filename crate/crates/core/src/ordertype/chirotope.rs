use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{orient, Point2, Sign};
use crate::label::Label;

/// A simple order type: an alternating sign map on ordered triples of
/// distinct labels, total (never zero). One sign is stored per sorted
/// triple; queries resolve permutation parity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chirotope<L: Ord + Clone + Debug> {
    labels: Vec<L>,
    signs: BTreeMap<[L; 3], Sign>,
}

/// Which CC-system axiom failed, with the witnessing tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CcViolation {
    pub axiom: CcAxiom,
    pub witness: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CcAxiom {
    Interiority,
    Transitivity,
}

impl<L: Ord + Clone + Debug> Chirotope<L> {
    /// Builds from one sign per sorted triple of the label set.
    pub fn from_sorted_signs(labels: Vec<L>, signs: BTreeMap<[L; 3], Sign>) -> Result<Self> {
        let n = labels.len();
        if n < 3 {
            return Err(Error::InvalidInput("chirotope needs at least 3 labels".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidInput("duplicate chirotope labels".into()));
        }
        let expected = n * (n - 1) * (n - 2) / 6;
        if signs.len() != expected {
            return Err(Error::InvalidInput(format!(
                "chirotope needs {expected} triple signs, got {}",
                signs.len()
            )));
        }
        for (t, s) in &signs {
            if !(t[0] < t[1] && t[1] < t[2]) {
                return Err(Error::InvalidInput(format!("unsorted triple {t:?}")));
            }
            if s.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "zero sign on {t:?}: only simple order types are supported"
                )));
            }
            for l in t {
                if sorted.binary_search(l).is_err() {
                    return Err(Error::LabelMismatch(format!("triple label {l:?} unknown")));
                }
            }
        }
        Ok(Chirotope {
            labels: sorted,
            signs,
        })
    }

    /// The determinant order type of a generic labeled point set.
    pub fn of_points(points: &[(L, Point2)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidInput("need at least 3 points".into()));
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut signs = BTreeMap::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let s = orient(&pts[i].1, &pts[j].1, &pts[k].1);
                    if s.is_zero() {
                        return Err(Error::Degenerate(format!(
                            "collinear points {:?}, {:?}, {:?}",
                            pts[i].0, pts[j].0, pts[k].0
                        )));
                    }
                    signs.insert(
                        [pts[i].0.clone(), pts[j].0.clone(), pts[k].0.clone()],
                        s,
                    );
                }
            }
        }
        let labels = pts.into_iter().map(|(l, _)| l).collect();
        Chirotope::from_sorted_signs(labels, signs)
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// χ(i, j, k): the stored sign of the sorted triple, flipped by the
    /// parity of the permutation.
    pub fn sign(&self, i: &L, j: &L, k: &L) -> Result<Sign> {
        if i == j || j == k || i == k {
            return Err(Error::InvalidInput("chirotope triple must be distinct".into()));
        }
        let mut t = [i, j, k];
        let mut flips = 0;
        for a in 0..2 {
            for b in 0..2 - a {
                if t[b] > t[b + 1] {
                    t.swap(b, b + 1);
                    flips += 1;
                }
            }
        }
        let key = [t[0].clone(), t[1].clone(), t[2].clone()];
        let s = self
            .signs
            .get(&key)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown triple {key:?}")))?;
        Ok(if flips % 2 == 0 { *s } else { s.flip() })
    }

    fn positive(&self, i: &L, j: &L, k: &L) -> bool {
        matches!(self.sign(i, j, k), Ok(Sign::Pos))
    }

    /// Exhaustive check of Knuth's CC-system axioms. Cyclic symmetry,
    /// antisymmetry and nondegeneracy hold structurally for any alternating
    /// total sign map; interiority is checked over all 4-element subsets and
    /// transitivity over all 5-element subsets. Returns the lexicographically
    /// smallest violating tuple, if any.
    pub fn cc_check(&self) -> Option<CcViolation> {
        let ls = &self.labels;
        let distinct = |xs: &[&L]| {
            for a in 0..xs.len() {
                for b in a + 1..xs.len() {
                    if xs[a] == xs[b] {
                        return false;
                    }
                }
            }
            true
        };
        // Interiority: tqr, ptr, pqt => pqr.
        for t in ls {
            for p in ls {
                for q in ls {
                    for r in ls {
                        if !distinct(&[t, p, q, r]) {
                            continue;
                        }
                        if self.positive(t, q, r)
                            && self.positive(p, t, r)
                            && self.positive(p, q, t)
                            && !self.positive(p, q, r)
                        {
                            return Some(CcViolation {
                                axiom: CcAxiom::Interiority,
                                witness: vec![
                                    format!("{t:?}"),
                                    format!("{p:?}"),
                                    format!("{q:?}"),
                                    format!("{r:?}"),
                                ],
                            });
                        }
                    }
                }
            }
        }
        // Transitivity: tsp, tsq, tsr, tpq, tqr => tpr.
        for t in ls {
            for s in ls {
                for p in ls {
                    for q in ls {
                        for r in ls {
                            if !distinct(&[t, s, p, q, r]) {
                                continue;
                            }
                            if self.positive(t, s, p)
                                && self.positive(t, s, q)
                                && self.positive(t, s, r)
                                && self.positive(t, p, q)
                                && self.positive(t, q, r)
                                && !self.positive(t, p, r)
                            {
                                return Some(CcViolation {
                                    axiom: CcAxiom::Transitivity,
                                    witness: vec![
                                        format!("{t:?}"),
                                        format!("{s:?}"),
                                        format!("{p:?}"),
                                        format!("{q:?}"),
                                        format!("{r:?}"),
                                    ],
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn sorted_triples(&self) -> impl Iterator<Item = (&[L; 3], &Sign)> {
        self.signs.iter()
    }
}

/// JSON form for label chirotopes: one entry per sorted triple.
#[derive(Serialize, Deserialize)]
struct RawChirotope {
    labels: Vec<Label>,
    triples: Vec<RawTriple>,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    t: [Label; 3],
    s: String,
}

impl Serialize for Chirotope<Label> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawChirotope {
            labels: self.labels.clone(),
            triples: self
                .signs
                .iter()
                .map(|(t, s)| RawTriple {
                    t: t.clone(),
                    s: s.to_string(),
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Chirotope<Label> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawChirotope::deserialize(deserializer)?;
        let mut signs = BTreeMap::new();
        for t in raw.triples {
            let s = match t.s.as_str() {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                other => {
                    return Err(serde::de::Error::custom(format!("bad sign `{other}`")));
                }
            };
            signs.insert(t.t, s);
        }
        Chirotope::from_sorted_signs(raw.labels, signs).map_err(serde::de::Error::custom)
    }
}
