use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::swap_pair::SwapPair;
use crate::error::{Error, Result};
use crate::label::Label;

/// The tableau of local sequences of a swap pair: one row per curve, bottom
/// to top, listing the curves it crosses in sweep order. Rows are stored
/// aligned with the row order, so lexicographic comparison of tableaux is
/// the derived ordering on (order, rows).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTableau", into = "RawTableau")]
pub struct Tableau {
    order: Vec<Label>,
    rows: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
struct RawTableau {
    order: Vec<Label>,
    rows: BTreeMap<Label, Vec<Label>>,
}

impl Tableau {
    pub fn of(sp: &SwapPair) -> Tableau {
        let order: Vec<Label> = sp.rho().to_vec();
        let mut by_label: BTreeMap<&Label, Vec<Label>> =
            order.iter().map(|l| (l, Vec::new())).collect();
        for pair in sp.incidence_sequence() {
            by_label.get_mut(&pair.upper).unwrap().push(pair.lower.clone());
            by_label.get_mut(&pair.lower).unwrap().push(pair.upper.clone());
        }
        let rows = order.iter().map(|l| by_label.remove(l).unwrap()).collect();
        Tableau { order, rows }
    }

    pub fn from_parts(order: Vec<Label>, rows: Vec<Vec<Label>>) -> Result<Tableau> {
        if order.len() != rows.len() {
            return Err(Error::InvalidInput(
                "tableau row count does not match row order".into(),
            ));
        }
        let t = Tableau { order, rows };
        t.check_symmetry()?;
        Ok(t)
    }

    /// Label j must appear in row i exactly as often as i appears in row j.
    fn check_symmetry(&self) -> Result<()> {
        let count = |i: usize, l: &Label| self.rows[i].iter().filter(|x| *x == l).count();
        for i in 0..self.order.len() {
            for x in &self.rows[i] {
                let j = self
                    .position(x)
                    .ok_or_else(|| Error::Inconsistent(format!("row entry {x} is not a row label")))?;
                if count(i, x) != count(j, &self.order[i]) {
                    return Err(Error::Inconsistent(format!(
                        "asymmetric crossing counts between {} and {x}",
                        self.order[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> &[Label] {
        &self.order
    }

    pub fn rows(&self) -> &[Vec<Label>] {
        &self.rows
    }

    pub fn row(&self, label: &Label) -> Option<&[Label]> {
        self.position(label).map(|i| self.rows[i].as_slice())
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.order.iter().position(|l| l == label)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn total_entries(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_exhausted(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// The pairs that are adjacent in the tableau: j, k whose local
    /// sequences begin with each other. For a tableau of a valid swap pair
    /// such rows are forced to be vertically adjacent; a mutual-first pair
    /// in non-adjacent rows is reported as an inconsistency rather than
    /// guessed around.
    pub fn adjacent_pairs(&self) -> Result<Vec<usize>> {
        let n = self.order.len();
        let mut lower_positions = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mutual = self.rows[i].first() == Some(&self.order[j])
                    && self.rows[j].first() == Some(&self.order[i]);
                if mutual {
                    if j != i + 1 {
                        return Err(Error::Inconsistent(format!(
                            "adjacent pair {{{}, {}}} occupies non-adjacent rows",
                            self.order[i], self.order[j]
                        )));
                    }
                    lower_positions.push(i);
                }
            }
        }
        Ok(lower_positions)
    }

    /// Bumping an adjacent pair {j, k}: rotate the leading entry of both
    /// rows to the end and exchange the two rows. This moves the first
    /// mutual crossing once around the cylinder.
    pub fn bump(&self, j: &Label, k: &Label) -> Result<Tableau> {
        let pi = self
            .position(j)
            .ok_or_else(|| Error::LabelMismatch(format!("no row {j}")))?;
        let pk = self
            .position(k)
            .ok_or_else(|| Error::LabelMismatch(format!("no row {k}")))?;
        let (lo, hi) = if pi < pk { (pi, pk) } else { (pk, pi) };
        if hi != lo + 1 || !self.adjacent_pairs()?.contains(&lo) {
            return Err(Error::InvalidInput(format!(
                "{{{j}, {k}}} is not an adjacent pair of the tableau"
            )));
        }
        let mut t = self.clone();
        for p in [lo, hi] {
            let first = t.rows[p].remove(0);
            t.rows[p].push(first);
        }
        t.order.swap(lo, hi);
        t.rows.swap(lo, hi);
        Ok(t)
    }

    pub fn bump_at(&self, lower_position: usize) -> Result<Tableau> {
        let j = self.order[lower_position].clone();
        let k = self.order[lower_position + 1].clone();
        self.bump(&j, &k)
    }

    /// One sweep step: the adjacent pair at `lower_position` crosses, its
    /// rows exchange and both leading entries are consumed. Unlike a bump
    /// the entries are deleted, so repeated steps exhaust the tableau.
    pub fn sweep_step(&self, lower_position: usize) -> Result<Tableau> {
        let (lo, hi) = (lower_position, lower_position + 1);
        if hi >= self.order.len()
            || self.rows[lo].first() != Some(&self.order[hi])
            || self.rows[hi].first() != Some(&self.order[lo])
        {
            return Err(Error::InvalidInput(format!(
                "rows {lo} and {hi} are not an adjacent pair"
            )));
        }
        let mut t = self.clone();
        t.rows[lo].remove(0);
        t.rows[hi].remove(0);
        t.order.swap(lo, hi);
        t.rows.swap(lo, hi);
        Ok(t)
    }

    /// Row-wise concatenation; both tableaux must share the same row order.
    pub fn concat(&self, other: &Tableau) -> Result<Tableau> {
        if self.order != other.order {
            return Err(Error::LabelMismatch(
                "concatenation requires identical row orders".into(),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(Tableau {
            order: self.order.clone(),
            rows,
        })
    }

    /// The largest p such that the tableau is a p-fold row-wise
    /// concatenation of some tableau, together with that period. Returns
    /// p = 1 and the tableau itself when non-periodic.
    pub fn periodicity(&self) -> (usize, Tableau) {
        let lengths: Vec<usize> = self.rows.iter().map(Vec::len).filter(|&l| l > 0).collect();
        if lengths.is_empty() {
            return (1, self.clone());
        }
        let g = lengths.iter().fold(0usize, |acc, &l| gcd(acc, l));
        let mut best = 1;
        for p in (1..=g).rev() {
            if g % p != 0 {
                continue;
            }
            if self.is_p_fold(p) {
                best = p;
                break;
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r[..r.len() / best].to_vec())
            .collect();
        (
            best,
            Tableau {
                order: self.order.clone(),
                rows,
            },
        )
    }

    fn is_p_fold(&self, p: usize) -> bool {
        self.rows.iter().all(|r| {
            if r.is_empty() {
                return true;
            }
            if r.len() % p != 0 {
                return false;
            }
            let period = r.len() / p;
            r.chunks(period).all(|c| c == &r[..period])
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Tableau> {
        let mut by_label = raw.rows;
        let mut rows = Vec::with_capacity(raw.order.len());
        for l in &raw.order {
            rows.push(
                by_label
                    .remove(l)
                    .ok_or_else(|| Error::InvalidInput(format!("missing row for label {l}")))?,
            );
        }
        if !by_label.is_empty() {
            return Err(Error::InvalidInput("rows for labels outside the order".into()));
        }
        Tableau::from_parts(raw.order, rows)
    }
}

impl From<Tableau> for RawTableau {
    fn from(t: Tableau) -> RawTableau {
        let rows = t.order.iter().cloned().zip(t.rows).collect();
        RawTableau {
            order: t.order,
            rows,
        }
    }
}
