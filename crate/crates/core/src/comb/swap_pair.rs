use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;

/// A swap pair (ρ, σ): an initial bottom-to-top order of the curve labels
/// together with the heights of the adjacent transpositions performed by a
/// full sweep around the cylinder. The composition of the transpositions is
/// the identity, so the sweep closes up.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSwapPair", into = "RawSwapPair")]
pub struct SwapPair {
    rho: Vec<Label>,
    sigma: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawSwapPair {
    rho: Vec<Label>,
    sigma: Vec<usize>,
}

/// The ordered pair of labels transposed by one swap: `upper` crosses
/// downward through `lower`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IncidencePair {
    pub upper: Label,
    pub lower: Label,
}

impl SwapPair {
    /// Validates heights, label distinctness, and that the composition of
    /// the transpositions is the identity permutation.
    pub fn new(rho: Vec<Label>, sigma: Vec<usize>) -> Result<SwapPair> {
        let n = rho.len();
        if n == 0 {
            return Err(Error::InvalidInput("swap pair needs at least one label".into()));
        }
        let distinct: BTreeSet<&Label> = rho.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidInput("duplicate labels in rho".into()));
        }
        for &h in &sigma {
            if h == 0 || h >= n {
                return Err(Error::InvalidInput(format!(
                    "swap height {h} out of range 1..={}",
                    n.saturating_sub(1)
                )));
            }
        }
        let mut order = rho.clone();
        for &h in &sigma {
            order.swap(h - 1, h);
        }
        if order != rho {
            return Err(Error::InvalidInput(
                "swap sequence does not compose to the identity".into(),
            ));
        }
        Ok(SwapPair { rho, sigma })
    }

    pub fn trivial(label: Label) -> SwapPair {
        SwapPair {
            rho: vec![label],
            sigma: Vec::new(),
        }
    }

    pub fn rho(&self) -> &[Label] {
        &self.rho
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn crossings(&self) -> usize {
        self.sigma.len()
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.rho.iter().cloned().collect()
    }

    /// Replays the sweep, yielding for each swap the height and the ordered
    /// pair of labels transposed.
    pub fn replay(&self) -> Vec<(usize, IncidencePair)> {
        let mut order = self.rho.clone();
        let mut out = Vec::with_capacity(self.sigma.len());
        for &h in &self.sigma {
            let pair = IncidencePair {
                upper: order[h].clone(),
                lower: order[h - 1].clone(),
            };
            order.swap(h - 1, h);
            out.push((h, pair));
        }
        out
    }

    /// The incidence sequence: the ordered label pairs transposed by each
    /// swap, in sweep order.
    pub fn incidence_sequence(&self) -> Vec<IncidencePair> {
        self.replay().into_iter().map(|(_, p)| p).collect()
    }

    /// Elementary operation: rotate the sweep origin past the first
    /// crossing. ρ' = τ_{σ₁}(ρ), σ rotated left by one.
    pub fn cyclic_shift(&self) -> Result<SwapPair> {
        if self.sigma.is_empty() {
            return Err(Error::InvalidInput("cyclic shift of an empty swap sequence".into()));
        }
        let mut rho = self.rho.clone();
        let h = self.sigma[0];
        rho.swap(h - 1, h);
        let mut sigma = self.sigma[1..].to_vec();
        sigma.push(self.sigma[0]);
        Ok(SwapPair { rho, sigma })
    }

    /// Elementary operation: exchange the swaps at 1-based positions i and
    /// i+1, legal only when their heights differ by more than one.
    pub fn independent_transposition(&self, i: usize) -> Result<SwapPair> {
        if i == 0 || i >= self.sigma.len() {
            return Err(Error::InvalidInput(format!(
                "independent transposition index {i} out of range 1..={}",
                self.sigma.len().saturating_sub(1)
            )));
        }
        let (a, b) = (self.sigma[i - 1], self.sigma[i]);
        if a.abs_diff(b) <= 1 {
            return Err(Error::InvalidInput(format!(
                "swaps at heights {a} and {b} are not independent"
            )));
        }
        let mut sigma = self.sigma.clone();
        sigma.swap(i - 1, i);
        Ok(SwapPair {
            rho: self.rho.clone(),
            sigma,
        })
    }

    /// Number of crossings between the two labels.
    pub fn crossing_count(&self, i: &Label, j: &Label) -> usize {
        self.incidence_sequence()
            .iter()
            .filter(|p| {
                (&p.upper == i && &p.lower == j) || (&p.upper == j && &p.lower == i)
            })
            .count()
    }

    /// Deletes every curve outside `subset` and re-derives the heights of
    /// the surviving crossings by projecting the full sweep.
    pub fn restrict(&self, subset: &BTreeSet<Label>) -> Result<SwapPair> {
        if subset.is_empty() {
            return Err(Error::InvalidInput("restriction to an empty label set".into()));
        }
        for l in subset {
            if !self.rho.contains(l) {
                return Err(Error::LabelMismatch(format!("label {l} not in swap pair")));
            }
        }
        let rho: Vec<Label> = self
            .rho
            .iter()
            .filter(|l| subset.contains(*l))
            .cloned()
            .collect();
        let mut order = self.rho.clone();
        let mut sigma = Vec::new();
        for &h in &self.sigma {
            let upper = &order[h];
            let lower = &order[h - 1];
            if subset.contains(upper) && subset.contains(lower) {
                // Height within the projected order: surviving labels
                // strictly below the lower one, plus one.
                let below = order[..h - 1]
                    .iter()
                    .filter(|l| subset.contains(*l))
                    .count();
                sigma.push(below + 1);
            }
            order.swap(h - 1, h);
        }
        SwapPair::new(rho, sigma)
    }
}

impl TryFrom<RawSwapPair> for SwapPair {
    type Error = Error;
    fn try_from(raw: RawSwapPair) -> Result<SwapPair> {
        SwapPair::new(raw.rho, raw.sigma)
    }
}

impl From<SwapPair> for RawSwapPair {
    fn from(sp: SwapPair) -> RawSwapPair {
        RawSwapPair {
            rho: sp.rho,
            sigma: sp.sigma,
        }
    }
}

#[cfg(test)]
pub(crate) fn labels(names: &[&str]) -> Vec<Label> {
    names.iter().map(|s| Label::new(*s)).collect()
}
