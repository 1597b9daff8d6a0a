use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::canonical::{bump_closure, canonical_form_of, CombinatorialType};
use super::swap_pair::SwapPair;
use super::tableau::Tableau;
use crate::error::{Error, Result};
use crate::exact::{Rational, Turn};
use crate::label::Label;

/// A crossing of an abstract configuration: `first` crosses downward
/// through `second` at the given fraction of a full rotation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbstractCrossing {
    pub first: Label,
    pub second: Label,
    pub turn: Turn,
}

/// A labeled configuration of crossing angles on the abstract cylinder,
/// together with the bottom-to-top order of the curves just after turn 0.
/// Crossings sharing an angle must have disjoint label pairs. The stored
/// label order pins the relative stacking of layers that never cross, which
/// the crossing list alone cannot recover.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct AbstractConfiguration {
    labels: Vec<Label>,
    crossings: Vec<AbstractCrossing>,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    labels: Vec<Label>,
    crossings: Vec<AbstractCrossing>,
}

impl AbstractConfiguration {
    pub fn new(labels: Vec<Label>, mut crossings: Vec<AbstractCrossing>) -> Result<Self> {
        let set: BTreeSet<&Label> = labels.iter().collect();
        if set.len() != labels.len() {
            return Err(Error::InvalidInput("duplicate labels in configuration".into()));
        }
        for c in &crossings {
            if c.first == c.second {
                return Err(Error::InvalidInput(format!(
                    "crossing of {} with itself",
                    c.first
                )));
            }
            for l in [&c.first, &c.second] {
                if !set.contains(l) {
                    return Err(Error::LabelMismatch(format!(
                        "crossing label {l} not in configuration labels"
                    )));
                }
            }
        }
        crossings.sort_by(|a, b| a.turn.cmp(&b.turn));
        let mut i = 0;
        while i < crossings.len() {
            let mut j = i;
            let mut used: BTreeSet<&Label> = BTreeSet::new();
            while j < crossings.len() && crossings[j].turn == crossings[i].turn {
                for l in [&crossings[j].first, &crossings[j].second] {
                    if !used.insert(l) {
                        return Err(Error::Inconsistent(format!(
                            "crossings at turn {} share the label {l}",
                            crossings[i].turn
                        )));
                    }
                }
                j += 1;
            }
            i = j;
        }
        Ok(AbstractConfiguration { labels, crossings })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn crossings(&self) -> &[AbstractCrossing] {
        &self.crossings
    }
}

impl TryFrom<RawConfig> for AbstractConfiguration {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        AbstractConfiguration::new(raw.labels, raw.crossings)
    }
}

impl From<AbstractConfiguration> for RawConfig {
    fn from(c: AbstractConfiguration) -> RawConfig {
        RawConfig {
            labels: c.labels,
            crossings: c.crossings,
        }
    }
}

/// Sweeps an abstract configuration exactly like the geometric sweep: the
/// stored label order is the order just after turn 0, every crossing must
/// find its downward curve directly above its upward curve, and the sweep
/// must close up.
pub fn abstract_swap_pair(cfg: &AbstractConfiguration) -> Result<SwapPair> {
    let mut order = cfg.labels.to_vec();
    let mut sigma = Vec::with_capacity(cfg.crossings.len());
    for c in &cfg.crossings {
        let pos_second = order
            .iter()
            .position(|l| l == &c.second)
            .expect("validated on construction");
        let above = pos_second + 1;
        if order.get(above) != Some(&c.first) {
            return Err(Error::Inconsistent(format!(
                "crossing ({}, {}) at turn {} is not between adjacent curves",
                c.first, c.second, c.turn
            )));
        }
        order.swap(pos_second, above);
        sigma.push(above);
    }
    if order != cfg.labels {
        return Err(Error::Inconsistent(
            "configuration sweep does not return to its initial order".into(),
        ));
    }
    SwapPair::new(cfg.labels.to_vec(), sigma)
}

/// One layer's worth of the standard configuration: unordered crossings
/// with their angles, plus the order of the layer at the sweep origin.
struct LayerConfig {
    crossings: Vec<AbstractCrossing>,
    order_after_origin: Vec<Label>,
}

/// The standard configuration W(Ω, θ, 2π/N) of a combinatorial type: the
/// compressed configuration read off the lexicographically minimal
/// single-adjacent-pair tableau by repeatedly emitting all adjacent pairs at
/// a common angle and advancing by one N-th of a turn. Periodic types are
/// built from their period and replicated around the circle. Layers are
/// compressed independently at the same base angle and stacked as in the
/// canonical form.
pub fn standard_configuration(
    ct: &CombinatorialType,
    theta: &Turn,
) -> Result<AbstractConfiguration> {
    let mut labels: Vec<Label> = Vec::new();
    let mut crossings: Vec<AbstractCrossing> = Vec::new();
    for layer in &ct.layers {
        if layer.is_empty() {
            return Err(Error::InvalidInput("empty layer".into()));
        }
        if layer.len() == 1 {
            labels.push(layer.first().unwrap().clone());
            continue;
        }
        let restricted = restrict_tableau(&ct.canonical, layer)?;
        let layer_cfg = compress_layer(&restricted, theta)?;
        labels.extend(layer_cfg.order_after_origin);
        crossings.extend(layer_cfg.crossings);
    }
    let cfg = AbstractConfiguration::new(labels, crossings)?;
    // The construction is only correct if sweeping it back recovers the
    // type it came from.
    let swept = abstract_swap_pair(&cfg)?;
    let back = canonical_form_of(&swept)?;
    if back.canonical != ct.canonical {
        return Err(Error::Inconsistent(
            "standard configuration does not sweep back to its combinatorial type".into(),
        ));
    }
    Ok(cfg)
}

fn restrict_tableau(t: &Tableau, keep: &BTreeSet<Label>) -> Result<Tableau> {
    let mut order = Vec::new();
    let mut rows = Vec::new();
    for (i, l) in t.order().iter().enumerate() {
        if keep.contains(l) {
            order.push(l.clone());
            rows.push(t.rows()[i].clone());
        }
    }
    for row in &rows {
        for partner in row {
            if !keep.contains(partner) {
                return Err(Error::Inconsistent(format!(
                    "row entry {partner} escapes its layer"
                )));
            }
        }
    }
    Tableau::from_parts(order, rows)
}

/// Runs the deletion recursion on one connected layer.
fn compress_layer(layer_tableau: &Tableau, theta: &Turn) -> Result<LayerConfig> {
    let total = layer_tableau.total_entries();
    debug_assert!(total.is_multiple_of(2));
    let n_layer = total / 2;

    // The lexicographically minimal representative with exactly one
    // adjacent pair; guaranteed to exist for connected layers.
    let closure = bump_closure(layer_tableau)?;
    let min_single = closure
        .iter()
        .filter(|t| matches!(t.adjacent_pairs().map(|p| p.len()), Ok(1)))
        .min()
        .cloned()
        .ok_or_else(|| {
            Error::Inconsistent(
                "no tableau with exactly one adjacent pair; the layer is not connected".into(),
            )
        })?;

    let (p, base) = min_single.periodicity();

    // Emit the period's crossings at angles theta + t/N.
    let mut current = base.clone();
    let mut step = 0usize;
    let mut emitted: Vec<(Label, Label, usize)> = Vec::new();
    while !current.is_exhausted() {
        let pairs = current.adjacent_pairs()?;
        if pairs.is_empty() {
            return Err(Error::Inconsistent(
                "deletion recursion stalled before exhausting the tableau".into(),
            ));
        }
        for &lower in &pairs {
            emitted.push((
                current.order()[lower].clone(),
                current.order()[lower + 1].clone(),
                step,
            ));
        }
        current = delete_step(&current, &pairs)?;
        step += 1;
    }

    // Replicate the period p times around the circle, then fix each
    // crossing's direction by replaying the sweep from the base tableau's
    // row order at the base angle.
    let mut events: Vec<(Label, Label, Turn)> = Vec::new();
    for k in 0..p {
        let shift = Rational::new(k as i64, p as i64).expect("p >= 1");
        for (a, b, t) in &emitted {
            let offset = Rational::new(*t as i64, n_layer as i64).expect("layer has crossings")
                + shift.clone();
            let turn = if offset.is_zero() {
                theta.clone()
            } else {
                theta.advance(&offset).expect("positive offset")
            };
            events.push((a.clone(), b.clone(), turn));
        }
    }
    events.sort_by(|x, y| x.2.cmp(&y.2));

    // Split at the base angle: events at or after theta happen first in the
    // sweep that starts from the base order just before theta.
    let split = events.partition_point(|e| e.2 < *theta);
    let mut order = base.order().to_vec();
    let mut oriented: Vec<AbstractCrossing> = Vec::new();
    let mut order_after_origin: Option<Vec<Label>> = None;
    for (idx, (a, b, turn)) in events[split..]
        .iter()
        .chain(events[..split].iter())
        .enumerate()
    {
        let (pa, pb) = (
            order.iter().position(|l| l == a),
            order.iter().position(|l| l == b),
        );
        let (pa, pb) = match (pa, pb) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::Inconsistent("crossing label outside layer".into())),
        };
        if pa.abs_diff(pb) != 1 {
            return Err(Error::Inconsistent(format!(
                "replicated crossing {{{a}, {b}}} is not adjacent during replay"
            )));
        }
        let (upper, lower) = if pa > pb { (a, b) } else { (b, a) };
        oriented.push(AbstractCrossing {
            first: upper.clone(),
            second: lower.clone(),
            turn: turn.clone(),
        });
        order.swap(pa, pb);
        if idx + 1 == events.len() - split {
            order_after_origin = Some(order.clone());
        }
    }
    if order != base.order() {
        return Err(Error::Inconsistent(
            "layer replay does not close up around the cylinder".into(),
        ));
    }
    Ok(LayerConfig {
        crossings: oriented,
        order_after_origin: order_after_origin.unwrap_or_else(|| base.order().to_vec()),
    })
}

/// One step of the recursion: every adjacent pair crosses at once. The
/// pairs are label-disjoint, so sequential sweep steps at the recorded
/// positions commute.
fn delete_step(t: &Tableau, lower_positions: &[usize]) -> Result<Tableau> {
    let mut cur = t.clone();
    for &lo in lower_positions {
        cur = cur.sweep_step(lo)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labs(names: &[&str]) -> Vec<Label> {
        names.iter().map(|s| Label::new(*s)).collect()
    }

    fn turn(n: i64, d: i64) -> Turn {
        Turn::new(Rational::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn pair_type_standard_configuration() {
        let sp = SwapPair::new(labs(&["a", "b"]), vec![1, 1]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        let cfg = standard_configuration(&ct, &turn(1, 2)).unwrap();
        let turns: Vec<String> = cfg.crossings().iter().map(|c| c.turn.to_string()).collect();
        assert_eq!(turns, vec!["1/2", "1"]);
        assert!(equivalent_to(&cfg, &sp));
    }

    fn equivalent_to(cfg: &AbstractConfiguration, sp: &SwapPair) -> bool {
        let swept = abstract_swap_pair(cfg).unwrap();
        super::super::canonical::equivalent(&swept, sp).unwrap()
    }

    #[test]
    fn three_curve_standard_configuration_is_evenly_spread() {
        // The convex-position type on three curves: every pair crosses
        // twice; the standard configuration spreads the six crossings one
        // sixth of a turn apart.
        let sp = SwapPair::new(labs(&["1", "2", "3"]), vec![1, 2, 1, 2, 1, 2]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        assert_eq!(ct.periodicity, 2);
        let theta = turn(1, 6);
        let cfg = standard_configuration(&ct, &theta).unwrap();
        assert_eq!(cfg.crossings().len(), 6);
        let turns: BTreeSet<String> =
            cfg.crossings().iter().map(|c| c.turn.to_string()).collect();
        assert_eq!(turns.len(), 6);
        let expected: BTreeSet<String> = (1..=6)
            .map(|t| turn(t, 6).value().to_string())
            .collect();
        assert_eq!(turns, expected);
        assert!(equivalent_to(&cfg, &sp));
    }

    #[test]
    fn layered_type_round_trips() {
        // Two independent crossing pairs plus an isolated curve.
        let sp = SwapPair::new(labs(&["a", "b", "e", "c", "d"]), vec![1, 1, 4, 4]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        assert_eq!(ct.depth, 2);
        let cfg = standard_configuration(&ct, &turn(1, 3)).unwrap();
        let swept = abstract_swap_pair(&cfg).unwrap();
        assert!(super::super::canonical::equivalent(&swept, &sp).unwrap());
    }

    #[test]
    fn inconsistent_configuration_is_rejected() {
        // A single crossing of non-adjacent curves.
        let cfg = AbstractConfiguration::new(
            labs(&["a", "b", "c"]),
            vec![
                AbstractCrossing {
                    first: Label::new("c"),
                    second: Label::new("a"),
                    turn: turn(1, 2),
                },
                AbstractCrossing {
                    first: Label::new("a"),
                    second: Label::new("c"),
                    turn: turn(3, 4),
                },
            ],
        )
        .unwrap();
        assert!(abstract_swap_pair(&cfg).is_err());
    }

    #[test]
    fn trivial_configuration() {
        let cfg = AbstractConfiguration::new(labs(&["a"]), vec![]).unwrap();
        let sp = abstract_swap_pair(&cfg).unwrap();
        assert_eq!(sp, SwapPair::trivial(Label::new("a")));
    }

    #[test]
    fn highly_periodic_pair_spreads_evenly() {
        // One pair crossing six times: periodicity 6, crossings at every
        // sixth of a turn.
        let sp = SwapPair::new(labs(&["a", "b"]), vec![1; 6]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        assert_eq!(ct.periodicity, 6);
        let cfg = standard_configuration(&ct, &turn(1, 6)).unwrap();
        let turns: BTreeSet<String> =
            cfg.crossings().iter().map(|c| c.turn.to_string()).collect();
        assert_eq!(turns.len(), 6);
        assert!(equivalent_to(&cfg, &sp));
    }

    #[test]
    fn configuration_serde_roundtrip() {
        let sp = SwapPair::new(labs(&["a", "b", "c"]), vec![1, 2, 1, 2, 1, 2]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        let cfg = standard_configuration(&ct, &turn(2, 7)).unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: AbstractConfiguration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn shared_label_at_same_turn_is_rejected() {
        let bad = AbstractConfiguration::new(
            labs(&["a", "b", "c"]),
            vec![
                AbstractCrossing {
                    first: Label::new("b"),
                    second: Label::new("a"),
                    turn: turn(1, 2),
                },
                AbstractCrossing {
                    first: Label::new("c"),
                    second: Label::new("b"),
                    turn: turn(1, 2),
                },
            ],
        );
        assert!(bad.is_err());
    }
}
