use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::swap_pair::SwapPair;
use super::tableau::Tableau;
use crate::error::{Error, Result};
use crate::label::Label;

/// A combinatorial type: the canonical representative of the bump
/// equivalence class of a tableau, together with the derived invariants.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub canonical: Tableau,
    /// Connected components of the crossing graph, ordered bottom to top as
    /// they stack in the canonical row order. Singletons are isolated
    /// curves.
    pub layers: Vec<BTreeSet<Label>>,
    /// Number of layers excluding isolated curves; 1 means non-layered.
    pub depth: usize,
    pub periodicity: usize,
}

/// Connected components of the graph on the labels defined by the incidence
/// sequence, plus the depth (components that actually cross something).
pub fn layers(sp: &SwapPair) -> (Vec<BTreeSet<Label>>, usize) {
    layer_partition(sp.rho(), sp.incidence_sequence().iter().map(|p| (p.upper.clone(), p.lower.clone())))
}

fn layer_partition(
    order: &[Label],
    edges: impl Iterator<Item = (Label, Label)>,
) -> (Vec<BTreeSet<Label>>, usize) {
    let index: BTreeMap<&Label, usize> = order.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut parent: Vec<usize> = (0..order.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for (u, v) in edges {
        let (iu, iv) = (index[&u], index[&v]);
        let (ru, rv) = (find(&mut parent, iu), find(&mut parent, iv));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Label>> = BTreeMap::new();
    for (i, l) in order.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().insert(l.clone());
    }
    // Order components by their lowest position in the given order.
    let mut comps: Vec<(usize, BTreeSet<Label>)> = groups
        .into_values()
        .map(|set| {
            let low = set.iter().map(|l| index[l]).min().unwrap();
            (low, set)
        })
        .collect();
    comps.sort_by_key(|(low, _)| *low);
    let parts: Vec<BTreeSet<Label>> = comps.into_iter().map(|(_, s)| s).collect();
    let depth = parts.iter().filter(|p| p.len() > 1).count();
    (parts, depth)
}

fn layers_of_tableau(t: &Tableau) -> (Vec<BTreeSet<Label>>, usize) {
    let mut edges = Vec::new();
    for (i, row) in t.rows().iter().enumerate() {
        for partner in row {
            edges.push((t.order()[i].clone(), partner.clone()));
        }
    }
    layer_partition(t.order(), edges.into_iter())
}

/// Breadth-first closure of a tableau under bumping. Finite: bumps realize
/// rotations of the cyclic crossing sequence, so the closure has at most one
/// state per crossing.
pub fn bump_closure(start: &Tableau) -> Result<BTreeSet<Tableau>> {
    let mut seen: BTreeSet<Tableau> = BTreeSet::new();
    let mut queue: VecDeque<Tableau> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(t) = queue.pop_front() {
        for lower in t.adjacent_pairs()? {
            let next = t.bump_at(lower)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// The canonical form of the combinatorial type represented by a tableau:
/// the lexicographic minimum of its bump closure, with layers, depth and
/// periodicity attached.
pub fn canonical_form(t: &Tableau) -> Result<CombinatorialType> {
    let closure = bump_closure(t)?;
    let canonical = closure.iter().min().unwrap().clone();
    let (layers, depth) = layers_of_tableau(&canonical);
    let (periodicity, _) = canonical.periodicity();
    Ok(CombinatorialType {
        canonical,
        layers,
        depth,
        periodicity,
    })
}

pub fn canonical_form_of(sp: &SwapPair) -> Result<CombinatorialType> {
    canonical_form(&Tableau::of(sp))
}

/// Two swap pairs are equivalent exactly when some sequence of cyclic
/// shifts and independent transpositions sends one to the other, which is
/// decided by comparing the canonical forms of their tableaux.
pub fn equivalent(a: &SwapPair, b: &SwapPair) -> Result<bool> {
    if a.label_set() != b.label_set() {
        return Err(Error::LabelMismatch(
            "swap pairs are over different label sets".into(),
        ));
    }
    Ok(canonical_form_of(a)?.canonical == canonical_form_of(b)?.canonical)
}

/// All canonical forms of valid swap pairs on the labels 1..n with exactly
/// `crossings` swaps, optionally keeping only orientable types (every pair
/// crossing exactly twice with well-defined triple orientations; a pair
/// counts as orientable when it crosses twice). Desk-scale exhaustive
/// search.
pub fn enumerate_canonical(
    n: usize,
    crossings: usize,
    orientable_only: bool,
    jobs: usize,
) -> Result<BTreeSet<CombinatorialType>> {
    if n > 4 || crossings > 12 {
        return Err(Error::Budget(format!(
            "enumeration limited to n <= 4 and N <= 12, got n={n}, N={crossings}"
        )));
    }
    let labels = Label::numbered(n);
    let words = identity_words(n, crossings);
    let rhos = permutations(&labels);

    let canon_of = |word: &Vec<usize>| -> Result<Vec<CombinatorialType>> {
        let mut out = Vec::new();
        for rho in &rhos {
            let sp = SwapPair::new(rho.clone(), word.clone())?;
            if orientable_only && !is_orientable(&sp) {
                continue;
            }
            out.push(canonical_form_of(&sp)?);
        }
        Ok(out)
    };

    let collected: Result<Vec<Vec<CombinatorialType>>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| words.par_iter().map(canon_of).collect())
    } else {
        words.iter().map(canon_of).collect()
    };
    Ok(collected?.into_iter().flatten().collect())
}

/// Orientability of a swap pair: every pair crosses exactly twice and, for
/// three or more curves, every triple has the combinatorial type of three
/// generic points.
pub fn is_orientable(sp: &SwapPair) -> bool {
    if sp.n() < 2 || !all_pairs_cross_twice(sp) {
        return false;
    }
    sp.n() == 2 || crate::ordertype::chirotope_of(sp).is_ok()
}

pub fn all_pairs_cross_twice(sp: &SwapPair) -> bool {
    let labels: Vec<&Label> = sp.rho().iter().collect();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            if sp.crossing_count(a, b) != 2 {
                return false;
            }
        }
    }
    true
}

/// All height words of the given length composing to the identity, found by
/// depth-first search pruned on inversion count and parity.
fn identity_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 1 {
        if len == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut word: Vec<usize> = Vec::with_capacity(len);
    fn inversions(p: &[usize]) -> usize {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv
    }
    fn dfs(
        perm: &mut Vec<usize>,
        word: &mut Vec<usize>,
        len: usize,
        n: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = len - word.len();
        let inv = inversions(perm);
        if inv > remaining || !(remaining - inv).is_multiple_of(2) {
            return;
        }
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for h in 1..n {
            perm.swap(h - 1, h);
            word.push(h);
            dfs(perm, word, len, n, out);
            word.pop();
            perm.swap(h - 1, h);
        }
    }
    dfs(&mut perm, &mut word, len, n, &mut out);
    out
}

fn permutations(labels: &[Label]) -> Vec<Vec<Label>> {
    if labels.len() <= 1 {
        return vec![labels.to_vec()];
    }
    let mut out = Vec::new();
    for (i, first) in labels.iter().enumerate() {
        let rest: Vec<Label> = labels
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, l)| l.clone())
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

impl PartialOrd for CombinatorialType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CombinatorialType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labs(names: &[&str]) -> Vec<Label> {
        names.iter().map(|s| Label::new(*s)).collect()
    }

    fn worked_pair() -> SwapPair {
        SwapPair::new(labs(&["a", "b", "c", "d"]), vec![1, 2, 2, 3, 1, 3]).unwrap()
    }

    /// The orbit of a swap pair under the two elementary operations,
    /// computed by plain breadth-first search; the oracle for what the bump
    /// closure must reach.
    fn elementary_orbit(sp: &SwapPair) -> BTreeSet<SwapPair> {
        let mut seen: BTreeSet<SwapPair> = [sp.clone()].into();
        let mut queue: VecDeque<SwapPair> = [sp.clone()].into();
        while let Some(cur) = queue.pop_front() {
            let mut nexts = Vec::new();
            if cur.crossings() > 0 {
                nexts.push(cur.cyclic_shift().unwrap());
            }
            for i in 1..cur.crossings() {
                if let Ok(swapped) = cur.independent_transposition(i) {
                    nexts.push(swapped);
                }
            }
            for n in nexts {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }

    #[test]
    fn closure_equals_tableaux_of_elementary_orbit() {
        for sp in [
            worked_pair(),
            SwapPair::new(labs(&["a", "b"]), vec![1, 1]).unwrap(),
            SwapPair::new(labs(&["a", "b", "c"]), vec![1, 2, 1, 2, 1, 2]).unwrap(),
            SwapPair::new(labs(&["a", "b", "c", "d"]), vec![1, 3, 3, 1]).unwrap(),
        ] {
            let closure = bump_closure(&Tableau::of(&sp)).unwrap();
            let orbit_tableaux: BTreeSet<Tableau> =
                elementary_orbit(&sp).iter().map(Tableau::of).collect();
            assert_eq!(closure, orbit_tableaux, "for {sp:?}");
        }
    }

    #[test]
    fn canonical_invariant_under_elementary_ops() {
        let sp = worked_pair();
        let c0 = canonical_form_of(&sp).unwrap();
        let mut cur = sp.clone();
        for _ in 0..6 {
            cur = cur.cyclic_shift().unwrap();
            assert_eq!(canonical_form_of(&cur).unwrap(), c0);
        }
        // An independent transposition where one exists.
        let other = SwapPair::new(labs(&["a", "b", "c", "d"]), vec![1, 3, 3, 1]).unwrap();
        let c1 = canonical_form_of(&other).unwrap();
        let swapped = other.independent_transposition(1).unwrap();
        assert_eq!(canonical_form_of(&swapped).unwrap(), c1);
    }

    #[test]
    fn pair_type_canonical() {
        let sp = SwapPair::new(labs(&["a", "b"]), vec![1, 1]).unwrap();
        let ct = canonical_form_of(&sp).unwrap();
        assert_eq!(ct.canonical.order(), &labs(&["a", "b"])[..]);
        assert_eq!(ct.canonical.row(&Label::new("a")).unwrap(), &labs(&["b", "b"])[..]);
        assert_eq!(ct.depth, 1);
        assert_eq!(ct.periodicity, 2);
    }

    #[test]
    fn equivalence_examples() {
        let sp = worked_pair();
        assert!(equivalent(&sp, &sp.cyclic_shift().unwrap()).unwrap());
        let other = SwapPair::new(labs(&["d", "c", "b", "a"]), vec![1, 2, 2, 3, 1, 3]).unwrap();
        // Same sigma from a different rho need not be equivalent.
        let _ = equivalent(&sp, &other).unwrap();
        let mismatched = SwapPair::new(labs(&["a", "b"]), vec![1, 1]).unwrap();
        assert!(equivalent(&sp, &mismatched).is_err());
    }

    #[test]
    fn layers_examples() {
        // Two crossing pairs {a,b} and {c,d} and one isolated label e.
        let sp = SwapPair::new(labs(&["a", "b", "c", "d", "e"]), vec![1, 1, 3, 3]).unwrap();
        let (parts, depth) = layers(&sp);
        assert_eq!(depth, 2);
        assert_eq!(parts.len(), 3);
        assert!(parts.contains(&labs(&["a", "b"]).into_iter().collect()));
        assert!(parts.contains(&labs(&["c", "d"]).into_iter().collect()));
        assert!(parts.contains(&labs(&["e"]).into_iter().collect()));

        let empty = SwapPair::new(labs(&["a", "b", "c"]), vec![]).unwrap();
        let (parts, depth) = layers(&empty);
        assert_eq!(depth, 0);
        assert_eq!(parts.len(), 3);

        let (_, depth) = layers(&worked_pair());
        assert_eq!(depth, 1);
    }

    #[test]
    fn enumerate_small() {
        // The unique pair type.
        let types = enumerate_canonical(2, 2, false, 1).unwrap();
        assert_eq!(types.len(), 1);
        // Zero crossings: no operations are available, so each rho is its
        // own class.
        let types = enumerate_canonical(3, 0, false, 1).unwrap();
        assert_eq!(types.len(), 6);
        assert!(enumerate_canonical(9, 2, false, 1).is_err());
    }

    #[test]
    fn enumerate_orientable_three_curves() {
        let types = enumerate_canonical(3, 6, true, 1).unwrap();
        assert_eq!(types.len(), 2);
    }
}
