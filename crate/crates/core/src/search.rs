//! Unknotting number of a diagram by subset search, and the ascending and
//! stacking upper bounds.

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bracket::{unlink_value, CrossingSet, StateTable, DEFAULT_STATE_SUM_CAP};
use crate::diagram::{CrossingId, Dart, Diagram};
use crate::error::{Error, Result};
use crate::moves::{certify_trivial, obstruction, Certificate, SearchBudget, TrivialityVerdict, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UStatus {
    Exact { k: usize },
    Interval { lo: usize, hi: usize },
    LowerBoundOnly { lo: usize },
}

impl UStatus {
    /// Largest value consistent with the result, if bounded.
    pub fn upper(&self) -> Option<usize> {
        match *self {
            UStatus::Exact { k } => Some(k),
            UStatus::Interval { hi, .. } => Some(hi),
            UStatus::LowerBoundOnly { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            UStatus::Exact { k } => k,
            UStatus::Interval { lo, .. } | UStatus::LowerBoundOnly { lo } => lo,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            UStatus::Exact { k } => Some(k),
            _ => None,
        }
    }
}

impl std::fmt::Display for UStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UStatus::Exact { k } => write!(f, "Exact({k})"),
            UStatus::Interval { lo, hi } => write!(f, "Interval({lo},{hi})"),
            UStatus::LowerBoundOnly { lo } => write!(f, "LowerBoundOnly({lo})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub set: CrossingSet,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub k: usize,
    pub subsets: usize,
    pub nontrivial: usize,
    pub trivial: usize,
    pub unknown: usize,
    /// Subsets settled by the state-table sweep without move search.
    pub fast_path: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UDiagramResult {
    pub status: UStatus,
    pub witness: Option<Witness>,
    /// Subsets with `Unknown` verdicts below the upper value.
    pub unresolved: Vec<CrossingSet>,
    /// Sum of absolute linking numbers; levels below it were skipped.
    pub linking_bound: usize,
    /// Size of the stacking change set used as the level cutoff.
    pub upper_bound: usize,
    pub levels: Vec<LevelStats>,
    pub millis: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct USearchOptions {
    pub budget: SearchBudget,
    /// Highest level searched; `None` searches up to the stacking bound.
    pub level_cap: Option<usize>,
    /// Settle nontrivial variants through the shared state table.
    pub fast_path: bool,
    /// Largest crossing count for which the state table is built.
    pub state_cap: usize,
}

impl Default for USearchOptions {
    fn default() -> Self {
        USearchOptions {
            budget: SearchBudget::default(),
            level_cap: None,
            fast_path: true,
            state_cap: DEFAULT_STATE_SUM_CAP,
        }
    }
}

/// `u(D)` with default options.
pub fn unknotting_number_of_diagram(d: &Diagram, budget: &SearchBudget) -> Result<UDiagramResult> {
    unknotting_number_with(
        d,
        &USearchOptions {
            budget: *budget,
            ..Default::default()
        },
    )
}

/// Linking-number data for quick variant checks.
struct LinkingData {
    base: Vec<((usize, usize), i32)>,
    /// For each crossing: its component pair and sign if mixed.
    mixed: Vec<Option<((usize, usize), i32)>>,
}

impl LinkingData {
    fn new(d: &Diagram) -> Self {
        let base = d.report().lk.into_iter().map(|(i, j, v)| ((i, j), v)).collect();
        let mixed = d
            .crossing_components()
            .iter()
            .zip(d.crossings())
            .map(|(&(u, o), c)| (u != o).then(|| ((u.min(o), u.max(o)), c.sign())))
            .collect();
        LinkingData { base, mixed }
    }

    fn total_abs(&self) -> usize {
        self.base.iter().map(|(_, v)| v.unsigned_abs() as usize).sum()
    }

    fn variant_is_unlinked(&self, set: &[usize]) -> bool {
        self.base.iter().all(|&(pair, v)| {
            let shift: i32 = set
                .iter()
                .filter_map(|&x| self.mixed[x])
                .filter(|&(p, _)| p == pair)
                .map(|(_, s)| s)
                .sum();
            v - shift == 0
        })
    }
}

/// Exact or bracketed `u(D)`: subsets are tried by size; the first size with
/// a certified trivial variant gives the upper value, and every smaller size
/// must be fully certified nontrivial for the value to be exact.
pub fn unknotting_number_with(d: &Diagram, opts: &USearchOptions) -> Result<UDiagramResult> {
    let start = Instant::now();
    let n = d.crossing_count();
    let lk = LinkingData::new(d);
    let linking_bound = lk.total_abs();
    let stack = stacking_change_set(d);
    let upper_bound = stack.len();
    let table = if opts.fast_path && n <= opts.state_cap {
        Some(StateTable::build_with_cap(d, opts.state_cap)?)
    } else {
        None
    };
    let unlink = unlink_value(d.component_count());
    let last = opts.level_cap.map_or(upper_bound, |c| c.min(upper_bound));

    let mut levels = Vec::new();
    let mut unresolved: Vec<CrossingSet> = Vec::new();
    let mut lowest_unknown: Option<usize> = None;
    for k in linking_bound..=last {
        let t0 = Instant::now();
        let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let mut stats = LevelStats {
            k,
            subsets: subsets.len(),
            ..Default::default()
        };
        // Sweep: drop variants with a linking or bracket obstruction.
        let survivors: Vec<&Vec<usize>> = subsets
            .par_iter()
            .filter(|s| {
                if !lk.variant_is_unlinked(s) {
                    return false;
                }
                match &table {
                    Some(t) => t.variant_normalized(&set_of(s)) == unlink,
                    None => true,
                }
            })
            .collect();
        stats.fast_path = subsets.len() - survivors.len();
        stats.nontrivial = stats.fast_path;

        let mut found: Option<Witness> = None;
        let chunk = rayon::current_num_threads().max(1) * 2;
        for group in survivors.chunks(chunk) {
            let verdicts: Vec<TrivialityVerdict> = group
                .par_iter()
                .map(|s| {
                    let changed = set_of(s).apply(d).expect("crossings in range");
                    if table.is_none() {
                        if let Some(o) = obstruction(&changed) {
                            return TrivialityVerdict::Nontrivial(o);
                        }
                    }
                    certify_trivial(&changed, &opts.budget)
                })
                .collect();
            for (s, v) in group.iter().zip(verdicts) {
                match v {
                    TrivialityVerdict::Nontrivial(_) => stats.nontrivial += 1,
                    TrivialityVerdict::Unknown(_) => {
                        stats.unknown += 1;
                        unresolved.push(set_of(s));
                    }
                    TrivialityVerdict::Trivial(cert) => {
                        stats.trivial += 1;
                        if found.is_none() {
                            found = Some(Witness {
                                set: set_of(s),
                                certificate: cert,
                            });
                        }
                    }
                }
            }
            if found.is_some() {
                break;
            }
        }
        stats.millis = t0.elapsed().as_millis();
        levels.push(stats);
        if let Some(w) = found {
            // Unknowns at the answer level do not affect the bound.
            unresolved.retain(|s| s.len() < k);
            let status = match lowest_unknown {
                None => UStatus::Exact { k },
                Some(lo) => UStatus::Interval { lo, hi: k },
            };
            return Ok(UDiagramResult {
                status,
                witness: Some(w),
                unresolved,
                linking_bound,
                upper_bound,
                levels,
                millis: start.elapsed().as_millis(),
            });
        }
        if levels.last().is_some_and(|l| l.unknown > 0) && lowest_unknown.is_none() {
            lowest_unknown = Some(k);
        }
    }
    let lo = lowest_unknown.unwrap_or(last + 1);
    Ok(UDiagramResult {
        status: UStatus::LowerBoundOnly { lo },
        witness: None,
        unresolved,
        linking_bound,
        upper_bound,
        levels,
        millis: start.elapsed().as_millis(),
    })
}

fn set_of(s: &[usize]) -> CrossingSet {
    CrossingSet::new(s.iter().map(|&i| CrossingId(i)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AscendingResult {
    pub value: usize,
    /// Index into the traversal (0-based visit along the component).
    pub basepoint: usize,
    pub reversed: bool,
    pub change_set: CrossingSet,
}

/// Visits of one component: crossing index and whether it passes over.
fn visits(comp: &[Dart]) -> Vec<(usize, bool)> {
    comp.iter().map(|&x| (x >> 2, Diagram::is_over(x))).collect()
}

/// Crossings first met as over-crossings, restricted to `keep`, walking from
/// visit `base` in the given direction.
fn over_first(v: &[(usize, bool)], base: usize, reversed: bool, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let m = v.len();
    let mut met = std::collections::HashSet::new();
    let mut out = Vec::new();
    for step in 0..m {
        let i = if reversed { (base + m - step) % m } else { (base + step) % m };
        let (x, over) = v[i];
        if keep(x) && met.insert(x) && over {
            out.push(x);
        }
    }
    out
}

fn best_ascending(v: &[(usize, bool)], keep: impl Fn(usize) -> bool + Copy) -> (usize, bool, Vec<usize>) {
    let mut best: Option<(usize, bool, Vec<usize>)> = None;
    for base in 0..v.len() {
        for reversed in [false, true] {
            let s = over_first(v, base, reversed, keep);
            if best.as_ref().is_none_or(|b| s.len() < b.2.len()) {
                best = Some((base, reversed, s));
            }
        }
    }
    best.unwrap_or((0, false, Vec::new()))
}

/// Minimum over basepoints and orientations of the crossings whose first
/// visit is over; changing them makes every crossing first met from below.
pub fn ascending_number_of_diagram(d: &Diagram) -> Result<AscendingResult> {
    let mu = d.component_count();
    if mu != 1 {
        return Err(Error::NotKnot(mu));
    }
    let comps = d.strand_components();
    let Some(comp) = comps.first() else {
        return Ok(AscendingResult {
            value: 0,
            basepoint: 0,
            reversed: false,
            change_set: CrossingSet::empty(),
        });
    };
    let (basepoint, reversed, set) = best_ascending(&visits(comp), |_| true);
    Ok(AscendingResult {
        value: set.len(),
        basepoint,
        reversed,
        change_set: set_of(&set),
    })
}

/// Changes that stack the components (an earlier one entirely above later
/// ones) and make each component ascending. The component order is the best
/// over all permutations for up to six components, else the better of the
/// natural order and its reverse.
pub fn stacking_change_set(d: &Diagram) -> CrossingSet {
    let comps = d.strand_components();
    let owners = d.crossing_components();
    let mut changes: Vec<usize> = Vec::new();
    for (k, comp) in comps.iter().enumerate() {
        let v = visits(comp);
        let (_, _, s) = best_ascending(&v, |x| owners[x].0 == k && owners[x].1 == k);
        changes.extend(s);
    }
    let m = comps.len();
    let mixed: Vec<(usize, usize, usize)> = owners
        .iter()
        .enumerate()
        .filter(|(_, (u, o))| u != o)
        .map(|(x, &(u, o))| (x, u, o))
        .collect();
    // A mixed crossing must change iff its under component comes first.
    let cost = |rank: &[usize]| mixed.iter().filter(|&&(_, u, o)| rank[u] < rank[o]).count();
    let to_rank = |order: &[usize]| {
        let mut r = vec![0; m];
        for (i, &c) in order.iter().enumerate() {
            r[c] = i;
        }
        r
    };
    let orders: Vec<Vec<usize>> = if m <= 6 {
        (0..m).permutations(m).collect()
    } else {
        vec![(0..m).collect(), (0..m).rev().collect()]
    };
    let best = orders
        .iter()
        .map(|o| to_rank(o))
        .min_by_key(|r| cost(r))
        .unwrap_or_default();
    changes.extend(mixed.iter().filter(|&&(_, u, o)| best[u] < best[o]).map(|t| t.0));
    set_of(&changes)
}

/// Upper bound on `u(D)` from the crossing count:
/// `(c - 1) / 2` for knot diagrams with crossings, `c / 2` otherwise.
pub fn diagram_bound(d: &Diagram) -> usize {
    let c = d.crossing_count();
    if d.component_count() == 1 && c >= 1 {
        (c - 1) / 2
    } else {
        c / 2
    }
}

/// Computes `u(D)` and checks its upper value against [`diagram_bound`].
pub fn verify_upper_bound(d: &Diagram) -> bool {
    let Ok(r) = unknotting_number_of_diagram(d, &SearchBudget::default()) else {
        return false;
    };
    let certified = r
        .witness
        .as_ref()
        .is_some_and(|w| w.set.apply(d).is_ok_and(|c| w.certificate.verify(&c)));
    certified && r.status.upper().is_some_and(|u| u <= diagram_bound(d)) && r.upper_bound <= diagram_bound(d)
}

/// Verdict of the changed diagram, for callers holding a witness.
pub fn witness_verdict(d: &Diagram, w: &Witness) -> Verdict {
    match w.set.apply(d) {
        Ok(c) if w.certificate.verify(&c) => Verdict::Trivial,
        _ => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    fn pd(s: &str) -> Diagram {
        Diagram::parse_pd(s).unwrap()
    }

    fn u(s: &str) -> UStatus {
        unknotting_number_of_diagram(&pd(s), &SearchBudget::default()).unwrap().status
    }

    #[test]
    fn small_values() {
        assert_eq!(u("O"), UStatus::Exact { k: 0 });
        assert_eq!(u("X[1,2,2,1]"), UStatus::Exact { k: 0 });
        assert_eq!(u(TREFOIL), UStatus::Exact { k: 1 });
        assert_eq!(u(FIGURE_EIGHT), UStatus::Exact { k: 1 });
        assert_eq!(u(HOPF), UStatus::Exact { k: 1 });
    }

    #[test]
    fn witness_replays() {
        let t = pd(TREFOIL);
        let r = unknotting_number_of_diagram(&t, &SearchBudget::default()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(witness_verdict(&t, &w), Verdict::Trivial);
    }

    #[test]
    fn slow_path_agrees() {
        for s in [TREFOIL, FIGURE_EIGHT, HOPF] {
            let d = pd(s);
            let opts = USearchOptions {
                fast_path: false,
                ..Default::default()
            };
            let slow = unknotting_number_with(&d, &opts).unwrap();
            assert_eq!(slow.status, u(s));
        }
    }

    #[test]
    fn ascending_numbers() {
        assert_eq!(ascending_number_of_diagram(&pd("X[1,2,2,1]")).unwrap().value, 0);
        assert_eq!(ascending_number_of_diagram(&pd(TREFOIL)).unwrap().value, 1);
        assert_eq!(ascending_number_of_diagram(&pd(FIGURE_EIGHT)).unwrap().value, 1);
        assert!(matches!(ascending_number_of_diagram(&pd(HOPF)), Err(Error::NotKnot(2))));
    }

    #[test]
    fn ascending_change_set_trivializes() {
        for s in [TREFOIL, FIGURE_EIGHT] {
            let d = pd(s);
            let a = ascending_number_of_diagram(&d).unwrap();
            let changed = a.change_set.apply(&d).unwrap();
            assert_eq!(
                certify_trivial(&changed, &SearchBudget::default()).verdict(),
                Verdict::Trivial
            );
        }
    }

    #[test]
    fn upper_bounds() {
        for s in ["X[1,2,2,1]", TREFOIL, FIGURE_EIGHT, HOPF] {
            assert!(verify_upper_bound(&pd(s)), "{s}");
        }
        assert_eq!(stacking_change_set(&pd(HOPF)).len(), 1);
    }

    #[test]
    fn level_cap_gives_lower_bound() {
        let opts = USearchOptions {
            level_cap: Some(0),
            ..Default::default()
        };
        let r = unknotting_number_with(&pd(TREFOIL), &opts).unwrap();
        assert_eq!(r.status, UStatus::LowerBoundOnly { lo: 1 });
    }
}
