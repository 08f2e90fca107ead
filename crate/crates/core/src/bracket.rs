//! Kauffman bracket.
//!
//! Conventions: `<O> = 1`, `<D u O> = delta <D>`, `delta = -A^2 - A^-2`. At a
//! crossing `[a,b,c,d]` the A-smoothing joins `(a,d)` and `(b,c)`, the
//! B-smoothing joins `(a,b)` and `(c,d)`. With the crossing sign convention of
//! [`Crossing::sign`](crate::Crossing::sign) this makes
//! `(-A^3)^-w <D>` a link invariant.
//!
//! Two independent evaluators are provided: a plain state sum over all `2^n`
//! smoothings, and a frontier contraction that expands crossings one at a time
//! by the skein relation and merges partial states with equal boundary
//! connectivity.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedSub, One, Zero};
use rayon::prelude::*;

use crate::diagram::{ArcId, Crossing, CrossingId, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Largest crossing count accepted by the state-sum evaluator.
pub const DEFAULT_STATE_SUM_CAP: usize = 24;

/// Default bound on the number of partial states kept by the frontier
/// contraction.
pub const DEFAULT_FRONTIER_CAP: usize = 1 << 20;

/// Bracket of `d`, by state sum for small diagrams and frontier contraction
/// otherwise.
pub fn bracket(d: &Diagram) -> Result<LaurentPoly> {
    if d.crossing_count() <= 12 {
        bracket_state_sum(d, DEFAULT_STATE_SUM_CAP)
    } else {
        bracket_skein(d, DEFAULT_FRONTIER_CAP)
    }
}

/// Writhe-normalized bracket `(-A^3)^-w <D>` (the Jones polynomial in `A`).
pub fn normalized_bracket(d: &Diagram) -> Result<LaurentPoly> {
    Ok(LaurentPoly::kink_factor(-d.writhe()) * bracket(d)?)
}

/// `delta^(mu - 1)`, the normalized bracket of the `mu`-component unlink.
pub fn unlink_value(mu: usize) -> LaurentPoly {
    LaurentPoly::delta().pow(mu.saturating_sub(1) as u32)
}

/// False certifies that `d` is not a diagram of the unlink.
pub fn is_unlink_polynomial(d: &Diagram) -> Result<bool> {
    Ok(normalized_bracket(d)? == unlink_value(d.component_count()))
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::one()];
    for k in 1..=max {
        out.push(&out[k - 1] * &LaurentPoly::delta());
    }
    out
}

/// Dense arc indices and per-crossing smoothing pairs.
struct ArcTable {
    arcs: usize,
    /// For each crossing: `[A pair 1, A pair 2, B pair 1, B pair 2]`.
    pairs: Vec<[(u8, u8); 4]>,
}

impl ArcTable {
    fn new(d: &Diagram) -> Self {
        let mut index: HashMap<ArcId, u8> = HashMap::new();
        let mut idx = |a: ArcId| {
            let k = index.len() as u8;
            *index.entry(a).or_insert(k)
        };
        let pairs = d
            .crossings()
            .iter()
            .map(|c| {
                let [a, b, cc, dd] = c.legs().map(&mut idx);
                [(a, dd), (b, cc), (a, b), (cc, dd)]
            })
            .collect();
        ArcTable {
            arcs: index.len(),
            pairs,
        }
    }

    /// Number of loops of the smoothing `state` (bit `i` set = B-smoothing at
    /// crossing `i`), not counting free circles.
    fn loops(&self, state: u64, parent: &mut [u8]) -> u32 {
        for (i, p) in parent.iter_mut().enumerate().take(self.arcs) {
            *p = i as u8;
        }
        let mut comps = self.arcs as u32;
        for (i, pr) in self.pairs.iter().enumerate() {
            let off = if state >> i & 1 == 0 { 0 } else { 2 };
            for &(x, y) in &pr[off..off + 2] {
                let (rx, ry) = (find(parent, x), find(parent, y));
                if rx != ry {
                    parent[rx as usize] = ry;
                    comps -= 1;
                }
            }
        }
        comps
    }
}

fn find(parent: &mut [u8], mut x: u8) -> u8 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Bracket by summing over all `2^n` smoothing states.
pub fn bracket_state_sum(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    let table = StateTable::build_with_cap(d, cap)?;
    Ok(table.variant_bracket(&CrossingSet::empty()))
}

/// Loop counts of every smoothing state of a fixed diagram.
///
/// A crossing change swaps which of its two smoothings is called A and which
/// B but leaves every state's loop count unchanged, so one table serves all
/// `2^n` crossing-change variants of the base diagram.
pub struct StateTable {
    base: Diagram,
    n: usize,
    free_circles: u32,
    /// Loop count (free circles included) of each state.
    loops: Vec<u8>,
    max_loops: usize,
    signs: Vec<i32>,
}

impl StateTable {
    pub fn build(d: &Diagram) -> Result<StateTable> {
        Self::build_with_cap(d, DEFAULT_STATE_SUM_CAP)
    }

    pub fn build_with_cap(d: &Diagram, cap: usize) -> Result<StateTable> {
        let n = d.crossing_count();
        if n > cap || n > 30 {
            return Err(Error::Budget(format!(
                "state table needs 2^{n} states (cap is {cap} crossings)"
            )));
        }
        let arcs = ArcTable::new(d);
        let free = d.free_circles() as u32;
        let total = 1u64 << n;
        let chunk = 1u64 << n.saturating_sub(6).min(16);
        let loops: Vec<u8> = (0..total.div_ceil(chunk))
            .into_par_iter()
            .flat_map_iter(|k| {
                let mut parent = vec![0u8; arcs.arcs.max(1)];
                let lo = k * chunk;
                let hi = (lo + chunk).min(total);
                let v: Vec<u8> = (lo..hi)
                    .map(|s| (arcs.loops(s, &mut parent) + free) as u8)
                    .collect();
                v.into_iter()
            })
            .collect();
        let max_loops = loops.iter().copied().max().unwrap_or(0) as usize;
        Ok(StateTable {
            base: d.clone(),
            n,
            free_circles: free,
            loops,
            max_loops,
            signs: d.crossings().iter().map(Crossing::sign).collect(),
        })
    }

    pub fn base(&self) -> &Diagram {
        &self.base
    }

    pub fn state_count(&self) -> usize {
        self.loops.len()
    }

    pub fn free_circles(&self) -> u32 {
        self.free_circles
    }

    /// Loop count of a state (bit `i` set = B-smoothing at crossing `i`).
    pub fn loops(&self, state: usize) -> u8 {
        self.loops[state]
    }

    /// Histogram `h[k * (L + 1) + l]` of states whose smoothing in the changed
    /// diagram uses `k` B-smoothings and yields `l` loops.
    fn histogram(&self, mask: u64) -> Vec<u64> {
        let width = self.max_loops + 1;
        let mut h = vec![0u64; (self.n + 1) * width];
        for (s, &l) in self.loops.iter().enumerate() {
            let k = ((s as u64) ^ mask).count_ones() as usize;
            h[k * width + l as usize] += 1;
        }
        h
    }

    /// Bracket of the base diagram with the crossings of `set` changed.
    pub fn variant_bracket(&self, set: &CrossingSet) -> LaurentPoly {
        let h = self.histogram(set.mask());
        let width = self.max_loops + 1;
        let deltas = delta_powers(self.max_loops);
        let mut out = LaurentPoly::zero();
        for k in 0..=self.n {
            // Collect the delta-polynomial for this A-exponent first.
            let mut inner = LaurentPoly::zero();
            for l in 1..width {
                let count = h[k * width + l];
                if count > 0 {
                    inner += &deltas[l - 1].scale(count as i64);
                }
            }
            if !inner.is_zero() {
                out += &inner.shift(self.n as i32 - 2 * k as i32);
            }
        }
        out
    }

    /// Writhe of the variant with `set` changed.
    pub fn variant_writhe(&self, set: &CrossingSet) -> i32 {
        let w: i32 = self.signs.iter().sum();
        w - 2 * set.iter().map(|c| self.signs[c.0]).sum::<i32>()
    }

    pub fn variant_normalized(&self, set: &CrossingSet) -> LaurentPoly {
        LaurentPoly::kink_factor(-self.variant_writhe(set)) * self.variant_bracket(set)
    }
}

/// A set of crossings of a fixed diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct CrossingSet(Vec<usize>);

impl CrossingSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = CrossingId>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().map(|c| c.0).collect();
        v.sort_unstable();
        v.dedup();
        CrossingSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        CrossingSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: CrossingId) -> bool {
        self.0.binary_search(&id.0).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.0.iter().map(|&i| CrossingId(i))
    }

    pub fn ids(&self) -> Vec<CrossingId> {
        self.iter().collect()
    }

    /// Checks every member against `d`.
    pub fn validate(&self, d: &Diagram) -> Result<()> {
        match self.0.iter().find(|&&i| i >= d.crossing_count()) {
            Some(&i) => Err(Error::UnknownCrossing(i)),
            None => Ok(()),
        }
    }

    /// Applies the crossing changes to `d`.
    pub fn apply(&self, d: &Diagram) -> Result<Diagram> {
        d.crossing_change_all(&self.ids())
    }
}

impl FromIterator<CrossingId> for CrossingSet {
    fn from_iter<T: IntoIterator<Item = CrossingId>>(iter: T) -> Self {
        CrossingSet::new(iter)
    }
}

impl std::fmt::Display for CrossingSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// Frontier contraction.

type Matching = Vec<(u32, u32)>;

#[derive(Clone, Default)]
struct Frontier {
    partner: HashMap<u32, u32>,
    loops: u32,
}

impl Frontier {
    fn from_matching(m: &Matching) -> Self {
        let mut partner = HashMap::with_capacity(2 * m.len());
        for &(x, y) in m {
            partner.insert(x, y);
            partner.insert(y, x);
        }
        Frontier { partner, loops: 0 }
    }

    /// Connects the pending ends of arcs `u` and `v` at the current crossing.
    fn join(&mut self, u: u32, v: u32) {
        if u == v {
            self.loops += 1;
            return;
        }
        match (self.partner.get(&u).copied(), self.partner.get(&v).copied()) {
            (Some(x), Some(y)) => {
                self.partner.remove(&u);
                self.partner.remove(&v);
                if x == v {
                    self.loops += 1;
                } else {
                    self.partner.insert(x, y);
                    self.partner.insert(y, x);
                }
            }
            (Some(x), None) => {
                self.partner.remove(&u);
                self.partner.insert(x, v);
                self.partner.insert(v, x);
            }
            (None, Some(y)) => {
                self.partner.remove(&v);
                self.partner.insert(y, u);
                self.partner.insert(u, y);
            }
            (None, None) => {
                self.partner.insert(u, v);
                self.partner.insert(v, u);
            }
        }
    }

    fn matching(&self) -> Matching {
        let mut m: Matching = self
            .partner
            .iter()
            .filter(|(x, y)| x < y)
            .map(|(&x, &y)| (x, y))
            .collect();
        m.sort_unstable();
        m
    }
}

/// Greedy order keeping the frontier narrow: next is the crossing with the
/// most legs on arcs already touched.
fn contraction_order(crossings: &[Crossing]) -> Vec<usize> {
    let n = crossings.len();
    let mut done = vec![false; n];
    let mut touched: HashMap<ArcId, u32> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        let mut best_score = i64::MIN;
        for (i, c) in crossings.iter().enumerate() {
            if done[i] {
                continue;
            }
            let open = c.legs().iter().filter(|a| touched.get(a).is_some_and(|&t| t == 1)).count() as i64;
            let fresh = c.legs().iter().filter(|a| !touched.contains_key(a)).count() as i64;
            let score = 8 * open - fresh;
            if score > best_score {
                best_score = score;
                best = Some(i);
            }
        }
        let i = best.expect("crossing left");
        done[i] = true;
        order.push(i);
        for a in crossings[i].legs() {
            *touched.entry(a).or_insert(0) += 1;
        }
    }
    order
}

/// Coefficient ring of the contraction: overflow is reported, not wrapped.
trait Coeff: Clone + Zero + CheckedAdd + CheckedSub + One {}

impl<C: Clone + Zero + CheckedAdd + CheckedSub + One> Coeff for C {}

type Terms<C> = BTreeMap<i32, C>;

/// Adds `A^shift * p` into `acc`.
fn add_shifted<C: Coeff>(acc: &mut Terms<C>, p: &Terms<C>, shift: i32) -> Option<()> {
    for (&e, c) in p {
        let slot = acc.entry(e + shift).or_insert_with(C::zero);
        *slot = slot.checked_add(c)?;
        if slot.is_zero() {
            acc.remove(&(e + shift));
        }
    }
    Some(())
}

fn times_delta<C: Coeff>(p: &Terms<C>) -> Option<Terms<C>> {
    let neg: Terms<C> = p.iter().map(|(&e, c)| Some((e, C::zero().checked_sub(c)?))).collect::<Option<_>>()?;
    let mut out = Terms::new();
    add_shifted(&mut out, &neg, 2)?;
    add_shifted(&mut out, &neg, -2)?;
    Some(out)
}

/// Expands the crossings by the skein relation, merging partial states by
/// boundary connectivity. Returns, for every final matching of the dangling
/// arcs, the accumulated polynomial, or `None` if a coefficient overflows
/// `C`. With `closed`, the first closed loop is not weighted by `delta`.
fn contract_in<C: Coeff>(crossings: &[Crossing], closed: bool, cap: usize) -> Result<Option<HashMap<Matching, Terms<C>>>> {
    // Key: (matching, first loop still pending).
    let mut states: HashMap<(Matching, bool), Terms<C>> = HashMap::new();
    states.insert((Vec::new(), closed), Terms::from([(0, C::one())]));
    for i in contraction_order(crossings) {
        let [la, lb, lc, ld] = crossings[i].legs().map(|x| x.0);
        let mut next: HashMap<(Matching, bool), Terms<C>> = HashMap::new();
        for ((m, pending), p) in states {
            for (pairs, shift) in [([(la, ld), (lb, lc)], 1), ([(la, lb), (lc, ld)], -1)] {
                let mut f = Frontier::from_matching(&m);
                for (u, v) in pairs {
                    f.join(u, v);
                }
                let mut loops = f.loops;
                let mut pend = pending;
                if pend && loops > 0 {
                    loops -= 1;
                    pend = false;
                }
                let mut q = p.clone();
                for _ in 0..loops {
                    let Some(t) = times_delta(&q) else { return Ok(None) };
                    q = t;
                }
                if add_shifted(next.entry((f.matching(), pend)).or_default(), &q, shift).is_none() {
                    return Ok(None);
                }
            }
        }
        next.retain(|_, p| !p.is_empty());
        if next.len() > cap {
            return Err(Error::Budget(format!(
                "frontier contraction exceeded {cap} partial states"
            )));
        }
        states = next;
    }
    let mut out: HashMap<Matching, Terms<C>> = HashMap::new();
    for ((m, pending), p) in states {
        // A closed diagram always closes at least one loop; only tangles end
        // with a pending flag they never consumed.
        debug_assert!(!(closed && pending && m.is_empty()) || crossings.is_empty());
        if add_shifted(out.entry(m).or_default(), &p, 0).is_none() {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

fn to_poly<C: Clone>(p: &Terms<C>) -> Result<LaurentPoly>
where
    i64: TryFrom<C>,
{
    p.iter()
        .map(|(&e, c)| {
            i64::try_from(c.clone())
                .map(|c| (e, c))
                .map_err(|_| Error::Budget("a bracket coefficient does not fit in 64 bits".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(LaurentPoly::from_terms)
}

/// [`contract_in`] over `i64`, repeated with arbitrary precision when an
/// intermediate coefficient overflows.
fn contract(crossings: &[Crossing], closed: bool, cap: usize) -> Result<HashMap<Matching, LaurentPoly>> {
    if let Some(out) = contract_in::<i64>(crossings, closed, cap)? {
        return out.iter().map(|(m, p)| Ok((m.clone(), to_poly(p)?))).collect();
    }
    let out = contract_in::<BigInt>(crossings, closed, cap)?.expect("arbitrary precision does not overflow");
    out.iter().map(|(m, p)| Ok((m.clone(), to_poly(p)?))).collect()
}

/// Bracket by frontier contraction (memoized skein expansion).
pub fn bracket_skein(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    if d.crossing_count() == 0 {
        return Ok(delta_powers(d.free_circles() - 1).pop().expect("power"));
    }
    let out = contract(d.crossings(), true, cap)?;
    let p = out.get(&Vec::new()).cloned().unwrap_or_default();
    Ok(&p * &LaurentPoly::delta().pow(d.free_circles() as u32))
}

/// Bracket of a 2-string tangle in the Temperley-Lieb basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleBracket {
    /// Coefficient of the smoothing joining legs (0,1) and (2,3).
    pub e01: LaurentPoly,
    /// Coefficient of the smoothing joining legs (0,3) and (1,2).
    pub e03: LaurentPoly,
}

impl TangleBracket {
    /// A single crossing with legs `[0,1,2,3]` in PD order.
    pub fn crossing() -> Self {
        TangleBracket {
            e01: LaurentPoly::monomial(-1, 1),
            e03: LaurentPoly::monomial(1, 1),
        }
    }

    pub fn crossing_changed() -> Self {
        TangleBracket {
            e01: LaurentPoly::monomial(1, 1),
            e03: LaurentPoly::monomial(-1, 1),
        }
    }

    /// `self == (-A^3)^k * other` for some `k`.
    pub fn unit_multiple_of(&self, other: &TangleBracket) -> Option<i32> {
        let k = if !self.e01.is_zero() {
            self.e01.unit_ratio(&other.e01)?
        } else if other.e01.is_zero() {
            self.e03.unit_ratio(&other.e03)?
        } else {
            return None;
        };
        let f = LaurentPoly::kink_factor(k);
        (f.clone() * other.e01.clone() == self.e01 && f * other.e03.clone() == self.e03).then_some(k)
    }
}

/// Bracket of the tangle formed by `crossings`, whose four dangling arcs are
/// `legs` (listed counterclockwise around the tangle boundary).
pub fn tangle_bracket(crossings: &[Crossing], legs: [ArcId; 4]) -> Result<TangleBracket> {
    let out = contract(crossings, false, DEFAULT_FRONTIER_CAP)?;
    let l = legs.map(|a| a.0);
    let key = |x: u32, y: u32, z: u32, w: u32| {
        let mut m = vec![(x.min(y), x.max(y)), (z.min(w), z.max(w))];
        m.sort_unstable();
        m
    };
    let mut tb = TangleBracket {
        e01: LaurentPoly::zero(),
        e03: LaurentPoly::zero(),
    };
    for (m, p) in out {
        if m == key(l[0], l[1], l[2], l[3]) {
            tb.e01 = p;
        } else if m == key(l[0], l[3], l[1], l[2]) {
            tb.e03 = p;
        } else if !p.is_zero() {
            return Err(Error::Template("tangle is not planar with the given legs".into()));
        }
    }
    Ok(tb)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    fn pd(s: &str) -> Diagram {
        Diagram::parse_pd(s).unwrap()
    }

    #[test]
    fn conventions() {
        assert_eq!(bracket(&pd("O")).unwrap(), LaurentPoly::one());
        assert_eq!(bracket(&pd("O O")).unwrap(), LaurentPoly::delta());
        assert_eq!(normalized_bracket(&pd("X[1,2,2,1]")).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_bracket_by_hand() {
        // Eight states of the positive closed 2-braid: all-A gives 2 loops,
        // one B gives 1, two B give 2, all-B gives 3.
        let d = LaurentPoly::delta();
        let mut expect = LaurentPoly::monomial(3, 1) * d.clone();
        expect += &LaurentPoly::monomial(1, 3);
        expect += &(LaurentPoly::monomial(-1, 3) * d.clone());
        expect += &(LaurentPoly::monomial(-3, 1) * d.pow(2));
        let t = pd(TREFOIL);
        assert_eq!(bracket_state_sum(&t, 24).unwrap(), expect);
        assert_eq!(bracket_skein(&t, 1000).unwrap(), expect);
        assert_eq!(expect.len(), 3);
        let v = normalized_bracket(&t).unwrap();
        assert_ne!(v, LaurentPoly::one());
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn contraction_reports_overflow() {
        let mut acc = Terms::from([(0, i64::MAX)]);
        assert!(add_shifted(&mut acc, &Terms::from([(0, 1)]), 0).is_none());
        let fig8 = pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
        let tpl = crate::constructions::TangleTemplate::doubling();
        let d = crate::constructions::doubling_transform(&fig8, &tpl).unwrap();
        assert!(contract_in::<i8>(d.crossings(), true, DEFAULT_FRONTIER_CAP).unwrap().is_none());
        let big = contract_in::<BigInt>(d.crossings(), true, DEFAULT_FRONTIER_CAP).unwrap().unwrap();
        let small = contract_in::<i64>(d.crossings(), true, DEFAULT_FRONTIER_CAP).unwrap().unwrap();
        assert_eq!(to_poly(&big[&Vec::new()]).unwrap(), to_poly(&small[&Vec::new()]).unwrap());
    }

    #[test]
    fn mirror_inverts_variable() {
        let t = pd(TREFOIL);
        let v = normalized_bracket(&t).unwrap();
        assert_eq!(normalized_bracket(&t.mirror()).unwrap(), v.invert_variable());
    }

    #[test]
    fn unlink_tests() {
        assert!(is_unlink_polynomial(&pd("O O")).unwrap());
        assert!(!is_unlink_polynomial(&pd(TREFOIL)).unwrap());
        assert!(!is_unlink_polynomial(&pd(HOPF)).unwrap());
    }

    #[test]
    fn state_table_small_cases() {
        let t = StateTable::build(&pd("O O O")).unwrap();
        assert_eq!(t.state_count(), 1);
        assert_eq!(t.loops(0), 3);
        let k = StateTable::build(&pd("X[1,2,2,1]")).unwrap();
        let mut l = [k.loops(0), k.loops(1)];
        l.sort();
        assert_eq!(l, [1, 2]);
        let tr = pd(TREFOIL);
        let tt = StateTable::build(&tr).unwrap();
        assert_eq!(tt.state_count(), 8);
        assert_eq!(tt.variant_bracket(&CrossingSet::empty()), bracket(&tr).unwrap());
    }

    #[test]
    fn variants_match_direct_brackets() {
        let tr = pd(TREFOIL);
        let tt = StateTable::build(&tr).unwrap();
        for mask in 0..8u64 {
            let s = CrossingSet::from_mask(mask);
            let changed = s.apply(&tr).unwrap();
            assert_eq!(tt.variant_bracket(&s), bracket_state_sum(&changed, 24).unwrap());
            assert_eq!(tt.variant_writhe(&s), changed.writhe());
            if mask.count_ones() == 1 {
                assert_eq!(tt.variant_normalized(&s), LaurentPoly::one());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = pd(TREFOIL);
        assert!(matches!(StateTable::build_with_cap(&t, 2), Err(Error::Budget(_))));
        assert!(matches!(bracket_skein(&t, 1), Err(Error::Budget(_))));
    }

    #[test]
    fn single_crossing_tangle() {
        let a = |k| ArcId(k);
        let c = Crossing::new([a(1), a(2), a(3), a(4)], true);
        let tb = tangle_bracket(&[c], [a(1), a(2), a(3), a(4)]).unwrap();
        assert_eq!(tb, TangleBracket::crossing());
        assert_eq!(tb.unit_multiple_of(&TangleBracket::crossing()), Some(0));
        assert_eq!(tb.unit_multiple_of(&TangleBracket::crossing_changed()), None);
    }

    #[test]
    fn split_factorization() {
        let t = pd(TREFOIL);
        let two = pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] X[11,12,12,11]");
        let k = pd("X[1,2,2,1]");
        let lhs = bracket(&two).unwrap();
        let rhs = LaurentPoly::delta() * bracket(&t).unwrap() * bracket(&k).unwrap();
        assert_eq!(lhs, rhs);
    }
}
