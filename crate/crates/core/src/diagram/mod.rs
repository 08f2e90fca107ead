//! Link diagrams on the 2-sphere, stored as PD codes with an explicit rotation
//! system.
//!
//! A crossing lists its four arc-ends counterclockwise, starting with the
//! incoming under-strand. Positions 0 and 2 carry the under-strand, 1 and 3
//! the over-strand. A *dart* is the index `4 * crossing + position`.

mod canon;
pub(crate) mod parse;
mod report;
mod surgery;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::CanonicalForm;
pub use report::DiagramReport;

pub type Dart = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossingId(pub usize);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Provenance label attached to crossings created by template splicing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    C,
    A1,
    A2,
    B1,
    B2,
    /// The k-th crossing of a doubling template.
    T(u8),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::C => write!(f, "C"),
            Role::A1 => write!(f, "A1"),
            Role::A2 => write!(f, "A2"),
            Role::B1 => write!(f, "B1"),
            Role::B2 => write!(f, "B2"),
            Role::T(k) => write!(f, "T{k}"),
        }
    }
}

impl std::str::FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Role> {
        Ok(match s {
            "C" => Role::C,
            "A1" => Role::A1,
            "A2" => Role::A2,
            "B1" => Role::B1,
            "B2" => Role::B2,
            _ => {
                let k = s
                    .strip_prefix('T')
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::syntax(s, "unknown role"))?;
                Role::T(k)
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RoleLabel {
    pub role: Role,
    /// Index of the original crossing the template replaced (1-based, `C_i`).
    pub group: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    legs: [ArcId; 4],
    /// The over-strand enters at position 1 (and leaves at 3).
    over_enters_b: bool,
    role: Option<RoleLabel>,
}

impl Crossing {
    pub fn new(legs: [ArcId; 4], over_enters_b: bool) -> Self {
        Crossing {
            legs,
            over_enters_b,
            role: None,
        }
    }

    /// Builds a crossing from its legs in counterclockwise order, given the
    /// index of the incoming under leg and of the incoming over leg.
    pub(crate) fn from_ccw(ccw: [ArcId; 4], under_in: usize, over_in: usize) -> Self {
        debug_assert_eq!((over_in + 4 - under_in) % 2, 1);
        let legs = std::array::from_fn(|k| ccw[(under_in + k) % 4]);
        Crossing::new(legs, (over_in + 4 - under_in) % 4 == 1)
    }

    pub fn legs(&self) -> [ArcId; 4] {
        self.legs
    }

    pub fn role(&self) -> Option<RoleLabel> {
        self.role
    }

    pub fn with_role(mut self, role: Option<RoleLabel>) -> Self {
        self.role = role;
        self
    }

    pub fn over_enters_b(&self) -> bool {
        self.over_enters_b
    }

    /// +1 when a counterclockwise quarter turn of the under direction gives
    /// the over direction, i.e. the over-strand runs from position 1 to 3.
    pub fn sign(&self) -> i32 {
        if self.over_enters_b {
            1
        } else {
            -1
        }
    }

    /// Whether the strand at `pos` points into the crossing.
    pub fn incoming(&self, pos: usize) -> bool {
        match pos & 3 {
            0 => true,
            2 => false,
            1 => self.over_enters_b,
            _ => !self.over_enters_b,
        }
    }

    pub(crate) fn set_leg(&mut self, pos: usize, arc: ArcId) {
        self.legs[pos] = arc;
    }
}

#[inline]
pub(crate) fn rot(d: Dart) -> Dart {
    (d & !3) | ((d + 1) & 3)
}

#[inline]
pub(crate) fn opposite(d: Dart) -> Dart {
    (d & !3) | ((d + 2) & 3)
}

/// A validated link diagram: arcs pair up, orientations are consistent, and
/// each connected piece embeds in the sphere.
#[derive(Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_circles: usize,
    mate: Vec<u32>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.free_circles == other.free_circles
    }
}

impl Eq for Diagram {}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.crossings.hash(state);
        self.free_circles.hash(state);
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.render())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Diagram {
    /// Validates and builds a diagram from oriented crossings.
    pub fn new(crossings: Vec<Crossing>, free_circles: usize) -> Result<Diagram> {
        if crossings.is_empty() && free_circles == 0 {
            return Err(Error::Empty);
        }
        let mate = pair_arcs(&crossings)?;
        let d = Diagram {
            crossings,
            free_circles,
            mate,
        };
        d.check_orientation()?;
        d.check_sphericity()?;
        Ok(d)
    }

    /// Builds a diagram whose over-strand directions are not yet known: they
    /// are derived by following each component through its under-passes.
    /// Components that never pass under are oriented to enter their first
    /// crossing at position 1.
    pub fn from_unoriented(legs: Vec<[ArcId; 4]>, free_circles: usize) -> Result<Diagram> {
        if legs.is_empty() && free_circles == 0 {
            return Err(Error::Empty);
        }
        let mut crossings: Vec<Crossing> = legs.iter().map(|&l| Crossing::new(l, true)).collect();
        let mate = pair_arcs(&crossings)?;
        let n4 = crossings.len() * 4;
        let mut seen = vec![false; n4];
        for start in 0..n4 {
            if seen[start] {
                continue;
            }
            // Walk the strand entering at `start`; record the entry darts.
            let mut entries = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                seen[opposite(d)] = true;
                entries.push(d);
                d = mate[opposite(d)] as usize;
                if d == start {
                    break;
                }
                if seen[d] {
                    return Err(Error::Orientation("strand does not close up".into()));
                }
            }
            let forward = entries.iter().any(|&d| d & 3 == 0);
            let backward = entries.iter().any(|&d| d & 3 == 2);
            if forward && backward {
                return Err(Error::Orientation(format!(
                    "component through arc {} passes under in both directions",
                    crossings[start >> 2].legs[start & 3].0
                )));
            }
            // `start` is the lowest dart of its component, so a component with
            // no under-pass enters its first crossing at position 1 here.
            let reverse = backward;
            for &d in &entries {
                let p = d & 3;
                if p % 2 == 1 {
                    let entry = if reverse { (p + 2) & 3 } else { p };
                    crossings[d >> 2].over_enters_b = entry == 1;
                }
            }
        }
        let d = Diagram {
            crossings,
            free_circles,
            mate,
        };
        d.check_orientation()?;
        d.check_sphericity()?;
        Ok(d)
    }

    /// Skips validation; callers guarantee the invariants (checked in debug
    /// builds).
    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_circles: usize) -> Diagram {
        let mate = pair_arcs(&crossings).expect("arc pairing");
        let d = Diagram {
            crossings,
            free_circles,
            mate,
        };
        #[cfg(debug_assertions)]
        d.audit();
        d
    }

    #[cfg(debug_assertions)]
    pub(crate) fn audit(&self) {
        assert!(!self.crossings.is_empty() || self.free_circles > 0, "empty diagram");
        self.check_orientation().expect("orientation audit");
        self.check_sphericity().expect("sphericity audit");
    }

    fn check_orientation(&self) -> Result<()> {
        for d in 0..self.mate.len() {
            let m = self.mate[d] as usize;
            if self.incoming(d) == self.incoming(m) {
                return Err(Error::Orientation(format!(
                    "arc {} has two {} ends",
                    self.arc(d).0,
                    if self.incoming(d) { "incoming" } else { "outgoing" }
                )));
            }
        }
        Ok(())
    }

    fn check_sphericity(&self) -> Result<()> {
        let (comp, count) = self.graph_components();
        let mut verts = vec![0usize; count];
        let mut faces = vec![0usize; count];
        for &c in &comp {
            verts[c] += 1;
        }
        for f in self.faces() {
            faces[comp[f[0] >> 2]] += 1;
        }
        for k in 0..count {
            if faces[k] != verts[k] + 2 {
                return Err(Error::Genus {
                    crossings: verts[k],
                    faces: faces[k],
                });
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing> {
        self.crossings.get(id.0).ok_or(Error::UnknownCrossing(id.0))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    #[inline]
    pub fn mate(&self, d: Dart) -> Dart {
        self.mate[d] as usize
    }

    #[inline]
    pub fn arc(&self, d: Dart) -> ArcId {
        self.crossings[d >> 2].legs[d & 3]
    }

    #[inline]
    pub fn incoming(&self, d: Dart) -> bool {
        self.crossings[d >> 2].incoming(d & 3)
    }

    #[inline]
    pub fn is_over(d: Dart) -> bool {
        d & 1 == 1
    }

    /// Next outgoing dart along the strand after leaving through `d`.
    #[inline]
    pub(crate) fn strand_next(&self, d: Dart) -> Dart {
        opposite(self.mate(d))
    }

    /// Faces as orbits of `d -> rot(mate(d))`; a face lies to the right of
    /// each of its darts.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n4 = self.mate.len();
        let mut seen = vec![false; n4];
        let mut out = Vec::new();
        for s in 0..n4 {
            if seen[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = rot(self.mate(d));
            }
            out.push(face);
        }
        out
    }

    /// Face index of every dart.
    pub fn face_of_dart(&self) -> (Vec<usize>, usize) {
        let faces = self.faces();
        let mut of = vec![0; self.mate.len()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                of[d] = i;
            }
        }
        (of, faces.len())
    }

    /// Connected pieces of the underlying 4-valent graph: piece index per
    /// crossing and the number of pieces.
    pub fn graph_components(&self) -> (Vec<usize>, usize) {
        let n = self.crossings.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for p in 0..4 {
                    let y = self.mate(4 * x + p) >> 2;
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Link components through crossings, each as its outgoing darts in
    /// traversal order. Components are ordered by smallest arc id and each
    /// starts at its smallest arc. Free circles are not included.
    pub fn strand_components(&self) -> Vec<Vec<Dart>> {
        let n4 = self.mate.len();
        let mut seen = vec![false; n4];
        let mut comps = Vec::new();
        for s in 0..n4 {
            if seen[s] || self.incoming(s) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                cyc.push(d);
                d = self.strand_next(d);
            }
            let (imin, _) = cyc
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| self.arc(d))
                .expect("nonempty");
            cyc.rotate_left(imin);
            comps.push(cyc);
        }
        comps.sort_by_key(|c| self.arc(c[0]));
        comps
    }

    /// Component count including free circles.
    pub fn component_count(&self) -> usize {
        self.strand_components().len() + self.free_circles
    }

    /// Component index of every arc (components ordered as in
    /// [`Diagram::strand_components`]).
    pub fn component_of_arc(&self) -> HashMap<ArcId, usize> {
        let mut map = HashMap::new();
        for (i, comp) in self.strand_components().iter().enumerate() {
            for &d in comp {
                map.insert(self.arc(d), i);
            }
        }
        map
    }

    /// (under component, over component) for every crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let map = self.component_of_arc();
        self.crossings
            .iter()
            .map(|c| (map[&c.legs[0]], map[&c.legs[1]]))
            .collect()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Renders the PD text form: `X[a,b,c,d]` tokens followed by one `O` per
    /// free circle.
    pub fn render(&self) -> String {
        let mut toks: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.legs;
                format!("X[{},{},{},{}]", a.0, b.0, cc.0, d.0)
            })
            .collect();
        toks.extend(std::iter::repeat_n("O".to_string(), self.free_circles));
        toks.join(" ")
    }

    /// Relabels arcs `1..=2n` along the components, in component order.
    pub fn normalized(&self) -> Diagram {
        let mut relabel: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut next = 1;
        for comp in self.strand_components() {
            for d in comp {
                relabel.insert(self.arc(d), ArcId(next));
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let mut c = *c;
                for leg in c.legs.iter_mut() {
                    *leg = relabel[leg];
                }
                c
            })
            .collect();
        Diagram {
            crossings,
            free_circles: self.free_circles,
            mate: self.mate.clone(),
        }
    }

    /// Largest arc label in use.
    pub(crate) fn max_arc(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.legs.iter().map(|a| a.0))
            .max()
            .unwrap_or(0)
    }

    /// Strips role labels.
    pub fn without_roles(&self) -> Diagram {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            c.role = None;
        }
        d
    }

    /// Crossing ids carrying the given role (any group when `group` is None).
    pub fn crossings_with_role(&self, role: Role, group: Option<usize>) -> Vec<CrossingId> {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.role
                    .is_some_and(|r| r.role == role && group.is_none_or(|g| g == r.group))
            })
            .map(|(i, _)| CrossingId(i))
            .collect()
    }

    pub(crate) fn set_role(&mut self, id: CrossingId, role: Option<RoleLabel>) {
        self.crossings[id.0].role = role;
    }
}

fn pair_arcs(crossings: &[Crossing]) -> Result<Vec<u32>> {
    let mut ends: HashMap<ArcId, Vec<usize>> = HashMap::new();
    for (i, c) in crossings.iter().enumerate() {
        for (p, &a) in c.legs.iter().enumerate() {
            ends.entry(a).or_default().push(4 * i + p);
        }
    }
    let mut mate = vec![0u32; crossings.len() * 4];
    let mut arcs: Vec<_> = ends.into_iter().collect();
    arcs.sort();
    for (a, e) in arcs {
        if e.len() != 2 {
            return Err(Error::Pairing {
                arc: a.0,
                count: e.len(),
            });
        }
        mate[e[0]] = e[1] as u32;
        mate[e[1]] = e[0] as u32;
    }
    Ok(mate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ccw_constructor_rotates_to_under_in() {
        let a = |k| ArcId(k);
        let c = Crossing::from_ccw([a(1), a(2), a(3), a(4)], 2, 3);
        assert_eq!(c.legs(), [a(3), a(4), a(1), a(2)]);
        assert_eq!(c.sign(), 1);
        let c = Crossing::from_ccw([a(1), a(2), a(3), a(4)], 0, 3);
        assert_eq!(c.sign(), -1);
    }

    #[test]
    fn dart_helpers() {
        assert_eq!(rot(7), 4);
        assert_eq!(rot(5), 6);
        assert_eq!(opposite(5), 7);
        assert_eq!(opposite(2), 0);
    }
}
