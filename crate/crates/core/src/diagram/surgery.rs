//! Elementary surgery: crossing changes, oriented smoothing, mirroring.

use std::collections::{BTreeSet, HashMap};

use super::{ArcId, Crossing, CrossingId, Diagram};
use crate::error::Result;

impl Diagram {
    /// Swaps over and under at `id`. The legs are rotated so the new incoming
    /// under-strand comes first; the rotation system is untouched.
    pub fn crossing_change(&self, id: CrossingId) -> Result<Diagram> {
        self.crossing_change_all(&[id])
    }

    /// Changes every crossing in `ids` (a crossing listed twice is restored).
    pub fn crossing_change_all(&self, ids: &[CrossingId]) -> Result<Diagram> {
        let mut crossings = self.crossings.clone();
        for &id in ids {
            self.crossing(id)?;
            crossings[id.0] = changed(&crossings[id.0]);
        }
        Ok(Diagram::from_parts(crossings, self.free_circles))
    }

    /// Removes the crossing, reconnecting incoming ends to outgoing ends.
    pub fn smooth_oriented(&self, id: CrossingId) -> Result<Diagram> {
        let c = *self.crossing(id)?;
        let pairs = if c.over_enters_b {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (3, 2)]
        };
        Ok(self.remove_joining(&[(id.0, pairs)]))
    }

    /// True iff two corners of the crossing lie in the same face, i.e. a
    /// simple closed curve meets the diagram only at this crossing.
    pub fn is_nugatory(&self, id: CrossingId) -> Result<bool> {
        self.crossing(id)?;
        let (face_of, _) = self.face_of_dart();
        let fs: BTreeSet<usize> = (0..4).map(|p| face_of[4 * id.0 + p]).collect();
        Ok(fs.len() < 4)
    }

    /// Mirror image: the rotation system is reversed at every crossing, which
    /// negates every crossing sign.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.legs;
                Crossing {
                    legs: [a, d, cc, b],
                    over_enters_b: !c.over_enters_b,
                    role: c.role,
                }
            })
            .collect();
        Diagram::from_parts(crossings, self.free_circles)
    }

    /// Deletes crossings, joining the arcs at the given position pairs of each
    /// deleted crossing. Arc classes left without endpoints become free
    /// circles. Remaining crossings keep their order.
    pub(crate) fn remove_joining(&self, removals: &[(usize, [(usize, usize); 2])]) -> Diagram {
        let mut uf = ArcUnion::default();
        let deleted: BTreeSet<usize> = removals.iter().map(|r| r.0).collect();
        for &(x, pairs) in removals {
            for (p, q) in pairs {
                uf.union(self.crossings[x].legs[p], self.crossings[x].legs[q]);
            }
        }
        let mut touched: BTreeSet<ArcId> = BTreeSet::new();
        for &(x, _) in removals {
            for &a in &self.crossings[x].legs {
                touched.insert(uf.find(a));
            }
        }
        let mut crossings = Vec::with_capacity(self.crossings.len() - deleted.len());
        let mut alive: BTreeSet<ArcId> = BTreeSet::new();
        for (i, c) in self.crossings.iter().enumerate() {
            if deleted.contains(&i) {
                continue;
            }
            let mut c = *c;
            for leg in c.legs.iter_mut() {
                *leg = uf.find(*leg);
                alive.insert(*leg);
            }
            crossings.push(c);
        }
        let new_circles = touched.iter().filter(|a| !alive.contains(a)).count();
        Diagram::from_parts(crossings, self.free_circles + new_circles)
    }
}

fn changed(c: &Crossing) -> Crossing {
    let [a, b, cc, d] = c.legs;
    let legs = if c.over_enters_b {
        [b, cc, d, a]
    } else {
        [d, a, b, cc]
    };
    Crossing {
        legs,
        over_enters_b: !c.over_enters_b,
        role: c.role,
    }
}

/// Union-find over arc labels, keeping the smallest label as representative.
#[derive(Default)]
pub(crate) struct ArcUnion {
    parent: HashMap<ArcId, ArcId>,
}

impl ArcUnion {
    pub(crate) fn find(&mut self, a: ArcId) -> ArcId {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    pub(crate) fn union(&mut self, a: ArcId, b: ArcId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, lo);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    #[test]
    fn crossing_change_is_an_involution() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        for i in 0..3 {
            let once = t.crossing_change(CrossingId(i)).unwrap();
            assert_ne!(once, t);
            assert_eq!(once.writhe(), t.writhe() - 2 * t.crossings()[i].sign());
            let twice = once.crossing_change(CrossingId(i)).unwrap();
            assert_eq!(twice, t);
        }
        assert_eq!(t.crossing_change(CrossingId(3)), Err(Error::UnknownCrossing(3)));
    }

    #[test]
    fn kink_change_stays_one_crossing() {
        let k = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        let c = k.crossing_change(CrossingId(0)).unwrap();
        assert_eq!(c.crossing_count(), 1);
        assert_eq!(c.component_count(), 1);
        assert_eq!(c.writhe(), -k.writhe());
    }

    #[test]
    fn smoothing_the_kink_gives_two_circles() {
        let k = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        let s = k.smooth_oriented(CrossingId(0)).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.free_circles(), 2);
    }

    #[test]
    fn smoothing_trefoil_gives_hopf_type() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        for i in 0..3 {
            let s = t.smooth_oriented(CrossingId(i)).unwrap();
            assert_eq!(s.crossing_count(), 2);
            assert_eq!(s.component_count(), 2);
        }
    }

    #[test]
    fn smoothing_hopf_gives_kink() {
        let h = Diagram::parse_pd(HOPF).unwrap();
        assert_eq!(h.component_count(), 2);
        for i in 0..2 {
            let s = h.smooth_oriented(CrossingId(i)).unwrap();
            assert_eq!(s.crossing_count(), 1);
            assert_eq!(s.component_count(), 1);
        }
    }

    #[test]
    fn nugatory_detection() {
        let k = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        assert!(k.is_nugatory(CrossingId(0)).unwrap());
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        for i in 0..3 {
            assert!(!t.is_nugatory(CrossingId(i)).unwrap());
        }
        // Connected sum of two kinks.
        let kk = Diagram::parse_pd("X[1,2,2,3] X[3,4,4,1]").unwrap();
        assert!(kk.is_nugatory(CrossingId(0)).unwrap());
        assert!(kk.is_nugatory(CrossingId(1)).unwrap());
    }

    #[test]
    fn mirror_basics() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(t.mirror().writhe(), -t.writhe());
        assert_eq!(t.mirror().mirror(), t);
        let o = Diagram::parse_pd("O").unwrap();
        assert_eq!(o.mirror(), o);
    }
}
