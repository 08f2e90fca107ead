//! Two-string tangle templates spliced in place of crossings.
//!
//! A template is drawn relative to a positive reference crossing. Its four
//! boundary legs `P0..P3` are listed counterclockwise as seen from inside the
//! tangle: `P0` is where the under-strand enters, `P1` where the over-strand
//! enters, `P2` and `P3` where they leave.
//!
//! Text format, one item per line (`#` starts a comment):
//!
//! ```text
//! template <name>
//! legs <P0> <P1> <P2> <P3>
//! X[a,b,c,d] [role]
//! pair <role> <role> ...
//! ```
//!
//! Crossings use PD layout (counterclockwise legs, `a`-`c` passing under) but
//! the direction of `a` is free: strand directions are recovered by walking
//! in from `P0` and `P1`. `pair` names the designated change set of a
//! doubling template.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bracket::{tangle_bracket, TangleBracket};
use crate::diagram::{parse::scan_pd, ArcId, Crossing, CrossingId, Diagram, Role, RoleLabel};
use crate::error::{Error, Result};
use crate::moves::{classify_triviality, SearchBudget, Verdict};
use crate::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleTemplate {
    pub name: String,
    crossings: Vec<Crossing>,
    legs: [ArcId; 4],
    pair: Vec<Role>,
}

/// Text of the stored gadget template.
pub const GADGET_TEMPLATE: &str = include_str!("../../templates/gadget.tpl");

/// Text of the stored doubling template.
pub const DOUBLING_TEMPLATE: &str = include_str!("../../templates/doubling.tpl");

impl TangleTemplate {
    /// Builds a template from PD-layout quads, deriving strand directions.
    pub fn from_quads(name: &str, quads: &[([ArcId; 4], Option<Role>)], legs: [ArcId; 4]) -> Result<Self> {
        let bad = |why: String| Error::Template(format!("{name}: {why}"));
        let mut ends: HashMap<ArcId, Vec<usize>> = HashMap::new();
        for (i, (q, _)) in quads.iter().enumerate() {
            for (p, &a) in q.iter().enumerate() {
                ends.entry(a).or_default().push(4 * i + p);
            }
        }
        for (k, l) in legs.iter().enumerate() {
            if ends.get(l).map_or(0, Vec::len) != 1 {
                return Err(bad(format!("leg P{k} (arc {}) must have one end inside", l.0)));
            }
        }
        for (a, e) in &ends {
            if e.len() > 2 || (e.len() == 1 && !legs.contains(a)) {
                return Err(bad(format!("arc {} has {} ends", a.0, e.len())));
            }
        }
        let other_end = |a: ArcId, here: usize| ends[&a].iter().copied().find(|&d| d != here);
        let n = quads.len();
        // entry[4x] and entry[4x+1] hold the entering position of the under
        // and over strand at crossing x.
        let mut entry: Vec<Option<usize>> = vec![None; 4 * n];
        let walk = |start: usize, entry: &mut Vec<Option<usize>>| {
            let mut d = start;
            loop {
                let (x, p) = (d >> 2, d & 3);
                if entry[4 * x + (p & 1)].is_some() {
                    return;
                }
                entry[4 * x + (p & 1)] = Some(p);
                let out = 4 * x + ((p + 2) & 3);
                match other_end(quads[x].0[out & 3], out) {
                    Some(next) => d = next,
                    None => return,
                }
            }
        };
        for (from, to) in [(0, 2), (1, 3)] {
            let start = ends[&legs[from]][0];
            walk(start, &mut entry);
            let exit = legs[to];
            let end = ends[&exit][0];
            if entry[4 * (end >> 2) + (end & 1)].is_none_or(|p| p == end & 3) {
                return Err(bad(format!("strand entering at P{from} must leave at P{to}")));
            }
        }
        // Closed components inside the tangle get an arbitrary direction.
        for d in 0..4 * n {
            if entry[4 * (d >> 2) + (d & 1)].is_none() {
                walk(d, &mut entry);
            }
        }
        let crossings = quads
            .iter()
            .enumerate()
            .map(|(i, (q, role))| {
                let u = entry[4 * i].expect("under entry");
                let o = entry[4 * i + 1].expect("over entry");
                Crossing::from_ccw(*q, u, o).with_role(role.map(|role| RoleLabel { role, group: 0 }))
            })
            .collect();
        let t = TangleTemplate {
            name: name.to_string(),
            crossings,
            legs,
            pair: Vec::new(),
        };
        t.closed_with_reference()?;
        Ok(t)
    }

    /// The stored gadget for [`taniyama_transform`](super::taniyama_transform).
    pub fn gadget() -> Self {
        Self::parse(GADGET_TEMPLATE).expect("stored gadget parses")
    }

    /// The stored template for [`doubling_transform`](super::doubling_transform).
    pub fn doubling() -> Self {
        Self::parse(DOUBLING_TEMPLATE).expect("stored doubling template parses")
    }

    /// A lone positive crossing labelled `C`.
    pub fn single_crossing() -> Self {
        let q = [ArcId(1), ArcId(2), ArcId(3), ArcId(4)];
        TangleTemplate::from_quads("crossing", &[(q, Some(Role::C))], q).expect("valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::from("template");
        let mut legs: Option<[ArcId; 4]> = None;
        let mut quads = Vec::new();
        let mut pair = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("template") => name = words.collect::<Vec<_>>().join(" "),
                Some("legs") => {
                    let v: Vec<u32> = words
                        .map(|w| w.parse().map_err(|_| Error::syntax(line, "leg labels must be integers")))
                        .collect::<Result<_>>()?;
                    if v.len() != 4 {
                        return Err(Error::syntax(line, "need four legs"));
                    }
                    legs = Some([ArcId(v[0]), ArcId(v[1]), ArcId(v[2]), ArcId(v[3])]);
                }
                Some("pair") => {
                    pair = words.map(str::parse).collect::<Result<_>>()?;
                }
                Some(tok) if tok.starts_with('X') => {
                    let (q, _) = scan_pd(tok)?;
                    let role = words.next().map(str::parse).transpose()?;
                    quads.push((q[0], role));
                }
                _ => return Err(Error::syntax(line, "expected template, legs, X[...] or pair")),
            }
        }
        let legs = legs.ok_or_else(|| Error::Template("missing legs line".into()))?;
        let mut t = TangleTemplate::from_quads(&name, &quads, legs)?;
        for r in &pair {
            if t.role_index(*r).is_none() {
                return Err(Error::Template(format!("pair names unknown role {r}")));
            }
        }
        t.pair = pair;
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("template {}\nlegs", self.name);
        for l in self.legs {
            let _ = write!(s, " {}", l.0);
        }
        s.push('\n');
        for c in &self.crossings {
            let [a, b, cc, d] = c.legs();
            let _ = write!(s, "X[{},{},{},{}]", a.0, b.0, cc.0, d.0);
            if let Some(r) = c.role() {
                let _ = write!(s, " {}", r.role);
            }
            s.push('\n');
        }
        if !self.pair.is_empty() {
            s.push_str("pair");
            for r in &self.pair {
                let _ = write!(s, " {r}");
            }
            s.push('\n');
        }
        s
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn legs(&self) -> [ArcId; 4] {
        self.legs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn pair(&self) -> &[Role] {
        &self.pair
    }

    pub fn with_pair(mut self, pair: Vec<Role>) -> Self {
        self.pair = pair;
        self
    }

    pub fn role_index(&self, role: Role) -> Option<usize> {
        self.crossings.iter().position(|c| c.role().is_some_and(|r| r.role == role))
    }

    /// Indices of the crossings carrying `roles`.
    pub fn role_indices(&self, roles: &[Role]) -> Result<Vec<usize>> {
        roles
            .iter()
            .map(|&r| {
                self.role_index(r)
                    .ok_or_else(|| Error::Template(format!("{}: no crossing with role {r}", self.name)))
            })
            .collect()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// The template with the crossings at `idx` changed.
    pub fn changed(&self, idx: &[usize]) -> TangleTemplate {
        let mut t = self.clone();
        for &i in idx {
            let c = t.crossings[i];
            let [a, b, cc, d] = c.legs();
            let legs = if c.over_enters_b() { [b, cc, d, a] } else { [d, a, b, cc] };
            t.crossings[i] = Crossing::new(legs, !c.over_enters_b()).with_role(c.role());
        }
        t
    }

    /// Writhe-normalized tangle bracket.
    pub fn normalized_bracket(&self) -> Result<TangleBracket> {
        let b = tangle_bracket(&self.crossings, self.legs)?;
        let f = LaurentPoly::kink_factor(-self.writhe());
        Ok(TangleBracket {
            e01: f.clone() * b.e01,
            e03: f * b.e03,
        })
    }

    /// Same normalized bracket as a positive (`true`) or negative crossing.
    pub fn bracket_matches_crossing(&self, positive: bool) -> Result<bool> {
        let x = if positive {
            TangleTemplate::single_crossing()
        } else {
            TangleTemplate::single_crossing().changed(&[0])
        };
        Ok(self.normalized_bracket()? == x.normalized_bracket()?)
    }

    fn quads(&self) -> Vec<[ArcId; 4]> {
        self.crossings.iter().map(|c| c.legs()).collect()
    }

    /// Crossing indices where the strand entering at `P1` passes under.
    fn second_strand_unders(&self) -> Vec<usize> {
        let mut incoming: HashMap<ArcId, (usize, usize)> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if c.incoming(p) {
                    incoming.insert(c.legs()[p], (i, p));
                }
            }
        }
        let mut out = Vec::new();
        let mut arc = self.legs[1];
        while let Some(&(i, p)) = incoming.get(&arc) {
            if p % 2 == 0 {
                out.push(i);
            }
            arc = self.crossings[i].legs()[(p + 2) % 4];
        }
        out
    }

    fn closure(&self, join: [(usize, usize); 2], reverse_second: bool) -> Result<Diagram> {
        let map: HashMap<ArcId, ArcId> = join.iter().map(|&(x, y)| (self.legs[y], self.legs[x])).collect();
        let flip = if reverse_second { self.second_strand_unders() } else { Vec::new() };
        let quads = self
            .quads()
            .into_iter()
            .enumerate()
            .map(|(i, q)| {
                let q = q.map(|a| *map.get(&a).unwrap_or(&a));
                if flip.contains(&i) {
                    [q[2], q[3], q[0], q[1]]
                } else {
                    q
                }
            })
            .collect();
        Diagram::from_unoriented(quads, 0)
    }

    /// Joins `P0` to `P1` and `P2` to `P3`.
    pub fn numerator(&self) -> Result<Diagram> {
        self.closure([(0, 1), (2, 3)], true)
    }

    /// Joins `P0` to `P3` and `P1` to `P2`.
    pub fn denominator(&self) -> Result<Diagram> {
        self.closure([(0, 3), (1, 2)], false)
    }

    /// Closes the tangle with a reference vertex standing for the rest of
    /// the sphere; this checks that the template is planar.
    fn closed_with_reference(&self) -> Result<Diagram> {
        let [p0, p1, p2, p3] = self.legs;
        let z = Crossing::from_ccw([p0, p3, p2, p1], 2, 1);
        let mut cs = self.crossings.clone();
        cs.push(z);
        Diagram::new(cs, 0).map_err(|e| Error::Template(format!("{}: not planar ({e})", self.name)))
    }

    /// Crossings and boundary map for splicing into a crossing of the given
    /// sign. A negative crossing takes the reflected template.
    fn oriented_for(&self, sign: i32) -> (Vec<Crossing>, [ArcId; 4]) {
        let [p0, p1, p2, p3] = self.legs;
        if sign > 0 {
            (self.crossings.clone(), [p0, p1, p2, p3])
        } else {
            let cs = self
                .crossings
                .iter()
                .map(|c| {
                    let [a, b, cc, d] = c.legs();
                    Crossing::new([a, d, cc, b], !c.over_enters_b()).with_role(c.role())
                })
                .collect();
            (cs, [p0, p3, p2, p1])
        }
    }
}

/// Replaces each listed crossing of `d` by a copy of its template, keeping
/// crossing order (a replaced crossing's copy takes its place in the list).
/// Copies are labelled with group `id + 1` of the crossing they replace.
pub fn splice(d: &Diagram, at: &[(CrossingId, &TangleTemplate)]) -> Result<Diagram> {
    let mut by_id: HashMap<usize, &TangleTemplate> = HashMap::new();
    for (id, t) in at {
        d.crossing(*id)?;
        by_id.insert(id.0, t);
    }
    let mut next = d
        .crossings()
        .iter()
        .flat_map(|c| c.legs())
        .map(|a| a.0)
        .max()
        .unwrap_or(0)
        + 1;
    let mut out = Vec::new();
    for (i, host) in d.crossings().iter().enumerate() {
        let Some(t) = by_id.get(&i) else {
            out.push(*host);
            continue;
        };
        let (cs, ports) = t.oriented_for(host.sign());
        let mut map: HashMap<ArcId, ArcId> = HashMap::new();
        for (k, p) in ports.iter().enumerate() {
            map.insert(*p, host.legs()[k]);
        }
        for c in &cs {
            let legs = c.legs().map(|a| {
                *map.entry(a).or_insert_with(|| {
                    next += 1;
                    ArcId(next - 1)
                })
            });
            let role = c.role().map(|r| RoleLabel { role: r.role, group: i + 1 });
            out.push(Crossing::new(legs, c.over_enters_b()).with_role(role));
        }
    }
    Diagram::new(out, d.free_circles())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub template: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn closure_verdicts(t: &TangleTemplate, budget: &SearchBudget) -> Result<(Verdict, Verdict)> {
    let n = classify_triviality(&t.numerator()?, budget).verdict();
    let d = classify_triviality(&t.denominator()?, budget).verdict();
    Ok((n, d))
}

/// Both closures certified trivial and the bracket equal to that of a crossing
/// of the given sign.
fn behaves_like_crossing(t: &TangleTemplate, positive: bool, budget: &SearchBudget) -> Result<(bool, String)> {
    let (n, d) = closure_verdicts(t, budget)?;
    let b = t.bracket_matches_crossing(positive)?;
    Ok((
        n == Verdict::Trivial && d == Verdict::Trivial && b,
        format!("numerator {n:?}, denominator {d:?}, bracket match {b}"),
    ))
}

/// Checks the closure contracts of a crossing-replacement template.
///
/// - `G1`: the template behaves like the positive crossing.
/// - `G2`: changing `{C, A1, A2}` or `{C, B1, B2}` behaves like the negative
///   crossing.
/// - `G3`: changing `C` alone leaves a nontrivial numerator closure.
///
/// A template with a designated `pair` is checked against the doubling
/// contract instead: `G1`, and changing the pair behaves like the negative
/// crossing. Any `Unknown` verdict fails its check.
pub fn validate_template(t: &TangleTemplate, budget: &SearchBudget) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let (ok, detail) = behaves_like_crossing(t, true, budget)?;
    checks.push(Check {
        name: "G1".into(),
        passed: ok,
        detail,
    });
    if !t.pair.is_empty() {
        let idx = t.role_indices(&t.pair)?;
        let (ok, detail) = behaves_like_crossing(&t.changed(&idx), false, budget)?;
        checks.push(Check {
            name: "pair".into(),
            passed: ok,
            detail,
        });
        return Ok(ValidationReport {
            template: t.name.clone(),
            checks,
        });
    }
    for (name, roles) in [
        ("G2a", [Role::C, Role::A1, Role::A2]),
        ("G2b", [Role::C, Role::B1, Role::B2]),
    ] {
        let (ok, detail) = match t.role_indices(&roles) {
            Ok(idx) => behaves_like_crossing(&t.changed(&idx), false, budget)?,
            Err(e) => (false, e.to_string()),
        };
        checks.push(Check {
            name: name.into(),
            passed: ok,
            detail,
        });
    }
    let (ok, detail) = match t.role_indices(&[Role::C]) {
        Ok(idx) => {
            let v = classify_triviality(&t.changed(&idx).numerator()?, budget).verdict();
            (v == Verdict::Nontrivial, format!("numerator {v:?}"))
        }
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check {
        name: "G3".into(),
        passed: ok,
        detail,
    });
    Ok(ValidationReport {
        template: t.name.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn stored_gadget_matches_generator() {
        let g = TangleTemplate::gadget();
        assert_eq!(g.to_text(), super::super::taniyama_gadget(1).unwrap().to_text());
    }

    #[test]
    fn stored_doubling_template() {
        let t = TangleTemplate::doubling();
        assert_eq!(t.crossing_count(), 6);
        let rep = validate_template(&t, &SearchBudget::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        for k in 0..6 {
            assert!(!t.changed(&[k]).bracket_matches_crossing(false).unwrap());
        }
    }

    #[test]
    fn single_crossing_control() {
        let t = TangleTemplate::single_crossing();
        assert!(t.bracket_matches_crossing(true).unwrap());
        assert!(!t.bracket_matches_crossing(false).unwrap());
        let r = validate_template(&t, &SearchBudget::default()).unwrap();
        assert!(r.check("G1").unwrap().passed);
        assert!(!r.check("G3").unwrap().passed);
        assert!(!r.passed());
    }

    #[test]
    fn splicing_a_crossing_is_the_identity() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let t = TangleTemplate::single_crossing();
        let m = d.mirror();
        for host in [&d, &m] {
            let all: Vec<_> = (0..3).map(|i| (CrossingId(i), &t)).collect();
            let s = splice(host, &all).unwrap();
            assert_eq!(s.without_roles().canonical(), host.canonical());
            assert_eq!(s.crossings_with_role(Role::C, None).len(), 3);
        }
    }

    #[test]
    fn text_round_trip() {
        let t = TangleTemplate::single_crossing();
        let back = TangleTemplate::parse(&t.to_text()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn malformed_templates() {
        assert!(TangleTemplate::parse("legs 1 2 3 4\nX[1,2,3,5]").is_err());
        assert!(TangleTemplate::parse("X[1,2,3,4]").is_err());
        // Strand from P0 ends at P1.
        assert!(TangleTemplate::parse("legs 1 3 2 4\nX[1,2,3,4]").is_err());
    }
}
