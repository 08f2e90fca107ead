//! Reidemeister moves located by face structure.
//!
//! A move names its site by darts (`4 * crossing + position`) of the exact
//! diagram it applies to, so a recorded sequence replays deterministically.
//! Removals keep the order of the surviving crossings, insertions append new
//! crossings, and R3 rewrites its three crossings in place.

mod triviality;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcId, Crossing, Dart, Diagram};
use crate::error::{Error, Result};

pub use triviality::{
    certify_trivial, classify_triviality, obstruction, replay, Certificate, Obstruction, SearchBudget, SearchStats, TrivialityVerdict, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1-")]
    R1Minus,
    #[serde(rename = "R1+")]
    R1Plus,
    #[serde(rename = "R2-")]
    R2Minus,
    #[serde(rename = "R2+")]
    R2Plus,
    #[serde(rename = "R3")]
    R3,
}

impl MoveKind {
    /// Change in crossing count.
    pub fn delta_c(self) -> i32 {
        match self {
            MoveKind::R1Minus => -1,
            MoveKind::R1Plus => 1,
            MoveKind::R2Minus => -2,
            MoveKind::R2Plus => 2,
            MoveKind::R3 => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1Minus => "R1-",
            MoveKind::R1Plus => "R1+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R3 => "R3",
        })
    }
}

/// A Reidemeister move at a site.
///
/// Sites by kind:
/// - `R1-`: the dart of a monogon face.
/// - `R2-`: the two darts of a bigon face, in face order.
/// - `R3`: the three darts of a triangle face, in face order.
/// - `R1+`: a dart; a kink is added on its arc, inside the face to the right
///   of the dart. `flag` is the sign of the new crossing.
/// - `R2+`: two darts of one face on different arcs; the first arc is pushed
///   across the second through the face. `flag` is true when the pushed arc
///   passes over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub site: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flag: bool,
}

impl Move {
    pub fn new(kind: MoveKind, site: Vec<usize>, flag: bool) -> Self {
        Move { kind, site, flag }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let site: Vec<String> = self.site.iter().map(|d| d.to_string()).collect();
        write!(f, "{}@{}", self.kind, site.join(","))?;
        if self.flag {
            f.write_str("!")?;
        }
        Ok(())
    }
}

impl FromStr for Move {
    type Err = Error;
    fn from_str(s: &str) -> Result<Move> {
        let bad = |why: &str| Error::syntax(s, why.to_string());
        let (kind, rest) = s.split_once('@').ok_or_else(|| bad("expected KIND@sites"))?;
        let kind = match kind {
            "R1-" => MoveKind::R1Minus,
            "R1+" => MoveKind::R1Plus,
            "R2-" => MoveKind::R2Minus,
            "R2+" => MoveKind::R2Plus,
            "R3" => MoveKind::R3,
            _ => return Err(bad("unknown move kind")),
        };
        let (rest, flag) = match rest.strip_suffix('!') {
            Some(r) => (r, true),
            None => (rest, false),
        };
        let site = rest
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad("site must be dart numbers")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Move { kind, site, flag })
    }
}

fn pos(d: Dart, k: usize) -> Dart {
    (d & !3) | ((d + k) & 3)
}

/// Face data shared by the site scans.
struct Faces {
    list: Vec<Vec<Dart>>,
    of: Vec<usize>,
}

impl Faces {
    fn new(d: &Diagram) -> Self {
        let list = d.faces();
        let mut of = vec![0; 4 * d.crossing_count()];
        for (i, f) in list.iter().enumerate() {
            for &x in f {
                of[x] = i;
            }
        }
        Faces { list, of }
    }
}

fn r2_minus_legal(face: &[Dart]) -> bool {
    let (a, b) = (face[0], face[1]);
    if a >> 2 == b >> 2 {
        return false;
    }
    // The strand along the edge leaving `a` crosses at `a` and at `b - 1`.
    Diagram::is_over(a) == Diagram::is_over(pos(b, 3))
}

fn r3_legal(face: &[Dart]) -> bool {
    let x: Vec<usize> = face.iter().map(|&f| f >> 2).collect();
    if x[0] == x[1] || x[1] == x[2] || x[0] == x[2] {
        return false;
    }
    // Strand i runs along the edge from face[i] to face[i+1] - 1.
    (0..3).any(|i| {
        let here = Diagram::is_over(face[i]);
        let there = Diagram::is_over(pos(face[(i + 1) % 3], 3));
        here == there
    })
}

/// Moves that do not add crossings: every R1-, R2- and R3 site.
pub fn simplifying_moves(d: &Diagram) -> Vec<Move> {
    let faces = d.faces();
    let mut out = Vec::new();
    // A crossing bounding two monogons is a lone kink; either removal gives
    // the same circle, so one site per crossing.
    let mut kinked = std::collections::HashSet::new();
    for f in &faces {
        match f.len() {
            1 if kinked.insert(f[0] >> 2) => out.push(Move::new(MoveKind::R1Minus, f.clone(), false)),
            2 if r2_minus_legal(f) => out.push(Move::new(MoveKind::R2Minus, f.clone(), false)),
            3 if r3_legal(f) => out.push(Move::new(MoveKind::R3, f.clone(), false)),
            _ => {}
        }
    }
    out
}

/// Every R2+ site: ordered pairs of darts in a common face on different arcs,
/// with both choices of which arc passes over.
pub fn r2_plus_moves(d: &Diagram) -> Vec<Move> {
    let mut out = Vec::new();
    for f in d.faces() {
        for &a in &f {
            for &b in &f {
                if d.arc(a) != d.arc(b) {
                    for flag in [false, true] {
                        out.push(Move::new(MoveKind::R2Plus, vec![a, b], flag));
                    }
                }
            }
        }
    }
    out
}

/// Every R1+ site: each dart, both signs.
pub fn r1_plus_moves(d: &Diagram) -> Vec<Move> {
    (0..4 * d.crossing_count())
        .flat_map(|x| [false, true].map(|s| Move::new(MoveKind::R1Plus, vec![x], s)))
        .collect()
}

/// All moves available on `d`.
pub fn available_moves(d: &Diagram) -> Vec<Move> {
    let mut out = simplifying_moves(d);
    out.extend(r1_plus_moves(d));
    out.extend(r2_plus_moves(d));
    out
}

/// Applies `m` to `d`, checking that the site is legal.
pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram> {
    let n4 = 4 * d.crossing_count();
    let illegal = |why: &str| Error::IllegalMove(format!("{m}: {why}"));
    if m.site.iter().any(|&x| x >= n4) {
        return Err(illegal("dart out of range"));
    }
    let faces = Faces::new(d);
    let face_of_site = |len: usize| -> Result<&[Dart]> {
        if m.site.len() != len {
            return Err(illegal("wrong number of darts"));
        }
        let f = &faces.list[faces.of[m.site[0]]];
        if f.len() != len {
            return Err(illegal("face has the wrong size"));
        }
        let start = f.iter().position(|&x| x == m.site[0]).expect("dart in its face");
        if (0..len).any(|k| f[(start + k) % len] != m.site[k]) {
            return Err(illegal("darts are not in face order"));
        }
        Ok(f)
    };
    match m.kind {
        MoveKind::R1Minus => {
            face_of_site(1)?;
            Ok(r1_minus(d, m.site[0]))
        }
        MoveKind::R2Minus => {
            let f = face_of_site(2)?;
            if !r2_minus_legal(f) {
                return Err(illegal("no strand passes over at both crossings"));
            }
            Ok(r2_minus(d, m.site[0], m.site[1]))
        }
        MoveKind::R3 => {
            let f = face_of_site(3)?;
            if !r3_legal(f) {
                return Err(illegal("triangle does not admit the move"));
            }
            Ok(r3(d, [m.site[0], m.site[1], m.site[2]]))
        }
        MoveKind::R1Plus => {
            if m.site.len() != 1 {
                return Err(illegal("wrong number of darts"));
            }
            Ok(r1_plus(d, m.site[0], m.flag))
        }
        MoveKind::R2Plus => {
            if m.site.len() != 2 {
                return Err(illegal("wrong number of darts"));
            }
            let (a, b) = (m.site[0], m.site[1]);
            if faces.of[a] != faces.of[b] {
                return Err(illegal("darts are not in one face"));
            }
            if d.arc(a) == d.arc(b) {
                return Err(illegal("darts lie on the same arc"));
            }
            Ok(r2_plus(d, a, b, m.flag))
        }
    }
}

fn r1_minus(d: &Diagram, s: Dart) -> Diagram {
    let (x, p) = (s >> 2, s & 3);
    d.remove_joining(&[(x, [((p + 2) & 3, p), ((p + 3) & 3, (p + 1) & 3)])])
}

fn r2_minus(d: &Diagram, a: Dart, b: Dart) -> Diagram {
    let (x, p) = (a >> 2, a & 3);
    let (y, q) = (b >> 2, b & 3);
    d.remove_joining(&[
        (x, [((p + 2) & 3, p), ((p + 3) & 3, (p + 1) & 3)]),
        (y, [((q + 3) & 3, (q + 1) & 3), (q, (q + 2) & 3)]),
    ])
}

fn r3(d: &Diagram, s: [Dart; 3]) -> Diagram {
    let mut crossings = d.crossings().to_vec();
    let x = s.map(|f| f >> 2);
    // Inner edge t_i runs from s[i] to s[i+1] - 1; strand i continues outward
    // at s[i] + 2 before the triangle and at s[i+1] + 1 after it.
    let t = s.map(|f| d.arc(f));
    let start = s.map(|f| d.arc(pos(f, 2)));
    let end: [ArcId; 3] = std::array::from_fn(|i| d.arc(pos(s[(i + 1) % 3], 1)));
    for i in 0..3 {
        let h = (i + 2) % 3;
        // Rays keep their directions; only the arcs on them change. Strand i
        // uses ccw slots 0 (towards its far end) and 2, strand h slots 1 and 3.
        let ccw = [end[i], t[h], t[i], start[h]];
        let i_forward = !d.incoming(s[i]);
        let h_forward = !d.incoming(pos(s[i], 1));
        let i_in = if i_forward { 2 } else { 0 };
        let h_in = if h_forward { 3 } else { 1 };
        let (under_in, over_in) = if Diagram::is_over(s[i]) { (h_in, i_in) } else { (i_in, h_in) };
        let role = crossings[x[i]].role();
        crossings[x[i]] = Crossing::from_ccw(ccw, under_in, over_in).with_role(role);
    }
    Diagram::from_parts(crossings, d.free_circles())
}

fn r1_plus(d: &Diagram, s: Dart, positive: bool) -> Diagram {
    let mut crossings = d.crossings().to_vec();
    let base = d.max_arc();
    let (e, e2, l) = (d.arc(s), ArcId(base + 1), ArcId(base + 2));
    let far = d.mate(s);
    crossings[far >> 2].set_leg(far & 3, e2);
    let ccw = [e, l, l, e2];
    let forward = !d.incoming(s);
    // The two passes through the kink, by their incoming slots.
    let (first, second) = if forward { (0, 1) } else { (3, 2) };
    let mut k = Crossing::from_ccw(ccw, first, second);
    if (k.sign() > 0) != positive {
        k = Crossing::from_ccw(ccw, second, first);
    }
    crossings.push(k);
    Diagram::from_parts(crossings, d.free_circles())
}

fn r2_plus(d: &Diagram, a: Dart, b: Dart, over: bool) -> Diagram {
    let mut crossings = d.crossings().to_vec();
    let base = d.max_arc();
    let (e, f) = (d.arc(a), d.arc(b));
    let (e2, m, g, f2) = (ArcId(base + 1), ArcId(base + 2), ArcId(base + 3), ArcId(base + 4));
    let (ea, fb) = (d.mate(a), d.mate(b));
    crossings[ea >> 2].set_leg(ea & 3, e2);
    crossings[fb >> 2].set_leg(fb & 3, f2);
    let e_fwd = !d.incoming(a);
    let f_fwd = !d.incoming(b);
    // X is met first along e, Y second; along f it is Y then X.
    let x_ccw = [e, f2, m, g];
    let y_ccw = [e2, g, m, f];
    let (xe, xf) = (if e_fwd { 0 } else { 2 }, if f_fwd { 3 } else { 1 });
    let (ye, yf) = (if e_fwd { 2 } else { 0 }, if f_fwd { 3 } else { 1 });
    let pick = |ein, fin| if over { (fin, ein) } else { (ein, fin) };
    let (xu, xo) = pick(xe, xf);
    let (yu, yo) = pick(ye, yf);
    crossings.push(Crossing::from_ccw(x_ccw, xu, xo));
    crossings.push(Crossing::from_ccw(y_ccw, yu, yo));
    Diagram::from_parts(crossings, d.free_circles())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::normalized_bracket;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn pd(s: &str) -> Diagram {
        Diagram::parse_pd(s).unwrap()
    }

    fn revalidate(d: &Diagram) -> Diagram {
        Diagram::new(d.crossings().to_vec(), d.free_circles()).unwrap()
    }

    #[test]
    fn kink_has_one_r1_minus() {
        let k = pd("X[1,2,2,1]");
        let s = simplifying_moves(&k);
        let r1: Vec<_> = s.iter().filter(|m| m.kind == MoveKind::R1Minus).collect();
        assert_eq!(r1.len(), 1);
        let o = apply_move(&k, r1[0]).unwrap();
        assert_eq!(o, pd("O"));
    }

    #[test]
    fn trefoil_has_no_reductions() {
        let t = pd(TREFOIL);
        assert!(simplifying_moves(&t)
            .iter()
            .all(|m| m.kind == MoveKind::R3));
        // Alternating triangles never admit R3.
        assert!(simplifying_moves(&t).is_empty());
    }

    #[test]
    fn insertions_are_undone_by_removals() {
        let t = pd(TREFOIL);
        let v = normalized_bracket(&t).unwrap();
        for m in r2_plus_moves(&t).into_iter().chain(r1_plus_moves(&t)) {
            let big = revalidate(&apply_move(&t, &m).unwrap());
            assert_eq!(big.crossing_count() as i32, 3 + m.kind.delta_c());
            assert_eq!(normalized_bracket(&big).unwrap(), v, "{m}");
            let inverse = if m.kind == MoveKind::R1Plus { MoveKind::R1Minus } else { MoveKind::R2Minus };
            let back = simplifying_moves(&big)
                .into_iter()
                .filter(|u| u.kind == inverse)
                .map(|u| apply_move(&big, &u).unwrap())
                .any(|s| s.canonical() == t.canonical());
            assert!(back, "{m} has no inverse");
        }
    }

    #[test]
    fn r3_preserves_bracket_and_is_involutive() {
        // Push an arc across a crossing to make triangles, then try every R3.
        let t = pd(TREFOIL);
        let mut seen = 0;
        for m in r2_plus_moves(&t) {
            let big = apply_move(&t, &m).unwrap();
            let v = normalized_bracket(&big).unwrap();
            for r in simplifying_moves(&big).into_iter().filter(|r| r.kind == MoveKind::R3) {
                let after = revalidate(&apply_move(&big, &r).unwrap());
                assert_eq!(after.crossing_count(), big.crossing_count());
                assert_eq!(normalized_bracket(&after).unwrap(), v);
                let undo = simplifying_moves(&after)
                    .into_iter()
                    .filter(|u| u.kind == MoveKind::R3)
                    .any(|u| apply_move(&after, &u).unwrap().canonical() == big.canonical());
                assert!(undo);
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn illegal_sites_are_rejected() {
        let t = pd(TREFOIL);
        assert!(matches!(
            apply_move(&t, &Move::new(MoveKind::R1Minus, vec![0], false)),
            Err(Error::IllegalMove(_))
        ));
        assert!(apply_move(&t, &Move::new(MoveKind::R2Plus, vec![0, 0], false)).is_err());
        assert!(apply_move(&t, &Move::new(MoveKind::R1Plus, vec![99], false)).is_err());
    }

    #[test]
    fn move_text_round_trip() {
        for m in [
            Move::new(MoveKind::R2Plus, vec![3, 17], true),
            Move::new(MoveKind::R3, vec![1, 2, 3], false),
        ] {
            assert_eq!(m.to_string().parse::<Move>().unwrap(), m);
        }
    }
}
