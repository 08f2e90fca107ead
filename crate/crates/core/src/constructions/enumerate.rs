//! Exhaustive enumeration of small knot diagrams.

use std::collections::HashSet;

use rayon::prelude::*;

use super::realize::{planar_sign_masks, with_signs, Visit};
use crate::diagram::{CanonicalForm, Diagram};
use crate::error::{Error, Result};

/// Largest crossing count accepted by [`enumerate_knot_diagrams`].
pub const ENUMERATION_CAP: usize = 6;

#[derive(Clone, Debug)]
pub struct EnumerationItem {
    pub diagram: Diagram,
    /// Canonical form up to relabeling, orientation reversal, reflection and
    /// homeomorphisms of the sphere.
    pub canonical: CanonicalForm,
    /// The Gauss word, over/under mask and sign mask the item was built from.
    pub provenance: String,
    /// The reflected diagram is not equivalent to this one, so the item
    /// stands for two mirror-image diagrams.
    pub chiral: bool,
}

/// Gauss words with every label appearing twice, labels numbered by first
/// occurrence.
fn words(c: usize) -> Vec<Vec<u32>> {
    fn rec(w: &mut Vec<u32>, count: &mut [u8], next: u32, c: usize, out: &mut Vec<Vec<u32>>) {
        if w.len() == 2 * c {
            out.push(w.clone());
            return;
        }
        for l in 0..next {
            if count[l as usize] == 1 {
                count[l as usize] = 2;
                w.push(l);
                rec(w, count, next, c, out);
                w.pop();
                count[l as usize] = 1;
            }
        }
        if (next as usize) < c {
            count[next as usize] = 1;
            w.push(next);
            rec(w, count, next + 1, c, out);
            w.pop();
            count[next as usize] = 0;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![0; c], 0, c, &mut out);
    out
}

fn relabel(w: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut map = Vec::new();
    w.map(|l| match map.iter().position(|&m| m == l) {
        Some(k) => k as u32,
        None => {
            map.push(l);
            (map.len() - 1) as u32
        }
    })
    .collect()
}

/// Whether `w` is the least word among its rotations and reversals.
fn is_least_word(w: &[u32]) -> bool {
    let n = w.len();
    (0..n).all(|r| {
        let fwd = relabel((0..n).map(|i| w[(i + r) % n]));
        let rev = relabel((0..n).map(|i| w[(r + n - i) % n]));
        w <= fwd.as_slice() && w <= rev.as_slice()
    })
}

fn key(d: &Diagram) -> CanonicalForm {
    d.canonical_unoriented_sphere()
}

/// All knot diagrams on the sphere with 1 to `n` crossings, up to relabeling,
/// orientation reversal, reflection and homeomorphisms of the sphere. Items
/// are ordered by crossing count.
pub fn enumerate_knot_diagrams(n: usize) -> Result<Vec<EnumerationItem>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { requested: n, cap: ENUMERATION_CAP });
    }
    let mut out = Vec::new();
    for c in 1..=n {
        let ws: Vec<Vec<u32>> = words(c).into_iter().filter(|w| is_least_word(w)).collect();
        let found: Vec<Vec<EnumerationItem>> = ws
            .par_iter()
            .map(|w| shadow_items(w, c))
            .collect::<Result<_>>()?;
        let mut seen = HashSet::new();
        for item in found.into_iter().flatten() {
            if seen.insert(item.canonical.clone()) {
                out.push(item);
            }
        }
    }
    Ok(out)
}

/// Every diagram with the given crossing sequence.
fn shadow_items(w: &[u32], c: usize) -> Result<Vec<EnumerationItem>> {
    let base: Vec<Visit> = first_over(w, 0);
    let masks = planar_sign_masks(std::slice::from_ref(&base), 0)?;
    let mut seen = HashSet::new();
    let mut items = Vec::new();
    for s in masks {
        for m in 0..1u64 << c {
            // Swapping over and under at a crossing negates its sign.
            let visits = first_over(w, m);
            let d = with_signs(std::slice::from_ref(&visits), 0, s ^ m)?;
            let k = key(&d);
            if seen.insert(k.clone()) {
                let chiral = d.canonical() != d.mirror().canonical();
                items.push(EnumerationItem {
                    provenance: format!("word {w:?} under-first {m:#b} signs {:#b}", s ^ m),
                    diagram: d,
                    canonical: k,
                    chiral,
                });
            }
        }
    }
    Ok(items)
}

/// Visits of `w`, passing over at the first visit of each label unless its
/// bit in `swap` is set.
fn first_over(w: &[u32], swap: u64) -> Vec<Visit> {
    let mut seen = 0u64;
    w.iter()
        .map(|&l| {
            let first = seen >> l & 1 == 0;
            seen |= 1 << l;
            (l + 1, first != (swap >> l & 1 == 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(c: usize) -> usize {
        (1..=c).map(|k| 2 * k - 1).product()
    }

    #[test]
    fn word_counts() {
        for c in 1..=5 {
            assert_eq!(words(c).len(), double_factorial(c));
        }
    }

    #[test]
    fn one_crossing() {
        let items = enumerate_knot_diagrams(1).unwrap();
        assert_eq!(items.len(), 1);
        assert_eq!(items[0].diagram.crossing_count(), 1);
    }

    #[test]
    fn two_crossings_are_all_nugatory() {
        let items = enumerate_knot_diagrams(2).unwrap();
        for it in items.iter().filter(|i| i.diagram.crossing_count() == 2) {
            assert!(!it.diagram.report().reduced);
        }
    }

    #[test]
    fn trefoil_is_present_and_chiral() {
        let items = enumerate_knot_diagrams(3).unwrap();
        let alt: Vec<_> = items
            .iter()
            .filter(|i| i.diagram.crossing_count() == 3 && i.diagram.is_alternating() && i.diagram.report().reduced)
            .collect();
        assert_eq!(alt.len(), 1);
        assert!(alt[0].chiral);
        let tre = Diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(alt[0].canonical, key(&tre));
        assert_eq!(alt[0].canonical, key(&tre.mirror()));
    }

    #[test]
    fn cap() {
        assert!(matches!(enumerate_knot_diagrams(7), Err(Error::CapExceeded { .. })));
    }
}
