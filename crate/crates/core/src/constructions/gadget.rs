//! Programmatic construction of the crossing-replacement gadget.
//!
//! The gadget is a crossing `C` of strands `s` (under) and `o` (over), with a
//! lasso that runs around `C`, passing over both legs of `s` and under both
//! legs of `o`. The lasso is the tip of a band leaving `o` just after `C`; the
//! band is tied in `n` trefoils. Crossings `A1`, `A2` are where the lasso
//! meets `o` and `B1`, `B2` where it meets `s`. Changing `C` alone hooks the
//! lasso around the knotted band; changing `C` together with either pair frees
//! it again.

use std::fmt::Write;

use super::template::TangleTemplate;
use crate::diagram::{Diagram, Role};
use crate::error::Result;

#[derive(Clone, Copy)]
struct Visit {
    label: u32,
    over: bool,
    positive: bool,
}

impl Visit {
    fn new(label: u32, over: bool, positive: bool) -> Self {
        Visit { label, over, positive }
    }
}

/// Visits of the two edges of a band following a long knot made of `n`
/// right-handed trefoils, out along the left edge and back along the right.
/// Cable crossings are labelled from `base`.
fn band(n: usize, base: u32) -> (Vec<Visit>, Vec<Visit>) {
    let mut core = Vec::with_capacity(6 * n);
    for k in 0..n as u32 {
        for (c, over) in [(1, true), (2, false), (3, true), (1, false), (2, true), (3, false)] {
            core.push((3 * k + c, over));
        }
    }
    // Edge 0 runs with the core, edge 1 against it. Every core crossing is
    // positive, so the sign of a cable crossing is the product of the edge
    // directions.
    let label = |k: u32, over_edge: u32, under_edge: u32| base + 4 * (k - 1) + 2 * over_edge + under_edge;
    let visit = |k: u32, over_edge: u32, under_edge: u32, over: bool| {
        Visit::new(label(k, over_edge, under_edge), over, over_edge == under_edge)
    };
    let mut left = Vec::new();
    for &(k, over) in &core {
        if over {
            left.extend([1, 0].map(|u| visit(k, 0, u, true)));
        } else {
            left.extend([0, 1].map(|o| visit(k, o, 0, false)));
        }
    }
    let mut right = Vec::new();
    for &(k, over) in core.iter().rev() {
        if over {
            right.extend([0, 1].map(|u| visit(k, 1, u, true)));
        } else {
            right.extend([1, 0].map(|o| visit(k, o, 1, false)));
        }
    }
    (left, right)
}

fn gauss_word(visits: &[Visit]) -> String {
    let mut s = String::new();
    for v in visits {
        let _ = write!(s, "{}{}{}", if v.over { 'O' } else { 'U' }, v.label, if v.positive { '+' } else { '-' });
    }
    s
}

/// The gadget with its band tied in `trefoils` trefoils. It has
/// `5 + 12 * trefoils` crossings, the first five being `C`, `A1`, `A2`, `B1`,
/// `B2`.
pub fn taniyama_gadget(trefoils: usize) -> Result<TangleTemplate> {
    // Label 1 is a reference crossing closing the two strands of the tangle,
    // 2 is C, 3 and 4 are where the lasso crosses the legs of o, 5 and 6
    // where it crosses the legs of s.
    let (left, right) = band(trefoils, 7);
    let s = [Visit::new(1, false, false), Visit::new(5, false, true), Visit::new(2, false, true), Visit::new(6, false, false)];
    let mut o = vec![Visit::new(1, true, false), Visit::new(3, true, false), Visit::new(2, true, true), Visit::new(4, true, true)];
    o.extend(left);
    o.extend([Visit::new(4, false, true), Visit::new(6, true, false), Visit::new(3, false, false), Visit::new(5, true, true)]);
    o.extend(right);
    let d = Diagram::parse_gauss(&format!("{} {}", gauss_word(&s), gauss_word(&o)))?;
    let cs = d.crossings();
    let [l0, l1, l2, l3] = cs[0].legs();
    let roles = [Role::C, Role::A1, Role::A2, Role::B1, Role::B2];
    let quads: Vec<_> = cs[1..].iter().enumerate().map(|(i, c)| (c.legs(), roles.get(i).copied())).collect();
    TangleTemplate::from_quads(&format!("gadget-{trefoils}"), &quads, [l0, l3, l2, l1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::validate_template;
    use crate::moves::SearchBudget;

    #[test]
    fn crossing_count() {
        for n in 0..3 {
            assert_eq!(taniyama_gadget(n).unwrap().crossing_count(), 5 + 12 * n);
        }
    }

    #[test]
    fn bracket_classes() {
        let t = taniyama_gadget(1).unwrap();
        assert!(t.bracket_matches_crossing(true).unwrap());
        assert!(t.changed(&[0, 1, 2]).bracket_matches_crossing(false).unwrap());
        assert!(t.changed(&[0, 3, 4]).bracket_matches_crossing(false).unwrap());
        assert!(!t.changed(&[0]).bracket_matches_crossing(false).unwrap());
        assert!(!t.changed(&[0]).bracket_matches_crossing(true).unwrap());
    }

    #[test]
    fn passes_validation() {
        let rep = validate_template(&taniyama_gadget(1).unwrap(), &SearchBudget::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
