//! Closed 2-braid diagrams.

use super::realize::{realize, Visit};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// The standard alternating diagram of the closed 2-braid with `p` half
/// twists: a knot for odd `p`, a two-component link for even `p`. Positive
/// `p` gives positive crossings; negative `p` gives the mirror image. For
/// `p = 0` the result is two crossing-free circles.
pub fn torus_2p(p: i32) -> Result<Diagram> {
    let n = p.unsigned_abs();
    let words: Vec<Vec<Visit>> = if n == 0 {
        Vec::new()
    } else if n % 2 == 1 {
        vec![(0..2 * n).map(|i| (i % n + 1, i % 2 == 0)).collect()]
    } else {
        vec![
            (0..n).map(|i| (i + 1, i % 2 == 0)).collect(),
            (0..n).map(|i| (i + 1, i % 2 == 1)).collect(),
        ]
    };
    if words.is_empty() {
        return Diagram::new(Vec::new(), 2);
    }
    let d = realize(&words, 0)?.ok_or_else(|| Error::Template(format!("no planar closed 2-braid with {n} crossings")))?;
    let wanted = if p > 0 { 1 } else { -1 };
    Ok(if d.crossings()[0].sign() == wanted { d } else { d.mirror() })
}
