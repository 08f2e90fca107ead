//! Planar realizations of unsigned Gauss codes.

use std::fmt::Write;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// One visit of a Gauss word: crossing label and whether the strand passes
/// over.
pub type Visit = (u32, bool);

fn labels(words: &[Vec<Visit>]) -> Vec<u32> {
    let mut ls: Vec<u32> = words.iter().flatten().map(|v| v.0).collect();
    ls.sort_unstable();
    ls.dedup();
    ls
}

fn signed_text(words: &[Vec<Visit>], free: usize, labels: &[u32], mask: u64) -> String {
    let mut s = String::new();
    for w in words {
        for &(l, over) in w {
            let k = labels.binary_search(&l).expect("label present");
            let _ = write!(s, "{}{}{}", if over { 'O' } else { 'U' }, l, if mask >> k & 1 == 1 { '+' } else { '-' });
        }
        s.push(' ');
    }
    for _ in 0..free {
        s.push_str("() ");
    }
    s
}

/// Every sign assignment under which the words describe a planar diagram,
/// as bit masks over the labels in increasing order (bit set = positive).
pub fn planar_sign_masks(words: &[Vec<Visit>], free: usize) -> Result<Vec<u64>> {
    let ls = labels(words);
    if ls.len() > 24 {
        return Err(Error::CapExceeded { requested: ls.len(), cap: 24 });
    }
    Ok((0..1u64 << ls.len())
        .filter(|&m| Diagram::parse_gauss(&signed_text(words, free, &ls, m)).is_ok())
        .collect())
}

/// The diagram given by the words and the sign mask.
pub fn with_signs(words: &[Vec<Visit>], free: usize, mask: u64) -> Result<Diagram> {
    Diagram::parse_gauss(&signed_text(words, free, &labels(words), mask))
}

/// The first planar realization, trying sign masks in increasing order.
pub fn realize(words: &[Vec<Visit>], free: usize) -> Result<Option<Diagram>> {
    let ls = labels(words);
    if ls.len() > 24 {
        return Err(Error::CapExceeded { requested: ls.len(), cap: 24 });
    }
    Ok((0..1u64 << ls.len()).find_map(|m| Diagram::parse_gauss(&signed_text(words, free, &ls, m)).ok()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_shadow_has_two_chiralities() {
        let w = vec![vec![(1, true), (2, false), (3, true), (1, false), (2, true), (3, false)]];
        let masks = planar_sign_masks(&w, 0).unwrap();
        assert_eq!(masks, vec![0, 7]);
    }

    #[test]
    fn non_planar_word() {
        // 1 2 1 2 is the virtual trefoil-like shadow with no planar realization.
        let w = vec![vec![(1, true), (2, false), (1, false), (2, true)]];
        assert!(realize(&w, 0).unwrap().is_none());
    }
}
