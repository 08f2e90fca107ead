//! Named and random diagrams used as test and census inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::realize::{planar_sign_masks, realize, with_signs, Visit};
use super::torus::torus_2p;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

/// Crossing sequence with `+k` for an over and `-k` for an under visit.
fn from_sequence(seq: &[i32]) -> Diagram {
    let w: Vec<Visit> = seq.iter().map(|&v| (v.unsigned_abs(), v > 0)).collect();
    realize(&[w], 0).expect("small").expect("planar")
}

/// Standard knot diagrams by name.
pub fn standard_knots() -> Vec<(&'static str, Diagram)> {
    vec![
        ("unknot", Diagram::parse_pd("O").expect("unknot")),
        ("kink", Diagram::parse_pd("X[1,1,2,2]").expect("kink")),
        ("3_1", Diagram::parse_pd(TREFOIL).expect("trefoil")),
        ("4_1", Diagram::parse_pd(FIGURE_EIGHT).expect("figure-eight")),
        ("5_1", torus_2p(5).expect("torus")),
        ("5_2", from_sequence(&[1, -2, 3, -1, 4, -5, 2, -3, 5, -4])),
        ("6_1", from_sequence(&[1, -2, 3, -4, 2, -1, 5, -6, 4, -3, 6, -5])),
        ("6_2", from_sequence(&[1, -2, 3, -1, 4, -5, 6, -3, 2, -4, 5, -6])),
        ("6_3", from_sequence(&[-1, 2, -3, 1, -4, 5, -2, 3, -6, 4, -5, 6])),
    ]
}

fn link(words: &[&[(u32, bool)]]) -> Diagram {
    let ws: Vec<Vec<Visit>> = words.iter().map(|w| w.to_vec()).collect();
    realize(&ws, 0).expect("small").expect("planar")
}

/// Links whose diagrams have no self-crossings and alternate between every
/// two components.
pub fn link_corpus() -> Vec<(&'static str, Diagram)> {
    const O: bool = true;
    const U: bool = false;
    vec![
        ("hopf", Diagram::parse_pd(HOPF).expect("hopf")),
        ("torus(2,2)", torus_2p(2).expect("torus")),
        ("torus(2,4)", torus_2p(4).expect("torus")),
        ("torus(2,-6)", torus_2p(-6).expect("torus")),
        ("chain-3", link(&[&[(1, O), (2, U)], &[(1, U), (2, O), (3, O), (4, U)], &[(3, U), (4, O)]])),
        (
            "chain-4",
            link(&[
                &[(1, O), (2, U)],
                &[(1, U), (2, O), (3, O), (4, U)],
                &[(3, U), (4, O), (5, O), (6, U)],
                &[(5, U), (6, O)],
            ]),
        ),
        (
            "necklace-3",
            link(&[
                &[(1, O), (2, U), (5, U), (6, O)],
                &[(1, U), (2, O), (3, O), (4, U)],
                &[(3, U), (4, O), (6, U), (5, O)],
            ]),
        ),
        (
            "torus(2,4)+ring",
            link(&[
                &[(1, O), (2, U), (3, O), (4, U)],
                &[(1, U), (2, O), (5, O), (6, U), (3, U), (4, O)],
                &[(5, U), (6, O)],
            ]),
        ),
    ]
}

/// `count` random knot diagrams with 1 to `max_c` crossings: a random
/// crossing sequence with a planar realization, random over/under choices.
pub fn random_knot_diagrams(count: usize, max_c: usize, seed: u64) -> Result<Vec<Diagram>> {
    if max_c == 0 || max_c > 16 {
        return Err(Error::CapExceeded { requested: max_c, cap: 16 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range(1..=max_c);
        let mut w: Vec<u32> = (1..=c as u32).flat_map(|l| [l, l]).collect();
        w.shuffle(&mut rng);
        let mut seen = vec![false; c + 1];
        let base: Vec<Visit> = w
            .iter()
            .map(|&l| {
                let first = !seen[l as usize];
                seen[l as usize] = true;
                (l, first)
            })
            .collect();
        let words = [base];
        let masks = planar_sign_masks(&words, 0)?;
        let Some(&s) = masks.choose(&mut rng) else {
            continue;
        };
        let d = with_signs(&words, 0, s)?;
        let ids: Vec<_> = (0..c).filter(|_| rng.gen_bool(0.5)).map(crate::diagram::CrossingId).collect();
        out.push(d.crossing_change_all(&ids)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::is_link_equality_diagram;

    /// `|<D>|` at `A = exp(i pi / 4)`, the determinant of the knot.
    fn determinant(d: &Diagram) -> i64 {
        let b = crate::bracket::bracket(d).unwrap();
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in b.terms() {
            let t = std::f64::consts::FRAC_PI_4 * k as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re * re + im * im).sqrt().round() as i64
    }

    #[test]
    fn standard_knots_are_knots() {
        let dets = [1, 1, 3, 5, 5, 7, 9, 11, 13];
        for ((name, d), det) in standard_knots().into_iter().zip(dets) {
            assert_eq!(d.component_count(), 1, "{name}");
            assert_eq!(determinant(&d), det, "{name}");
            if d.crossing_count() > 1 {
                let r = d.report();
                assert!(r.alternating && r.reduced, "{name}");
            }
        }
    }

    #[test]
    fn link_corpus_satisfies_recognizer() {
        for (name, d) in link_corpus() {
            assert!(d.component_count() >= 2, "{name}");
            assert!(is_link_equality_diagram(&d).unwrap(), "{name}");
        }
    }

    #[test]
    fn random_diagrams_are_reproducible() {
        let a = random_knot_diagrams(20, 7, 5).unwrap();
        let b = random_knot_diagrams(20, 7, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|d| d.component_count() == 1 && d.crossing_count() <= 7));
    }
}
