//! Recognizers for the diagrams on which the unknotting number equals its
//! crossing-count bound.

use crate::diagram::{Diagram, CrossingId};
use crate::error::{Error, Result};

/// Crossing visits of each component in order, as `(crossing, over)`.
fn visit_sequences(d: &Diagram) -> Vec<Vec<(usize, bool)>> {
    d.strand_components()
        .into_iter()
        .map(|comp| {
            comp.iter()
                .map(|&dart| {
                    let e = d.mate(dart);
                    (e >> 2, Diagram::is_over(e))
                })
                .collect()
        })
        .collect()
}

/// True when the knot diagram `d` has one crossing, or is a reduced
/// alternating diagram whose crossing sequence is `1 2 .. p 1 2 .. p` up to
/// relabeling, i.e. the standard diagram of a `(2, p)` torus knot.
pub fn is_knot_equality_diagram(d: &Diagram) -> Result<bool> {
    let mu = d.component_count();
    if mu != 1 {
        return Err(Error::NotKnot(mu));
    }
    let c = d.crossing_count();
    if c == 1 {
        return Ok(true);
    }
    if c == 0 || !d.is_alternating() {
        return Ok(false);
    }
    let seq = &visit_sequences(d)[0];
    if !(0..c).all(|i| seq[i].0 == seq[i + c].0) {
        return Ok(false);
    }
    Ok((0..c).all(|i| !d.is_nugatory(CrossingId(i)).expect("valid id")))
}

/// True when the link diagram `d` has no self-crossings and the crossings of
/// every two components alternate over and under along both of them.
pub fn is_link_equality_diagram(d: &Diagram) -> Result<bool> {
    let mu = d.component_count();
    if mu < 2 {
        return Err(Error::NotLink);
    }
    if d.crossing_components().iter().any(|&(u, o)| u == o) {
        return Ok(false);
    }
    let comps = d.crossing_components();
    let seqs = visit_sequences(d);
    for (k, seq) in seqs.iter().enumerate() {
        for other in 0..mu {
            if other == k {
                continue;
            }
            let overs: Vec<bool> = seq
                .iter()
                .filter(|&&(x, _)| {
                    let (u, o) = comps[x];
                    u == other || o == other
                })
                .map(|&(_, over)| over)
                .collect();
            if overs.len() > 1 && !(0..overs.len()).all(|i| overs[i] != overs[(i + 1) % overs.len()]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::torus_2p;

    const FIG8: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    #[test]
    fn torus_knots() {
        for p in [1, 3, 5, 7, -3] {
            assert!(is_knot_equality_diagram(&torus_2p(p).unwrap()).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn figure_eight_and_switched_trefoil() {
        assert!(!is_knot_equality_diagram(&Diagram::parse_pd(FIG8).unwrap()).unwrap());
        let t = torus_2p(3).unwrap().crossing_change(CrossingId(1)).unwrap();
        assert!(!is_knot_equality_diagram(&t).unwrap());
    }

    #[test]
    fn nugatory_two_braid_is_rejected() {
        // A kink added to a kink: sequence 1 1 2 2 does not repeat.
        let d = Diagram::parse_gauss("O1+U1+O2+U2+").unwrap();
        assert!(!is_knot_equality_diagram(&d).unwrap());
    }

    #[test]
    fn links() {
        assert!(is_link_equality_diagram(&Diagram::parse_pd(HOPF).unwrap()).unwrap());
        assert!(is_link_equality_diagram(&torus_2p(4).unwrap()).unwrap());
        assert!(is_link_equality_diagram(&torus_2p(0).unwrap()).unwrap());
        let kinked = Diagram::parse_gauss("O1+U2+U3+O3+ U1+O2+").unwrap();
        assert!(!is_link_equality_diagram(&kinked).unwrap());
        // A clasp that does not alternate: the second strand passes over twice.
        let clasp = Diagram::parse_gauss("O1+O2- U1+U2-").unwrap();
        assert!(!is_link_equality_diagram(&clasp).unwrap());
    }

    #[test]
    fn wrong_component_count() {
        assert!(matches!(is_knot_equality_diagram(&torus_2p(2).unwrap()), Err(Error::NotKnot(2))));
        assert!(matches!(is_link_equality_diagram(&torus_2p(3).unwrap()), Err(Error::NotLink)));
    }
}
