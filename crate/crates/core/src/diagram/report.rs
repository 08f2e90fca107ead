use serde::{Deserialize, Serialize};

use super::{CrossingId, Diagram};

/// Summary of a diagram. The serialized key set (`c`, `mu`, `writhe`, `lk`,
/// `alternating`, `reduced`, `split`) is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub c: usize,
    pub mu: usize,
    pub writhe: i32,
    /// `[i, j, lk(i, j)]` for every pair `i < j` of components (0-based).
    pub lk: Vec<(usize, usize, i32)>,
    pub alternating: bool,
    pub reduced: bool,
    pub split: bool,
}

impl DiagramReport {
    pub fn total_abs_linking(&self) -> u32 {
        self.lk.iter().map(|&(_, _, v)| v.unsigned_abs()).sum()
    }
}

impl Diagram {
    pub fn report(&self) -> DiagramReport {
        let comps = self.crossing_components();
        let mu = self.component_count();
        let mut twice = vec![vec![0i32; mu]; mu];
        for (c, &(u, o)) in self.crossings.iter().zip(&comps) {
            if u != o {
                twice[u.min(o)][u.max(o)] += c.sign();
            }
        }
        let mut lk = Vec::new();
        for (i, row) in twice.iter().enumerate() {
            for (j, &t) in row.iter().enumerate().skip(i + 1) {
                debug_assert_eq!(t % 2, 0);
                lk.push((i, j, t / 2));
            }
        }
        let reduced = (0..self.crossings.len())
            .all(|i| !self.is_nugatory(CrossingId(i)).expect("valid id"));
        let (_, pieces) = self.graph_components();
        DiagramReport {
            c: self.crossings.len(),
            mu,
            writhe: self.writhe(),
            lk,
            alternating: self.is_alternating(),
            reduced,
            split: pieces + self.free_circles >= 2,
        }
    }

    /// Over and under passages alternate along every component.
    pub fn is_alternating(&self) -> bool {
        (0..self.mate.len()).all(|d| Diagram::is_over(d) != Diagram::is_over(self.mate(d)))
    }

    /// Pairwise linking numbers as a symmetric matrix over components.
    pub fn linking_matrix(&self) -> Vec<Vec<i32>> {
        let r = self.report();
        let mut m = vec![vec![0; r.mu]; r.mu];
        for (i, j, v) in r.lk {
            m[i][j] = v;
            m[j][i] = v;
        }
        m
    }

    /// Crossings between two different components.
    pub fn mixed_crossings(&self) -> Vec<CrossingId> {
        self.crossing_components()
            .iter()
            .enumerate()
            .filter(|(_, (u, o))| u != o)
            .map(|(i, _)| CrossingId(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_report() {
        let t = Diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let r = t.report();
        assert_eq!((r.c, r.mu, r.writhe.abs()), (3, 1, 3));
        assert!(r.alternating && r.reduced && !r.split);
    }

    #[test]
    fn hopf_report() {
        let h = Diagram::parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let r = h.report();
        assert_eq!(r.mu, 2);
        assert_eq!(r.lk.len(), 1);
        assert_eq!(r.lk[0].2.abs(), 1);
        assert_eq!(r.total_abs_linking(), 1);
    }

    #[test]
    fn two_circles_report() {
        let r = Diagram::parse_pd("O O").unwrap().report();
        assert_eq!((r.c, r.mu), (0, 2));
        assert!(r.split);
        assert_eq!(r.lk, vec![(0, 1, 0)]);
    }

    #[test]
    fn json_keys_are_stable() {
        let r = Diagram::parse_pd("X[1,2,2,1]").unwrap().report();
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["alternating", "c", "lk", "mu", "reduced", "split", "writhe"]);
    }
}
