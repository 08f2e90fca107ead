//! Canonical forms for diagram equality up to relabeling.
//!
//! Each connected piece is encoded by a breadth-first walk of its rotation
//! system started at every dart; the lexicographically smallest code wins.
//! Codes record the map and the over/under structure but not orientations, so
//! arc relabeling, crossing reordering, orientation reversal and component
//! reordering all give the same form. The sphere has no outer face, and no
//! face is distinguished by the walk.

use super::{Dart, Diagram};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pieces: Vec<Vec<u32>>,
    free_circles: usize,
}

impl CanonicalForm {
    pub fn crossing_count(&self) -> usize {
        self.pieces.iter().map(|p| p.len() / 9).sum()
    }

    /// Single code word: free circle count, piece count, then each piece
    /// prefixed by its length.
    pub fn flatten(&self) -> Vec<u32> {
        let mut out = vec![self.free_circles as u32, self.pieces.len() as u32];
        for p in &self.pieces {
            out.push(p.len() as u32);
            out.extend_from_slice(p);
        }
        out
    }
}

impl Diagram {
    /// Canonical form up to relabeling and orientation-preserving homeomorphism
    /// of the sphere.
    pub fn canonical(&self) -> CanonicalForm {
        self.canonical_impl(false)
    }

    /// As [`Diagram::canonical`], also identifying a diagram with its reflection.
    pub fn canonical_unoriented_sphere(&self) -> CanonicalForm {
        self.canonical_impl(true)
    }

    fn canonical_impl(&self, with_reflection: bool) -> CanonicalForm {
        let (comp, count) = self.graph_components();
        let mut pieces = Vec::with_capacity(count);
        for k in 0..count {
            let starts: Vec<Dart> = (0..self.crossings.len())
                .filter(|&x| comp[x] == k)
                .flat_map(|x| (0..4).map(move |p| 4 * x + p))
                .collect();
            let size = starts.len() / 4;
            let mut best: Option<Vec<u32>> = None;
            let dirs: &[usize] = if with_reflection { &[1, 3] } else { &[1] };
            let mut scratch = Scratch::new(self.crossings.len());
            for &s in &starts {
                for &r in dirs {
                    scratch.encode(self, s, r, size, best.as_deref());
                    if scratch.better {
                        best = Some(scratch.code.clone());
                    }
                }
            }
            pieces.push(best.expect("piece has darts"));
        }
        pieces.sort();
        CanonicalForm {
            pieces,
            free_circles: self.free_circles,
        }
    }
}

struct Scratch {
    label: Vec<u32>,
    base: Vec<usize>,
    order: Vec<usize>,
    code: Vec<u32>,
    better: bool,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            label: vec![u32::MAX; n],
            base: vec![0; n],
            order: Vec::with_capacity(n),
            code: Vec::with_capacity(9 * n),
            better: false,
        }
    }

    /// Encodes from start dart `s`, turning by `r` (1 = counterclockwise,
    /// 3 = clockwise). Aborts early once the code exceeds `best`.
    fn encode(&mut self, d: &Diagram, s: Dart, r: usize, size: usize, best: Option<&[u32]>) {
        for &x in &self.order {
            self.label[x] = u32::MAX;
        }
        self.order.clear();
        self.code.clear();
        let x0 = s >> 2;
        self.label[x0] = 0;
        self.base[x0] = s & 3;
        self.order.push(x0);
        let mut head = 0;
        // Once the prefix is strictly smaller than `best` we stop comparing.
        let mut decided_less = best.is_none();
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            let b = self.base[x];
            let mut emit = |code: &mut Vec<u32>, v: u32| -> bool {
                let i = code.len();
                code.push(v);
                if !decided_less {
                    let bv = best.expect("best")[i];
                    if v < bv {
                        decided_less = true;
                    } else if v > bv {
                        return false;
                    }
                }
                true
            };
            if !emit(&mut self.code, (b & 1) as u32) {
                self.better = false;
                return;
            }
            for j in 0..4 {
                let p = (b + r * j) & 3;
                let m = d.mate(4 * x + p);
                let y = m >> 2;
                if self.label[y] == u32::MAX {
                    self.label[y] = self.order.len() as u32;
                    self.base[y] = m & 3;
                    self.order.push(y);
                }
                let q = m & 3;
                let rel = ((q + 4 - self.base[y]) * r) & 3;
                if !emit(&mut self.code, self.label[y]) || !emit(&mut self.code, rel as u32) {
                    self.better = false;
                    return;
                }
            }
        }
        debug_assert_eq!(self.order.len(), size);
        self.better = decided_less;
    }
}
