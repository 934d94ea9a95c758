//! Intrinsic Delaunay flips with Ptolemy lengths.
//!
//! Flipping the diagonal `ab` of the quadrilateral `a l b k` to `kl` sets
//! `ℓ_kl = (ℓ_al ℓ_bk + ℓ_lb ℓ_ka) / ℓ_ab`. The rule is homogeneous, so it
//! commutes with vertex scaling and is applied to reference lengths.

use super::mesh::FlatMesh;

/// Flips below this margin are skipped, which keeps co-circular
/// quadrilaterals from cycling.
const MARGIN: f64 = 1e-12;

impl FlatMesh {
    /// Is the edge of half-edge `h` locally Delaunay at `u`? Boundary edges
    /// and edges with the same triangle on both sides count as Delaunay.
    pub fn is_delaunay_edge(&self, h: usize, u: &[f64]) -> bool {
        let Some(s) = self.twins[h] else { return true };
        if s / 3 == h / 3 {
            return true;
        }
        opposite_cosine(self.scaled_lengths(h / 3, u), h % 3)
            + opposite_cosine(self.scaled_lengths(s / 3, u), s % 3)
            >= -MARGIN
    }

    /// Flips the interior edge of `h`. Triangle `h / 3` becomes `(k, a, l)`
    /// and its twin's triangle `(l, b, k)`, the new edge sitting in slot 2
    /// of both.
    pub fn flip(&mut self, h: usize) {
        let s = self.twins[h].expect("interior edge");
        let (t, i, t2, j) = (h / 3, h % 3, s / 3, s % 3);
        assert_ne!(t, t2, "an edge with one triangle on both sides cannot flip");
        let [a, b, k] = [0, 1, 2].map(|d| self.triangles[t][(i + d) % 3]);
        let l = self.triangles[t2][(j + 2) % 3];
        let bk = 3 * t + (i + 1) % 3;
        let ka = 3 * t + (i + 2) % 3;
        let al = 3 * t2 + (j + 1) % 3;
        let lb = 3 * t2 + (j + 2) % 3;
        let len = |e: usize| self.lengths[e];
        let diagonal = (len(al) * len(bk) + len(lb) * len(ka)) / len(h);

        // Old outer half-edges in their new slots.
        let moves = [(ka, 3 * t), (al, 3 * t + 1), (lb, 3 * t2), (bk, 3 * t2 + 1)];
        let old_twins = moves.map(|(old, _)| self.twins[old]);
        let old_lengths = moves.map(|(old, _)| self.lengths[old]);
        let relocate = |e: usize| {
            moves
                .iter()
                .find(|(old, _)| *old == e)
                .map_or(e, |(_, new)| *new)
        };

        self.triangles[t] = [k, a, l];
        self.triangles[t2] = [l, b, k];
        for (m, (_, new)) in moves.iter().enumerate() {
            self.lengths[*new] = old_lengths[m];
            let twin = old_twins[m].map(relocate);
            self.twins[*new] = twin;
            if let Some(tw) = twin {
                self.twins[tw] = Some(*new);
            }
        }
        self.lengths[3 * t + 2] = diagonal;
        self.lengths[3 * t2 + 2] = diagonal;
        self.twins[3 * t + 2] = Some(3 * t2 + 2);
        self.twins[3 * t2 + 2] = Some(3 * t + 2);
    }

    /// Flips until every edge is Delaunay at `u`. Returns the number of
    /// flips, or `None` if the result still violates a triangle inequality.
    pub fn make_delaunay(&mut self, u: &[f64]) -> Option<usize> {
        let mut stack: Vec<usize> = (0..self.twins.len())
            .filter(|h| self.twins[*h].is_some_and(|s| s > *h))
            .collect();
        let mut flips = 0;
        let limit = 1000 * self.twins.len().max(100);
        while let Some(h) = stack.pop() {
            if self.is_delaunay_edge(h, u) {
                continue;
            }
            self.flip(h);
            flips += 1;
            if flips > limit {
                return None;
            }
            let t = h / 3;
            let t2 = self.twins[3 * t + 2].expect("new edge is interior") / 3;
            for e in [3 * t, 3 * t + 1, 3 * t2, 3 * t2 + 1] {
                if self.twins[e].is_some() {
                    stack.push(e);
                }
            }
        }
        let valid = (0..self.n_triangles())
            .all(|t| super::mesh::corner_angles(self.scaled_lengths(t, u)).is_some());
        valid.then_some(flips)
    }
}

/// Law-of-cosines cosine of the angle opposite side `i` of a triangle with
/// side lengths `l`; defined even when the triangle inequality fails.
fn opposite_cosine(l: [f64; 3], i: usize) -> f64 {
    let (a, b, c) = (l[i], l[(i + 1) % 3], l[(i + 2) % 3]);
    (b * b + c * c - a * a) / (2.0 * b * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two triangles `(0, 1, 2)` and `(1, 0, 3)` with the given side
    /// lengths `[01, 12, 20, 03, 31]`.
    fn quad(l: [f64; 5]) -> FlatMesh {
        FlatMesh {
            triangles: vec![[0, 1, 2], [1, 0, 3]],
            twins: vec![Some(3), None, None, Some(0), None, None],
            lengths: vec![l[0], l[1], l[2], l[0], l[3], l[4]],
            n_vertices: 4,
            boundary: vec![true; 4],
        }
    }

    #[test]
    fn square_diagonal_is_kept() {
        let s = 2f64.sqrt();
        let mut m = quad([s, 1.0, 1.0, 1.0, 1.0]);
        assert!(m.is_delaunay_edge(0, &[0.0; 4]));
        assert_eq!(m.make_delaunay(&[0.0; 4]), Some(0));
    }

    #[test]
    fn long_diagonal_flips_to_the_short_one() {
        // Rhombus with 120° angles at 2 and 3: diagonal 01 has length √3.
        let mut m = quad([3f64.sqrt(), 1.0, 1.0, 1.0, 1.0]);
        assert!(!m.is_delaunay_edge(0, &[0.0; 4]));
        assert_eq!(m.make_delaunay(&[0.0; 4]), Some(1));
        assert_eq!(m.triangles, vec![[2, 0, 3], [3, 1, 2]]);
        // Ptolemy, not the Euclidean diagonal 1: the quadrilateral is not
        // inscribed, so the flip changes the metric within its class.
        assert!((m.lengths[2] - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(m.twins, vec![None, None, Some(5), None, None, Some(2)]);
        // Boundary sides keep their lengths.
        for h in [0, 1, 3, 4] {
            assert!((m.lengths[h] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn flip_twice_restores_lengths() {
        let mut m = quad([1.3, 0.9, 1.1, 0.8, 1.2]);
        let before = m.lengths.clone();
        m.flip(0);
        m.flip(2);
        // The original diagonal comes back through Ptolemy.
        let d = m.lengths[2];
        assert!((d - before[0]).abs() < 1e-14, "{d} vs {}", before[0]);
    }
}
