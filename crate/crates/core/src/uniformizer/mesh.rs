use std::collections::HashMap;

use crate::map::{FaceId, HalfEdgeId, RootedTriangulation};

/// A triangle mesh carrying reference edge lengths, the object the
/// flattening solver works on. Half-edge `3t + i` runs from corner `i` to
/// corner `i + 1` of triangle `t`.
#[derive(Clone, Debug)]
pub struct FlatMesh {
    pub triangles: Vec<[usize; 3]>,
    pub twins: Vec<Option<usize>>,
    /// Reference length per half-edge.
    pub lengths: Vec<f64>,
    pub n_vertices: usize,
    pub boundary: Vec<bool>,
}

/// How a subdivided mesh sits inside the original map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    /// Mesh vertex of the midpoint of each original half-edge's edge.
    pub midpoint: Vec<usize>,
    /// Mesh vertex of each original face's barycenter.
    pub barycenter: Vec<usize>,
}

/// Side lengths of the barycentric pieces of a unit equilateral triangle.
const HALF: f64 = 0.5;
const CORNER_TO_CENTER: f64 = 0.577_350_269_189_625_8;
const MID_TO_CENTER: f64 = 0.288_675_134_594_812_9;

impl FlatMesh {
    /// The equilateral metric of `map`: every edge has length 1.
    pub fn equilateral(map: &RootedTriangulation) -> Self {
        let triangles = map.faces().map(|f| f.map(|v| v.0)).collect();
        let twins = map.twins().iter().map(|t| t.map(|t| t.0)).collect();
        FlatMesh {
            triangles,
            twins,
            lengths: vec![1.0; map.n_half_edges()],
            n_vertices: map.n_vertices(),
            boundary: map.boundary_vertex_flags(),
        }
    }

    /// Splits every face of the equilateral surface of `map` into six
    /// triangles through its barycenter and edge midpoints. The metric is
    /// unchanged; only the triangulation gets finer.
    ///
    /// Triangle `6f + 2i` is `(corner i, midpoint of slot i, barycenter)` and
    /// `6f + 2i + 1` is `(midpoint of slot i, corner i + 1, barycenter)`.
    pub fn barycentric(map: &RootedTriangulation) -> (Self, Subdivision) {
        let nv = map.n_vertices();
        let mut midpoint = vec![usize::MAX; map.n_half_edges()];
        let mut next = nv;
        for h in 0..map.n_half_edges() {
            if midpoint[h] != usize::MAX {
                continue;
            }
            midpoint[h] = next;
            if let Some(t) = map.twin(HalfEdgeId(h)) {
                midpoint[t.0] = next;
            }
            next += 1;
        }
        let barycenter: Vec<usize> = (0..map.n_faces()).map(|f| next + f).collect();
        let n_vertices = next + map.n_faces();

        let mut triangles = Vec::with_capacity(6 * map.n_faces());
        let mut lengths = Vec::with_capacity(18 * map.n_faces());
        for f in 0..map.n_faces() {
            let c = map.face(FaceId(f));
            let g = barycenter[f];
            for i in 0..3 {
                let m = midpoint[3 * f + i];
                triangles.push([c[i].0, m, g]);
                lengths.extend_from_slice(&[HALF, MID_TO_CENTER, CORNER_TO_CENTER]);
                triangles.push([m, c[(i + 1) % 3].0, g]);
                lengths.extend_from_slice(&[HALF, CORNER_TO_CENTER, MID_TO_CENTER]);
            }
        }
        // Sub-edges are determined by their endpoints: an original corner
        // and a midpoint identify one original edge half.
        let mut by_pair: HashMap<(usize, usize), usize> =
            HashMap::with_capacity(triangles.len() * 3);
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                by_pair.insert((tri[i], tri[(i + 1) % 3]), 3 * t + i);
            }
        }
        let twins: Vec<Option<usize>> = (0..3 * triangles.len())
            .map(|h| {
                let tri = triangles[h / 3];
                let (a, b) = (tri[h % 3], tri[(h + 1) % 3]);
                by_pair.get(&(b, a)).copied()
            })
            .collect();
        let mut boundary = vec![false; n_vertices];
        for (h, t) in twins.iter().enumerate() {
            if t.is_none() {
                let tri = triangles[h / 3];
                boundary[tri[h % 3]] = true;
                boundary[tri[(h + 1) % 3]] = true;
            }
        }
        let mesh = FlatMesh {
            triangles,
            twins,
            lengths,
            n_vertices,
            boundary,
        };
        (
            mesh,
            Subdivision {
                midpoint,
                barycenter,
            },
        )
    }

    /// Splits every triangle into four at its edge midpoints. Old vertices
    /// keep their ids. Child `4t + i` is the corner piece at corner `i`,
    /// `(c_i, m_i, m_{i-1})`, and `4t + 3` is `(m_0, m_1, m_2)`.
    pub fn refined(&self) -> FlatMesh {
        let nt = self.n_triangles();
        let mut midpoint = vec![usize::MAX; 3 * nt];
        let mut next = self.n_vertices;
        let mut boundary = self.boundary.clone();
        for h in 0..3 * nt {
            if midpoint[h] != usize::MAX {
                continue;
            }
            midpoint[h] = next;
            match self.twins[h] {
                Some(s) => midpoint[s] = next,
                None => boundary.push(true),
            }
            if self.twins[h].is_some() {
                boundary.push(false);
            }
            next += 1;
        }
        let first = |t: usize, i: usize| 3 * (4 * t + i);
        let second = |t: usize, i: usize| 3 * (4 * t + (i + 1) % 3) + 2;
        let mut triangles = Vec::with_capacity(4 * nt);
        let mut lengths = Vec::with_capacity(12 * nt);
        let mut twins = vec![None; 12 * nt];
        for t in 0..nt {
            let c = self.triangles[t];
            let m = [0, 1, 2].map(|i| midpoint[3 * t + i]);
            let l = [0, 1, 2].map(|i| self.lengths[3 * t + i] / 2.0);
            for i in 0..3 {
                let prev = (i + 2) % 3;
                triangles.push([c[i], m[i], m[prev]]);
                lengths.extend_from_slice(&[l[i], l[(i + 1) % 3], l[prev]]);
                let inner = 3 * (4 * t + i) + 1;
                let center = 3 * (4 * t + 3) + prev;
                twins[inner] = Some(center);
                twins[center] = Some(inner);
            }
            triangles.push(m);
            lengths.extend_from_slice(&[l[2], l[0], l[1]]);
            for i in 0..3 {
                if let Some(s) = self.twins[3 * t + i] {
                    let (t2, j) = (s / 3, s % 3);
                    twins[first(t, i)] = Some(second(t2, j));
                    twins[second(t, i)] = Some(first(t2, j));
                }
            }
        }
        FlatMesh {
            triangles,
            twins,
            lengths,
            n_vertices: next,
            boundary,
        }
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Corner counts per vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for t in &self.triangles {
            for v in t {
                d[*v] += 1;
            }
        }
        d
    }

    /// Is there no flat metric in the vertex-scaling class of this mesh?
    ///
    /// Two cases are detected. Parallel edges get equal lengths and are
    /// straight in any flat metric, so the disc they bound would need
    /// corner angles summing to zero. An interior vertex of degree two is
    /// the smallest such pocket.
    pub fn obstructed(&self) -> bool {
        self.degrees()
            .iter()
            .enumerate()
            .any(|(v, d)| !self.boundary[v] && *d <= 2)
            || self.has_parallel_edges()
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(self.twins.len());
        for (h, twin) in self.twins.iter().enumerate() {
            if twin.is_some_and(|t| t < h) {
                continue;
            }
            let tri = self.triangles[h / 3];
            let (a, b) = (tri[h % 3], tri[(h + 1) % 3]);
            let count = seen.entry((a.min(b), a.max(b))).or_default();
            *count += 1;
            if *count > 1 {
                return true;
            }
        }
        false
    }

    /// Side lengths of triangle `t` after scaling by `u`, in slot order.
    pub fn scaled_lengths(&self, t: usize, u: &[f64]) -> [f64; 3] {
        let tri = self.triangles[t];
        [0, 1, 2].map(|i| {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            self.lengths[3 * t + i] * ((u[a] + u[b]) / 2.0).exp()
        })
    }
}

/// Angles at corners 0, 1, 2 of a triangle with side lengths `l` in slot
/// order (`l[i]` joins corners `i` and `i + 1`), or `None` unless the strict
/// triangle inequalities hold.
pub fn corner_angles(l: [f64; 3]) -> Option<[f64; 3]> {
    let s = (l[0] + l[1] + l[2]) / 2.0;
    let d = [s - l[0], s - l[1], s - l[2]];
    if d.iter().any(|x| *x <= 0.0) {
        return None;
    }
    // Corner i sits between sides i and i + 2 and faces side i + 1.
    Some([0, 1, 2].map(|i| {
        let opposite = (i + 1) % 3;
        let (p, q) = (i, (i + 2) % 3);
        2.0 * (d[p] * d[q] / (s * d[opposite])).sqrt().atan()
    }))
}
