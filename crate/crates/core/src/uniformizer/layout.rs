use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use num_complex::Complex64;

use super::mesh::corner_angles;
use super::{ConformalFactors, FlattenError};
use crate::geometry::{
    diameter, distance_to_region, point_segment_distance, triangle_intersection_area,
};
use crate::map::{FaceId, HalfEdgeId, RootedTriangulation};

/// Planar image of a flattened disc: the developing map restricted to
/// vertices, face centers and interstices, after normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalLayout {
    pub root: FaceId,
    pub vertices: Vec<Complex64>,
    pub corners: Vec<[Complex64; 3]>,
    pub centers: Vec<Complex64>,
    /// Boundary of each interstice image, counterclockwise. A triangle, or a
    /// hexagon when the solve ran on the barycentric subdivision.
    pub interstices: Vec<Vec<Complex64>>,
    /// The normalization `z ↦ scale·z + shift` applied to the raw development.
    pub scale: f64,
    pub shift: Complex64,
    /// Angle-sum residual of the solve.
    pub residual: f64,
    /// Largest disagreement between the two placements of an interior edge.
    pub defect: f64,
    /// Face attaining `min_{f ≠ o} dist(0, φ(I_f))`.
    pub nearest: Option<FaceId>,
    /// Faces sharing an edge with each face.
    pub neighbors: Vec<Vec<usize>>,
}

/// Develops the flattened metric into the plane and normalizes it.
pub fn layout(
    map: &RootedTriangulation,
    factors: &ConformalFactors,
) -> Result<ConformalLayout, FlattenError> {
    raw_layout(map, factors)?.normalized()
}

/// Places every mesh triangle by breadth-first development from `start`. Returns per-triangle corner positions and the
/// largest edge mismatch.
fn develop(factors: &ConformalFactors, start: usize) -> (Vec<[Complex64; 3]>, f64) {
    let mesh = &factors.mesh;
    let nt = mesh.n_triangles();
    let zero = Complex64::new(0.0, 0.0);
    let mut placed = vec![[zero; 3]; nt];
    let mut done = vec![false; nt];
    let l = mesh.scaled_lengths(start, &factors.u);
    let a = corner_angles(l).expect("flattened metric is valid");
    placed[start] = [
        zero,
        Complex64::new(l[0], 0.0),
        Complex64::from_polar(l[2], a[0]),
    ];
    done[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for i in 0..3 {
            let Some(s) = mesh.twins[3 * t + i] else {
                continue;
            };
            let (t2, j) = (s / 3, s % 3);
            if done[t2] {
                continue;
            }
            let p = placed[t][(i + 1) % 3];
            let q = placed[t][i];
            let l = mesh.scaled_lengths(t2, &factors.u);
            let a = corner_angles(l).expect("flattened metric is valid");
            let dir = (q - p) / (q - p).norm();
            let r = p + dir * Complex64::from_polar(l[(j + 2) % 3], a[j]);
            let mut tri = [zero; 3];
            tri[j] = p;
            tri[(j + 1) % 3] = q;
            tri[(j + 2) % 3] = r;
            placed[t2] = tri;
            done[t2] = true;
            queue.push_back(t2);
        }
    }
    let mut defect: f64 = 0.0;
    for (h, twin) in mesh.twins.iter().enumerate() {
        if let Some(s) = twin {
            let (t, i, t2, j) = (h / 3, h % 3, s / 3, s % 3);
            defect = defect
                .max((placed[t][i] - placed[t2][(j + 1) % 3]).norm())
                .max((placed[t][(i + 1) % 3] - placed[t2][j]).norm());
        }
    }
    (placed, defect)
}

/// The development before normalization (`scale = 1`, `shift = 0`), posed
/// with root corner 0 at the origin and root corner 1 on the positive real
/// axis.
pub(super) fn raw_layout(
    map: &RootedTriangulation,
    factors: &ConformalFactors,
) -> Result<ConformalLayout, FlattenError> {
    let root = map.root().face;
    let mesh = &factors.mesh;
    let [r0, r1, _] = map.face(root);
    let start = match factors.subdivision {
        None => root.0,
        Some(_) => mesh
            .triangles
            .iter()
            .position(|t| t.contains(&r0.0))
            .expect("root corner is a mesh vertex"),
    };
    let (placed, defect) = develop(factors, start);
    if defect > 1e-8 {
        return Err(FlattenError::DevelopmentMismatch { defect });
    }
    let mut pos = vec![Complex64::new(f64::NAN, f64::NAN); mesh.n_vertices];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for i in 0..3 {
            if pos[tri[i]].re.is_nan() {
                pos[tri[i]] = placed[t][i];
            }
        }
    }
    let origin = pos[r0.0];
    let turn = (pos[r1.0] - origin).conj();
    let turn = turn / turn.norm();
    for z in &mut pos {
        *z = (*z - origin) * turn;
    }

    let nf = map.n_faces();
    let mut corners = Vec::with_capacity(nf);
    let mut centers = Vec::with_capacity(nf);
    let mut interstices = Vec::with_capacity(nf);
    for (f, face) in map.faces().enumerate() {
        let c = face.map(|v| pos[v.0]);
        match &factors.subdivision {
            None => {
                centers.push((c[0] + c[1] + c[2]) / 3.0);
                interstices.push(vec![
                    (c[0] + c[1]) / 2.0,
                    (c[1] + c[2]) / 2.0,
                    (c[2] + c[0]) / 2.0,
                ]);
            }
            Some(sub) => {
                let g = pos[sub.barycenter[f]];
                let mut outline = Vec::with_capacity(6);
                for i in 0..3 {
                    outline.push(pos[sub.midpoint[3 * f + i]]);
                    // The midpoint triangle crosses the segment from a
                    // corner to the barycenter three quarters of the way in.
                    let next = c[(i + 1) % 3];
                    outline.push(next + (g - next) * 0.75);
                }
                centers.push(g);
                interstices.push(outline);
            }
        }
        corners.push(c);
    }
    let vertices = pos[..map.n_vertices()].to_vec();
    let neighbors = (0..nf)
        .map(|f| {
            let mut n: Vec<usize> = (0..3)
                .filter_map(|i| map.twin(HalfEdgeId(3 * f + i)))
                .map(|h| h.face().0)
                .filter(|g| *g != f)
                .collect();
            n.sort_unstable();
            n.dedup();
            n
        })
        .collect();
    Ok(ConformalLayout {
        root,
        vertices,
        corners,
        centers,
        interstices,
        scale: 1.0,
        shift: Complex64::new(0.0, 0.0),
        residual: factors.report.residual,
        defect,
        nearest: None,
        neighbors,
    })
}

impl ConformalLayout {
    pub fn n_faces(&self) -> usize {
        self.centers.len()
    }

    /// Triangles `(c_f, p_i, p_{i+1})` covering the interstice image of `f`.
    pub fn interstice_fan(&self, f: FaceId) -> Vec<[Complex64; 3]> {
        let c = self.centers[f.0];
        let p = &self.interstices[f.0];
        (0..p.len())
            .map(|i| [c, p[i], p[(i + 1) % p.len()]])
            .collect()
    }

    pub fn distance_to_interstice(&self, z: Complex64, f: FaceId) -> f64 {
        distance_to_region(z, &self.interstice_fan(f), &self.interstices[f.0])
    }

    /// Applies `z ↦ a z + b` to every point.
    pub fn transformed(&self, a: f64, b: Complex64) -> ConformalLayout {
        let map = |z: Complex64| z * a + b;
        ConformalLayout {
            root: self.root,
            vertices: self.vertices.iter().map(|z| map(*z)).collect(),
            corners: self.corners.iter().map(|c| c.map(map)).collect(),
            centers: self.centers.iter().map(|z| map(*z)).collect(),
            interstices: self
                .interstices
                .iter()
                .map(|p| p.iter().map(|z| map(*z)).collect())
                .collect(),
            scale: self.scale * a,
            shift: self.shift * a + b,
            residual: self.residual,
            defect: self.defect,
            nearest: self.nearest,
            neighbors: self.neighbors.clone(),
        }
    }

    /// `φ(c_o) = 0` and `min_{f ≠ o} dist(0, φ(I_f)) = 1`. A single face is
    /// only translated.
    pub fn normalized(&self) -> Result<ConformalLayout, FlattenError> {
        let origin = self.centers[self.root.0];
        let (a, nearest) = match self.nearest_interstice(origin) {
            None => (1.0, None),
            Some((_, d)) if d <= 0.0 => return Err(FlattenError::DegenerateLayout),
            Some((f, d)) => (1.0 / d, Some(f)),
        };
        let mut out = self.transformed(a, -origin * a);
        // Pin the root center at the origin exactly.
        out.centers[self.root.0] = Complex64::new(0.0, 0.0);
        out.nearest = nearest;
        Ok(out)
    }

    /// Nearest interstice to `z` other than the root's, on the sheet of the
    /// development that contains the root face.
    ///
    /// Faces are visited through shared edges in order of the largest
    /// distance to `z` met along the way, so a part of the layout that
    /// overlaps the root from elsewhere is only reached after the search has
    /// grown out to it.
    pub fn nearest_interstice(&self, z: Complex64) -> Option<(FaceId, f64)> {
        let n = self.n_faces();
        let reach = |f: usize| {
            let c = self.corners[f];
            let to_face = distance_to_region(z, &[c], &c);
            to_face.min(self.distance_to_interstice(z, FaceId(f)))
        };
        let mut key = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        key[self.root.0] = 0.0;
        heap.push(Reverse((Ordered(0.0), self.root.0)));
        let mut best: Option<(FaceId, f64)> = None;
        while let Some(Reverse((Ordered(k), f))) = heap.pop() {
            if done[f] {
                continue;
            }
            if best.is_some_and(|(_, d)| k >= d) {
                break;
            }
            done[f] = true;
            if f != self.root.0 {
                let d = self.distance_to_interstice(z, FaceId(f));
                if best.is_none_or(|(_, b)| d < b) {
                    best = Some((FaceId(f), d));
                }
            }
            for &g in &self.neighbors[f] {
                let kg = k.max(reach(g));
                if !done[g] && kg < key[g] {
                    key[g] = kg;
                    heap.push(Reverse((Ordered(kg), g)));
                }
            }
        }
        best
    }

    /// When the root face is at graph distance at least 2 from the
    /// boundary, whether the nearest interstice belongs to a face of `B_2`.
    pub fn nearest_within_two(&self, map: &RootedTriangulation) -> Option<bool> {
        let dist = map.face_boundary_distances()?;
        if dist[self.root.0] < 2 {
            return None;
        }
        let nearest = self.nearest?;
        Some(map.ball(2).contains_face(nearest))
    }

    /// Pairwise overlap of interstice images.
    pub fn overlap(&self) -> Overlap {
        let fans: Vec<Vec<[Complex64; 3]>> = (0..self.n_faces())
            .map(|f| self.interstice_fan(FaceId(f)))
            .collect();
        let boxes: Vec<(f64, f64, f64, f64)> = self
            .interstices
            .iter()
            .map(|p| {
                p.iter().fold(
                    (
                        f64::INFINITY,
                        f64::INFINITY,
                        f64::NEG_INFINITY,
                        f64::NEG_INFINITY,
                    ),
                    |b, z| (b.0.min(z.re), b.1.min(z.im), b.2.max(z.re), b.3.max(z.im)),
                )
            })
            .collect();
        let total: f64 = fans
            .iter()
            .flatten()
            .map(|t| crate::geometry::triangle_area(*t).abs())
            .sum();
        // Sweep over x-sorted boxes.
        let mut order: Vec<usize> = (0..boxes.len()).collect();
        order.sort_by(|a, b| boxes[*a].0.total_cmp(&boxes[*b].0));
        let mut area = 0.0;
        let mut pairs = 0;
        for (k, &f) in order.iter().enumerate() {
            for &g in &order[k + 1..] {
                if boxes[g].0 > boxes[f].2 {
                    break;
                }
                if boxes[g].1 > boxes[f].3 || boxes[f].1 > boxes[g].3 {
                    continue;
                }
                let mut a = 0.0;
                for s in &fans[f] {
                    for t in &fans[g] {
                        a += triangle_intersection_area(*s, *t);
                    }
                }
                if a > 1e-14 * total {
                    pairs += 1;
                    area += a;
                }
            }
        }
        Overlap {
            pairs,
            area,
            fraction: if total > 0.0 { area / total } else { 0.0 },
        }
    }
}

/// Overlap between interstice images of distinct faces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Overlap {
    pub pairs: usize,
    pub area: f64,
    /// Overlap area over total interstice area.
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceRatios {
    pub face: FaceId,
    /// Outradius over inradius of `φ(I_f)` about `φ(c_f)`.
    pub shape: f64,
    /// `|φ(c_f) − φ(c_{f'})| / diam φ(I_f)` for each neighbour `f'`.
    pub neighbors: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryRatios {
    pub faces: Vec<FaceRatios>,
    pub max_shape: f64,
    pub min_center_ratio: f64,
    pub max_center_ratio: f64,
}

/// Bounded-geometry ratios for faces at graph distance at least 2 from the
/// boundary.
pub fn geometry_ratios(map: &RootedTriangulation, layout: &ConformalLayout) -> GeometryRatios {
    let dist = map
        .face_boundary_distances()
        .unwrap_or_else(|| vec![u32::MAX; map.n_faces()]);
    let dual = map.dual_graph();
    let mut faces = Vec::new();
    for f in (0..map.n_faces()).filter(|f| dist[*f] >= 2) {
        let c = layout.centers[f];
        let poly = &layout.interstices[f];
        let out = poly.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
        let inr = (0..poly.len())
            .map(|i| point_segment_distance(c, poly[i], poly[(i + 1) % poly.len()]))
            .fold(f64::INFINITY, f64::min);
        let diam = diameter(poly);
        let neighbors = dual
            .neighbors(FaceId(f))
            .map(|g| (layout.centers[g.0] - c).norm() / diam)
            .collect();
        faces.push(FaceRatios {
            face: FaceId(f),
            shape: out / inr,
            neighbors,
        });
    }
    let max_shape = faces.iter().map(|r| r.shape).fold(0.0, f64::max);
    let all = faces.iter().flat_map(|r| r.neighbors.iter().copied());
    let (min_center_ratio, max_center_ratio) = all.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    GeometryRatios {
        faces,
        max_shape,
        min_center_ratio,
        max_center_ratio,
    }
}

/// Total order on finite distances for the search heap.
#[derive(Clone, Copy, PartialEq)]
struct Ordered(f64);

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}
