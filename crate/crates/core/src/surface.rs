//! The equilateral surface of a triangulation: every face is a unit
//! equilateral triangle, glued along the map's adjacencies.
//!
//! All geometry here is intrinsic. A face is drawn in its own coordinates
//! with corners `0`, `1`, `e^{iπ/3}`; a flower is described through the
//! chart `z ↦ z^{6/n}` around its centre. Embedding into the plane is the
//! uniformizer's job.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::triangle_area;
use crate::map::{FaceId, HalfEdgeId, RootedTriangulation, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("vertex {0} lies on the boundary")]
    BoundaryVertex(usize),
    #[error("vertex degree must be positive")]
    ZeroDegree,
    #[error("sector {sector} is outside 1..={degree}")]
    SectorOutOfRange { sector: usize, degree: usize },
    #[error("angle {angle} is outside sector {sector}")]
    AngleOutsideSector { sector: usize, angle: f64 },
    #[error("point at radius {radius} is outside the flower")]
    OutsideFlower { radius: f64 },
}

/// Corners of the reference face, in order.
pub fn reference_triangle() -> [Complex64; 3] {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, PI / 3.0),
    ]
}

/// Area of one unit equilateral triangle.
pub const FACE_AREA: f64 = 0.433_012_701_892_219_3;

/// The chart of a degree-`n` flower.
///
/// The `j`-th face of the flower (1-based) fills the angular range
/// `(j-1)π/3 ≤ t ≤ jπ/3` of the unit-sided wedge picture, and a point at
/// distance `radius` from the centre and cumulative angle `t` maps to
/// `radius^{6/n} e^{6it/n}`.
pub fn chart(n: usize, radius: f64, sector: usize, t: f64) -> Result<Complex64, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::ZeroDegree);
    }
    if sector == 0 || sector > n {
        return Err(SurfaceError::SectorOutOfRange { sector, degree: n });
    }
    let lo = (sector - 1) as f64 * PI / 3.0;
    let hi = sector as f64 * PI / 3.0;
    const SLACK: f64 = 1e-12;
    if !(lo - SLACK..=hi + SLACK).contains(&t) {
        return Err(SurfaceError::AngleOutsideSector { sector, angle: t });
    }
    // Distance from the centre to the opposite side along the ray.
    let local = (t - lo).clamp(0.0, PI / 3.0);
    let reach = (3f64.sqrt() / 2.0) / (local - PI / 6.0).cos();
    if !(0.0..=reach + SLACK).contains(&radius) {
        return Err(SurfaceError::OutsideFlower { radius });
    }
    if radius == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let e = 6.0 / n as f64;
    Ok(Complex64::from_polar(radius.powf(e), e * t))
}

/// The midpoint sub-triangle of a face.
#[derive(Clone, Debug, PartialEq)]
pub struct Interstice {
    pub face: FaceId,
    /// Midpoints of slots 0, 1, 2 in the face's reference coordinates.
    pub corners: [Complex64; 3],
    /// The barycenter `c_f`, shared with the face.
    pub center: Complex64,
}

impl Interstice {
    pub fn side_length(&self) -> f64 {
        (self.corners[1] - self.corners[0]).norm()
    }

    pub fn area(&self) -> f64 {
        triangle_area(self.corners)
    }
}

/// The faces around a vertex, counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flower {
    pub center: VertexId,
    /// Corner half-edges leaving the centre, one per face.
    pub corners: Vec<HalfEdgeId>,
    pub interior: bool,
}

impl Flower {
    pub fn faces(&self) -> Vec<FaceId> {
        self.corners.iter().map(|h| h.face()).collect()
    }
}

/// The polygon on the edge midpoints around a vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfFlower {
    pub center: VertexId,
    /// Number of faces around the centre.
    pub petals: usize,
    pub interior: bool,
    /// For an interior centre, the images of the midpoints under the chart.
    /// The polygon is regular.
    pub chart_polygon: Option<Vec<Complex64>>,
}

impl HalfFlower {
    /// Each petal is a corner triangle of side 1/2.
    pub fn area(&self) -> f64 {
        self.petals as f64 * FACE_AREA / 4.0
    }
}

/// Areas counted in units of one quarter face (`√3/16`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AreaPartition {
    pub half_flowers: u64,
    pub interstices: u64,
    pub faces: u64,
}

impl AreaPartition {
    pub fn is_exact(&self) -> bool {
        self.half_flowers + self.interstices == 4 * self.faces
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EquilateralSurface<'a> {
    map: &'a RootedTriangulation,
}

impl<'a> EquilateralSurface<'a> {
    pub fn new(map: &'a RootedTriangulation) -> Self {
        EquilateralSurface { map }
    }

    pub fn map(&self) -> &'a RootedTriangulation {
        self.map
    }

    pub fn total_area(&self) -> f64 {
        self.map.n_faces() as f64 * FACE_AREA
    }

    fn is_interior(&self, v: VertexId) -> bool {
        !self.map.boundary_vertex_flags()[v.0]
    }

    /// `deg(v)·π/3` at an interior vertex.
    pub fn cone_angle(&self, v: VertexId) -> Result<f64, SurfaceError> {
        if !self.is_interior(v) {
            return Err(SurfaceError::BoundaryVertex(v.0));
        }
        Ok(self.map.corner_counts()[v.0] as f64 * PI / 3.0)
    }

    /// Every vertex's cone angle, `None` on the boundary.
    pub fn cone_angles(&self) -> Vec<Option<f64>> {
        let flags = self.map.boundary_vertex_flags();
        self.map
            .corner_counts()
            .into_iter()
            .zip(flags)
            .map(|(c, b)| (!b).then(|| c as f64 * PI / 3.0))
            .collect()
    }

    fn corner_at(&self, v: VertexId) -> HalfEdgeId {
        let h = (0..self.map.n_half_edges())
            .map(HalfEdgeId)
            .find(|h| self.map.origin(*h) == v)
            .expect("every vertex has a corner");
        h
    }

    pub fn flower(&self, v: VertexId) -> Flower {
        let corners = self.map.corner_fan(self.corner_at(v));
        let interior = self.is_interior(v);
        Flower {
            center: v,
            corners,
            interior,
        }
    }

    pub fn interstice(&self, f: FaceId) -> Interstice {
        let [a, b, c] = reference_triangle();
        let corners = [(a + b) / 2.0, (b + c) / 2.0, (c + a) / 2.0];
        Interstice {
            face: f,
            corners,
            center: (a + b + c) / 3.0,
        }
    }

    pub fn half_flower(&self, v: VertexId) -> HalfFlower {
        let flower = self.flower(v);
        let n = flower.corners.len();
        let chart_polygon = flower.interior.then(|| {
            (0..n)
                .map(|j| {
                    chart(n, 0.5, j.max(1).min(n), j as f64 * PI / 3.0)
                        .expect("midpoint lies in the flower")
                })
                .collect()
        });
        HalfFlower {
            center: v,
            petals: n,
            interior: flower.interior,
            chart_polygon,
        }
    }

    /// The half-flower / interstice decomposition, counted exactly.
    pub fn area_partition(&self) -> AreaPartition {
        let half_flowers = self.map.corner_counts().iter().map(|c| *c as u64).sum();
        let faces = self.map.n_faces() as u64;
        AreaPartition {
            half_flowers,
            interstices: faces,
            faces,
        }
    }

    /// Upper bound on the path-metric distance between two vertices: the
    /// shortest path in the graph of the 4-fold midpoint subdivision, whose
    /// edges all have length 1/2.
    pub fn path_metric_upper_bound(&self, a: VertexId, b: VertexId) -> f64 {
        let m = self.map;
        let nv = m.n_vertices();
        // Midpoint node of the edge carrying half-edge h.
        let edge_node = |h: HalfEdgeId| nv + m.twin(h).map_or(h.0, |t| t.0.min(h.0));
        let n_nodes = nv + m.n_half_edges();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
        for f in 0..m.n_faces() {
            let hs = [0, 1, 2].map(|s| HalfEdgeId::of(FaceId(f), s));
            for (i, h) in hs.iter().enumerate() {
                let mid = edge_node(*h);
                for v in [m.origin(*h).0, m.dest(*h).0] {
                    adj[mid].push(v);
                    adj[v].push(mid);
                }
                let other = edge_node(hs[(i + 1) % 3]);
                adj[mid].push(other);
                adj[other].push(mid);
            }
        }
        let mut dist = vec![usize::MAX; n_nodes];
        let mut queue = VecDeque::from([a.0]);
        dist[a.0] = 0;
        while let Some(x) = queue.pop_front() {
            if x == b.0 {
                break;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist[b.0] as f64 / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{Root, SurfaceKind};
    use crate::necklace::build_plus;

    fn wheel(n: usize) -> RootedTriangulation {
        let faces: Vec<[VertexId; 3]> = (0..n)
            .map(|i| [VertexId(0), VertexId(1 + i), VertexId(1 + (i + 1) % n)])
            .collect();
        RootedTriangulation::from_faces(n + 1, &faces, Root::new(FaceId(0), 0), SurfaceKind::Disc)
            .unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn face_area_constant() {
        assert!((FACE_AREA - 3f64.sqrt() / 4.0).abs() < 1e-16);
        assert!((triangle_area(reference_triangle()) - FACE_AREA).abs() < 1e-15);
    }

    #[test]
    fn cone_angles() {
        for (n, angle) in [(6, 2.0 * PI), (7, 7.0 * PI / 3.0), (3, PI)] {
            let w = wheel(n);
            let s = EquilateralSurface::new(&w);
            assert!((s.cone_angle(VertexId(0)).unwrap() - angle).abs() < 1e-15);
            assert_eq!(
                s.cone_angle(VertexId(1)),
                Err(SurfaceError::BoundaryVertex(1))
            );
        }
        // Two faces glued along all three sides: every vertex has degree 2.
        let pocket = RootedTriangulation::from_faces(
            3,
            &[
                [VertexId(0), VertexId(1), VertexId(2)],
                [VertexId(0), VertexId(2), VertexId(1)],
            ],
            Root::new(FaceId(0), 0),
            SurfaceKind::Sphere,
        )
        .unwrap();
        let s = EquilateralSurface::new(&pocket);
        assert!((s.cone_angle(VertexId(0)).unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        let mut faces = s.flower(VertexId(0)).faces();
        faces.sort();
        assert_eq!(faces, vec![FaceId(0), FaceId(1)]);
    }

    #[test]
    fn chart_examples() {
        let z = Complex64::from_polar(0.7, 1.3);
        assert!(close(chart(6, 0.7, 2, 1.3).unwrap(), z));
        assert!(close(
            chart(12, 1.0, 1, 0.0).unwrap(),
            Complex64::new(1.0, 0.0)
        ));
        let expected = Complex64::from_polar(0.5, PI / 12.0);
        assert!(close(chart(12, 0.25, 1, PI / 6.0).unwrap(), expected));
        assert_eq!(chart(7, 0.0, 3, 2.5).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn chart_rejects_bad_points() {
        assert!(matches!(
            chart(5, 0.5, 6, 0.0),
            Err(SurfaceError::SectorOutOfRange { .. })
        ));
        assert!(matches!(
            chart(5, 0.5, 1, 2.0),
            Err(SurfaceError::AngleOutsideSector { .. })
        ));
        // The far side of the sector is at distance √3/2 on its bisector.
        assert!(chart(5, 0.86, 1, PI / 6.0).is_ok());
        assert!(matches!(
            chart(5, 0.87, 1, PI / 6.0),
            Err(SurfaceError::OutsideFlower { .. })
        ));
        assert!(chart(5, 1.0, 1, 0.0).is_ok());
    }

    #[test]
    fn chart_is_continuous_across_sectors() {
        for n in [2, 3, 5, 6, 7, 11] {
            for j in 1..n {
                let t = j as f64 * PI / 3.0;
                for r in [0.1, 0.5, 0.8] {
                    assert!(close(
                        chart(n, r, j, t).unwrap(),
                        chart(n, r, j + 1, t).unwrap()
                    ));
                }
            }
            // Closing the flower: the last ray meets the first.
            let t = n as f64 * PI / 3.0;
            assert!(close(
                chart(n, 0.5, n, t).unwrap(),
                chart(n, 0.5, 1, 0.0).unwrap()
            ));
        }
    }

    #[test]
    fn interstice_of_unit_face() {
        let w = wheel(6);
        let s = EquilateralSurface::new(&w);
        let i = s.interstice(FaceId(2));
        assert!((i.side_length() - 0.5).abs() < 1e-15);
        assert!((i.area() - FACE_AREA / 4.0).abs() < 1e-15);
        let tri = reference_triangle();
        assert!(close(i.center, (tri[0] + tri[1] + tri[2]) / 3.0));
        let interstice_center = (i.corners[0] + i.corners[1] + i.corners[2]) / 3.0;
        assert!(close(i.center, interstice_center));
    }

    #[test]
    fn flat_half_flower_is_regular_hexagon() {
        let w = wheel(6);
        let hf = EquilateralSurface::new(&w).half_flower(VertexId(0));
        let poly = hf.chart_polygon.unwrap();
        assert_eq!(poly.len(), 6);
        for (k, p) in poly.iter().enumerate() {
            assert!(close(*p, Complex64::from_polar(0.5, k as f64 * PI / 3.0)));
        }
        let hf7 = EquilateralSurface::new(&wheel(7)).half_flower(VertexId(0));
        let poly = hf7.chart_polygon.unwrap();
        let side = (poly[1] - poly[0]).norm();
        for k in 0..7 {
            assert!(((poly[(k + 1) % 7] - poly[k]).norm() - side).abs() < 1e-12);
        }
    }

    #[test]
    fn area_partition_is_exact() {
        for word in ["B", "BRbRRbBBrrRBRR", "bbbbRRRrrrBBBbbb"] {
            let m = build_plus(&word.parse().unwrap()).unwrap().map;
            let s = EquilateralSurface::new(&m);
            let p = s.area_partition();
            assert!(p.is_exact());
            let float: f64 = (0..m.n_vertices())
                .map(|v| s.half_flower(VertexId(v)).area())
                .sum::<f64>()
                + (0..m.n_faces())
                    .map(|f| s.interstice(FaceId(f)).area())
                    .sum::<f64>();
            assert!((float - s.total_area()).abs() < 1e-12);
        }
    }

    #[test]
    fn flowers_are_fans() {
        let w = wheel(7);
        let s = EquilateralSurface::new(&w);
        let f = s.flower(VertexId(0));
        assert!(f.interior);
        assert_eq!(f.faces().len(), 7);
        let rim = s.flower(VertexId(3));
        assert!(!rim.interior);
        assert_eq!(rim.faces().len(), 2);
    }

    #[test]
    fn path_metric_bound() {
        let w = wheel(6);
        let s = EquilateralSurface::new(&w);
        assert_eq!(s.path_metric_upper_bound(VertexId(0), VertexId(0)), 0.0);
        assert_eq!(s.path_metric_upper_bound(VertexId(0), VertexId(1)), 1.0);
        // Opposite rim vertices of the flat hexagon are at true distance 2.
        assert_eq!(s.path_metric_upper_bound(VertexId(1), VertexId(4)), 2.0);
        // Rim neighbours two apart: true distance √3, bound 2.
        let d = s.path_metric_upper_bound(VertexId(1), VertexId(3));
        assert!(d >= 3f64.sqrt() && d <= 2.0);
    }
}
