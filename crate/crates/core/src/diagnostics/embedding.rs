use num_complex::Complex64;

use super::DiagnosticsError;
use crate::map::{CombinatorialDistance, FaceId, RootedTriangulation};
use crate::uniformizer::ConformalLayout;

/// A rooted triangulation with one plane point per face, normalized so that
/// the root face sits at 0 and the nearest other face at modulus 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterEmbedding {
    map: RootedTriangulation,
    points: Vec<Complex64>,
}

impl CenterEmbedding {
    /// Normalizes `points` (one per face of `map`) by the similarity taking
    /// the root point to 0 and the nearest other point to modulus 1.
    pub fn new(map: RootedTriangulation, points: Vec<Complex64>) -> Result<Self, DiagnosticsError> {
        assert_eq!(points.len(), map.n_faces(), "one point per face");
        let points = normalize_centers(&points, map.root().face)?;
        Ok(CenterEmbedding { map, points })
    }

    pub fn map(&self) -> &RootedTriangulation {
        &self.map
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, f: FaceId) -> Complex64 {
        self.points[f.0]
    }
}

/// The similarity image of `points` with `points[root]` at 0 and the nearest
/// other point at modulus 1.
pub fn normalize_centers(
    points: &[Complex64],
    root: FaceId,
) -> Result<Vec<Complex64>, DiagnosticsError> {
    if let Some((a, b)) = first_duplicate(points) {
        return Err(DiagnosticsError::DuplicateCenter(a, b));
    }
    let root = root.0;
    if root >= points.len() {
        return Err(DiagnosticsError::NodeOutOfRange(root));
    }
    let origin = points[root];
    let nearest = points
        .iter()
        .enumerate()
        .filter(|(f, _)| *f != root)
        .map(|(_, z)| (z - origin).norm())
        .fold(f64::INFINITY, f64::min);
    let scale = if nearest.is_finite() {
        1.0 / nearest
    } else {
        1.0
    };
    let mut points: Vec<Complex64> = points.iter().map(|z| (z - origin) * scale).collect();
    points[root] = Complex64::new(0.0, 0.0);
    Ok(points)
}

/// Pair of faces with bit-identical points, if any.
fn first_duplicate(points: &[Complex64]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|a, b| {
        points[*a]
            .re
            .total_cmp(&points[*b].re)
            .then(points[*a].im.total_cmp(&points[*b].im))
    });
    order
        .windows(2)
        .find(|w| points[w[0]] == points[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

/// The restriction of the layout to face centers, renormalized.
pub fn center_embedding(
    map: &RootedTriangulation,
    layout: &ConformalLayout,
) -> Result<CenterEmbedding, DiagnosticsError> {
    CenterEmbedding::new(map.clone(), layout.centers.clone())
}

/// `d + Σ_{n=0}^{N} (2^{n+1}|B_n|)^{-1} Σ_{f ∈ B_n} |g(f) − g'(f')| / (1 + |g(f) − g'(f')|)`
/// with `d` the combinatorial distance.
///
/// `B_0` contributes the root face. The sum runs over the radii at which the
/// balls agree, the only ones where `f'` is defined; for rooted-isomorphic
/// maps it runs to infinity and the constant tail is summed in closed form.
pub fn embedding_distance(a: &CenterEmbedding, b: &CenterEmbedding) -> f64 {
    let d = a.map.combinatorial_distance(&b.map);
    let term = |faces: &[FaceId], partner: &dyn Fn(FaceId) -> FaceId| -> f64 {
        let sum: f64 = faces
            .iter()
            .map(|f| {
                let delta = (a.point(*f) - b.point(partner(*f))).norm();
                delta / (1.0 + delta)
            })
            .sum();
        sum / faces.len() as f64
    };
    let root_term = term(&[a.map.root().face], &|_| b.map.root().face) / 2.0;
    let top = match d {
        CombinatorialDistance::Reciprocal(0) => return d.value() + root_term,
        CombinatorialDistance::Reciprocal(k) => k,
        CombinatorialDistance::Zero => {
            let mut r = 1;
            while a.map.ball(r).n_faces() < a.map.n_faces() {
                r += 1;
            }
            r
        }
    };
    // Face correspondence through the canonical order of the largest agreeing ball.
    let la = a.map.ball(top).canonical_labeling(&a.map);
    let lb = b.map.ball(top).canonical_labeling(&b.map);
    let mut index = vec![usize::MAX; a.map.n_faces()];
    for (i, f) in la.order.iter().enumerate() {
        index[f.0] = i;
    }
    let partner = |f: FaceId| lb.order[index[f.0]];
    let mut total = d.value() + root_term;
    let mut last = 0.0;
    for n in 1..=top {
        let ball = a.map.ball(n);
        last = term(ball.faces(), &partner);
        total += last / 2f64.powi(n as i32 + 1);
    }
    if d == CombinatorialDistance::Zero {
        // B_n is the whole map for every n ≥ top.
        total += last / 2f64.powi(top as i32 + 1);
    }
    total
}
