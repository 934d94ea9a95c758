use super::canonical::{self, CanonicalCode, CanonicalLabeling};
use super::{FaceId, RootedTriangulation, VertexId};

/// The ball `B_r` around the root vertex: `B_0` is the root vertex alone and
/// `B_{r+1}` adds every face incident to a vertex of `B_r`.
///
/// Since every edge lies in a face, the vertices of `B_r` are exactly the
/// vertices at graph distance at most `r`, and its faces are those with a
/// corner at distance at most `r - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialBall {
    radius: usize,
    faces: Vec<FaceId>,
    vertices: Vec<VertexId>,
    root_vertex: VertexId,
}

impl CombinatorialBall {
    pub(super) fn new(map: &RootedTriangulation, r: usize) -> Self {
        let root_vertex = map.root_vertex();
        if r == 0 {
            return CombinatorialBall {
                radius: 0,
                faces: Vec::new(),
                vertices: vec![root_vertex],
                root_vertex,
            };
        }
        let g = map.vertex_graph();
        let dist = g.bfs_limited(&[root_vertex.0], (r - 1) as u32);
        let inner = |v: VertexId| dist[v.0].is_some();
        let mut faces = Vec::new();
        let mut in_ball = vec![false; map.n_vertices()];
        for (f, corners) in map.faces().enumerate() {
            if corners.iter().any(|v| inner(*v)) {
                faces.push(FaceId(f));
                for v in corners {
                    in_ball[v.0] = true;
                }
            }
        }
        let vertices = (0..map.n_vertices())
            .filter(|v| in_ball[*v])
            .map(VertexId)
            .collect();
        CombinatorialBall {
            radius: r,
            faces,
            vertices,
            root_vertex,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Faces of the ball, sorted by id in the parent map.
    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    /// Vertices of the ball, i.e. the inclusion into the parent's vertex set.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, f: FaceId) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    /// Canonical labeling of the ball as a sub-complex of `map`. The ball of
    /// radius zero is a single vertex and gets the empty labeling.
    pub fn canonical_labeling(&self, map: &RootedTriangulation) -> CanonicalLabeling {
        if self.radius == 0 {
            return CanonicalLabeling::single_vertex();
        }
        let mut mask = vec![false; map.n_faces()];
        for f in &self.faces {
            mask[f.0] = true;
        }
        canonical::label(map, |f| mask[f.0])
    }

    pub fn canonical_code(&self, map: &RootedTriangulation) -> CanonicalCode {
        self.canonical_labeling(map).code
    }
}
