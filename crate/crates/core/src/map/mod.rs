//! Rooted planar triangulations stored as half-edge combinatorial maps.
//!
//! Faces are stored as oriented vertex triples. Half-edge `3f + i` belongs to
//! face `f` and runs from corner `i` to corner `i + 1 (mod 3)`, so the face
//! lies to the left of each of its half-edges. Only type II maps are
//! representable: multiple edges are allowed, loops are not.

mod ball;
mod canonical;
mod dual;
pub mod text;

pub use ball::CombinatorialBall;
pub use canonical::{CanonicalCode, CanonicalLabeling};
pub use dual::DualGraph;

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdgeId(pub usize);

impl HalfEdgeId {
    #[inline]
    pub fn face(self) -> FaceId {
        FaceId(self.0 / 3)
    }

    /// Position of this half-edge inside its face (0, 1 or 2).
    #[inline]
    pub fn slot(self) -> usize {
        self.0 % 3
    }

    #[inline]
    pub fn next(self) -> HalfEdgeId {
        HalfEdgeId(self.0 - self.0 % 3 + (self.0 + 1) % 3)
    }

    #[inline]
    pub fn prev(self) -> HalfEdgeId {
        HalfEdgeId(self.0 - self.0 % 3 + (self.0 + 2) % 3)
    }

    #[inline]
    pub fn of(face: FaceId, slot: usize) -> HalfEdgeId {
        HalfEdgeId(3 * face.0 + slot)
    }
}

/// Whether the support is a closed sphere or a disc with one boundary cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Disc,
    Sphere,
}

impl SurfaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Disc => "disc",
            SurfaceKind::Sphere => "sphere",
        }
    }
}

/// An oriented root face `(x, y, z)`: `corner` selects `x` among the face's
/// three corners, and `(x, y)` is the root edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub face: FaceId,
    pub corner: usize,
}

impl Root {
    pub fn new(face: FaceId, corner: usize) -> Self {
        Root { face, corner }
    }

    /// The half-edge carrying the root edge `x -> y`.
    pub fn half_edge(self) -> HalfEdgeId {
        HalfEdgeId::of(self.face, self.corner)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("triangulation has no faces")]
    Empty,
    #[error("face {face} repeats vertex {vertex} (loop edge)")]
    LoopEdge { face: usize, vertex: usize },
    #[error("face {face} references vertex {vertex} but only {n_vertices} vertices exist")]
    VertexOutOfRange {
        face: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("vertex {0} is not used by any face")]
    IsolatedVertex(usize),
    #[error("half-edge {0} is glued inconsistently")]
    InvalidGluing(usize),
    #[error("the gluing of the edge between vertices {0} and {1} is ambiguous")]
    AmbiguousGluing(usize, usize),
    #[error("the complex is not connected through edges")]
    Disconnected,
    #[error("vertex {0} has a disconnected link (pinched vertex)")]
    NonManifoldVertex(usize),
    #[error("expected a {expected} but the complex has euler characteristic {euler} and {boundary_cycles} boundary cycles")]
    WrongTopology {
        expected: &'static str,
        euler: i64,
        boundary_cycles: usize,
    },
    #[error("root face {0} does not exist")]
    RootFaceOutOfRange(usize),
    #[error("root vertex {vertex} is not a corner of face {face}")]
    RootVertexNotInFace { face: usize, vertex: usize },
}

/// A finite rooted type II triangulation of a disc or of the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedTriangulation {
    corners: Vec<VertexId>,
    twins: Vec<Option<HalfEdgeId>>,
    n_vertices: usize,
    root: Root,
    kind: SurfaceKind,
}

impl RootedTriangulation {
    /// Builds a map from faces and an explicit twin table (one entry per
    /// half-edge, `None` on the boundary), checking every structural invariant.
    pub fn from_parts(
        n_vertices: usize,
        faces: &[[VertexId; 3]],
        twins: Vec<Option<HalfEdgeId>>,
        root: Root,
        kind: SurfaceKind,
    ) -> Result<Self, MapError> {
        let corners: Vec<VertexId> = faces.iter().flat_map(|f| f.iter().copied()).collect();
        if twins.len() != corners.len() {
            return Err(MapError::InvalidGluing(twins.len().min(corners.len())));
        }
        let map = RootedTriangulation {
            corners,
            twins,
            n_vertices,
            root,
            kind,
        };
        map.validate()?;
        Ok(map)
    }

    /// Builds a map from faces, gluing `u -> v` to `v -> u` whenever that
    /// pairing is unique. Fails on ambiguous parallel edges.
    pub fn from_faces(
        n_vertices: usize,
        faces: &[[VertexId; 3]],
        root: Root,
        kind: SurfaceKind,
    ) -> Result<Self, MapError> {
        let twins = auto_glue(faces, &[])?;
        Self::from_parts(n_vertices, faces, twins, root, kind)
    }

    /// Trusted constructor for generators whose output is correct by
    /// construction. Invariants are still checked in debug builds.
    pub(crate) fn from_parts_unchecked(
        n_vertices: usize,
        corners: Vec<VertexId>,
        twins: Vec<Option<HalfEdgeId>>,
        root: Root,
        kind: SurfaceKind,
    ) -> Self {
        let map = RootedTriangulation {
            corners,
            twins,
            n_vertices,
            root,
            kind,
        };
        debug_assert_eq!(map.validate(), Ok(()));
        map
    }

    fn validate(&self) -> Result<(), MapError> {
        let nf = self.n_faces();
        if nf == 0 {
            return Err(MapError::Empty);
        }
        for f in 0..nf {
            let [a, b, c] = self.face(FaceId(f));
            for v in [a, b, c] {
                if v.0 >= self.n_vertices {
                    return Err(MapError::VertexOutOfRange {
                        face: f,
                        vertex: v.0,
                        n_vertices: self.n_vertices,
                    });
                }
            }
            if a == b || a == c {
                return Err(MapError::LoopEdge {
                    face: f,
                    vertex: a.0,
                });
            }
            if b == c {
                return Err(MapError::LoopEdge {
                    face: f,
                    vertex: b.0,
                });
            }
        }
        for (h, t) in self.twins.iter().enumerate() {
            if let Some(t) = *t {
                let h = HalfEdgeId(h);
                if t.0 >= self.twins.len()
                    || t == h
                    || self.twins[t.0] != Some(h)
                    || self.origin(t) != self.dest(h)
                    || self.dest(t) != self.origin(h)
                {
                    return Err(MapError::InvalidGluing(h.0));
                }
            }
        }
        let mut used = vec![false; self.n_vertices];
        for v in &self.corners {
            used[v.0] = true;
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(MapError::IsolatedVertex(v));
        }
        if self.root.face.0 >= nf || self.root.corner > 2 {
            return Err(MapError::RootFaceOutOfRange(self.root.face.0));
        }
        let dist = self.dual_graph().distances_from(FaceId(0));
        if dist.iter().any(Option::is_none) {
            return Err(MapError::Disconnected);
        }
        // Every vertex must have a single fan or wheel of corners around it.
        let mut seen_corner = vec![false; self.corners.len()];
        let mut visited_vertex = vec![false; self.n_vertices];
        for h in 0..self.corners.len() {
            if seen_corner[h] {
                continue;
            }
            let v = self.corners[h];
            if visited_vertex[v.0] {
                return Err(MapError::NonManifoldVertex(v.0));
            }
            visited_vertex[v.0] = true;
            for c in self.corner_fan(HalfEdgeId(h)) {
                seen_corner[c.0] = true;
            }
        }
        let boundary_cycles = self.boundary_cycles().len();
        let euler = self.euler_characteristic();
        match self.kind {
            SurfaceKind::Disc if euler != 1 || boundary_cycles != 1 => {
                Err(MapError::WrongTopology {
                    expected: "disc",
                    euler,
                    boundary_cycles,
                })
            }
            SurfaceKind::Sphere if euler != 2 || boundary_cycles != 0 => {
                Err(MapError::WrongTopology {
                    expected: "sphere",
                    euler,
                    boundary_cycles,
                })
            }
            _ => Ok(()),
        }
    }

    pub fn n_faces(&self) -> usize {
        self.corners.len() / 3
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_half_edges(&self) -> usize {
        self.corners.len()
    }

    pub fn n_edges(&self) -> usize {
        let boundary = self.twins.iter().filter(|t| t.is_none()).count();
        (self.corners.len() + boundary) / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn root(&self) -> Root {
        self.root
    }

    pub fn root_vertex(&self) -> VertexId {
        self.origin(self.root.half_edge())
    }

    /// The root edge `(x, y)`.
    pub fn root_edge(&self) -> (VertexId, VertexId) {
        let h = self.root.half_edge();
        (self.origin(h), self.dest(h))
    }

    /// Same map, different root.
    pub fn with_root(&self, root: Root) -> Result<Self, MapError> {
        if root.face.0 >= self.n_faces() || root.corner > 2 {
            return Err(MapError::RootFaceOutOfRange(root.face.0));
        }
        let mut m = self.clone();
        m.root = root;
        Ok(m)
    }

    pub fn faces(&self) -> impl ExactSizeIterator<Item = [VertexId; 3]> + '_ {
        self.corners.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    #[inline]
    pub fn face(&self, f: FaceId) -> [VertexId; 3] {
        let c = &self.corners[3 * f.0..3 * f.0 + 3];
        [c[0], c[1], c[2]]
    }

    #[inline]
    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        self.corners[h.0]
    }

    #[inline]
    pub fn dest(&self, h: HalfEdgeId) -> VertexId {
        self.corners[h.next().0]
    }

    #[inline]
    pub fn twin(&self, h: HalfEdgeId) -> Option<HalfEdgeId> {
        self.twins[h.0]
    }

    pub fn twins(&self) -> &[Option<HalfEdgeId>] {
        &self.twins
    }

    pub fn is_boundary_half_edge(&self, h: HalfEdgeId) -> bool {
        self.twins[h.0].is_none()
    }

    /// The corners (half-edges leaving the vertex) around the origin of `h`,
    /// in counterclockwise order. For a boundary vertex the fan starts at the
    /// corner whose incoming edge is on the boundary.
    pub fn corner_fan(&self, h: HalfEdgeId) -> Vec<HalfEdgeId> {
        // Rotate clockwise (h -> twin(h).next) until the boundary or back at h.
        let mut start = h;
        loop {
            match self.twin(start) {
                Some(t) => {
                    let n = t.next();
                    if n == h {
                        // Interior vertex: full wheel starting at h.
                        return self.ccw_from(h);
                    }
                    start = n;
                }
                None => break,
            }
        }
        self.ccw_from(start)
    }

    fn ccw_from(&self, start: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut out = vec![start];
        let mut h = start;
        loop {
            // ccw rotation around origin: prev(h) points into the vertex, its twin leaves it.
            match self.twin(h.prev()) {
                Some(t) if t != start => {
                    out.push(t);
                    h = t;
                }
                _ => break,
            }
        }
        out
    }

    /// Boundary cycles as sequences of boundary half-edges, each traversed
    /// with the support on its left.
    pub fn boundary_cycles(&self) -> Vec<Vec<HalfEdgeId>> {
        let mut seen = vec![false; self.twins.len()];
        let mut cycles = Vec::new();
        for h in 0..self.twins.len() {
            if self.twins[h].is_some() || seen[h] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = HalfEdgeId(h);
            while !seen[cur.0] {
                seen[cur.0] = true;
                cycle.push(cur);
                cur = self.next_boundary(cur);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The boundary half-edge following the boundary half-edge `h`.
    pub fn next_boundary(&self, h: HalfEdgeId) -> HalfEdgeId {
        debug_assert!(self.twins[h.0].is_none());
        let mut cur = h.next();
        while let Some(t) = self.twins[cur.0] {
            cur = t.next();
        }
        cur
    }

    /// The boundary as one cyclic sequence of half-edges (empty for spheres).
    pub fn boundary(&self) -> Vec<HalfEdgeId> {
        self.boundary_cycles()
            .into_iter()
            .next()
            .unwrap_or_default()
    }

    pub fn boundary_vertex_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.n_vertices];
        for (h, t) in self.twins.iter().enumerate() {
            if t.is_none() {
                let h = HalfEdgeId(h);
                flags[self.origin(h).0] = true;
                flags[self.dest(h).0] = true;
            }
        }
        flags
    }

    pub fn boundary_vertex_count(&self) -> usize {
        self.boundary_vertex_flags().iter().filter(|b| **b).count()
    }

    /// Edge degree of every vertex (parallel edges counted separately).
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n_vertices];
        for (h, v) in self.corners.iter().enumerate() {
            deg[v.0] += 1;
            if self.twins[h].is_none() {
                deg[self.dest(HalfEdgeId(h)).0] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        let mut d = 0;
        for (h, w) in self.corners.iter().enumerate() {
            if *w == v {
                d += 1;
            }
            if self.twins[h].is_none() && self.dest(HalfEdgeId(h)) == v {
                d += 1;
            }
        }
        d
    }

    /// Number of face corners at each vertex.
    pub fn corner_counts(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.n_vertices];
        for v in &self.corners {
            c[v.0] += 1;
        }
        c
    }

    /// Vertex adjacency with one entry per edge (parallel edges repeat).
    pub fn vertex_graph(&self) -> VertexGraph {
        let deg = self.degrees();
        let mut offsets = Vec::with_capacity(self.n_vertices + 1);
        offsets.push(0usize);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + *d as usize);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; *offsets.last().unwrap()];
        for (h, v) in self.corners.iter().enumerate() {
            let h = HalfEdgeId(h);
            let w = self.dest(h);
            targets[fill[v.0]] = w.0 as u32;
            fill[v.0] += 1;
            if self.twins[h.0].is_none() {
                targets[fill[w.0]] = v.0 as u32;
                fill[w.0] += 1;
            }
        }
        VertexGraph { offsets, targets }
    }

    /// Graph distance from `v` to the nearest boundary vertex; `None` when
    /// the map has no boundary.
    pub fn boundary_distance(&self, v: VertexId) -> Option<u32> {
        let flags = self.boundary_vertex_flags();
        if !flags.iter().any(|b| *b) {
            return None;
        }
        let g = self.vertex_graph();
        let mut dist = vec![u32::MAX; self.n_vertices];
        let mut queue = VecDeque::new();
        dist[v.0] = 0;
        queue.push_back(v.0);
        while let Some(x) = queue.pop_front() {
            if flags[x] {
                return Some(dist[x]);
            }
            for &y in g.neighbors(x) {
                let y = y as usize;
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Graph distance of a face to the boundary: the minimum over its corners.
    pub fn face_boundary_distances(&self) -> Option<Vec<u32>> {
        let vd = self.vertex_boundary_distances()?;
        Some(
            self.faces()
                .map(|[a, b, c]| vd[a.0].min(vd[b.0]).min(vd[c.0]))
                .collect(),
        )
    }

    /// Multi-source distance of every vertex to the boundary.
    pub fn vertex_boundary_distances(&self) -> Option<Vec<u32>> {
        let flags = self.boundary_vertex_flags();
        if !flags.iter().any(|b| *b) {
            return None;
        }
        let g = self.vertex_graph();
        let sources: Vec<usize> = (0..self.n_vertices).filter(|v| flags[*v]).collect();
        Some(
            g.bfs(&sources)
                .into_iter()
                .map(|d| d.expect("connected map"))
                .collect(),
        )
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::from_map(self)
    }

    /// The combinatorial ball `B_r` around the root vertex.
    pub fn ball(&self, r: usize) -> CombinatorialBall {
        CombinatorialBall::new(self, r)
    }

    /// Canonical code of the whole rooted map.
    pub fn canonical_code(&self) -> CanonicalCode {
        canonical::label(self, |_| true).code
    }

    /// The orientation-reversed map (complex conjugation of the support).
    /// Face `(a, b, c)` becomes `(a, c, b)`; the root keeps its face and vertex.
    pub fn mirrored(&self) -> RootedTriangulation {
        let nf = self.n_faces();
        let mut corners = Vec::with_capacity(3 * nf);
        for [a, b, c] in self.faces() {
            corners.extend_from_slice(&[a, c, b]);
        }
        let flip = |h: HalfEdgeId| HalfEdgeId(h.0 - h.0 % 3 + (2 - h.0 % 3));
        let mut twins = vec![None; 3 * nf];
        for (h, t) in self.twins.iter().enumerate() {
            twins[flip(HalfEdgeId(h)).0] = t.map(flip);
        }
        let corner = match self.root.corner {
            0 => 0,
            1 => 2,
            _ => 1,
        };
        RootedTriangulation {
            corners,
            twins,
            n_vertices: self.n_vertices,
            root: Root::new(self.root.face, corner),
            kind: self.kind,
        }
    }

    /// Oriented root-preserving isomorphism test.
    pub fn rooted_isomorphic(&self, other: &RootedTriangulation) -> bool {
        self.n_faces() == other.n_faces()
            && self.n_vertices == other.n_vertices
            && self.canonical_code() == other.canonical_code()
    }

    /// `d_c`: `1/(k+1)` for the largest radius `k` at which the root balls
    /// agree, or zero when they agree at every radius.
    pub fn combinatorial_distance(&self, other: &RootedTriangulation) -> CombinatorialDistance {
        match self.agreeing_radius(other) {
            None => CombinatorialDistance::Zero,
            Some(k) => CombinatorialDistance::Reciprocal(k),
        }
    }

    /// Largest `r` with equivalent balls `B_r`, or `None` if all agree.
    pub fn agreeing_radius(&self, other: &RootedTriangulation) -> Option<usize> {
        let mut r = 1;
        loop {
            let a = self.ball(r);
            let b = other.ball(r);
            if a.n_faces() != b.n_faces() || a.canonical_code(self) != b.canonical_code(other) {
                return Some(r - 1);
            }
            if a.n_faces() == self.n_faces() && b.n_faces() == other.n_faces() {
                return None;
            }
            r += 1;
        }
    }
}

pub fn rooted_isomorphic(a: &RootedTriangulation, b: &RootedTriangulation) -> bool {
    a.rooted_isomorphic(b)
}

pub fn combinatorial_distance(
    a: &RootedTriangulation,
    b: &RootedTriangulation,
) -> CombinatorialDistance {
    a.combinatorial_distance(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinatorialDistance {
    /// Balls agree at every radius.
    Zero,
    /// `1/(k+1)` where `k` is the largest agreeing radius.
    Reciprocal(usize),
}

impl CombinatorialDistance {
    pub fn value(self) -> f64 {
        match self {
            CombinatorialDistance::Zero => 0.0,
            CombinatorialDistance::Reciprocal(k) => 1.0 / (k as f64 + 1.0),
        }
    }

    /// As an exact fraction `(numerator, denominator)`.
    pub fn as_fraction(self) -> (u64, u64) {
        match self {
            CombinatorialDistance::Zero => (0, 1),
            CombinatorialDistance::Reciprocal(k) => (1, k as u64 + 1),
        }
    }
}

/// Compressed vertex adjacency lists.
#[derive(Clone, Debug)]
pub struct VertexGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl VertexGraph {
    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Multi-source BFS distances.
    pub fn bfs(&self, sources: &[usize]) -> Vec<Option<u32>> {
        self.bfs_limited(sources, u32::MAX)
    }

    /// BFS that stops expanding past `max_depth`.
    pub fn bfs_limited(&self, sources: &[usize], max_depth: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n_vertices()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            if d >= max_depth {
                continue;
            }
            for &y in self.neighbors(x) {
                let y = y as usize;
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// Computes twins for `faces`. `explicit` lists half-edge gluings fixed in
/// advance as `(h, Some(t))` or `(h, None)` for a forced boundary half-edge.
/// All half-edges on an unordered vertex pair touched by `explicit` must be
/// listed there; other pairs are glued when the pairing is unique.
pub(crate) fn auto_glue(
    faces: &[[VertexId; 3]],
    explicit: &[(HalfEdgeId, Option<HalfEdgeId>)],
) -> Result<Vec<Option<HalfEdgeId>>, MapError> {
    use std::collections::HashMap;

    let n = 3 * faces.len();
    let endpoints = |h: usize| {
        let f = &faces[h / 3];
        (f[h % 3].0, f[(h % 3 + 1) % 3].0)
    };
    let mut twins = vec![None; n];
    let mut fixed = vec![false; n];
    let mut explicit_pairs = std::collections::HashSet::new();
    for &(h, t) in explicit {
        if h.0 >= n || fixed[h.0] {
            return Err(MapError::InvalidGluing(h.0));
        }
        fixed[h.0] = true;
        let (u, v) = endpoints(h.0);
        explicit_pairs.insert((u.min(v), u.max(v)));
        if let Some(t) = t {
            if t.0 >= n || t == h {
                return Err(MapError::InvalidGluing(h.0));
            }
            if fixed[t.0] && twins[t.0] != Some(h) {
                return Err(MapError::InvalidGluing(t.0));
            }
            if endpoints(t.0) != (v, u) {
                return Err(MapError::InvalidGluing(h.0));
            }
            fixed[t.0] = true;
            twins[h.0] = Some(t);
            twins[t.0] = Some(h);
        }
    }
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for h in 0..n {
        let (u, v) = endpoints(h);
        let key = (u.min(v), u.max(v));
        if explicit_pairs.contains(&key) {
            if !fixed[h] {
                return Err(MapError::AmbiguousGluing(key.0, key.1));
            }
            continue;
        }
        by_pair.entry(key).or_default().push(h);
    }
    for ((a, b), hs) in by_pair {
        match hs.as_slice() {
            [_] => {}
            [h, t] => {
                if endpoints(*h) != (endpoints(*t).1, endpoints(*t).0) {
                    // Two half-edges with the same direction: an orientation clash.
                    return Err(MapError::InvalidGluing(*h));
                }
                twins[*h] = Some(HalfEdgeId(*t));
                twins[*t] = Some(HalfEdgeId(*h));
            }
            _ => return Err(MapError::AmbiguousGluing(a, b)),
        }
    }
    Ok(twins)
}

#[cfg(test)]
mod tests;
