//! Word-driven necklace growth of half-plane triangulations.
//!
//! Each letter glues one triangle onto the active edge `(b_j, r_j)`, whose
//! blue endpoint sits on the left. The non-positive integers start out blue,
//! the positive integers red, and the first active edge is `[0, 1]`:
//!
//! * `B` adds a new blue vertex above the active edge,
//! * `R` adds a new red vertex,
//! * `b` moves the blue endpoint one step along the boundary away from the
//!   active edge (to `m - 1` when it sits on the integer `m`),
//! * `r` does the same on the red side.
//!
//! The new face is always `(b_j, r_j, apex)` in counterclockwise order, so the
//! first corner of every face is its blue endpoint.

mod walk;
mod word;

pub use walk::{
    boundary_size_bound, degree_of_origin_from_walk, origin_on_outer_boundary, origin_visit_count,
    walk, BoundaryBound, WalkTrace,
};
pub use word::{glue_word, Letter, ParseWordError, Word};

use thiserror::Error;

use crate::map::{FaceId, HalfEdgeId, Root, RootedTriangulation, SurfaceKind, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NecklaceError {
    #[error("the empty word produces the empty map, which has no root")]
    EmptyWord,
    #[error("root index {index} is outside 1..={len}")]
    RootOutOfRange { index: usize, len: usize },
}

/// Where a vertex of a necklace map lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// A vertex on the real line.
    Integer(i64),
    /// A vertex created in the open half-plane at the given step (1-based).
    Upper { step: usize },
}

impl VertexLabel {
    pub fn is_integer(self) -> bool {
        matches!(self, VertexLabel::Integer(_))
    }
}

#[derive(Clone, Copy, Debug)]
struct ChainEntry {
    vertex: VertexId,
    /// Face half-edge along the boundary edge joining this entry to the one
    /// below it; `None` for the bottom entry.
    below: Option<HalfEdgeId>,
}

/// Growth frontier: the triangulation `D_j` built so far, the active edge and
/// the two boundary chains hanging off it.
///
/// The blue chain lists the boundary from the leftmost materialized integer
/// up to `b_j`; the red chain from the rightmost integer up to `r_j`. Integer
/// vertices are created only when a face first uses them.
#[derive(Clone, Debug)]
pub struct NecklaceState {
    corners: Vec<VertexId>,
    twins: Vec<Option<HalfEdgeId>>,
    labels: Vec<VertexLabel>,
    on_line: Vec<bool>,
    blue: Vec<ChainEntry>,
    red: Vec<ChainEntry>,
    /// Face half-edge behind the active edge (`None` while it is `[0, 1]`
    /// on the line).
    active_twin: Option<HalfEdgeId>,
    leftmost: i64,
    rightmost: i64,
}

impl Default for NecklaceState {
    fn default() -> Self {
        Self::new()
    }
}

impl NecklaceState {
    pub fn new() -> Self {
        NecklaceState {
            corners: Vec::new(),
            twins: Vec::new(),
            labels: vec![VertexLabel::Integer(0), VertexLabel::Integer(1)],
            on_line: Vec::new(),
            blue: vec![ChainEntry {
                vertex: VertexId(0),
                below: None,
            }],
            red: vec![ChainEntry {
                vertex: VertexId(1),
                below: None,
            }],
            active_twin: None,
            leftmost: 0,
            rightmost: 1,
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut s = Self::new();
        s.corners.reserve(3 * n);
        s.twins.reserve(3 * n);
        s.on_line.reserve(3 * n);
        s.labels.reserve(n + 2);
        s
    }

    /// Number of faces, which equals the number of steps taken.
    pub fn n_faces(&self) -> usize {
        self.corners.len() / 3
    }

    /// The active edge `(b_j, r_j)`.
    pub fn active_edge(&self) -> (VertexId, VertexId) {
        (
            self.blue.last().unwrap().vertex,
            self.red.last().unwrap().vertex,
        )
    }

    pub fn label(&self, v: VertexId) -> VertexLabel {
        self.labels[v.0]
    }

    /// The boundary of `D_j` outside the real line, from the leftmost
    /// integer up the blue chain, across the active edge and down the red
    /// chain to the rightmost integer.
    pub fn boundary_chain(&self) -> Vec<VertexId> {
        self.blue
            .iter()
            .map(|e| e.vertex)
            .chain(self.red.iter().rev().map(|e| e.vertex))
            .collect()
    }

    fn new_vertex(&mut self, label: VertexLabel) -> VertexId {
        self.labels.push(label);
        VertexId(self.labels.len() - 1)
    }

    /// Appends face `(b, r, apex)` and returns its first half-edge.
    fn push_face(&mut self, b: VertexId, r: VertexId, apex: VertexId) -> HalfEdgeId {
        let base = HalfEdgeId(self.corners.len());
        self.corners.extend_from_slice(&[b, r, apex]);
        self.twins
            .extend_from_slice(&[self.active_twin, None, None]);
        self.on_line.extend_from_slice(&[false, false, false]);
        if let Some(t) = self.active_twin {
            self.twins[t.0] = Some(base);
        } else if self.corners.len() == 3 {
            // The very first face sits on the segment [0, 1].
            self.on_line[base.0] = true;
        }
        base
    }

    fn glue(&mut self, a: HalfEdgeId, b: HalfEdgeId) {
        self.twins[a.0] = Some(b);
        self.twins[b.0] = Some(a);
    }

    /// Glues one triangle along the active edge according to `letter`.
    pub fn step(&mut self, letter: Letter) {
        let step_index = self.n_faces() + 1;
        let (b, r) = self.active_edge();
        match letter {
            Letter::NewBlue => {
                let apex = self.new_vertex(VertexLabel::Upper { step: step_index });
                let h = self.push_face(b, r, apex);
                // Slots: 0 = b->r, 1 = r->apex (new active), 2 = apex->b (new chain edge).
                self.active_twin = Some(h.next());
                self.blue.push(ChainEntry {
                    vertex: apex,
                    below: Some(h.prev()),
                });
            }
            Letter::NewRed => {
                let apex = self.new_vertex(VertexLabel::Upper { step: step_index });
                let h = self.push_face(b, r, apex);
                // Slots: 1 = r->apex (new chain edge), 2 = apex->b (new active).
                self.active_twin = Some(h.prev());
                self.red.push(ChainEntry {
                    vertex: apex,
                    below: Some(h.next()),
                });
            }
            Letter::StepBlue => {
                if self.blue.len() > 1 {
                    let top = self.blue.pop().unwrap();
                    let apex = self.blue.last().unwrap().vertex;
                    let h = self.push_face(b, r, apex);
                    self.glue(h.prev(), top.below.expect("non-bottom chain entry"));
                    self.active_twin = Some(h.next());
                } else {
                    let m = self.leftmost - 1;
                    self.leftmost = m;
                    let apex = self.new_vertex(VertexLabel::Integer(m));
                    let h = self.push_face(b, r, apex);
                    self.on_line[h.prev().0] = true;
                    self.active_twin = Some(h.next());
                    self.blue[0] = ChainEntry {
                        vertex: apex,
                        below: None,
                    };
                }
            }
            Letter::StepRed => {
                if self.red.len() > 1 {
                    let top = self.red.pop().unwrap();
                    let apex = self.red.last().unwrap().vertex;
                    let h = self.push_face(b, r, apex);
                    self.glue(h.next(), top.below.expect("non-bottom chain entry"));
                    self.active_twin = Some(h.prev());
                } else {
                    let m = self.rightmost + 1;
                    self.rightmost = m;
                    let apex = self.new_vertex(VertexLabel::Integer(m));
                    let h = self.push_face(b, r, apex);
                    self.on_line[h.next().0] = true;
                    self.active_twin = Some(h.prev());
                    self.red[0] = ChainEntry {
                        vertex: apex,
                        below: None,
                    };
                }
            }
        }
    }

    /// Freezes `D_j` into a rooted map, rooted at the first face with the
    /// blue corner first. Returns `None` before the first step.
    pub fn to_map(&self) -> Option<NecklaceMap> {
        self.to_map_rooted(1)
    }

    fn to_map_rooted(&self, k: usize) -> Option<NecklaceMap> {
        if self.n_faces() == 0 {
            return None;
        }
        let map = RootedTriangulation::from_parts_unchecked(
            self.labels.len(),
            self.corners.clone(),
            self.twins.clone(),
            Root::new(FaceId(k - 1), 0),
            SurfaceKind::Disc,
        );
        Some(NecklaceMap {
            map,
            labels: self.labels.clone(),
            on_line: self.on_line.clone(),
        })
    }
}

/// A necklace triangulation with its vertex labels and the half-edges that
/// lie on the real line.
#[derive(Clone, Debug)]
pub struct NecklaceMap {
    pub map: RootedTriangulation,
    pub labels: Vec<VertexLabel>,
    /// Per half-edge: boundary half-edge lying on the real line.
    pub on_line: Vec<bool>,
}

impl NecklaceMap {
    pub fn vertex_with_label(&self, label: VertexLabel) -> Option<VertexId> {
        self.labels.iter().position(|l| *l == label).map(VertexId)
    }

    /// The vertex labelled `0`.
    pub fn origin(&self) -> VertexId {
        VertexId(0)
    }

    /// Is `v` an endpoint of a boundary edge off the real line?
    pub fn on_outer_boundary(&self, v: VertexId) -> bool {
        let m = &self.map;
        (0..m.n_half_edges()).map(HalfEdgeId).any(|h| {
            m.is_boundary_half_edge(h) && !self.on_line[h.0] && (m.origin(h) == v || m.dest(h) == v)
        })
    }

    pub fn rerooted(&self, k: usize) -> Result<NecklaceMap, NecklaceError> {
        let len = self.map.n_faces();
        if k == 0 || k > len {
            return Err(NecklaceError::RootOutOfRange { index: k, len });
        }
        Ok(NecklaceMap {
            map: self
                .map
                .with_root(Root::new(FaceId(k - 1), 0))
                .expect("index checked"),
            labels: self.labels.clone(),
            on_line: self.on_line.clone(),
        })
    }

    /// The orientation-reversed copy living in the lower half-plane.
    pub fn mirrored(&self) -> NecklaceMap {
        let map = self.map.mirrored();
        let flip = |h: usize| h - h % 3 + (2 - h % 3);
        let mut on_line = vec![false; self.on_line.len()];
        for (h, l) in self.on_line.iter().enumerate() {
            on_line[flip(h)] = *l;
        }
        NecklaceMap {
            map,
            labels: self.labels.clone(),
            on_line,
        }
    }
}

/// Runs the growth for every letter of `word` from the initial state.
pub fn grow(word: &Word) -> NecklaceState {
    let mut state = NecklaceState::with_capacity(word.len());
    for &x in word.letters() {
        state.step(x);
    }
    state
}

/// `T_+(X)`, rooted at the first triangle.
pub fn build_plus(word: &Word) -> Result<NecklaceMap, NecklaceError> {
    grow(word).to_map().ok_or(NecklaceError::EmptyWord)
}

/// `T_-(X)`: the same growth mirrored into the lower half-plane.
pub fn build_minus(word: &Word) -> Result<NecklaceMap, NecklaceError> {
    build_plus(word).map(|m| m.mirrored())
}

/// `T(X, k)`: `T_+(X)` rooted at the triangle created by the `k`-th letter.
pub fn build_rooted(word: &Word, k: usize) -> Result<NecklaceMap, NecklaceError> {
    if k == 0 || k > word.len() {
        return Err(NecklaceError::RootOutOfRange {
            index: k,
            len: word.len(),
        });
    }
    Ok(grow(word).to_map_rooted(k).expect("non-empty word"))
}

/// `T_+(X) ∪ T_-(Y)`: both half-plane maps glued along the shared integer
/// vertices and real-line edges, rooted at the root of `T_+(X)`.
pub fn build_glued(x: &Word, y: &Word) -> Result<NecklaceMap, NecklaceError> {
    let plus = build_plus(x)?;
    if y.is_empty() {
        return Ok(plus);
    }
    let minus = build_minus(y)?;
    Ok(glue_along_line(&plus, &minus))
}

fn glue_along_line(plus: &NecklaceMap, minus: &NecklaceMap) -> NecklaceMap {
    use std::collections::HashMap;

    let mut labels = plus.labels.clone();
    let mut integer_vertex: HashMap<i64, VertexId> = HashMap::new();
    for (v, l) in plus.labels.iter().enumerate() {
        if let VertexLabel::Integer(m) = l {
            integer_vertex.insert(*m, VertexId(v));
        }
    }
    let mut remap = Vec::with_capacity(minus.labels.len());
    for l in &minus.labels {
        let id = match l {
            VertexLabel::Integer(m) => *integer_vertex.entry(*m).or_insert_with(|| {
                labels.push(*l);
                VertexId(labels.len() - 1)
            }),
            VertexLabel::Upper { .. } => {
                labels.push(*l);
                VertexId(labels.len() - 1)
            }
        };
        remap.push(id);
    }

    let (p, q) = (&plus.map, &minus.map);
    let offset = p.n_half_edges();
    let mut corners: Vec<VertexId> = p.faces().flatten().collect();
    corners.extend(q.faces().flatten().map(|v| remap[v.0]));
    let mut twins: Vec<Option<HalfEdgeId>> = p.twins().to_vec();
    twins.extend(
        q.twins()
            .iter()
            .map(|t| t.map(|t| HalfEdgeId(t.0 + offset))),
    );
    let mut on_line = plus.on_line.clone();
    on_line.extend_from_slice(&minus.on_line);

    // Line half-edges of the upper map run left to right, those of the
    // mirrored lower map right to left.
    let label_of = |v: VertexId| match labels[v.0] {
        VertexLabel::Integer(m) => m,
        VertexLabel::Upper { .. } => unreachable!("line edges join integers"),
    };
    let mut upper_line: HashMap<i64, HalfEdgeId> = HashMap::new();
    for h in 0..offset {
        if plus.on_line[h] {
            let h = HalfEdgeId(h);
            upper_line.insert(label_of(corners[h.0]), h);
        }
    }
    for h in offset..corners.len() {
        if on_line[h] {
            let h = HalfEdgeId(h);
            // h runs from m + 1 to m; its partner runs from m to m + 1.
            let left = label_of(corners[h.next().0]);
            if let Some(&u) = upper_line.get(&left) {
                twins[u.0] = Some(h);
                twins[h.0] = Some(u);
                on_line[u.0] = false;
                on_line[h.0] = false;
            }
        }
    }
    let map = RootedTriangulation::from_parts_unchecked(
        labels.len(),
        corners,
        twins,
        p.root(),
        SurfaceKind::Disc,
    );
    NecklaceMap {
        map,
        labels,
        on_line,
    }
}

#[cfg(test)]
mod tests;
