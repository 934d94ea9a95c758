use std::collections::VecDeque;

use super::{FaceId, HalfEdgeId, RootedTriangulation};

/// Canonical breadth-first code of a rooted, oriented, edge-connected
/// sub-complex. Two sub-complexes have equal codes iff an orientation
/// preserving isomorphism carries one root face and root corner to the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

/// A canonical code together with the faces in canonical order.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub code: CanonicalCode,
    /// `order[i]` is the parent face with canonical index `i`.
    pub order: Vec<FaceId>,
}

impl CanonicalLabeling {
    pub(super) fn single_vertex() -> Self {
        CanonicalLabeling {
            code: CanonicalCode(vec![0]),
            order: Vec::new(),
        }
    }
}

const NONE: u32 = u32::MAX;

/// Labels the faces accepted by `keep`, which must form an edge-connected
/// set containing the root face.
pub(super) fn label(map: &RootedTriangulation, keep: impl Fn(FaceId) -> bool) -> CanonicalLabeling {
    let nf = map.n_faces();
    let root = map.root();
    debug_assert!(keep(root.face));

    // rotation[f] = local slot that becomes canonical slot 0.
    let mut index = vec![NONE; nf];
    let mut rotation = vec![0usize; nf];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    index[root.face.0] = 0;
    rotation[root.face.0] = root.corner;
    order.push(root.face);
    queue.push_back(root.face);

    let mut vertex_label = std::collections::HashMap::new();
    let mut code = Vec::new();
    code.push(0); // patched with the face count

    while let Some(f) = queue.pop_front() {
        let rot = rotation[f.0];
        for s in 0..3 {
            let h = HalfEdgeId::of(f, (rot + s) % 3);
            let next_label = vertex_label.len() as u32;
            let v = *vertex_label.entry(map.origin(h)).or_insert(next_label);
            code.push(v);
        }
        for s in 0..3 {
            let h = HalfEdgeId::of(f, (rot + s) % 3);
            match map.twin(h).filter(|t| keep(t.face())) {
                None => {
                    code.push(NONE);
                    code.push(NONE);
                }
                Some(t) => {
                    let g = t.face();
                    if index[g.0] == NONE {
                        index[g.0] = order.len() as u32;
                        rotation[g.0] = t.slot();
                        order.push(g);
                        queue.push_back(g);
                    }
                    code.push(index[g.0]);
                    code.push(((t.slot() + 3 - rotation[g.0]) % 3) as u32);
                }
            }
        }
    }
    code[0] = order.len() as u32;
    code.shrink_to_fit();
    CanonicalLabeling {
        code: CanonicalCode(code),
        order,
    }
}
