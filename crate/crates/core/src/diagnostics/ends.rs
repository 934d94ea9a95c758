use crate::map::{FaceId, HalfEdgeId, RootedTriangulation};

/// Connected components of the faces outside `B_r`, two faces being
/// adjacent when they share an edge. Each component is sorted by face id.
pub fn complement_components(map: &RootedTriangulation, r: usize) -> Vec<Vec<FaceId>> {
    let ball = map.ball(r);
    let mut seen = vec![false; map.n_faces()];
    for f in ball.faces() {
        seen[f.0] = true;
    }
    let mut components = Vec::new();
    for start in 0..map.n_faces() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![FaceId(start)];
        let mut comp = Vec::new();
        while let Some(f) = stack.pop() {
            comp.push(f);
            for s in 0..3 {
                if let Some(t) = map.twin(HalfEdgeId::of(f, s)) {
                    let g = t.face();
                    if !seen[g.0] {
                        seen[g.0] = true;
                        stack.push(g);
                    }
                }
            }
        }
        comp.sort();
        components.push(comp);
    }
    components
}

/// Does exactly one component of `T \ B_r` reach the boundary of `T`?
pub fn one_ended_check(map: &RootedTriangulation, r: usize) -> bool {
    let on_boundary = map.boundary_vertex_flags();
    let touching = complement_components(map, r)
        .iter()
        .filter(|c| {
            c.iter()
                .any(|f| map.face(*f).iter().any(|v| on_boundary[v.0]))
        })
        .count();
    touching == 1
}
