use super::DiagnosticsError;
use crate::map::{FaceId, Root, RootedTriangulation, SurfaceKind, VertexId};

/// The ball `B_k` of the `d`-regular triangulation around a vertex, rooted
/// at that vertex.
///
/// Built in rings: `B_1` is the `d`-wheel, and each further ring closes up
/// the outer vertices. An outer vertex already in `t` triangles gets one
/// triangle on each outer edge plus a fan of `d − t − 2` between them.
pub fn regular_ball(d: usize, k: usize) -> Result<RootedTriangulation, DiagnosticsError> {
    if d < 6 {
        return Err(DiagnosticsError::InvalidDegree(d));
    }
    if k == 0 {
        return Err(DiagnosticsError::ZeroRadius);
    }
    let mut faces: Vec<[usize; 3]> = (0..d).map(|i| [0, 1 + i, 1 + (i + 1) % d]).collect();
    let mut n_vertices = d + 1;
    // Outer cycle, each vertex with its triangle count.
    let mut cycle: Vec<(usize, usize)> = (1..=d).map(|v| (v, 2)).collect();
    for _ in 1..k {
        let m = cycle.len();
        // Apex of the outer edge from cycle[i] to cycle[i + 1].
        let apex: Vec<usize> = (0..m).map(|i| n_vertices + i).collect();
        n_vertices += m;
        let mut next = Vec::new();
        for i in 0..m {
            let (v, t) = cycle[i];
            let w = cycle[(i + 1) % m].0;
            let fan = d - t - 2;
            let mut spokes = vec![apex[(i + m - 1) % m]];
            for _ in 1..fan {
                spokes.push(n_vertices);
                next.push((n_vertices, 2));
                n_vertices += 1;
            }
            spokes.push(apex[i]);
            for s in spokes.windows(2) {
                faces.push([v, s[0], s[1]]);
            }
            faces.push([w, v, apex[i]]);
            next.push((apex[i], 3));
        }
        cycle = next;
    }
    let faces: Vec<[VertexId; 3]> = faces.iter().map(|f| f.map(VertexId)).collect();
    Ok(RootedTriangulation::from_faces(
        n_vertices,
        &faces,
        Root::new(FaceId(0), 0),
        SurfaceKind::Disc,
    )
    .expect("ring construction gives a disc"))
}

/// Face counts of `B_1, …, B_k` of the `d`-regular triangulation, by
/// counting outer vertices with two and with three triangles.
pub fn regular_layer_counts(d: usize, k: usize) -> Vec<u64> {
    let d = d as u64;
    let (mut a, mut b) = (d, 0u64);
    let mut total = d;
    let mut counts = Vec::with_capacity(k);
    for j in 1..=k {
        if j > 1 {
            // Fans plus one apex triangle per outer edge.
            total += a * (d - 4) + b * (d - 5) + (a + b);
            (a, b) = (a * (d - 5) + b * (d - 6), a + b);
        }
        counts.push(total);
    }
    counts
}
