use super::DiagnosticsError;
use crate::linalg::{conjugate_gradient, CsrMatrix};
use crate::map::{DualGraph, FaceId};

const TOL: f64 = 1e-12;

/// Unit-conductance resistance from `source` to the faces at dual distance
/// exactly `r`, shorted together.
///
/// Faces beyond distance `r` are cut off by the sink and carry no current, so
/// only the nodes closer than `r` enter the linear system.
pub fn effective_resistance(
    graph: &DualGraph,
    source: FaceId,
    r: usize,
) -> Result<f64, DiagnosticsError> {
    if r == 0 {
        return Err(DiagnosticsError::ZeroRadius);
    }
    if source.0 >= graph.n_nodes() {
        return Err(DiagnosticsError::NodeOutOfRange(source.0));
    }
    let dist = graph.distances_from(source);
    if !dist.iter().any(|d| *d == Some(r as u32)) {
        return Err(DiagnosticsError::EmptySink(r));
    }
    let inside: Vec<bool> = dist
        .iter()
        .map(|d| d.is_some_and(|d| (d as usize) < r))
        .collect();
    grounded_potential(graph, source, &inside)
}

/// Resistance between two nodes of the component of `b`.
pub fn effective_resistance_between(
    graph: &DualGraph,
    a: FaceId,
    b: FaceId,
) -> Result<f64, DiagnosticsError> {
    for f in [a, b] {
        if f.0 >= graph.n_nodes() {
            return Err(DiagnosticsError::NodeOutOfRange(f.0));
        }
    }
    if a == b {
        return Ok(0.0);
    }
    let dist = graph.distances_from(b);
    if dist[a.0].is_none() {
        return Ok(f64::INFINITY);
    }
    let inside: Vec<bool> = dist
        .iter()
        .enumerate()
        .map(|(f, d)| d.is_some() && f != b.0)
        .collect();
    grounded_potential(graph, a, &inside)
}

/// `(r, R(r))` for `r = 1, 2, …` up to `r_max` or the last nonempty sink.
pub fn resistance_curve(
    graph: &DualGraph,
    source: FaceId,
    r_max: usize,
) -> Result<Vec<(usize, f64)>, DiagnosticsError> {
    let mut curve = Vec::new();
    for r in 1..=r_max {
        match effective_resistance(graph, source, r) {
            Ok(v) => curve.push((r, v)),
            Err(DiagnosticsError::EmptySink(_)) if r > 1 => break,
            Err(e) => return Err(e),
        }
    }
    Ok(curve)
}

/// Potential at `source` for a unit current from `source`, with every node
/// outside `inside` held at 0.
fn grounded_potential(
    graph: &DualGraph,
    source: FaceId,
    inside: &[bool],
) -> Result<f64, DiagnosticsError> {
    let mut index = vec![usize::MAX; inside.len()];
    let mut n = 0;
    for (f, i) in inside.iter().enumerate() {
        if *i {
            index[f] = n;
            n += 1;
        }
    }
    let mut triplets = Vec::new();
    for (f, &i) in index.iter().enumerate() {
        if i == usize::MAX {
            continue;
        }
        for g in graph.neighbors(FaceId(f)) {
            if g.0 == f {
                continue;
            }
            triplets.push((i, i, 1.0));
            if index[g.0] != usize::MAX {
                triplets.push((i, index[g.0], -1.0));
            }
        }
    }
    let a = CsrMatrix::from_triplets(n, triplets);
    let mut b = vec![0.0; n];
    b[index[source.0]] = 1.0;
    let out = conjugate_gradient(&a, &b, TOL, 20 * n + 100);
    if !out.converged {
        return Err(DiagnosticsError::SolveFailed(out.residual));
    }
    Ok(out.x[index[source.0]])
}
