//! Line-oriented text format for rooted triangulations.
//!
//! ```text
//! tri <nvertices> <nfaces> disc|sphere
//! f <v1> <v2> <v3>          one line per face, positive orientation
//! root <faceindex> <first-vertex>
//! ```
//!
//! Faces are glued along `u -> v` / `v -> u` pairs. When a vertex pair carries
//! parallel edges that pairing is ambiguous, so the emitter adds explicit
//! lines for exactly those half-edges: `t <f1> <s1> <f2> <s2>` glues slot `s1`
//! of face `f1` to slot `s2` of face `f2`, and `b <f> <s>` marks a boundary
//! slot. Slot `s` of a face is its edge from corner `s` to corner `s + 1`.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{
    auto_glue, FaceId, HalfEdgeId, MapError, Root, RootedTriangulation, SurfaceKind, VertexId,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed header: expected `tri <nvertices> <nfaces> disc|sphere`")]
    MalformedHeader,
    #[error("line {line}: face record must have exactly three vertices")]
    NonTriangularFace { line: usize },
    #[error("line {line}: face repeats a vertex (loop edge)")]
    LoopEdge { line: usize },
    #[error("the complex is disconnected")]
    Disconnected,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("expected {expected} faces, found {found}")]
    FaceCount { expected: usize, found: usize },
    #[error("missing `root` line")]
    MissingRoot,
    #[error("invalid triangulation: {0}")]
    Invalid(MapError),
}

/// Serializes `map` in the text format.
pub fn emit(map: &RootedTriangulation) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "tri {} {} {}",
        map.n_vertices(),
        map.n_faces(),
        map.kind().as_str()
    )
    .unwrap();
    for [a, b, c] in map.faces() {
        writeln!(out, "f {} {} {}", a.0, b.0, c.0).unwrap();
    }
    let mut by_pair: HashMap<(usize, usize), Vec<HalfEdgeId>> = HashMap::new();
    for h in 0..map.n_half_edges() {
        let h = HalfEdgeId(h);
        let (u, v) = (map.origin(h).0, map.dest(h).0);
        by_pair.entry((u.min(v), u.max(v))).or_default().push(h);
    }
    let mut explicit: Vec<HalfEdgeId> = by_pair
        .values()
        .filter(|hs| {
            let naive = match hs.as_slice() {
                [h] => map.twin(*h).is_none(),
                [h, t] => map.twin(*h) == Some(*t),
                _ => false,
            };
            !naive
        })
        .flatten()
        .copied()
        .collect();
    explicit.sort();
    for h in explicit {
        match map.twin(h) {
            Some(t) if t > h => writeln!(
                out,
                "t {} {} {} {}",
                h.face().0,
                h.slot(),
                t.face().0,
                t.slot()
            )
            .unwrap(),
            Some(_) => {}
            None => writeln!(out, "b {} {}", h.face().0, h.slot()).unwrap(),
        }
    }
    let root = map.root();
    writeln!(out, "root {} {}", root.face.0, map.root_vertex().0).unwrap();
    out
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<RootedTriangulation, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines.next().ok_or(ParseError::MalformedHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n_vertices, n_faces, kind) = match fields.as_slice() {
        ["tri", nv, nf, kind] => {
            let nv: usize = nv.parse().map_err(|_| ParseError::MalformedHeader)?;
            let nf: usize = nf.parse().map_err(|_| ParseError::MalformedHeader)?;
            let kind = match *kind {
                "disc" => SurfaceKind::Disc,
                "sphere" => SurfaceKind::Sphere,
                _ => return Err(ParseError::MalformedHeader),
            };
            (nv, nf, kind)
        }
        _ => return Err(ParseError::MalformedHeader),
    };

    let mut faces: Vec<[VertexId; 3]> = Vec::with_capacity(n_faces);
    let mut explicit: Vec<(HalfEdgeId, Option<HalfEdgeId>)> = Vec::new();
    let mut root: Option<(usize, usize, usize)> = None;
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let nums: Vec<&str> = parts.collect();
        let ints = |expected: usize| -> Result<Vec<usize>, ParseError> {
            if nums.len() != expected {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("`{tag}` takes {expected} integers"),
                });
            }
            nums.iter()
                .map(|s| {
                    s.parse::<usize>().map_err(|_| ParseError::Malformed {
                        line,
                        message: format!("not a non-negative integer: `{s}`"),
                    })
                })
                .collect()
        };
        match tag {
            "f" => {
                if nums.len() != 3 {
                    return Err(ParseError::NonTriangularFace { line });
                }
                let v = ints(3)?;
                if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
                    return Err(ParseError::LoopEdge { line });
                }
                if let Some(bad) = v.iter().find(|x| **x >= n_vertices) {
                    return Err(ParseError::Malformed {
                        line,
                        message: format!("vertex {bad} out of range"),
                    });
                }
                faces.push([VertexId(v[0]), VertexId(v[1]), VertexId(v[2])]);
            }
            "t" => {
                let v = ints(4)?;
                if v[1] > 2 || v[3] > 2 {
                    return Err(ParseError::Malformed {
                        line,
                        message: "slot must be 0, 1 or 2".into(),
                    });
                }
                explicit.push((
                    HalfEdgeId::of(FaceId(v[0]), v[1]),
                    Some(HalfEdgeId::of(FaceId(v[2]), v[3])),
                ));
            }
            "b" => {
                let v = ints(2)?;
                if v[1] > 2 {
                    return Err(ParseError::Malformed {
                        line,
                        message: "slot must be 0, 1 or 2".into(),
                    });
                }
                explicit.push((HalfEdgeId::of(FaceId(v[0]), v[1]), None));
            }
            "root" => {
                let v = ints(2)?;
                root = Some((line, v[0], v[1]));
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("unknown record `{other}`"),
                });
            }
        }
    }
    if faces.len() != n_faces {
        return Err(ParseError::FaceCount {
            expected: n_faces,
            found: faces.len(),
        });
    }
    let (line, root_face, root_vertex) = root.ok_or(ParseError::MissingRoot)?;
    let corner = faces
        .get(root_face)
        .and_then(|f| f.iter().position(|v| v.0 == root_vertex))
        .ok_or(ParseError::Malformed {
            line,
            message: format!("vertex {root_vertex} is not a corner of face {root_face}"),
        })?;
    let twins = auto_glue(&faces, &explicit).map_err(ParseError::Invalid)?;
    RootedTriangulation::from_parts(
        n_vertices,
        &faces,
        twins,
        Root::new(FaceId(root_face), corner),
        kind,
    )
    .map_err(|e| match e {
        MapError::Disconnected => ParseError::Disconnected,
        other => ParseError::Invalid(other),
    })
}
