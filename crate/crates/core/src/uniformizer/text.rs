//! Text format for normalized layouts.
//!
//! ```text
//! layout <nvertices> <nfaces> <rootface>
//! a <scale>
//! b <re> <im>
//! residual <angle-residual> <development-defect>
//! nearest <face>|none
//! v <id> <x> <y>                      one per vertex
//! c <face> <x> <y>                    one per face center
//! k <face> <x0> <y0> <x1> <y1> <x2> <y2>    face corners
//! i <face> <x> <y> ...                interstice outline
//! n <face> <face> ...                 faces sharing an edge
//! ```
//!
//! Numbers are written in shortest round-trip form, so parsing an emitted
//! layout gives back the same values bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use super::ConformalLayout;
use crate::map::FaceId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutParseError {
    #[error("malformed header: expected `layout <nvertices> <nfaces> <rootface>`")]
    MalformedHeader,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing {0} record")]
    Missing(&'static str),
}

pub fn emit(layout: &ConformalLayout) -> String {
    let mut out = String::new();
    let nf = layout.n_faces();
    writeln!(
        out,
        "layout {} {} {}",
        layout.vertices.len(),
        nf,
        layout.root.0
    )
    .unwrap();
    writeln!(out, "a {}", layout.scale).unwrap();
    writeln!(out, "b {} {}", layout.shift.re, layout.shift.im).unwrap();
    writeln!(out, "residual {} {}", layout.residual, layout.defect).unwrap();
    match layout.nearest {
        Some(f) => writeln!(out, "nearest {}", f.0).unwrap(),
        None => writeln!(out, "nearest none").unwrap(),
    }
    for (v, z) in layout.vertices.iter().enumerate() {
        writeln!(out, "v {v} {} {}", z.re, z.im).unwrap();
    }
    for (f, z) in layout.centers.iter().enumerate() {
        writeln!(out, "c {f} {} {}", z.re, z.im).unwrap();
    }
    for (f, c) in layout.corners.iter().enumerate() {
        write!(out, "k {f}").unwrap();
        for z in c {
            write!(out, " {} {}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    for (f, p) in layout.interstices.iter().enumerate() {
        write!(out, "i {f}").unwrap();
        for z in p {
            write!(out, " {} {}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    for (f, n) in layout.neighbors.iter().enumerate() {
        write!(out, "n {f}").unwrap();
        for g in n {
            write!(out, " {g}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<ConformalLayout, LayoutParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(LayoutParseError::MalformedHeader)?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let (nv, nf, root) = match h.as_slice() {
        ["layout", nv, nf, root] => {
            let p = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| LayoutParseError::MalformedHeader)
            };
            (p(nv)?, p(nf)?, p(root)?)
        }
        _ => return Err(LayoutParseError::MalformedHeader),
    };
    if root >= nf {
        return Err(LayoutParseError::MalformedHeader);
    }
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let mut vertices = vec![nan; nv];
    let mut centers = vec![nan; nf];
    let mut corners = vec![[nan; 3]; nf];
    let mut interstices: Vec<Vec<Complex64>> = vec![Vec::new(); nf];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); nf];
    let (mut scale, mut shift, mut residual, mut defect, mut nearest) =
        (None, None, None, None, None);
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let bad = |message: String| LayoutParseError::Malformed { line, message };
        let floats = |s: &[&str]| -> Result<Vec<f64>, LayoutParseError> {
            s.iter()
                .map(|x| {
                    x.parse::<f64>()
                        .map_err(|_| bad(format!("not a number: `{x}`")))
                })
                .collect()
        };
        let index = |s: &str, bound: usize| -> Result<usize, LayoutParseError> {
            match s.parse::<usize>() {
                Ok(i) if i < bound => Ok(i),
                _ => Err(bad(format!("index `{s}` out of range"))),
            }
        };
        let points = |s: &[&str]| -> Result<Vec<Complex64>, LayoutParseError> {
            let x = floats(s)?;
            if x.len() % 2 != 0 {
                return Err(bad("odd number of coordinates".into()));
            }
            Ok(x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
        };
        match (tag, rest.as_slice()) {
            ("a", [x]) => scale = Some(floats(&[x])?[0]),
            ("b", [x, y]) => {
                let v = floats(&[x, y])?;
                shift = Some(Complex64::new(v[0], v[1]));
            }
            ("residual", [r, d]) => {
                let v = floats(&[r, d])?;
                residual = Some(v[0]);
                defect = Some(v[1]);
            }
            ("nearest", ["none"]) => nearest = Some(None),
            ("nearest", [f]) => nearest = Some(Some(FaceId(index(f, nf)?))),
            ("v", [id, xy @ ..]) if xy.len() == 2 => vertices[index(id, nv)?] = points(xy)?[0],
            ("c", [id, xy @ ..]) if xy.len() == 2 => centers[index(id, nf)?] = points(xy)?[0],
            ("k", [id, xy @ ..]) if xy.len() == 6 => {
                let p = points(xy)?;
                corners[index(id, nf)?] = [p[0], p[1], p[2]];
            }
            ("i", [id, xy @ ..]) if xy.len() >= 6 => interstices[index(id, nf)?] = points(xy)?,
            ("n", [id, faces @ ..]) => {
                neighbors[index(id, nf)?] = faces
                    .iter()
                    .map(|g| index(g, nf))
                    .collect::<Result<_, _>>()?
            }
            _ => return Err(bad(format!("unrecognized record `{l}`"))),
        }
    }
    if centers.iter().any(|z| z.re.is_nan()) {
        return Err(LayoutParseError::Missing("center"));
    }
    if interstices.iter().any(|p| p.is_empty()) {
        return Err(LayoutParseError::Missing("interstice"));
    }
    Ok(ConformalLayout {
        root: FaceId(root),
        vertices,
        corners,
        centers,
        interstices,
        scale: scale.ok_or(LayoutParseError::Missing("a"))?,
        shift: shift.ok_or(LayoutParseError::Missing("b"))?,
        residual: residual.ok_or(LayoutParseError::Missing("residual"))?,
        defect: defect.ok_or(LayoutParseError::Missing("residual"))?,
        nearest: nearest.ok_or(LayoutParseError::Missing("nearest"))?,
        neighbors,
    })
}
