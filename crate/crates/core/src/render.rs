//! SVG drawings of a normalized layout: faces, shaded interstices and,
//! optionally, the half-flowers around the vertices.

use std::fmt::Write;

use num_complex::Complex64;

use crate::map::RootedTriangulation;
use crate::uniformizer::ConformalLayout;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the picture in pixels.
    pub size: f64,
    /// Fill the corner triangles at each vertex, shaded by degree.
    pub half_flowers: bool,
    /// Only draw faces meeting the disc of this radius about 0.
    pub window: Option<f64>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 800.0,
            half_flowers: false,
            window: None,
        }
    }
}

fn fmt_points(out: &mut String, pts: &[Complex64]) {
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        // y grows downwards in SVG.
        let _ = write!(out, "{:.6},{:.6}", p.re, -p.im);
    }
}

fn polygon(out: &mut String, class: &str, pts: &[Complex64], fill: Option<&str>) {
    let _ = write!(out, "<polygon class=\"{class}\" points=\"");
    fmt_points(out, pts);
    out.push('"');
    if let Some(f) = fill {
        let _ = write!(out, " fill=\"{f}\"");
    }
    out.push_str("/>\n");
}

/// Grey level of a half-flower: darker for larger cone angles.
fn degree_shade(degree: u32) -> String {
    let level = (235i64 - 18 * (degree as i64 - 6)).clamp(120, 250);
    format!("rgb({level},{level},255)")
}

pub fn render_svg(
    map: &RootedTriangulation,
    layout: &ConformalLayout,
    options: &RenderOptions,
) -> String {
    let visible: Vec<usize> = (0..map.n_faces())
        .filter(|f| match options.window {
            None => true,
            Some(r) => layout.corners[*f].iter().any(|z| z.norm() <= r),
        })
        .collect();
    let (mut lo, mut hi) = (
        Complex64::new(f64::INFINITY, f64::INFINITY),
        Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for f in &visible {
        for z in &layout.corners[*f] {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(-z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(-z.im));
        }
    }
    if visible.is_empty() {
        lo = Complex64::new(-1.0, -1.0);
        hi = Complex64::new(1.0, 1.0);
    }
    let extent = (hi.re - lo.re).max(hi.im - lo.im).max(1e-300);
    let pad = 0.02 * extent;
    let stroke = extent / options.size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        lo.re - pad,
        lo.im - pad,
        extent + 2.0 * pad,
        extent + 2.0 * pad,
        s = options.size,
    );
    let _ = writeln!(
        out,
        "<style>.face{{fill:white;stroke:black;stroke-width:{stroke:.6e}}} .interstice{{fill:#999;stroke:none}} .half-flower{{stroke:none}}</style>"
    );
    out.push_str("<g id=\"faces\">\n");
    for f in &visible {
        polygon(&mut out, "face", &layout.corners[*f], None);
    }
    out.push_str("</g>\n");
    if options.half_flowers {
        let degrees = map.degrees();
        out.push_str("<g id=\"half-flowers\">\n");
        for f in &visible {
            let c = layout.corners[*f];
            let corners = map.face(crate::map::FaceId(*f));
            for i in 0..3 {
                let next = (c[i] + c[(i + 1) % 3]) / 2.0;
                let prev = (c[i] + c[(i + 2) % 3]) / 2.0;
                let shade = degree_shade(degrees[corners[i].0]);
                polygon(&mut out, "half-flower", &[c[i], next, prev], Some(&shade));
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g id=\"interstices\">\n");
    for f in &visible {
        polygon(&mut out, "interstice", &layout.interstices[*f], None);
    }
    out.push_str("</g>\n</svg>\n");
    out
}
