//! Small planar geometry helpers on complex numbers.

use num_complex::Complex64;

pub fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Signed area, positive for counterclockwise triangles.
pub fn triangle_area(p: [Complex64; 3]) -> f64 {
    cross(p[1] - p[0], p[2] - p[0]) / 2.0
}

/// Closed containment test for a triangle of either orientation.
/// Signed shoelace area, positive for counterclockwise polygons.
pub fn polygon_area(p: &[Complex64]) -> f64 {
    let n = p.len();
    (0..n).map(|i| cross(p[i], p[(i + 1) % n])).sum::<f64>() / 2.0
}

pub fn point_in_triangle(q: Complex64, t: [Complex64; 3]) -> bool {
    let d = [
        cross(t[1] - t[0], q - t[0]),
        cross(t[2] - t[1], q - t[1]),
        cross(t[0] - t[2], q - t[2]),
    ];
    let neg = d.iter().any(|x| *x < 0.0);
    let pos = d.iter().any(|x| *x > 0.0);
    !(neg && pos)
}

pub fn point_segment_distance(q: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = (((q - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (q - (a + ab * t)).norm()
}

/// Distance from `q` to a closed polygon region given as a fan of triangles
/// around its interior point, with `outline` its boundary.
pub fn distance_to_region(q: Complex64, fan: &[[Complex64; 3]], outline: &[Complex64]) -> f64 {
    if fan.iter().any(|t| point_in_triangle(q, *t)) {
        return 0.0;
    }
    (0..outline.len())
        .map(|i| point_segment_distance(q, outline[i], outline[(i + 1) % outline.len()]))
        .fold(f64::INFINITY, f64::min)
}

pub fn diameter(points: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

/// Area of the intersection of two triangles.
pub fn triangle_intersection_area(a: [Complex64; 3], b: [Complex64; 3]) -> f64 {
    let orient = |t: [Complex64; 3]| {
        if triangle_area(t) < 0.0 {
            [t[0], t[2], t[1]]
        } else {
            t
        }
    };
    let (a, b) = (orient(a), orient(b));
    let mut poly: Vec<Complex64> = a.to_vec();
    for i in 0..3 {
        let (p, q) = (b[i], b[(i + 1) % 3]);
        let inside = |z: Complex64| cross(q - p, z - p) >= 0.0;
        let mut next = Vec::with_capacity(poly.len() + 2);
        for j in 0..poly.len() {
            let (s, e) = (poly[j], poly[(j + 1) % poly.len()]);
            let (si, ei) = (inside(s), inside(e));
            if si {
                next.push(s);
            }
            if si != ei {
                let ds = cross(q - p, s - p);
                let de = cross(q - p, e - p);
                next.push(s + (e - s) * (ds / (ds - de)));
            }
        }
        poly = next;
        if poly.is_empty() {
            return 0.0;
        }
    }
    let mut area = 0.0;
    for j in 1..poly.len().saturating_sub(1) {
        area += triangle_area([poly[0], poly[j], poly[j + 1]]);
    }
    area.max(0.0)
}
