//! The convex flattening energy of vertex scaling and its derivatives.
//!
//! With `ℓ'_{ij} = ℓ_{ij} e^{(u_i + u_j)/2}` and boundary values fixed,
//!
//! ```text
//! E(u) = Σ_t Σ_j [ 2 α_j log ℓ'_j + 2 Л(α_j) − π log ℓ'_j ] + 2π Σ_{v interior} u_v
//! ```
//!
//! where `α_j` is the angle opposite side `j` of triangle `t` and `Л` is
//! Lobachevsky's function. The triangle terms agree on both
//! triangulations of an inscribed quadrilateral, so `E` is unchanged by
//! Delaunay flips. Then `∂E/∂u_v = 2π − Θ_v` and the Hessian is one half of the
//! cotangent Laplacian.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::mesh::{corner_angles, FlatMesh};
use crate::linalg::CsrMatrix;

const SERIES_TERMS: usize = 40;

/// `|B_2n| / (2n (2n + 1)!)` for `n = 1..`, through `|B_2n|/(2n)! = 2ζ(2n)/(2π)^{2n}`.
fn clausen_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; SERIES_TERMS];
        for (i, slot) in c.iter_mut().enumerate() {
            let n = (i + 1) as i32;
            let s = 2 * n;
            let zeta = match n {
                1 => PI * PI / 6.0,
                2 => PI.powi(4) / 90.0,
                _ => {
                    // Partial sum plus the Euler-Maclaurin tail.
                    let big = 60.0f64;
                    let head: f64 = (1..=60).rev().map(|k| (k as f64).powi(-s)).sum();
                    let sf = s as f64;
                    head + big.powf(1.0 - sf) / (sf - 1.0) - 0.5 * big.powi(-s)
                        + sf / 12.0 * big.powi(-s - 1)
                }
            };
            *slot = 2.0 * zeta / (2.0 * PI).powi(s) / (s as f64 * (s + 1) as f64);
        }
        c
    })
}

/// Clausen's function `Cl₂(θ) = −∫₀^θ log|2 sin(t/2)| dt`.
pub fn clausen(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut x = theta.rem_euclid(two_pi);
    let mut sign = 1.0;
    if x > PI {
        x = two_pi - x;
        sign = -1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut power = x * x2;
    let mut sum = x - x * x.ln();
    for c in clausen_coefficients() {
        let term = c * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        power *= x2;
    }
    sign * sum
}

/// Lobachevsky's function `Л(θ) = −∫₀^θ log|2 sin t| dt = Cl₂(2θ)/2`.
pub fn lobachevsky(theta: f64) -> f64 {
    clausen(2.0 * theta) / 2.0
}

/// Energy at `u`, or `None` if some triangle violates the triangle
/// inequality.
pub fn energy(mesh: &FlatMesh, u: &[f64]) -> Option<f64> {
    let mut e = 0.0;
    for t in 0..mesh.n_triangles() {
        let l = mesh.scaled_lengths(t, u);
        let a = corner_angles(l)?;
        // Side i is opposite corner i + 2.
        for i in 0..3 {
            let alpha = a[(i + 2) % 3];
            e += 2.0 * (alpha * l[i].ln() + lobachevsky(alpha)) - PI * l[i].ln();
        }
    }
    for (v, b) in mesh.boundary.iter().enumerate() {
        if !b {
            e += 2.0 * PI * u[v];
        }
    }
    Some(e)
}

/// Angle sums `Θ_v` at every vertex.
pub fn angle_sums(mesh: &FlatMesh, u: &[f64]) -> Option<Vec<f64>> {
    let mut theta = vec![0.0; mesh.n_vertices];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let a = corner_angles(mesh.scaled_lengths(t, u))?;
        for i in 0..3 {
            theta[tri[i]] += a[i];
        }
    }
    Some(theta)
}

/// `2π − Θ_v` on interior vertices, zero on the boundary.
pub fn gradient(mesh: &FlatMesh, u: &[f64]) -> Option<Vec<f64>> {
    let theta = angle_sums(mesh, u)?;
    Some(
        theta
            .iter()
            .zip(&mesh.boundary)
            .map(|(t, b)| if *b { 0.0 } else { 2.0 * PI - t })
            .collect(),
    )
}

/// The Hessian restricted to interior vertices, indexed through `index`
/// (`usize::MAX` for boundary vertices).
pub fn hessian(
    mesh: &FlatMesh,
    u: &[f64],
    index: &[usize],
    n_interior: usize,
) -> Option<CsrMatrix> {
    let mut triplets = Vec::with_capacity(9 * mesh.n_triangles());
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let a = corner_angles(mesh.scaled_lengths(t, u))?;
        // Edge (i, i+1) is opposite corner i + 2.
        for i in 0..3 {
            let (p, q) = (tri[i], tri[(i + 1) % 3]);
            let w = 0.5 / a[(i + 2) % 3].tan();
            let (ip, iq) = (index[p], index[q]);
            if ip != usize::MAX {
                triplets.push((ip, ip, w));
            }
            if iq != usize::MAX {
                triplets.push((iq, iq, w));
            }
            if ip != usize::MAX && iq != usize::MAX {
                triplets.push((ip, iq, -w));
                triplets.push((iq, ip, -w));
            }
        }
    }
    Some(CsrMatrix::from_triplets(n_interior, triplets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{FaceId, Root, RootedTriangulation, SurfaceKind, VertexId};

    /// Quadrature of the defining integral, with the logarithmic
    /// singularity `∫ −log t = θ − θ log θ` taken out exactly and the smooth
    /// rest done by Simpson's rule.
    fn clausen_quadrature(theta: f64) -> f64 {
        let n = 20_000;
        let h = theta / n as f64;
        let smooth = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                (2.0 * (t / 2.0).sin() / t).abs().ln()
            }
        };
        let simpson: f64 = (0..=n)
            .map(|k| {
                let w = if k == 0 || k == n {
                    1.0
                } else if k % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * smooth(k as f64 * h)
            })
            .sum::<f64>()
            * h
            / 3.0;
        theta - theta * theta.ln() - simpson
    }

    #[test]
    fn clausen_values() {
        // Cl₂(π/2) is Catalan's constant; Cl₂(π/3) is its maximum.
        assert!((clausen(PI / 2.0) - 0.915_965_594_177_219).abs() < 1e-14);
        assert!((clausen(PI / 3.0) - 1.014_941_606_409_653_6).abs() < 1e-14);
        assert_eq!(clausen(0.0), 0.0);
        assert!(clausen(PI).abs() < 1e-14);
        assert!((clausen(5.0) + clausen(2.0 * PI - 5.0)).abs() < 1e-15);
        for theta in [0.1, 0.7, 1.9, 2.8, 4.0] {
            assert!(
                (clausen(theta) - clausen_quadrature(theta)).abs() < 1e-12,
                "{theta}"
            );
        }
    }

    #[test]
    fn energy_is_flip_invariant_on_inscribed_quads() {
        // Quadrilateral inscribed in the unit circle.
        let p = [0.3f64, 1.9, 3.4, 5.0].map(|t| num_complex::Complex64::from_polar(1.0, t));
        let d = |i: usize, j: usize| (p[i] - p[j]).norm();
        let quad = |a: usize, b: usize, k: usize, l: usize| FlatMesh {
            triangles: vec![[a, b, k], [b, a, l]],
            twins: vec![Some(3), None, None, Some(0), None, None],
            lengths: vec![d(a, b), d(b, k), d(k, a), d(a, b), d(a, l), d(l, b)],
            n_vertices: 4,
            boundary: vec![true; 4],
        };
        let e1 = energy(&quad(0, 2, 3, 1), &[0.0; 4]).unwrap();
        let e2 = energy(&quad(1, 3, 0, 2), &[0.0; 4]).unwrap();
        assert!((e1 - e2).abs() < 1e-12, "{e1} vs {e2}");
        let mut m = quad(0, 2, 3, 1);
        m.flip(0);
        assert!((energy(&m, &[0.0; 4]).unwrap() - e1).abs() < 1e-12);
    }

    #[test]
    fn lobachevsky_is_odd_and_periodic() {
        for t in [0.2, 0.9, 1.4] {
            assert!((lobachevsky(t) + lobachevsky(-t)).abs() < 1e-15);
            assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() < 1e-13);
        }
    }

    fn wheel(n: usize) -> FlatMesh {
        let faces: Vec<[VertexId; 3]> = (0..n)
            .map(|i| [VertexId(0), VertexId(1 + i), VertexId(1 + (i + 1) % n)])
            .collect();
        let m = RootedTriangulation::from_faces(
            n + 1,
            &faces,
            Root::new(FaceId(0), 0),
            SurfaceKind::Disc,
        )
        .unwrap();
        FlatMesh::equilateral(&m)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mesh = wheel(7);
        let u = [0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let g = gradient(&mesh, &u).unwrap();
        let h = 1e-6;
        let mut up = u;
        up[0] += h;
        let mut dn = u;
        dn[0] -= h;
        let fd = (energy(&mesh, &up).unwrap() - energy(&mesh, &dn).unwrap()) / (2.0 * h);
        assert!((fd - g[0]).abs() < 1e-7, "{fd} vs {}", g[0]);
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let mesh = wheel(5);
        let u = [-0.2, 0.0, 0.0, 0.0, 0.0, 0.0];
        let index = [
            0,
            usize::MAX,
            usize::MAX,
            usize::MAX,
            usize::MAX,
            usize::MAX,
        ];
        let hess = hessian(&mesh, &u, &index, 1).unwrap();
        let h = 1e-6;
        let g = |x: f64| gradient(&mesh, &[x, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap()[0];
        let fd = (g(u[0] + h) - g(u[0] - h)) / (2.0 * h);
        assert!((hess.diagonal()[0] - fd).abs() < 1e-6);
    }
}
