//! Discrete conformal flattening of the equilateral surface of a finite
//! disc triangulation, its planar development and the normalization that
//! fixes the root.
//!
//! The metric is changed by vertex scaling, `ℓ'_{vw} = e^{(u_v + u_w)/2}`,
//! with `u = 0` on the boundary, until every interior angle sum is `2π`.
//! Where that fails on the given triangulation (parallel edges, interior
//! vertices of degree two, or triangles pinned against the triangle
//! inequality) the surface is cut into barycentric pieces and solved with
//! intrinsic Delaunay flips, so that the points needed for the layout stay
//! vertices of the mesh.

mod delaunay;
mod energy;
mod layout;
mod mesh;
pub mod text;

pub use energy::{angle_sums, clausen, lobachevsky};
pub use layout::{geometry_ratios, layout, ConformalLayout, FaceRatios, GeometryRatios, Overlap};
pub use mesh::{corner_angles, FlatMesh, Subdivision};

use thiserror::Error;

use crate::linalg::conjugate_gradient;
use crate::map::{RootedTriangulation, SurfaceKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlattenError {
    #[error("only disc triangulations can be flattened")]
    NotADisc,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("line search could not keep all triangle inequalities (residual {residual:e})")]
    Infeasible { residual: f64 },
    #[error("development mismatch {defect:e} across an edge")]
    DevelopmentMismatch { defect: f64 },
    #[error("degenerate layout: the root center lies on another interstice")]
    DegenerateLayout,
}

#[derive(Clone, Copy, Debug)]
pub struct FlattenOptions {
    pub max_iterations: usize,
    /// Target for `max_v |Θ_v − 2π|`.
    pub tolerance: f64,
    /// Step multiplier after a rejected step.
    pub damping: f64,
    pub max_halvings: usize,
}

impl Default for FlattenOptions {
    fn default() -> Self {
        FlattenOptions {
            max_iterations: 200,
            tolerance: 1e-10,
            damping: 0.5,
            max_halvings: 60,
        }
    }
}

/// Solver trace.
#[derive(Clone, Debug, Default)]
pub struct FlattenReport {
    pub iterations: usize,
    /// `max |Θ_v − 2π|` over interior vertices at the end.
    pub residual: f64,
    /// Energy after each accepted step, starting with `u = 0`.
    pub energies: Vec<f64>,
    /// The barycentric fallback was used.
    pub subdivided: bool,
    /// Delaunay flips performed by the fallback.
    pub flips: usize,
    /// Midpoint refinements of the barycentric mesh before the fallback
    /// converged.
    pub refinements: usize,
}

/// Scale exponents on the mesh the solve ran on.
#[derive(Clone, Debug)]
pub struct ConformalFactors {
    pub mesh: FlatMesh,
    pub u: Vec<f64>,
    pub subdivision: Option<Subdivision>,
    pub report: FlattenReport,
    n_original: usize,
}

impl ConformalFactors {
    /// Exponents of the original vertices (these come first in any mesh).
    pub fn original(&self) -> &[f64] {
        &self.u[..self.n_original]
    }

    /// Flattened length of the mesh half-edge `h`.
    pub fn length(&self, h: usize) -> f64 {
        self.mesh.scaled_lengths(h / 3, &self.u)[h % 3]
    }
}

/// Flattens the equilateral surface of `map`.
pub fn flatten(map: &RootedTriangulation) -> Result<ConformalFactors, FlattenError> {
    flatten_with(map, &FlattenOptions::default())
}

pub fn flatten_with(
    map: &RootedTriangulation,
    options: &FlattenOptions,
) -> Result<ConformalFactors, FlattenError> {
    if map.kind() != SurfaceKind::Disc {
        return Err(FlattenError::NotADisc);
    }
    let mesh = FlatMesh::equilateral(map);
    if !mesh.obstructed() {
        match solve(&mesh, options) {
            Ok((u, report)) => {
                return Ok(ConformalFactors {
                    mesh,
                    u,
                    subdivision: None,
                    report,
                    n_original: map.n_vertices(),
                })
            }
            Err(FlattenError::Infeasible { .. }) | Err(FlattenError::NoConvergence { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (mut mesh, subdivision) = FlatMesh::barycentric(map);
    let mut refinements = 0;
    loop {
        match solve_delaunay(mesh.clone(), options) {
            Ok((solved, u, mut report)) => {
                report.subdivided = true;
                report.refinements = refinements;
                let n_original = map.n_vertices();
                return Ok(ConformalFactors {
                    mesh: solved,
                    u,
                    subdivision: Some(subdivision),
                    report,
                    n_original,
                });
            }
            // A boundary edge cannot flip, so a vertex that must shrink far
            // next to the boundary can still block the solve. Finer pieces
            // put room between them.
            Err(FlattenError::Infeasible { .. }) | Err(FlattenError::NoConvergence { .. })
                if refinements < MAX_REFINEMENTS =>
            {
                mesh = mesh.refined();
                refinements += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

const MAX_REFINEMENTS: usize = 2;
const SHORT_STEP: f64 = 1.0 / 16.0;
const SHORT_RUN: usize = 6;

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Energy and gradient of a feasible state.
struct State {
    mesh: FlatMesh,
    energy: f64,
    grad: Vec<f64>,
    flips: usize,
}

/// Damped Newton iteration with a feasibility-preserving Armijo line search
/// on a fixed triangulation.
pub fn solve(
    mesh: &FlatMesh,
    options: &FlattenOptions,
) -> Result<(Vec<f64>, FlattenReport), FlattenError> {
    let evaluate = |_: &FlatMesh, u: &[f64]| {
        let energy = energy::energy(mesh, u)?;
        let grad = energy::gradient(mesh, u)?;
        Some(State {
            mesh: mesh.clone(),
            energy,
            grad,
            flips: 0,
        })
    };
    newton(mesh.clone(), options, evaluate).map(|(_, u, report)| (u, report))
}

/// As [`solve`], but every trial point is first made intrinsically Delaunay
/// by Ptolemy flips. The energy is then convex and finite for every `u`,
/// so no triangle inequality can block the iteration. Returns the final
/// triangulation with its reference lengths.
pub fn solve_delaunay(
    mut mesh: FlatMesh,
    options: &FlattenOptions,
) -> Result<(FlatMesh, Vec<f64>, FlattenReport), FlattenError> {
    mesh.make_delaunay(&vec![0.0; mesh.n_vertices])
        .expect("reference metric is valid");
    let evaluate = |current: &FlatMesh, u: &[f64]| {
        let mut m = current.clone();
        let flips = m.make_delaunay(u)?;
        let energy = energy::energy(&m, u)?;
        let grad = energy::gradient(&m, u)?;
        Some(State {
            mesh: m,
            energy,
            grad,
            flips,
        })
    };
    newton(mesh, options, evaluate)
}

fn newton(
    mesh: FlatMesh,
    options: &FlattenOptions,
    evaluate: impl Fn(&FlatMesh, &[f64]) -> Option<State>,
) -> Result<(FlatMesh, Vec<f64>, FlattenReport), FlattenError> {
    let n = mesh.n_vertices;
    let mut index = vec![usize::MAX; n];
    let mut interior = Vec::new();
    for v in 0..n {
        if !mesh.boundary[v] {
            index[v] = interior.len();
            interior.push(v);
        }
    }
    let mut u = vec![0.0; n];
    let mut state = evaluate(&mesh, &u).expect("reference metric is a valid triangulation");
    let mut report = FlattenReport {
        energies: vec![state.energy],
        flips: state.flips,
        ..Default::default()
    };
    let mut short_run = 0;
    for it in 0..options.max_iterations {
        let residual = max_abs(&state.grad);
        report.residual = residual;
        report.iterations = it;
        if residual < options.tolerance {
            return Ok((state.mesh, u, report));
        }
        let h = energy::hessian(&state.mesh, &u, &index, interior.len()).expect("valid");
        let rhs: Vec<f64> = interior.iter().map(|v| -state.grad[*v]).collect();
        let cg = conjugate_gradient(&h, &rhs, 1e-13, 20 * interior.len().max(50));
        let dir = cg.x;
        // Directional derivative; the Newton direction is a descent direction.
        let slope: f64 = interior
            .iter()
            .zip(&dir)
            .map(|(v, d)| state.grad[*v] * d)
            .sum();
        let e = state.energy;
        let rounding = 1e-12 * e.abs().max(1.0);
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..options.max_halvings {
            let mut trial = u.clone();
            for (v, d) in interior.iter().zip(&dir) {
                trial[*v] += step * d;
            }
            if let Some(next) = evaluate(&state.mesh, &trial) {
                let armijo = next.energy <= e + 1e-4 * step * slope + rounding;
                // Near the optimum the energy stalls at rounding level; the
                // gradient still certifies progress.
                let stalled = (next.energy - e).abs() <= rounding && max_abs(&next.grad) < residual;
                if armijo || stalled {
                    accepted = Some((trial, next));
                    break;
                }
            }
            step *= options.damping;
        }
        let Some((trial, next)) = accepted else {
            return Err(FlattenError::Infeasible { residual });
        };
        // Newton steps this short, over and over, mean the minimizer sits on
        // the edge of the feasible set.
        short_run = if step < SHORT_STEP { short_run + 1 } else { 0 };
        if short_run >= SHORT_RUN {
            return Err(FlattenError::Infeasible {
                residual: max_abs(&next.grad),
            });
        }
        u = trial;
        report.flips += next.flips;
        state = next;
        report.energies.push(state.energy);
    }
    let residual = max_abs(&state.grad);
    report.residual = residual;
    report.iterations = options.max_iterations;
    if residual < options.tolerance {
        Ok((state.mesh, u, report))
    } else {
        Err(FlattenError::NoConvergence {
            iterations: options.max_iterations,
            residual,
        })
    }
}
