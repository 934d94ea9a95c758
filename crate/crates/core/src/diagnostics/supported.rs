use std::f64::consts::PI;

use num_complex::Complex64;

use super::DiagnosticsError;

/// Relative shrink applied to the removed disc so that the open disc of
/// radius `r` can be searched as closed discs of radius `r(1 − SHRINK)`.
const SHRINK: f64 = 1e-12;

/// A point set with the parameters of the supported-point count.
///
/// `v` is `(δ, s)`-supported when every disc `D(p, ρ_v δ)` leaves at least
/// `s` points of `V` inside `D(v, ρ_v / δ)`, where `ρ_v` is the distance from
/// `v` to its nearest other point. Discs are open.
#[derive(Clone, Debug)]
pub struct SupportedPointQuery {
    points: Vec<Complex64>,
    delta: f64,
    s: f64,
    radii: Vec<f64>,
}

impl SupportedPointQuery {
    pub fn new(points: Vec<Complex64>, delta: f64, s: f64) -> Result<Self, DiagnosticsError> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(DiagnosticsError::InvalidDelta(delta));
        }
        if !(s >= 2.0) {
            return Err(DiagnosticsError::InvalidS(s));
        }
        let radii = isolation_radii(&points)?;
        Ok(SupportedPointQuery {
            points,
            delta,
            s,
            radii,
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn radius(&self, v: usize) -> f64 {
        self.radii[v]
    }

    /// Points of `V` in the open disc `D(v, ρ_v / δ)`.
    pub fn neighborhood(&self, v: usize) -> Vec<Complex64> {
        let outer = self.radii[v] / self.delta;
        let c = self.points[v];
        self.points
            .iter()
            .copied()
            .filter(|w| (w - c).norm() < outer)
            .collect()
    }

    /// `inf_p |V ∩ (D(v, ρ_v/δ) \ D(p, ρ_v δ))|`.
    pub fn min_count(&self, v: usize) -> usize {
        self.min_count_with(v, self.radii[v] * self.delta)
    }

    /// The same infimum with a removed disc of radius `r`.
    pub fn min_count_with(&self, v: usize, r: f64) -> usize {
        let near = self.neighborhood(v);
        near.len() - max_cover(&near, r * (1.0 - SHRINK))
    }

    /// Brute-force inner infimum: the removed disc's center runs over a grid
    /// of spacing `ρ_v δ / grid` around every point of the neighborhood
    /// (elsewhere it removes nothing).
    pub fn grid_min_count(&self, v: usize, grid: u32) -> usize {
        let near = self.neighborhood(v);
        let r = self.radii[v] * self.delta;
        let h = r / grid as f64;
        let g = grid as i64;
        let mut best = near.len();
        for c in &near {
            for i in -g..=g {
                for j in -g..=g {
                    let p = c + Complex64::new(i as f64, j as f64) * h;
                    best = best.min(near.iter().filter(|w| (*w - p).norm() >= r).count());
                }
            }
        }
        best
    }

    /// Compares `min_count` with the grid value at every point.
    ///
    /// A disc of radius `r(1 − ε)` has a grid point within `εr` of its
    /// center, so the grid value must lie between the exact values at `r`
    /// and `r(1 − ε)`. Where those two agree the grid must match exactly;
    /// elsewhere the optimal centers form a region thinner than the grid.
    pub fn grid_check(&self, grid: u32) -> GridCheck {
        let eps = 1.0 / (grid as f64 * 2f64.sqrt()) + 1e-9;
        let mut check = GridCheck::default();
        for v in 0..self.points.len() {
            let exact = self.min_count(v);
            let brute = self.grid_min_count(v, grid);
            let shrunk = self.min_count_with(v, self.radii[v] * self.delta * (1.0 - eps));
            check.points += 1;
            check.equal += usize::from(brute == exact);
            check.robust += usize::from(shrunk == exact);
            if !(exact <= brute && brute <= shrunk) {
                check.violations.push(v);
            }
        }
        check
    }

    pub fn is_supported(&self, v: usize) -> bool {
        (self.min_count(v) as f64) >= self.s
    }

    /// `min_count` of every point: `v` is `(δ, s)`-supported iff its level
    /// is at least `s`, so one pass serves every `s`.
    pub fn levels(&self) -> Vec<usize> {
        (0..self.points.len()).map(|v| self.min_count(v)).collect()
    }

    pub fn supported(&self) -> Vec<bool> {
        self.levels().iter().map(|l| *l as f64 >= self.s).collect()
    }

    pub fn fraction(&self) -> f64 {
        let n = self.supported().iter().filter(|b| **b).count();
        n as f64 / self.points.len() as f64
    }
}

/// Outcome of [`SupportedPointQuery::grid_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridCheck {
    pub points: usize,
    pub equal: usize,
    /// Points whose exact value is the same at `r` and `r(1 − ε)`.
    pub robust: usize,
    /// Points whose grid value falls outside the bracket.
    pub violations: Vec<usize>,
}

impl GridCheck {
    pub fn merge(&mut self, other: GridCheck) {
        self.points += other.points;
        self.equal += other.equal;
        self.robust += other.robust;
        self.violations.extend(other.violations);
    }
}

/// Distance from each point to its nearest other point.
pub fn isolation_radii(points: &[Complex64]) -> Result<Vec<f64>, DiagnosticsError> {
    if points.len() < 2 {
        return Err(DiagnosticsError::TooFewPoints(points.len()));
    }
    // Sort by x and scan outwards until the x-gap exceeds the best distance.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|a, b| points[*a].re.total_cmp(&points[*b].re));
    let mut radii = vec![f64::INFINITY; points.len()];
    for (k, &i) in order.iter().enumerate() {
        let p = points[i];
        let mut best = f64::INFINITY;
        for &j in order[k + 1..].iter() {
            if points[j].re - p.re >= best {
                break;
            }
            best = best.min((points[j] - p).norm());
        }
        for &j in order[..k].iter().rev() {
            if p.re - points[j].re >= best {
                break;
            }
            best = best.min((points[j] - p).norm());
        }
        if best == 0.0 {
            let j = (0..points.len())
                .find(|j| *j != i && points[*j] == p)
                .expect("a coincident point");
            return Err(DiagnosticsError::DuplicatePoint(i.min(j), i.max(j)));
        }
        radii[i] = best;
    }
    Ok(radii)
}

/// Largest number of `points` in one closed disc of radius `r`.
///
/// Some optimal disc has a point on its boundary, so it suffices to turn a
/// disc around each point and count how many others it can hold: point `b`
/// is inside when the center lies on an arc of the circle around `a`.
pub fn max_cover(points: &[Complex64], r: f64) -> usize {
    if points.is_empty() {
        return 0;
    }
    let mut best = 1;
    let mut events: Vec<(f64, i32)> = Vec::new();
    for (i, a) in points.iter().enumerate() {
        events.clear();
        for (j, b) in points.iter().enumerate() {
            let d = (b - a).norm();
            if i == j || d > 2.0 * r {
                continue;
            }
            let theta = (b - a).arg();
            let phi = (d / (2.0 * r)).min(1.0).acos();
            let start = theta - phi;
            let end = theta + phi;
            // Unroll twice so arcs across the cut are seen whole.
            events.push((start, 1));
            events.push((end, -1));
            events.push((start + 2.0 * PI, 1));
            events.push((end + 2.0 * PI, -1));
        }
        if events.len() / 4 + 1 <= best {
            continue;
        }
        // Entries before exits at equal angles: arcs are closed.
        events.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)));
        let mut depth = 0;
        for (_, e) in &events {
            depth += e;
            best = best.max(depth as usize + 1);
        }
    }
    best
}

/// Number of `(δ, s)`-supported points.
pub fn supported_count(
    points: &[Complex64],
    delta: f64,
    s: f64,
) -> Result<usize, DiagnosticsError> {
    let q = SupportedPointQuery::new(points.to_vec(), delta, s)?;
    Ok(q.supported().iter().filter(|b| **b).count())
}

/// Proportion of `(δ, s)`-supported points of `points`.
pub fn supported_fraction(
    points: &[Complex64],
    delta: f64,
    s: f64,
) -> Result<f64, DiagnosticsError> {
    Ok(SupportedPointQuery::new(points.to_vec(), delta, s)?.fraction())
}
