use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use super::{draw, run_trials, trial_rng, CsvRow, ExperimentError};
use crate::diagnostics::{
    center_embedding, regular_ball, resistance_curve, DiagnosticsError, SupportedPointQuery,
};
use crate::map::{FaceId, Root, RootedTriangulation};
use crate::necklace::build_rooted;
use crate::uniformizer::{flatten, layout};

#[derive(Clone, Debug, PartialEq)]
pub struct SupportedRow {
    pub delta: f64,
    pub s: f64,
    pub fraction: f64,
    pub n: usize,
    pub seed: u64,
}

impl CsvRow for SupportedRow {
    const HEADER: &'static [&'static str] = &["delta", "s", "fraction", "n", "seed"];
    fn record(&self) -> Vec<String> {
        vec![
            self.delta.to_string(),
            self.s.to_string(),
            self.fraction.to_string(),
            self.n.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Supported fraction of `points` on the grid `deltas × s_grid`.
pub fn supported_curve(
    points: &[Complex64],
    deltas: &[f64],
    s_grid: &[f64],
    seed: u64,
) -> Result<Vec<SupportedRow>, ExperimentError> {
    if let Some(s) = s_grid.iter().find(|s| !(**s >= 2.0)) {
        return Err(DiagnosticsError::InvalidS(*s).into());
    }
    let mut rows = Vec::new();
    for &delta in deltas {
        let levels = SupportedPointQuery::new(points.to_vec(), delta, 2.0)?.levels();
        for &s in s_grid {
            let count = levels.iter().filter(|l| **l as f64 >= s).count();
            rows.push(SupportedRow {
                delta,
                s,
                fraction: count as f64 / points.len() as f64,
                n: points.len(),
                seed,
            });
        }
    }
    Ok(rows)
}

/// Point sets for the supported-fraction curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFamily {
    /// Uniform points in the unit disc.
    UniformDisc,
    /// The triangular lattice cut to a disc.
    Lattice,
    /// Normalized face centers of a flattened necklace map `T_n`.
    NecklaceCenters,
    /// `2^{-k}` on the real line.
    GeometricLine,
}

impl PointFamily {
    pub const ALL: [PointFamily; 4] = [
        PointFamily::UniformDisc,
        PointFamily::Lattice,
        PointFamily::NecklaceCenters,
        PointFamily::GeometricLine,
    ];

    /// About `size` points; exact except for the lattice, which keeps whole
    /// shells.
    pub fn sample(self, size: usize, seed: u64) -> Result<Vec<Complex64>, ExperimentError> {
        Ok(match self {
            PointFamily::UniformDisc => {
                let mut rng = trial_rng(seed, 0);
                let mut pts = Vec::with_capacity(size);
                while pts.len() < size {
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    if z.norm_sqr() < 1.0 {
                        pts.push(z);
                    }
                }
                pts
            }
            PointFamily::Lattice => {
                let radius = (size as f64 * 3f64.sqrt() / (2.0 * std::f64::consts::PI)).sqrt();
                let w = Complex64::new(0.5, 3f64.sqrt() / 2.0);
                let span = radius.ceil() as i64 + 2;
                let mut pts = Vec::new();
                for a in -span..=span {
                    for b in -span..=span {
                        let z = a as f64 + w * b as f64;
                        if z.norm() <= radius + 1e-9 {
                            pts.push(z);
                        }
                    }
                }
                pts
            }
            PointFamily::NecklaceCenters => {
                let (w, k) = draw(size, &mut trial_rng(seed, 0));
                embedded_centers(&build_rooted(&w, k).expect("k in range").map)?
            }
            PointFamily::GeometricLine => (0..size)
                .map(|k| Complex64::new(0.5f64.powi(k as i32), 0.0))
                .collect(),
        })
    }
}

impl fmt::Display for PointFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointFamily::UniformDisc => "uniform-disc",
            PointFamily::Lattice => "lattice",
            PointFamily::NecklaceCenters => "necklace-centers",
            PointFamily::GeometricLine => "geometric-line",
        })
    }
}

/// Normalized face centers of the flattened map.
pub fn embedded_centers(map: &RootedTriangulation) -> Result<Vec<Complex64>, ExperimentError> {
    let l = layout(map, &flatten(map)?)?;
    Ok(center_embedding(map, &l)?.points().to_vec())
}

/// Threshold for `sup_s s · fraction(δ, s)`: `4/δ²`, just above the
/// triangular lattice's `≈ 3.63/δ²` points in `D(v, ρ_v/δ)`, every one of
/// which stays supported until `s` reaches that count.
pub fn lemma_a_constant(delta: f64) -> f64 {
    4.0 / (delta * delta)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaACheck {
    pub family: String,
    pub delta: f64,
    /// `max_s s · fraction`.
    pub c_hat: f64,
    pub allowed: f64,
    pub pass: bool,
}

impl CsvRow for LemmaACheck {
    const HEADER: &'static [&'static str] = &["family", "delta", "c_hat", "allowed", "pass"];
    fn record(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.delta.to_string(),
            self.c_hat.to_string(),
            self.allowed.to_string(),
            self.pass.to_string(),
        ]
    }
}

/// The supported curve of one family sample and `s · fraction` per `δ`
/// against [`lemma_a_constant`].
pub fn lemma_a_curves(
    family: PointFamily,
    size: usize,
    deltas: &[f64],
    s_grid: &[f64],
    seed: u64,
) -> Result<(Vec<SupportedRow>, Vec<LemmaACheck>), ExperimentError> {
    let pts = family.sample(size, seed)?;
    let rows = supported_curve(&pts, deltas, s_grid, seed)?;
    let checks = deltas
        .iter()
        .map(|&delta| {
            let c_hat = rows
                .iter()
                .filter(|r| r.delta == delta)
                .map(|r| r.s * r.fraction)
                .fold(0.0, f64::max);
            let allowed = lemma_a_constant(delta);
            LemmaACheck {
                family: family.to_string(),
                delta,
                c_hat,
                allowed,
                pass: c_hat < allowed,
            }
        })
        .collect();
    Ok((rows, checks))
}

#[derive(Clone, Debug)]
pub struct ContrastReport {
    pub regular_faces: usize,
    pub regular: Vec<f64>,
    pub necklace_faces: Vec<usize>,
    pub necklace: Vec<f64>,
}

impl ContrastReport {
    pub fn regular_median(&self) -> f64 {
        median(&self.regular)
    }

    pub fn necklace_median(&self) -> f64 {
        median(&self.necklace)
    }

    pub fn passed(&self) -> bool {
        self.regular_median() > self.necklace_median()
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Supported fractions of the 7-regular ball `B_k` under uniformly drawn
/// root faces, next to necklace maps `T_n` with `n` uniform within 10% of
/// the ball's face count.
pub fn regular_contrast(
    k: usize,
    samples: usize,
    delta: f64,
    s: f64,
    seed: u64,
) -> Result<ContrastReport, ExperimentError> {
    let ball = regular_ball(7, k)?;
    let faces = ball.n_faces();
    let (lo, hi) = (faces * 9 / 10, faces * 11 / 10);
    let regular = run_trials(samples, |i| -> Result<f64, ExperimentError> {
        let f = trial_rng(seed, i as u64).gen_range(0..faces);
        let rooted = ball
            .with_root(Root::new(FaceId(f), 0))
            .expect("face in range");
        let q = SupportedPointQuery::new(embedded_centers(&rooted)?, delta, s)?;
        Ok(q.fraction())
    })?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let necklace = run_trials(samples, |i| -> Result<(usize, f64), ExperimentError> {
        let mut rng = trial_rng(seed, (samples + i) as u64);
        let n = rng.gen_range(lo..=hi);
        let (w, root) = draw(n, &mut rng);
        let map = build_rooted(&w, root).expect("k in range").map;
        let q = SupportedPointQuery::new(embedded_centers(&map)?, delta, s)?;
        Ok((n, q.fraction()))
    })?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(ContrastReport {
        regular_faces: faces,
        regular,
        necklace_faces: necklace.iter().map(|p| p.0).collect(),
        necklace: necklace.iter().map(|p| p.1).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResistanceRow {
    pub sample: usize,
    pub n: usize,
    pub r: usize,
    pub resistance: f64,
}

impl CsvRow for ResistanceRow {
    const HEADER: &'static [&'static str] = &["sample", "n", "r", "resistance"];
    fn record(&self) -> Vec<String> {
        vec![
            self.sample.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.resistance.to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct ResistanceGrowth {
    pub rows: Vec<ResistanceRow>,
    /// Per sample: non-decreasing in `r`.
    pub monotone: Vec<bool>,
}

impl ResistanceGrowth {
    pub fn passed(&self) -> bool {
        self.monotone.iter().all(|m| *m)
    }
}

/// Root-to-distance-`r` dual resistance of `samples` draws of `T_n`.
pub fn resistance_growth(
    n: usize,
    samples: usize,
    r_max: usize,
    seed: u64,
) -> Result<ResistanceGrowth, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidConfig(
            "n must be at least 1".into(),
        ));
    }
    let curves = run_trials(samples, |i| {
        let (w, k) = draw(n, &mut trial_rng(seed, i as u64));
        let map = build_rooted(&w, k).expect("k in range").map;
        resistance_curve(&map.dual_graph(), map.root().face, r_max)
    })?;
    let mut rows = Vec::new();
    let mut monotone = Vec::new();
    for (sample, curve) in curves.into_iter().enumerate() {
        let curve = match curve {
            Ok(c) => c,
            // A single face has no dual neighbors at all.
            Err(DiagnosticsError::EmptySink(_)) => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        monotone.push(curve.windows(2).all(|w| w[1].1 >= w[0].1));
        rows.extend(curve.into_iter().map(|(r, resistance)| ResistanceRow {
            sample,
            n,
            r,
            resistance,
        }));
    }
    Ok(ResistanceGrowth { rows, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(PointFamily::UniformDisc.sample(300, 1).unwrap().len(), 300);
        assert_eq!(PointFamily::GeometricLine.sample(30, 1).unwrap().len(), 30);
        // Radius 1 keeps the hexagon around 0.
        let lat = PointFamily::Lattice.sample(4, 1).unwrap();
        assert_eq!(lat.len(), 7);
        assert_eq!(
            PointFamily::NecklaceCenters.sample(120, 1).unwrap().len(),
            120
        );
    }

    #[test]
    fn curve_is_nonincreasing_in_s() {
        let pts = PointFamily::UniformDisc.sample(400, 3).unwrap();
        let s_grid = [2.0, 4.0, 8.0, 16.0];
        let rows = supported_curve(&pts, &[0.25, 0.5], &s_grid, 3).unwrap();
        assert_eq!(rows.len(), 8);
        for w in rows.chunks(4) {
            for p in w.windows(2) {
                assert!(p[1].fraction <= p[0].fraction);
            }
            // The shared levels agree with a direct query.
            let direct = SupportedPointQuery::new(pts.clone(), w[2].delta, 8.0)
                .unwrap()
                .fraction();
            assert_eq!(direct, w[2].fraction);
        }
        assert!(supported_curve(&pts, &[0.5], &[1.0], 3).is_err());
    }

    #[test]
    fn lattice_points_stay_supported() {
        // With δ = 0.45 no lattice shell sits on a disc boundary: D(v, 2.22)
        // holds 19 points and a disc of radius 0.45 covers one.
        let pts = PointFamily::Lattice.sample(2000, 1).unwrap();
        let q = SupportedPointQuery::new(pts.clone(), 0.45, 18.0).unwrap();
        let q19 = SupportedPointQuery::new(pts, 0.45, 19.0).unwrap();
        assert!(q.fraction() > 0.75, "{}", q.fraction());
        assert_eq!(q19.fraction(), 0.0);
        assert!(lemma_a_constant(0.45) > 18.0);
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn resistance_growth_is_monotone() {
        let g = resistance_growth(500, 3, 12, 4).unwrap();
        assert!(g.passed());
        assert_eq!(g.monotone.len(), 3);
    }
}
