use super::{draw, run_trials, three_sigma, trial_rng, CsvRow, ExperimentError, TrialConfig};
use crate::necklace::{boundary_size_bound, build_plus, build_rooted, walk};

/// `C = 8 / log(4/3)` of the maximal-degree estimate.
pub fn max_degree_constant() -> f64 {
    8.0 / (4.0f64 / 3.0).ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeRow {
    pub m: u32,
    pub hits: usize,
    pub trials: usize,
    pub empirical: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CsvRow for DegreeRow {
    const HEADER: &'static [&'static str] =
        &["m", "empirical", "bound", "hits", "trials", "slack", "pass"];
    fn record(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.empirical.to_string(),
            self.bound.to_string(),
            self.hits.to_string(),
            self.trials.to_string(),
            three_sigma(self.empirical, self.trials).to_string(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct DegreeTail {
    pub rows: Vec<DegreeRow>,
    /// Trials whose degree sequence was recomputed under a second root.
    pub reroot_checked: usize,
    pub reroot_mismatches: usize,
}

impl DegreeTail {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass) && self.reroot_mismatches == 0
    }
}

/// Root-vertex degree tail of `T_n` against `2 (3/4)^{m/4}`.
///
/// The first 100 trials also rebuild the map under a fresh root and compare
/// sorted degree sequences.
pub fn verify_degree_tail(config: &TrialConfig) -> Result<DegreeTail, ExperimentError> {
    config.validate()?;
    let n = config.n;
    let results = run_trials(config.trials, |i| {
        let mut rng = trial_rng(config.seed, i as u64);
        let (w, k) = draw(n, &mut rng);
        let map = build_rooted(&w, k).expect("k in range").map;
        let degree = map.degree(map.root_vertex());
        let reroot = (i < 100).then(|| {
            let k2 = rand::Rng::gen_range(&mut rng, 1..=n);
            let other = build_rooted(&w, k2).expect("k in range").map;
            let mut a = map.degrees();
            let mut b = other.degrees();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        });
        (degree, reroot)
    })?;
    let rows = config
        .ms
        .iter()
        .map(|&m| {
            let hits = results.iter().filter(|(d, _)| *d >= m).count();
            let empirical = hits as f64 / config.trials as f64;
            let bound = 2.0 * 0.75f64.powf(m as f64 / 4.0);
            let pass = empirical <= bound + three_sigma(empirical, config.trials);
            DegreeRow {
                m,
                hits,
                trials: config.trials,
                empirical,
                bound,
                pass,
            }
        })
        .collect();
    let checks: Vec<bool> = results.iter().filter_map(|(_, r)| *r).collect();
    Ok(DegreeTail {
        rows,
        reroot_checked: checks.len(),
        reroot_mismatches: checks.iter().filter(|ok| !**ok).count(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryRow {
    pub t: f64,
    pub hits: usize,
    pub trials: usize,
    pub empirical: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CsvRow for BoundaryRow {
    const HEADER: &'static [&'static str] =
        &["t", "empirical", "bound", "hits", "trials", "slack", "pass"];
    fn record(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.empirical.to_string(),
            self.bound.to_string(),
            self.hits.to_string(),
            self.trials.to_string(),
            three_sigma(self.empirical, self.trials).to_string(),
            self.pass.to_string(),
        ]
    }
}

/// The walk quantities of one trial next to the measured boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryTrial {
    pub a: i64,
    pub b: i64,
    pub boundary: usize,
    /// `a + b + |X_n + a| + |Y_n + b| + 2`.
    pub bound: i64,
}

impl CsvRow for BoundaryTrial {
    const HEADER: &'static [&'static str] = &["a", "b", "boundary", "bound"];
    fn record(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.b.to_string(),
            self.boundary.to_string(),
            self.bound.to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryTail {
    pub rows: Vec<BoundaryRow>,
    pub trials: Vec<BoundaryTrial>,
    /// Trials where the walk bound fell below the measured boundary.
    pub domination_failures: usize,
    /// Trials where `a` or `b` disagreed with the running minimum of the walk.
    pub excursion_mismatches: usize,
}

impl BoundaryTail {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
            && self.domination_failures == 0
            && self.excursion_mismatches == 0
    }
}

/// Boundary length of `T_n` against `2 exp(−t²/32)` at `t√n`.
///
/// The boundary does not depend on the root, so each trial measures
/// `T_+(X)`.
pub fn verify_boundary_tail(config: &TrialConfig) -> Result<BoundaryTail, ExperimentError> {
    config.validate()?;
    let n = config.n;
    let trials = run_trials(config.trials, |i| {
        let (w, _) = draw(n, &mut trial_rng(config.seed, i as u64));
        let map = build_plus(&w).expect("non-empty word").map;
        let bound = boundary_size_bound(&w);
        // Running minima straight from the walk.
        let trace = walk(&w);
        let low_x = trace.xs().fold(0, i64::min);
        let low_y = trace.ys().fold(0, i64::min);
        let excursion_ok = bound.a == -low_x && bound.b == -low_y;
        (
            BoundaryTrial {
                a: bound.a,
                b: bound.b,
                boundary: map.boundary_vertex_count(),
                bound: bound.dominating(),
            },
            excursion_ok,
        )
    })?;
    let root_n = (n as f64).sqrt();
    let rows = config
        .ts
        .iter()
        .map(|&t| {
            let hits = trials
                .iter()
                .filter(|(tr, _)| tr.boundary as f64 >= t * root_n)
                .count();
            let empirical = hits as f64 / config.trials as f64;
            let bound = 2.0 * (-t * t / 32.0).exp();
            let pass = empirical <= bound + three_sigma(empirical, config.trials);
            BoundaryRow {
                t,
                hits,
                trials: config.trials,
                empirical,
                bound,
                pass,
            }
        })
        .collect();
    Ok(BoundaryTail {
        rows,
        domination_failures: trials
            .iter()
            .filter(|(tr, _)| tr.bound < tr.boundary as i64)
            .count(),
        excursion_mismatches: trials.iter().filter(|(_, ok)| !ok).count(),
        trials: trials.into_iter().map(|(t, _)| t).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDistanceRow {
    pub n: usize,
    pub k: u32,
    pub hits: usize,
    pub trials: usize,
    pub empirical: f64,
}

impl CsvRow for RootDistanceRow {
    const HEADER: &'static [&'static str] = &["n", "k", "empirical", "hits", "trials"];
    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.empirical.to_string(),
            self.hits.to_string(),
            self.trials.to_string(),
        ]
    }
}

/// `P[M_n ≥ C log n]` against `2/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxDegreeRow {
    pub n: usize,
    pub threshold: f64,
    pub hits: usize,
    pub trials: usize,
    pub empirical: f64,
    pub bound: f64,
    /// Largest `M_n` seen.
    pub largest: u32,
    pub pass: bool,
}

impl CsvRow for MaxDegreeRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "threshold",
        "empirical",
        "bound",
        "hits",
        "trials",
        "largest",
        "pass",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.threshold.to_string(),
            self.empirical.to_string(),
            self.bound.to_string(),
            self.hits.to_string(),
            self.trials.to_string(),
            self.largest.to_string(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct RootDistance {
    pub rows: Vec<RootDistanceRow>,
    pub max_degree: Vec<MaxDegreeRow>,
    /// Per `k`: strictly decreasing in `n`.
    pub decreasing: Vec<(u32, bool)>,
}

impl RootDistance {
    pub fn passed(&self) -> bool {
        self.decreasing.iter().all(|(_, d)| *d) && self.max_degree.iter().all(|r| r.pass)
    }
}

/// `P[d_gr(root, ∂T_n) ≤ k]` over `config.ns`, with the maximal degree
/// `M_n` of every sample. Each size uses its own block of trial streams.
pub fn verify_root_distance(config: &TrialConfig) -> Result<RootDistance, ExperimentError> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut max_degree = Vec::new();
    for (block, &n) in config.ns.iter().enumerate() {
        let offset = (block * config.trials) as u64;
        let samples = run_trials(config.trials, |i| {
            let (w, k) = draw(n, &mut trial_rng(config.seed, offset + i as u64));
            let map = build_rooted(&w, k).expect("k in range").map;
            let d = map
                .boundary_distance(map.root_vertex())
                .expect("discs have a boundary");
            (d, map.degrees().into_iter().max().unwrap_or(0))
        })?;
        for &k in &config.ks {
            let hits = samples.iter().filter(|(d, _)| *d <= k).count();
            rows.push(RootDistanceRow {
                n,
                k,
                hits,
                trials: config.trials,
                empirical: hits as f64 / config.trials as f64,
            });
        }
        let threshold = max_degree_constant() * (n as f64).ln();
        let hits = samples
            .iter()
            .filter(|(_, m)| *m as f64 >= threshold)
            .count();
        let empirical = hits as f64 / config.trials as f64;
        let bound = 2.0 / n as f64;
        max_degree.push(MaxDegreeRow {
            n,
            threshold,
            hits,
            trials: config.trials,
            empirical,
            bound,
            largest: samples.iter().map(|(_, m)| *m).max().unwrap_or(0),
            pass: empirical <= bound + three_sigma(empirical, config.trials),
        });
    }
    let decreasing = config
        .ks
        .iter()
        .map(|&k| {
            let series: Vec<f64> = rows
                .iter()
                .filter(|r| r.k == k)
                .map(|r| r.empirical)
                .collect();
            (k, series.windows(2).all(|w| w[1] < w[0]))
        })
        .collect();
    Ok(RootDistance {
        rows,
        max_degree,
        decreasing,
    })
}
