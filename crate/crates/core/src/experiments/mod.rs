//! Seeded Monte-Carlo checks of the necklace estimates and the diagnostic
//! curves built on top of them.
//!
//! Every experiment is a pure function of its configuration: trial `i`
//! draws from ChaCha8 stream `i` of the master seed, trials run on a rayon
//! pool capped by `RPM_LAB_THREADS`, and results are reduced in trial order.

mod curves;
mod identity;
mod local;
mod tails;

pub use curves::{
    lemma_a_constant, lemma_a_curves, regular_contrast, resistance_growth, supported_curve,
    ContrastReport, LemmaACheck, PointFamily, ResistanceGrowth, ResistanceRow, SupportedRow,
};
pub use identity::{
    identity_holds, verify_fundamental_identity, verify_walk_statistics, IdentityFailure,
    IdentityReport, WalkReport,
};
pub use local::{
    stabilization_fraction, tv_distance, verify_local_convergence, LocalConvergence, TvRow,
};
pub use tails::{
    verify_boundary_tail, verify_degree_tail, verify_root_distance, BoundaryRow, BoundaryTail,
    BoundaryTrial, DegreeRow, DegreeTail, MaxDegreeRow, RootDistance, RootDistanceRow,
};

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::necklace::Word;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Flatten(#[from] crate::uniformizer::FlattenError),
    #[error(transparent)]
    Diagnostics(#[from] crate::diagnostics::DiagnosticsError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Word length, trial count, master seed and the parameter grids.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Degree thresholds.
    pub ms: Vec<u32>,
    /// Boundary multipliers of `√n`.
    pub ts: Vec<f64>,
    /// Distances to the boundary.
    pub ks: Vec<u32>,
    /// Word lengths for the size sweeps.
    pub ns: Vec<usize>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            n: 10_000,
            trials: 10_000,
            seed: 1,
            ms: (1..=16).map(|i| 4 * i).collect(),
            ts: vec![1.0, 2.0, 3.0, 4.0, 6.0],
            ks: vec![0, 1, 2],
            ns: vec![100, 1_000, 10_000],
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n == 0 {
            return Err(ExperimentError::InvalidConfig(
                "n must be at least 1".into(),
            ));
        }
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        if self.ns.contains(&0) {
            return Err(ExperimentError::InvalidConfig(
                "every n must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The generator of trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A uniform word of length `n` and an independent uniform root index in
/// `1..=n`.
pub fn sample_unbiased(n: usize, seed: u64) -> Result<(Word, usize), ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidConfig(
            "n must be at least 1".into(),
        ));
    }
    Ok(draw(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

pub(crate) fn draw(n: usize, rng: &mut ChaCha8Rng) -> (Word, usize) {
    let w = Word::random(n, rng);
    let k = rng.gen_range(1..=n);
    (w, k)
}

/// Worker count from `RPM_LAB_THREADS`, or rayon's default.
pub fn thread_count() -> usize {
    std::env::var("RPM_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

/// Runs `f` on every trial index on the capped pool, results in index order.
pub(crate) fn run_trials<T: Send>(
    trials: usize,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Result<Vec<T>, ExperimentError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| (0..trials).into_par_iter().map(f).collect()))
}

/// Three binomial standard errors of an empirical frequency.
pub fn three_sigma(p: f64, trials: usize) -> f64 {
    3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// A table row with a fixed CSV header.
pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

pub fn write_csv<R: CsvRow, W: Write>(rows: &[R], out: W) -> Result<(), ExperimentError> {
    write_delimited(rows, out, b',')
}

/// Like [`write_csv`] with another field separator (`b'\t'` for TSV).
pub fn write_delimited<R: CsvRow, W: Write>(
    rows: &[R],
    out: W,
    delimiter: u8,
) -> Result<(), ExperimentError> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(out);
    w.write_record(R::HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<R: CsvRow>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}
