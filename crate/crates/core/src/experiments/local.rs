use std::collections::HashMap;

use super::{draw, run_trials, trial_rng, CsvRow, ExperimentError};
use crate::map::CanonicalCode;
use crate::necklace::{build_glued, build_rooted, Word};

/// Encodings seen fewer times than this, over both samples, share one bin.
const POOL_BELOW: usize = 5;
/// Doublings of the truncation tried before giving up on stabilization.
const MAX_DOUBLINGS: usize = 4;
/// Seed streams of the limit sample start here, clear of the per-size blocks.
const LIMIT_STREAM: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq)]
pub struct TvRow {
    pub n: usize,
    pub trials: usize,
    pub tv: f64,
    /// Histogram bins after pooling.
    pub bins: usize,
}

impl CsvRow for TvRow {
    const HEADER: &'static [&'static str] = &["n", "tv", "trials", "bins"];
    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.tv.to_string(),
            self.trials.to_string(),
            self.bins.to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct LocalConvergence {
    pub r: usize,
    /// Truncation used for the limit law, after doubling.
    pub m: usize,
    /// Fraction of trials with `B_r` equal at `m` and `2m`.
    pub stabilization: f64,
    pub rows: Vec<TvRow>,
}

impl LocalConvergence {
    pub fn decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].tv < w[0].tv)
    }

    pub fn passed(&self) -> bool {
        self.decreasing() && self.stabilization >= 0.99
    }
}

/// Total variation between two samples of encodings, pooling rare ones.
pub fn tv_distance(a: &[CanonicalCode], b: &[CanonicalCode]) -> (f64, usize) {
    let mut counts: HashMap<&CanonicalCode, (usize, usize)> = HashMap::new();
    for c in a {
        counts.entry(c).or_default().0 += 1;
    }
    for c in b {
        counts.entry(c).or_default().1 += 1;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut pooled = (0usize, 0usize);
    let mut sum = 0.0;
    let mut bins = 0;
    for (x, y) in counts.values() {
        if x + y < POOL_BELOW {
            pooled.0 += x;
            pooled.1 += y;
        } else {
            sum += (*x as f64 / na - *y as f64 / nb).abs();
            bins += 1;
        }
    }
    if pooled != (0, 0) {
        sum += (pooled.0 as f64 / na - pooled.1 as f64 / nb).abs();
        bins += 1;
    }
    (sum / 2.0, bins)
}

fn truncated_ball(x: &Word, y: &Word, m: usize, r: usize) -> CanonicalCode {
    let map = build_glued(&x.prefix(m), &y.prefix(m))
        .expect("non-empty word")
        .map;
    map.ball(r).canonical_code(&map)
}

/// `B_r` of the glued map at truncations `m` and `2m`, per trial.
fn paired_balls(
    r: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<(CanonicalCode, CanonicalCode)>, ExperimentError> {
    if m == 0 || trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "m and trials must be at least 1".into(),
        ));
    }
    run_trials(trials, |i| {
        let mut rng = trial_rng(seed, LIMIT_STREAM + i as u64);
        let x = Word::random(2 * m, &mut rng);
        let y = Word::random(2 * m, &mut rng);
        (
            truncated_ball(&x, &y, m, r),
            truncated_ball(&x, &y, 2 * m, r),
        )
    })
}

fn agreement(pairs: &[(CanonicalCode, CanonicalCode)]) -> f64 {
    pairs.iter().filter(|(a, b)| a == b).count() as f64 / pairs.len() as f64
}

/// Fraction of trials where `B_r` of the glued map agrees at truncations
/// `m` and `2m`.
pub fn stabilization_fraction(
    r: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<f64, ExperimentError> {
    Ok(agreement(&paired_balls(r, m, trials, seed)?))
}

/// Total variation between the law of `B_r(T_n)` for each `n` and the law
/// of `B_r` of the glued map truncated at `m`.
///
/// `m` is doubled until `B_r` agrees at `m` and `2m` in 99% of trials (at
/// most four times). The limit sample is the truncation-`m` half of the
/// final stabilization run.
pub fn verify_local_convergence(
    r: usize,
    ns: &[usize],
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<LocalConvergence, ExperimentError> {
    if ns.contains(&0) {
        return Err(ExperimentError::InvalidConfig(
            "every n must be at least 1".into(),
        ));
    }
    let mut m = m;
    let mut pairs = paired_balls(r, m, trials, seed)?;
    for _ in 0..MAX_DOUBLINGS {
        if agreement(&pairs) >= 0.99 {
            break;
        }
        m *= 2;
        pairs = paired_balls(r, m, trials, seed)?;
    }
    let stabilization = agreement(&pairs);
    let limit: Vec<CanonicalCode> = pairs.into_iter().map(|p| p.0).collect();
    let mut rows = Vec::new();
    for (block, &n) in ns.iter().enumerate() {
        let offset = (block * trials) as u64;
        let sample = run_trials(trials, |i| {
            let (w, k) = draw(n, &mut trial_rng(seed, offset + i as u64));
            let map = build_rooted(&w, k).expect("k in range").map;
            map.ball(r).canonical_code(&map)
        })?;
        let (tv, bins) = tv_distance(&sample, &limit);
        rows.push(TvRow {
            n,
            trials,
            tv,
            bins,
        });
    }
    Ok(LocalConvergence {
        r,
        m,
        stabilization,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(v: u32) -> CanonicalCode {
        CanonicalCode(vec![v])
    }

    #[test]
    fn tv_of_identical_and_disjoint_samples() {
        let a: Vec<CanonicalCode> = (0..50).map(|i| code(i % 2)).collect();
        assert_eq!(tv_distance(&a, &a).0, 0.0);
        let b: Vec<CanonicalCode> = (0..50).map(|i| code(2 + i % 2)).collect();
        assert_eq!(tv_distance(&a, &b).0, 1.0);
    }

    #[test]
    fn rare_codes_are_pooled() {
        // Two singletons on either side land in the same bin.
        let a = vec![code(0), code(0), code(0), code(0), code(0), code(7)];
        let b = vec![code(0), code(0), code(0), code(0), code(0), code(8)];
        let (tv, bins) = tv_distance(&a, &b);
        assert_eq!(tv, 0.0);
        assert_eq!(bins, 2);
    }

    #[test]
    fn radius_zero_is_trivial() {
        let lc = verify_local_convergence(0, &[10, 40], 20, 30, 2).unwrap();
        assert!(lc.rows.iter().all(|r| r.tv == 0.0));
        assert_eq!(lc.stabilization, 1.0);
        assert_eq!(lc.m, 20);
    }

    #[test]
    fn small_radius_one_run() {
        let lc = verify_local_convergence(1, &[20, 400], 400, 600, 3).unwrap();
        assert!(lc.stabilization > 0.9);
        assert!(lc.rows[1].tv < lc.rows[0].tv, "{:?}", lc.rows);
    }
}
