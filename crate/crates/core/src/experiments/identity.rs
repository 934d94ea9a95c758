use rand::Rng;

use super::{run_trials, trial_rng, CsvRow, ExperimentError};
use crate::map::rooted_isomorphic;
use crate::necklace::{
    build_glued, build_plus, build_rooted, degree_of_origin_from_walk, glue_word,
    origin_on_outer_boundary, Word,
};

/// One pair of the gluing identity that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub x: String,
    pub y: String,
}

impl CsvRow for IdentityFailure {
    const HEADER: &'static [&'static str] = &["x", "y"];
    fn record(&self) -> Vec<String> {
        vec![self.x.clone(), self.y.clone()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    /// Pairs checked by enumeration, and the equal-length ones among them.
    pub exhaustive: usize,
    pub equal_length: usize,
    pub random: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `build_rooted(glue_word(X, Y), |Y| + 1)` against `build_glued(X, Y)`.
pub fn identity_holds(x: &Word, y: &Word) -> bool {
    let Ok(glued) = build_glued(x, y) else {
        return false;
    };
    let Ok(rooted) = build_rooted(&glue_word(x, y), y.len() + 1) else {
        return false;
    };
    rooted_isomorphic(&rooted.map, &glued.map)
}

/// Checks the gluing identity on every pair with `1 <= |X| <= max_len` and
/// `|Y| <= max_len`, then on `random` pairs with lengths up to
/// `random_max_len`.
pub fn verify_fundamental_identity(
    max_len: usize,
    random: usize,
    random_max_len: usize,
    seed: u64,
) -> Result<IdentityReport, ExperimentError> {
    if random > 0 && random_max_len == 0 {
        return Err(ExperimentError::InvalidConfig(
            "random pairs need a positive length bound".into(),
        ));
    }
    let xs: Vec<Word> = (1..=max_len).flat_map(Word::all_of_length).collect();
    let ys: Vec<Word> = (0..=max_len).flat_map(Word::all_of_length).collect();
    let per_x = run_trials(xs.len(), |i| {
        let x = &xs[i];
        ys.iter()
            .filter(|y| !identity_holds(x, y))
            .map(|y| IdentityFailure {
                x: x.to_string(),
                y: y.to_string(),
            })
            .collect::<Vec<_>>()
    })?;
    let mut failures: Vec<IdentityFailure> = per_x.into_iter().flatten().collect();
    let random_failures = run_trials(random, |i| {
        let mut rng = trial_rng(seed, i as u64);
        let x = Word::random(rng.gen_range(1..=random_max_len), &mut rng);
        let y = Word::random(rng.gen_range(0..=random_max_len), &mut rng);
        (!identity_holds(&x, &y)).then(|| IdentityFailure {
            x: x.to_string(),
            y: y.to_string(),
        })
    })?;
    failures.extend(random_failures.into_iter().flatten());
    let equal_length = (1..=max_len).map(|l| 4usize.pow(2 * l as u32)).sum();
    Ok(IdentityReport {
        exhaustive: xs.len() * ys.len(),
        equal_length,
        random,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkReport {
    pub words: usize,
    pub degree_mismatches: Vec<String>,
    pub boundary_mismatches: Vec<String>,
}

impl WalkReport {
    pub fn passed(&self) -> bool {
        self.degree_mismatches.is_empty() && self.boundary_mismatches.is_empty()
    }
}

/// Origin degree and outer-boundary membership read off the walk, against
/// the built map, for every word of each given length.
pub fn verify_walk_statistics(lengths: &[usize]) -> Result<WalkReport, ExperimentError> {
    if lengths.contains(&0) {
        return Err(ExperimentError::InvalidConfig(
            "word lengths must be positive".into(),
        ));
    }
    let words: Vec<Word> = lengths
        .iter()
        .flat_map(|l| Word::all_of_length(*l))
        .collect();
    let checks = run_trials(words.len(), |i| {
        let w = &words[i];
        let m = build_plus(w).expect("non-empty word");
        let o = m.origin();
        (
            degree_of_origin_from_walk(w) == m.map.degree(o),
            origin_on_outer_boundary(w) == m.on_outer_boundary(o),
        )
    })?;
    let mut report = WalkReport {
        words: words.len(),
        degree_mismatches: Vec::new(),
        boundary_mismatches: Vec::new(),
    };
    for (w, (degree, boundary)) in words.iter().zip(checks) {
        if !degree {
            report.degree_mismatches.push(w.to_string());
        }
        if !boundary {
            report.boundary_mismatches.push(w.to_string());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_small() {
        let r = verify_fundamental_identity(2, 50, 20, 4).unwrap();
        assert_eq!(r.exhaustive, 20 * 21);
        assert_eq!(r.equal_length, 16 + 256);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn walk_statistics_small() {
        let r = verify_walk_statistics(&[1, 2, 3]).unwrap();
        assert_eq!(r.words, 4 + 16 + 64);
        assert!(r.passed());
        assert!(verify_walk_statistics(&[0]).is_err());
    }
}
