use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use rpm_lab::diagnostics::{normalize_centers, points, resistance_curve, DiagnosticsError};
use rpm_lab::experiments::{
    sample_unbiased, supported_curve, verify_boundary_tail, verify_degree_tail,
    verify_fundamental_identity, verify_local_convergence, verify_root_distance, CsvRow,
    ExperimentError, TrialConfig,
};
use rpm_lab::map::{text as map_text, RootedTriangulation};
use rpm_lab::necklace::{build_plus, build_rooted, Word};
use rpm_lab::render::{render_svg, RenderOptions};
use rpm_lab::uniformizer::{flatten, layout, text as layout_text, ConformalLayout};

use crate::io::{parse_document, parse_map, read_input, table, write_output, Document};
use crate::{Cli, Command, Failure, Lemma};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Gen {
            word,
            random_word,
            root,
        } => {
            let map = generate(word.as_deref(), *random_word, *root, cli.seed)?;
            write_output(cli.out.as_ref(), map_text::emit(&map).as_bytes())
        }
        Command::Flatten { input } => {
            let map = parse_map(&read_input(input.as_deref())?)?;
            let layout = flat_layout(&map)?;
            write_output(cli.out.as_ref(), layout_text::emit(&layout).as_bytes())
        }
        Command::Render {
            input,
            map,
            half_flowers,
            window,
            size,
        } => {
            if !(*size > 0.0) {
                return Err(Failure::Usage(anyhow!("--size must be positive")));
            }
            if window.is_some_and(|w| !(w > 0.0)) {
                return Err(Failure::Usage(anyhow!("--window must be positive")));
            }
            let (tri, layout) = match parse_document(&read_input(input.as_deref())?)? {
                Document::Map(m) => {
                    let l = flat_layout(&m)?;
                    (m, l)
                }
                Document::Layout(l) => {
                    let Some(p) = map else {
                        return Err(Failure::Usage(anyhow!(
                            "rendering a layout needs its triangulation (--map)"
                        )));
                    };
                    let m = parse_map(&read_input(Some(p))?)?;
                    if m.n_faces() != l.n_faces() {
                        return Err(Failure::Usage(anyhow!(
                            "--map has {} faces, the layout {}",
                            m.n_faces(),
                            l.n_faces()
                        )));
                    }
                    (m, l)
                }
            };
            let options = RenderOptions {
                size: *size,
                half_flowers: *half_flowers,
                window: *window,
            };
            write_output(
                cli.out.as_ref(),
                render_svg(&tri, &layout, &options).as_bytes(),
            )
        }
        Command::Embed { input } => {
            let layout = match parse_document(&read_input(input.as_deref())?)? {
                Document::Map(m) => flat_layout(&m)?,
                Document::Layout(l) => l,
            };
            let pts = normalize_centers(&layout.centers, layout.root)
                .map_err(|e| Failure::Internal(e.into()))?;
            write_output(cli.out.as_ref(), points::emit(&pts).as_bytes())
        }
        Command::Supported {
            input,
            delta,
            s_grid,
        } => {
            let pts = points::parse(&read_input(input.as_deref())?)
                .map_err(|e| Failure::Usage(e.into()))?;
            let rows =
                supported_curve(&pts, delta, s_grid, cli.seed).map_err(experiment_failure)?;
            write_output(cli.out.as_ref(), &table(&rows, cli.format))
        }
        Command::Resist { input, rmax } => {
            let map = parse_map(&read_input(input.as_deref())?)?;
            let curve = resistance_curve(&map.dual_graph(), map.root().face, *rmax)
                .map_err(diagnostics_failure)?;
            let rows: Vec<ResistanceRow> = curve
                .into_iter()
                .map(|(r, resistance)| ResistanceRow { r, resistance })
                .collect();
            write_output(cli.out.as_ref(), &table(&rows, cli.format))
        }
        Command::Verify {
            lemma,
            n,
            trials,
            ns,
            max_len,
            random_pairs,
            random_len,
            radius,
            m,
        } => {
            let config = TrialConfig {
                n: *n,
                trials: *trials,
                seed: cli.seed,
                ns: ns.clone(),
                ..TrialConfig::default()
            };
            let mut out = Tables::new(cli);
            let verdict = match lemma {
                Lemma::Degree => {
                    let r = verify_degree_tail(&config).map_err(experiment_failure)?;
                    out.add("degree-tail", table(&r.rows, cli.format))?;
                    eprintln!(
                        "reroot check: {} mismatches in {}",
                        r.reroot_mismatches, r.reroot_checked
                    );
                    r.passed()
                        .then_some(())
                        .ok_or("a degree row exceeds its bound or a reroot changed the degrees")
                }
                Lemma::Boundary => {
                    let r = verify_boundary_tail(&config).map_err(experiment_failure)?;
                    out.add("boundary-tail", table(&r.rows, cli.format))?;
                    eprintln!(
                        "walk bound failures: {}, excursion mismatches: {}",
                        r.domination_failures, r.excursion_mismatches
                    );
                    r.passed()
                        .then_some(())
                        .ok_or("a boundary row exceeds its bound or the walk bound failed")
                }
                Lemma::RootDistance => {
                    let r = verify_root_distance(&config).map_err(experiment_failure)?;
                    out.add("root-distance", table(&r.rows, cli.format))?;
                    out.add("max-degree", table(&r.max_degree, cli.format))?;
                    for (k, d) in &r.decreasing {
                        eprintln!("k = {k}: strictly decreasing in n: {d}");
                    }
                    r.passed()
                        .then_some(())
                        .ok_or("a distance curve does not decrease or a max-degree row fails")
                }
                Lemma::Local => {
                    let r = verify_local_convergence(*radius, ns, *m, *trials, cli.seed)
                        .map_err(experiment_failure)?;
                    out.add("local-convergence", table(&r.rows, cli.format))?;
                    eprintln!(
                        "truncation m = {}, stabilization {:.4}",
                        r.m, r.stabilization
                    );
                    r.passed()
                        .then_some(())
                        .ok_or("TV is not decreasing or the truncation is unstable")
                }
                Lemma::Identity => {
                    let r =
                        verify_fundamental_identity(*max_len, *random_pairs, *random_len, cli.seed)
                            .map_err(experiment_failure)?;
                    out.add("identity-failures", table(&r.failures, cli.format))?;
                    eprintln!(
                        "{} enumerated pairs ({} of equal length), {} random pairs, {} failures",
                        r.exhaustive,
                        r.equal_length,
                        r.random,
                        r.failures.len()
                    );
                    r.passed()
                        .then_some(())
                        .ok_or("the identity fails on some pair")
                }
            };
            verdict.map_err(|msg| Failure::Verification(msg.to_string()))
        }
    }
}

fn generate(
    word: Option<&str>,
    random: Option<usize>,
    root: Option<usize>,
    seed: u64,
) -> Result<RootedTriangulation, Failure> {
    let built = match (word, random) {
        (Some(w), _) => {
            let w: Word = w
                .parse()
                .map_err(|e: rpm_lab::necklace::ParseWordError| Failure::Usage(e.into()))?;
            match root {
                Some(k) => build_rooted(&w, k),
                None => build_plus(&w),
            }
        }
        (None, Some(n)) => {
            let (w, k) = sample_unbiased(n, seed).map_err(experiment_failure)?;
            build_rooted(&w, k)
        }
        (None, None) => return Err(Failure::Usage(anyhow!("give --word or --random-word"))),
    };
    built.map(|m| m.map).map_err(|e| Failure::Usage(e.into()))
}

fn flat_layout(map: &RootedTriangulation) -> Result<ConformalLayout, Failure> {
    let factors = flatten(map)
        .context("flattening")
        .map_err(Failure::Internal)?;
    layout(map, &factors)
        .context("laying out")
        .map_err(Failure::Internal)
}

fn experiment_failure(e: ExperimentError) -> Failure {
    match e {
        ExperimentError::InvalidConfig(_) => Failure::Usage(e.into()),
        ExperimentError::Diagnostics(d) => diagnostics_failure(d),
        other => Failure::Internal(other.into()),
    }
}

fn diagnostics_failure(e: DiagnosticsError) -> Failure {
    match e {
        DiagnosticsError::InvalidDelta(_)
        | DiagnosticsError::InvalidS(_)
        | DiagnosticsError::InvalidDegree(_)
        | DiagnosticsError::ZeroRadius
        | DiagnosticsError::TooFewPoints(_)
        | DiagnosticsError::DuplicatePoint(..) => Failure::Usage(e.into()),
        other => Failure::Internal(other.into()),
    }
}

struct ResistanceRow {
    r: usize,
    resistance: f64,
}

impl CsvRow for ResistanceRow {
    const HEADER: &'static [&'static str] = &["r", "resistance"];
    fn record(&self) -> Vec<String> {
        vec![self.r.to_string(), self.resistance.to_string()]
    }
}

/// Tables of one `verify` run: files in the `--out` directory, or standard
/// output with a blank line between tables.
struct Tables<'a> {
    cli: &'a Cli,
    printed: bool,
}

impl<'a> Tables<'a> {
    fn new(cli: &'a Cli) -> Self {
        Tables {
            cli,
            printed: false,
        }
    }

    fn add(&mut self, name: &str, bytes: Vec<u8>) -> Result<(), Failure> {
        match &self.cli.out {
            Some(dir) => {
                fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))
                    .map_err(Failure::Internal)?;
                let ext = match self.cli.format {
                    crate::Format::Csv => "csv",
                    crate::Format::Tsv => "tsv",
                };
                let path = Path::new(dir).join(format!("{name}.{ext}"));
                fs::write(&path, bytes)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(Failure::Internal)
            }
            None => {
                if self.printed {
                    write_output(None, b"\n")?;
                }
                self.printed = true;
                write_output(None, &bytes)
            }
        }
    }
}
