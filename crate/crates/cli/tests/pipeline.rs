use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use rpm_lab::diagnostics::{normalize_centers, points};
use rpm_lab::experiments::{csv_string, supported_curve};
use rpm_lab::map::text as map_text;
use rpm_lab::necklace::build_plus;
use rpm_lab::uniformizer::{flatten, layout, text as layout_text};

const FIG4: &str = "BRbRRbBBrrRBRR";

fn rpm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpm-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = rpm(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_figure_word() {
    let text = ok(&["gen", "--word", FIG4]);
    let map = map_text::parse(&text).unwrap();
    assert_eq!(map.n_faces(), 14);
    assert_eq!(map, build_plus(&FIG4.parse().unwrap()).unwrap().map);
}

#[test]
fn pipeline_through_files_loses_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let (tri, lay, pts, csv) = (
        path(dir.path(), "t.tri"),
        path(dir.path(), "t.layout"),
        path(dir.path(), "t.pts"),
        path(dir.path(), "t.csv"),
    );
    ok(&["gen", "--random-word", "400", "--seed", "9", "--out", &tri]);
    ok(&["flatten", &tri, "--out", &lay]);
    ok(&["embed", &lay, "--out", &pts]);
    ok(&[
        "supported",
        &pts,
        "--delta",
        "0.25,0.5",
        "--s-grid",
        "2,4,8",
        "--out",
        &csv,
    ]);

    // Each stage read back from disk equals the same stage done in memory.
    let map = map_text::parse(&fs::read_to_string(&tri).unwrap()).unwrap();
    let expected = layout(&map, &flatten(&map).unwrap()).unwrap();
    let read = layout_text::parse(&fs::read_to_string(&lay).unwrap()).unwrap();
    assert_eq!(read, expected);
    let centers = normalize_centers(&expected.centers, expected.root).unwrap();
    let read_pts: Vec<Complex64> = points::parse(&fs::read_to_string(&pts).unwrap()).unwrap();
    assert_eq!(read_pts, centers);
    let rows = supported_curve(&centers, &[0.25, 0.5], &[2.0, 4.0, 8.0], 1).unwrap();
    assert_eq!(fs::read_to_string(&csv).unwrap(), csv_string(&rows));

    // Embedding straight from the triangulation gives the same points.
    assert_eq!(ok(&["embed", &tri]), fs::read_to_string(&pts).unwrap());
}

#[test]
fn runs_are_reproducible() {
    let a = ok(&["gen", "--random-word", "200", "--seed", "3"]);
    assert_eq!(a, ok(&["gen", "--random-word", "200", "--seed", "3"]));
    assert_ne!(a, ok(&["gen", "--random-word", "200", "--seed", "4"]));
    let dir = tempfile::tempdir().unwrap();
    let tri = path(dir.path(), "t.tri");
    fs::write(&tri, &a).unwrap();
    let svg = ok(&["render", &tri, "--half-flowers"]);
    assert_eq!(svg, ok(&["render", &tri, "--half-flowers"]));
    roxmltree::Document::parse(&svg).unwrap();
}

fn area(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| pts[i].0 * pts[(i + 1) % n].1 - pts[(i + 1) % n].0 * pts[i].1)
        .sum::<f64>()
        .abs()
        / 2.0
}

#[test]
fn render_single_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let tri = path(dir.path(), "one.tri");
    fs::write(&tri, "tri 3 1 disc\nf 0 1 2\nroot 0 0\n").unwrap();
    let svg = ok(&["render", &tri]);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polys = |class: &str| -> Vec<Vec<(f64, f64)>> {
        doc.descendants()
            .filter(|n| n.has_tag_name("polygon") && n.attribute("class") == Some(class))
            .map(|n| {
                n.attribute("points")
                    .unwrap()
                    .split_whitespace()
                    .map(|p| {
                        let (x, y) = p.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    };
    let (faces, holes) = (polys("face"), polys("interstice"));
    assert_eq!((faces.len(), holes.len()), (1, 1));
    assert!((area(&holes[0]) / area(&faces[0]) - 0.25).abs() < 1e-5);
}

#[test]
fn render_layout_needs_its_map() {
    let dir = tempfile::tempdir().unwrap();
    let (tri, lay) = (path(dir.path(), "t.tri"), path(dir.path(), "t.layout"));
    ok(&["gen", "--word", FIG4, "--out", &tri]);
    ok(&["flatten", &tri, "--out", &lay]);
    assert_eq!(ok(&["render", &lay, "--map", &tri]), ok(&["render", &tri]));
    assert_eq!(rpm(&["render", &lay]).status.code(), Some(2));
}

#[test]
fn resistance_curve_output() {
    let dir = tempfile::tempdir().unwrap();
    let tri = path(dir.path(), "t.tri");
    ok(&["gen", "--random-word", "2000", "--out", &tri]);
    let csv = ok(&["resist", &tri, "--rmax", "6"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("r,resistance"));
    let values: Vec<f64> = lines
        .map(|l| l.split_once(',').unwrap().1.parse().unwrap())
        .collect();
    assert!(!values.is_empty());
    assert!(values.windows(2).all(|w| w[0] <= w[1] + 1e-9));
    let tsv = ok(&["resist", &tri, "--rmax", "6", "--format", "tsv"]);
    assert_eq!(tsv.replace('\t', ","), csv);
}

#[test]
fn identity_check_passes() {
    let out = rpm(&["verify", "--lemma", "eq12", "--max-len", "4"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x,y\n");
}

#[test]
fn exit_statuses() {
    assert_eq!(rpm(&["gen", "--word", "BQ"]).status.code(), Some(2));
    assert_eq!(rpm(&["gen"]).status.code(), Some(2));
    assert_eq!(rpm(&["verify", "--lemma", "9.9"]).status.code(), Some(2));
    assert_eq!(
        rpm(&["gen", "--word", "BR", "--root", "5"]).status.code(),
        Some(2)
    );
    // Sizes listed from large to small cannot give a decreasing curve.
    let dir = tempfile::tempdir().unwrap();
    let out_dir = path(dir.path(), "tables");
    let out = rpm(&[
        "verify", "--lemma", "3.6", "--ns", "1000,100", "--trials", "200", "--out", &out_dir,
    ]);
    assert_eq!(out.status.code(), Some(1));
    for name in ["root-distance.csv", "max-degree.csv"] {
        assert!(dir.path().join("tables").join(name).is_file(), "{name}");
    }
}

#[test]
fn small_lemma_runs_pass() {
    for args in [
        ["--lemma", "3.4", "--n", "1000", "--trials", "400"],
        ["--lemma", "3.5", "--n", "1000", "--trials", "400"],
    ] {
        let mut all = vec!["verify"];
        all.extend(args);
        let csv = ok(&all);
        assert!(csv.lines().next().unwrap().ends_with("slack,pass"));
    }
}
