//! Three entry points for the static page in `www/`: draw a flattened
//! necklace map, tabulate its supported-point curve, draw a random word.

use rpm_lab::diagnostics::normalize_centers;
use rpm_lab::experiments::{csv_string, sample_unbiased, supported_curve};
use rpm_lab::map::RootedTriangulation;
use rpm_lab::necklace::{build_plus, build_rooted, Word};
use rpm_lab::render::{render_svg, RenderOptions};
use rpm_lab::uniformizer::{flatten, layout, ConformalLayout};
use wasm_bindgen::prelude::*;

/// `T_+(W)` for `root == 0`, else `T_root(W)`.
fn build(word: &str, root: usize) -> Result<RootedTriangulation, String> {
    let w: Word = word.trim().parse().map_err(|e| format!("{e}"))?;
    let built = if root == 0 {
        build_plus(&w)
    } else {
        build_rooted(&w, root)
    };
    built.map(|m| m.map).map_err(|e| e.to_string())
}

fn flat(map: &RootedTriangulation) -> Result<ConformalLayout, String> {
    let factors = flatten(map).map_err(|e| e.to_string())?;
    layout(map, &factors).map_err(|e| e.to_string())
}

pub fn svg(word: &str, root: usize, half_flowers: bool, window: f64) -> Result<String, String> {
    let map = build(word, root)?;
    let l = flat(&map)?;
    let options = RenderOptions {
        half_flowers,
        window: (window > 0.0).then_some(window),
        ..RenderOptions::default()
    };
    Ok(render_svg(&map, &l, &options))
}

pub fn curve(word: &str, root: usize, deltas: &[f64], s_max: u32) -> Result<String, String> {
    let map = build(word, root)?;
    let l = flat(&map)?;
    let points = normalize_centers(&l.centers, l.root).map_err(|e| e.to_string())?;
    let s_grid: Vec<f64> = (2..=s_max.max(2)).step_by(2).map(f64::from).collect();
    let rows = supported_curve(&points, deltas, &s_grid, 0).map_err(|e| e.to_string())?;
    Ok(csv_string(&rows))
}

/// A uniform word of length `n` and a uniform root index, as `"<word> <k>"`.
pub fn random(n: usize, seed: u64) -> Result<String, String> {
    let (w, k) = sample_unbiased(n, seed).map_err(|e| e.to_string())?;
    Ok(format!("{w} {k}"))
}

#[wasm_bindgen]
pub fn flatten_svg(
    word: &str,
    root: u32,
    half_flowers: bool,
    window: f64,
) -> Result<String, JsError> {
    svg(word, root as usize, half_flowers, window).map_err(|e| JsError::new(&e))
}

/// CSV of the supported fraction of the normalized face centers, for
/// `s = 2, 4, …, s_max` at each delta.
#[wasm_bindgen]
pub fn supported_csv(
    word: &str,
    root: u32,
    deltas: Vec<f64>,
    s_max: u32,
) -> Result<String, JsError> {
    curve(word, root as usize, &deltas, s_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_word(n: u32, seed: u32) -> Result<String, JsError> {
    random(n as usize, u64::from(seed)).map_err(|e| JsError::new(&e))
}
