use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use rpm_lab::experiments::{write_delimited, CsvRow};
use rpm_lab::map::{text as map_text, RootedTriangulation};
use rpm_lab::uniformizer::{text as layout_text, ConformalLayout};

use crate::{Failure, Format};

/// File contents, or all of standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(Failure::Usage),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")
                .map_err(Failure::Internal)?;
            Ok(s)
        }
    }
}

pub fn write_output(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    let result = match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .context("writing standard output"),
    };
    result.map_err(Failure::Internal)
}

pub fn table<R: CsvRow>(rows: &[R], format: Format) -> Vec<u8> {
    let delimiter = match format {
        Format::Csv => b',',
        Format::Tsv => b'\t',
    };
    let mut buf = Vec::new();
    write_delimited(rows, &mut buf, delimiter).expect("writing to memory");
    buf
}

/// A parsed input file: a triangulation or a layout.
pub enum Document {
    Map(RootedTriangulation),
    Layout(ConformalLayout),
}

/// Tells the two text formats apart by their header record.
pub fn parse_document(text: &str) -> Result<Document, Failure> {
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next());
    match head {
        Some("tri") => parse_map(text).map(Document::Map),
        Some("layout") => layout_text::parse(text)
            .map(Document::Layout)
            .map_err(|e| Failure::Usage(e.into())),
        _ => Err(Failure::Usage(anyhow!(
            "input is neither a triangulation (`tri`) nor a layout (`layout`)"
        ))),
    }
}

pub fn parse_map(text: &str) -> Result<RootedTriangulation, Failure> {
    map_text::parse(text).map_err(|e| Failure::Usage(e.into()))
}
