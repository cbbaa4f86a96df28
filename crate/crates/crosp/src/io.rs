//! File formats: point-set JSON and distance-matrix CSV.
//!
//! A point-set document looks like
//!
//! ```json
//! {"space": {"family": "cp", "n": 2}, "points": [[...], ...], "label": "..."}
//! ```
//!
//! with family codes `s`, `rp`, `cp`, `hp`, `op`. A distance matrix is an
//! `N×N` CSV of geodesic distances in radians, without a header row.

use std::fs;
use std::path::Path;

use crosp_core::spaces::{make_space, DistanceMatrix, Family, Point, PointSet, SpaceSpec};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::doc::{sig17, Field, Record};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub family: String,
    pub n: usize,
}

impl SpaceDoc {
    pub fn of(space: &SpaceSpec) -> Self {
        Self { family: space.family.code().to_owned(), n: space.n }
    }

    pub fn resolve(&self) -> crosp_core::Result<SpaceSpec> {
        make_space(Family::from_code(&self.family)?, self.n)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetIn {
    space: SpaceDoc,
    points: Vec<Vec<f64>>,
    #[serde(default)]
    label: String,
    // provenance written by `gen`; accepted and ignored
    #[serde(default)]
    #[allow(dead_code)]
    config: Option<serde_json::Value>,
    #[serde(default)]
    #[allow(dead_code)]
    meta: Option<serde_json::Value>,
}

/// Parses a point-set document; every point is validated against its space.
pub fn parse_point_set(text: &str) -> std::result::Result<PointSet, String> {
    let doc: PointSetIn = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let space = doc.space.resolve().map_err(|e| e.to_string())?;
    let points = doc
        .points
        .into_iter()
        .enumerate()
        .map(|(i, c)| Point::new(&space, c).map_err(|e| format!("point {i}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    PointSet::new(space, points, doc.label).map_err(|e| e.to_string())
}

/// The point-set document for `set`; callers may append further keys
/// (`config`, `meta`) before rendering.
pub fn point_set_record(set: &PointSet) -> Record {
    let space = Record::new().with("family", set.space.family.code()).with("n", set.space.n);
    let points = set
        .points
        .iter()
        .map(|p| Field::List(p.coords().iter().map(|&x| Field::Num(x)).collect()))
        .collect();
    Record::new().with("space", space).with("points", Field::List(points)).with("label", set.label.as_str())
}

/// Parses an `N×N` distance CSV.
pub fn parse_distance_csv(text: &str) -> std::result::Result<DistanceMatrix, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let row = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| format!("row {i}: {f:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    DistanceMatrix::from_rows(rows).map_err(|e| e.to_string())
}

/// CSV for a distance matrix, 17 significant digits per entry.
pub fn distance_csv(matrix: &DistanceMatrix) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in matrix.rows() {
        w.write_record(row.iter().map(|&x| sig17(x).unwrap_or_default()))
            .expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV output is ASCII")
}

/// What a consuming subcommand reads.
#[derive(Debug, Clone)]
pub enum Input {
    Points(PointSet),
    /// Distances only; the space comes from the command line.
    Matrix(SpaceSpec, DistanceMatrix),
}

impl Input {
    pub fn space(&self) -> &SpaceSpec {
        match self {
            Input::Points(p) => &p.space,
            Input::Matrix(s, _) => s,
        }
    }

    pub fn len(&self) -> usize {
        use crosp_core::spaces::PairDistances;
        match self {
            Input::Points(p) => p.len(),
            Input::Matrix(_, m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_owned(), source })
}

/// Reads a point set (`.json`) or a distance matrix (`.csv`). A CSV file needs
/// `space`; for JSON, `space` must agree with the document if given.
pub fn load_input(path: &Path, space: Option<SpaceSpec>) -> Result<Input> {
    let text = read_text(path)?;
    let format_err = |message: String| Error::Format { path: path.to_owned(), message };
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let space = space.ok_or_else(|| Error::Usage("a distance-matrix CSV needs --space".into()))?;
        return Ok(Input::Matrix(space, parse_distance_csv(&text).map_err(format_err)?));
    }
    let set = parse_point_set(&text).map_err(format_err)?;
    if let Some(s) = space {
        if s != set.space {
            return Err(Error::Usage(format!("--space {s} does not match the file's space {}", set.space)));
        }
    }
    Ok(Input::Points(set))
}
