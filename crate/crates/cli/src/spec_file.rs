//! TOML form of a hyperedge specification.
//!
//! ```toml
//! rows = 3
//! cols = 12
//! letters = ["x", "y", "z"]
//! row_set = [1, 2, 3]
//!
//! [[hyperedges]]
//! label = "R1"
//! columns = [1, 2, 3]
//! ```

use primdec::{AlgebraError, Hyperedge, HyperedgeSpec};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    rows: usize,
    cols: usize,
    letters: Vec<String>,
    row_set: Option<Vec<usize>>,
    hyperedges: Vec<EdgeFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    label: String,
    columns: Vec<usize>,
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_spec(text: &str) -> Result<HyperedgeSpec, AlgebraError> {
    let file: SpecFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        AlgebraError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let spec = HyperedgeSpec {
        rows: file.rows,
        cols: file.cols,
        row_set: file.row_set.unwrap_or_else(|| (1..=file.rows).collect()),
        letters: file.letters,
        hyperedges: file
            .hyperedges
            .into_iter()
            .map(|e| Hyperedge {
                label: e.label,
                columns: e.columns,
            })
            .collect(),
    };
    spec.validate()?;
    Ok(spec)
}
