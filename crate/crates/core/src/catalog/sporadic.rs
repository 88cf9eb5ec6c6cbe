//! Parser for the sporadic-graph data file.

use std::sync::OnceLock;

use crate::graph::RGraph;
use crate::ring::{RingElement, RingId};
use crate::spectral::SymMatrix;

use super::CatalogError;

const DATA: &str = include_str!("../../data/sporadics.txt");

#[derive(Debug, Clone)]
pub struct Sporadic {
    pub id: String,
    pub vertex_names: Vec<String>,
    pub graph: RGraph,
}

fn bad(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Data {
        line,
        message: msg.into(),
    }
}

/// Parses blocks of the form
///
/// ```text
/// graph <id> <ring>
/// vertices <name>...
/// <row>
/// ...
/// end
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_sporadics(text: &str) -> Result<Vec<Sporadic>, CatalogError> {
    let mut out = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    while let Some((ln, header)) = lines.next() {
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [kw, id, ring] = parts[..] else {
            return Err(bad(ln, "expected `graph <id> <ring>`"));
        };
        if kw != "graph" {
            return Err(bad(ln, format!("expected `graph`, found `{kw}`")));
        }
        let ring: RingId = ring.parse().map_err(|e| bad(ln, format!("{e}")))?;

        let (vln, vline) = lines.next().ok_or_else(|| bad(ln, "missing `vertices` line"))?;
        let mut names = vline.split_whitespace();
        if names.next() != Some("vertices") {
            return Err(bad(vln, "expected `vertices`"));
        }
        let vertex_names: Vec<String> = names.map(str::to_string).collect();
        let n = vertex_names.len();

        let mut rows = Vec::with_capacity(n);
        loop {
            let (rln, row) = lines.next().ok_or_else(|| bad(ln, "missing `end`"))?;
            if row == "end" {
                break;
            }
            let parsed: Result<Vec<RingElement>, _> =
                row.split_whitespace().map(str::parse).collect();
            rows.push(parsed.map_err(|e| bad(rln, format!("{e}")))?);
        }
        if rows.len() != n {
            return Err(bad(ln, format!("{id}: {} rows for {n} vertices", rows.len())));
        }
        let m = SymMatrix::new(ring, rows).map_err(|e| bad(ln, format!("{id}: {e}")))?;
        out.push(Sporadic {
            id: id.to_string(),
            vertex_names,
            graph: RGraph::new(m),
        });
    }
    Ok(out)
}

/// The built-in sporadic graphs, parsed once.
pub fn sporadics() -> &'static [Sporadic] {
    static CELL: OnceLock<Vec<Sporadic>> = OnceLock::new();
    CELL.get_or_init(|| parse_sporadics(DATA).expect("bundled sporadic data is well formed"))
}

pub fn sporadic(id: &str) -> Option<&'static Sporadic> {
    sporadics().iter().find(|s| s.id == id)
}

/// Vertex count implied by an identifier such as `S8dagger` or `S4(1,phi)`.
pub fn subscript(id: &str) -> Option<usize> {
    let digits: String = id
        .strip_prefix('S')?
        .chars()
        .take_while(char::is_ascii_digit)
        .collect();
    digits.parse().ok()
}
