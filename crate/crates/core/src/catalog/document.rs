use serde::{Deserialize, Serialize};

use crate::graph::RGraph;
use crate::ring::{ElementJson, RingElement, RingId};
use crate::spectral::SymMatrix;

use super::CatalogError;

/// JSON form of a graph: ring tag, size, and the full entry matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub ring: RingId,
    pub n: usize,
    pub matrix: Vec<Vec<ElementJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl GraphDocument {
    pub fn from_graph(g: &RGraph) -> Self {
        GraphDocument {
            ring: g.ring(),
            n: g.n(),
            matrix: g
                .matrix()
                .rows()
                .iter()
                .map(|r| r.iter().map(ElementJson::from).collect())
                .collect(),
            name: None,
            source: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn to_graph(&self) -> Result<RGraph, CatalogError> {
        if self.matrix.len() != self.n {
            return Err(CatalogError::Schema(format!(
                "n = {} but the matrix has {} rows",
                self.n,
                self.matrix.len()
            )));
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(RingElement::try_from).collect())
            .collect::<Result<Vec<Vec<RingElement>>, _>>()?;
        Ok(RGraph::new(SymMatrix::new(self.ring, rows)?))
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        serde_json::from_str(text).map_err(|e| CatalogError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Reads a graph from its JSON document.
pub fn parse(text: &str) -> Result<RGraph, CatalogError> {
    GraphDocument::from_json(text)?.to_graph()
}

pub fn serialize(g: &RGraph) -> String {
    GraphDocument::from_graph(g).to_json()
}

/// Double-quoted DOT string. Backslashes are left alone so that `\n` keeps
/// its Graphviz meaning of a line break.
fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz rendering. Charges label their vertices; edges carry `|w|` and
/// negative weights are drawn dashed.
pub fn to_dot(g: &RGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in 0..g.n() {
        let c = g.charge(v);
        let label = if c.is_zero() {
            format!("v{v}")
        } else {
            format!("v{v}\\n{c}")
        };
        out.push_str(&format!("  v{v} [label={}];\n", quote(&label)));
    }
    for (u, v, w) in g.edges() {
        let (magnitude, negative) = w.sign_normalized();
        let style = if negative { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  v{u} -- v{v} [label={}{style}];\n",
            quote(&magnitude.to_string())
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> RGraph {
        let m = SymMatrix::new(
            RingId::Zphi,
            vec![
                vec![RingElement::phi(), -RingElement::one()],
                vec![-RingElement::one(), RingElement::zero()],
            ],
        )
        .unwrap();
        RGraph::new(m)
    }

    #[test]
    fn round_trip() {
        let g = pair();
        let text = serialize(&g);
        assert_eq!(parse(&text).unwrap(), g);
        assert!(text.contains("\"den\""));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse("{}").is_err());
        let asym = r#"{"ring":"z","n":2,"matrix":[
            [{"c":[0,0,0,0,0,0,0,0],"den":1},{"c":[1,0,0,0,0,0,0,0],"den":1}],
            [{"c":[2,0,0,0,0,0,0,0],"den":1},{"c":[0,0,0,0,0,0,0,0],"den":1}]]}"#;
        assert!(matches!(parse(asym), Err(CatalogError::Spectral(_))));
        let bad_den = r#"{"ring":"zphi","n":1,"matrix":[[{"c":[1,0,0,0,0,0,0,0],"den":2}]]}"#;
        assert!(matches!(parse(bad_den), Err(CatalogError::Ring(_))));
        let short = r#"{"ring":"z","n":2,"matrix":[[{"c":[0,0,0,0,0,0,0,0],"den":1}]]}"#;
        assert!(matches!(parse(short), Err(CatalogError::Schema(_))));
        let wrong_ring = r#"{"ring":"z","n":1,"matrix":[[{"c":[0,1,0,0,0,0,0,0],"den":1}]]}"#;
        assert!(parse(wrong_ring).is_err());
    }

    #[test]
    fn dot_marks_negative_edges() {
        let dot = to_dot(&pair(), "X");
        assert!(dot.starts_with("graph \"X\" {"));
        assert!(dot.contains("v0 -- v1 [label=\"1\", style=dashed]"));
        assert!(dot.contains("φ"));
    }
}
