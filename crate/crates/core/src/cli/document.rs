//! JSON interchange format for decompositions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::Params;
use crate::multigraph::{verify_decomposition, Decomposition, FourCycle, MultiGraph, VerifyReport, VertexId};
use crate::pipeline::LineDecomposition;

pub const DOCUMENT_FORMAT_VERSION: &str = "1";
pub const GRAPH_KIND: &str = "lambda-line-graph-kmn";

/// Documents describing graphs with more vertex pairs than this are refused
/// before the graph is built.
pub const MAX_DOCUMENT_PAIRS: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentParams {
    pub m: usize,
    pub n: usize,
    pub lambda: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentMeta {
    pub cycle_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub format_version: String,
    pub params: DocumentParams,
    pub graph: String,
    pub cycles: Vec<[[usize; 2]; 4]>,
    pub meta: DocumentMeta,
}

impl DecompositionDocument {
    pub fn from_decomposition(d: &LineDecomposition, plan: Option<String>) -> Self {
        let p = d.params();
        let cycles: Vec<[[usize; 2]; 4]> = d
            .decomposition()
            .iter()
            .map(|c| {
                c.vertices().map(|v| match v {
                    VertexId::Pair(i, j) => [i, j],
                    VertexId::Plain(k) => unreachable!("line graph vertex Plain({k})"),
                })
            })
            .collect();
        DecompositionDocument {
            format_version: DOCUMENT_FORMAT_VERSION.to_string(),
            params: DocumentParams {
                m: p.m,
                n: p.n,
                lambda: p.lambda,
            },
            graph: GRAPH_KIND.to_string(),
            meta: DocumentMeta {
                cycle_count: cycles.len(),
                plan,
            },
            cycles,
        }
    }

    /// Parses and checks the header; cycles are only checked by
    /// [`DecompositionDocument::verify`].
    pub fn parse(text: &str) -> Result<Self> {
        let doc: DecompositionDocument = serde_json::from_str(text)?;
        if doc.format_version != DOCUMENT_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {:?}",
                doc.format_version
            )));
        }
        if doc.graph != GRAPH_KIND {
            return Err(Error::Parse(format!("unsupported graph {:?}", doc.graph)));
        }
        let p = doc.params()?;
        let pairs = p.m as u128 * p.n as u128 * (p.m as u128 + p.n as u128 - 2) / 2;
        if pairs > MAX_DOCUMENT_PAIRS {
            return Err(Error::Parse(format!("graph for {p} is too large to rebuild")));
        }
        Ok(doc)
    }

    pub fn params(&self) -> Result<Params> {
        let DocumentParams { m, n, lambda } = self.params;
        Params::new(m, n, lambda).map_err(|e| Error::Parse(format!("params: {e}")))
    }

    /// Rebuilds `lambda L(K_{m,n})` and checks the cycles against it. A cycle
    /// that repeats a vertex is reported as a bad cycle.
    pub fn verify(&self) -> Result<VerifyReport> {
        let p = self.params()?;
        let mut d = Decomposition::new();
        for (index, c) in self.cycles.iter().enumerate() {
            match FourCycle::from_array(c.map(|[i, j]| VertexId::Pair(i, j))) {
                Ok(cycle) => d.push(cycle),
                Err(e) => {
                    return Ok(VerifyReport::BadCycle {
                        index,
                        reason: e.to_string(),
                    })
                }
            }
        }
        let g = MultiGraph::line_graph_kmn(p.m, p.n, p.lambda);
        Ok(verify_decomposition(&g, &d))
    }

    /// Pretty JSON with one cycle per line; identical input gives identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        let q = |x: &str| serde_json::to_string(x).expect("strings serialize");
        s.push_str("{\n");
        let _ = writeln!(s, "  \"format_version\": {},", q(&self.format_version));
        let p = &self.params;
        let _ = writeln!(
            s,
            "  \"params\": {{\"m\": {}, \"n\": {}, \"lambda\": {}}},",
            p.m, p.n, p.lambda
        );
        let _ = writeln!(s, "  \"graph\": {},", q(&self.graph));
        if self.cycles.is_empty() {
            s.push_str("  \"cycles\": [],\n");
        } else {
            s.push_str("  \"cycles\": [\n");
            for (k, c) in self.cycles.iter().enumerate() {
                let sep = if k + 1 == self.cycles.len() { "" } else { "," };
                let _ = writeln!(
                    s,
                    "    [[{},{}],[{},{}],[{},{}],[{},{}]]{sep}",
                    c[0][0], c[0][1], c[1][0], c[1][1], c[2][0], c[2][1], c[3][0], c[3][1]
                );
            }
            s.push_str("  ],\n");
        }
        let _ = write!(s, "  \"meta\": {{\"cycle_count\": {}", self.meta.cycle_count);
        if let Some(plan) = &self.meta.plan {
            let _ = write!(s, ", \"plan\": {}", q(plan));
        }
        s.push_str("}\n}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::construct;

    fn doc(m: usize, n: usize, lambda: u32) -> DecompositionDocument {
        let d = construct(Params::new(m, n, lambda).unwrap()).unwrap();
        DecompositionDocument::from_decomposition(&d, Some("test".into()))
    }

    #[test]
    fn round_trip() {
        let d = doc(3, 4, 2);
        let text = d.to_json();
        let back = DecompositionDocument::parse(&text).unwrap();
        assert_eq!(back, d);
        assert!(back.verify().unwrap().is_ok());
        assert_eq!(text.lines().filter(|l| l.starts_with("    [[")).count(), 15);
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn tampering_is_detected() {
        let mut d = doc(2, 2, 2);
        d.cycles.pop();
        assert!(matches!(d.verify().unwrap(), VerifyReport::MissingEdge { .. }));
        let mut d = doc(2, 2, 1);
        d.cycles.push(d.cycles[0]);
        assert!(matches!(d.verify().unwrap(), VerifyReport::ExcessEdge { .. }));
        let mut d = doc(2, 2, 1);
        d.cycles[0][1] = d.cycles[0][0];
        assert!(matches!(d.verify().unwrap(), VerifyReport::BadCycle { .. }));
        let mut d = doc(2, 2, 1);
        d.cycles[0][1] = [7, 7];
        assert!(matches!(d.verify().unwrap(), VerifyReport::BadCycle { .. }));
    }

    #[test]
    fn header_errors() {
        let good = doc(2, 2, 1).to_json();
        assert!(DecompositionDocument::parse(&good.replace("\"1\"", "\"2\"")).is_err());
        assert!(DecompositionDocument::parse(&good.replace(GRAPH_KIND, "other")).is_err());
        let huge = good.replace("\"m\": 2, \"n\": 2", "\"m\": 100000, \"n\": 100000");
        assert!(matches!(
            DecompositionDocument::parse(&huge),
            Err(Error::Parse(_))
        ));
        let tiny = good.replace("\"m\": 2, \"n\": 2", "\"m\": 1, \"n\": 2");
        assert!(DecompositionDocument::parse(&tiny).is_err());
        assert!(DecompositionDocument::parse("[]").is_err());
    }
}
