// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The JSON envelope passed between pipeline stages and the run report it
//! carries.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use majcolor::format::encode_graph6;
use majcolor::verify::{self, Verdict, Witness};
use majcolor::{EdgeColoring, Graph, VertexColoring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RunStatus {
    /// A construction or check finished and its output passed the checker.
    Ok,
    /// An exact search finished and its value is optimal.
    Proven,
    BudgetExceeded,
    HypothesisViolated,
    /// A checked coloring violates its condition.
    Violated,
    AuditFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringKind {
    Vertex,
    Edge,
}

/// Which condition a coloring is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// Every color holds at most half of every neighborhood.
    Strong,
    /// Every vertex has at most half of its neighbors in its own color.
    Majority,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub kind: ColoringKind,
    pub condition: Condition,
    pub colors: Vec<usize>,
}

impl ColoringRecord {
    pub fn palette(&self) -> usize {
        VertexColoring::new(self.colors.clone()).palette()
    }

    pub fn check(&self, g: &Graph) -> Result<Verdict, String> {
        match (self.kind, self.condition) {
            (ColoringKind::Vertex, Condition::Strong) => {
                verify::check_strong_majority_vertex(g, &VertexColoring::new(self.colors.clone()))
            }
            (ColoringKind::Vertex, Condition::Majority) => {
                verify::check_majority_vertex(g, &VertexColoring::new(self.colors.clone()))
            }
            (ColoringKind::Edge, Condition::Strong) => {
                verify::check_strong_majority_edge(g, &EdgeColoring::new(self.colors.clone()))
            }
            (ColoringKind::Edge, Condition::Majority) => {
                return Err("the majority condition applies to vertex colorings only".into())
            }
        }
        .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub ok: bool,
    pub violated_sites: usize,
    pub witnesses: usize,
    pub first_witness: Option<Witness>,
}

impl From<&Verdict> for VerdictSummary {
    fn from(v: &Verdict) -> Self {
        VerdictSummary {
            ok: v.ok,
            violated_sites: v.violating_sites().len(),
            witnesses: v.witnesses.len(),
            first_witness: v.witnesses.first().cloned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// SHA-256 of the graph6 encoding, hex.
    pub graph_id: String,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub palette: Option<usize>,
    /// Palette size the algorithm guarantees on this input.
    pub bound: Option<usize>,
    /// Exact value or discrepancy, for commands that compute one.
    pub value: Option<usize>,
    pub verdict: Option<VerdictSummary>,
    pub nodes: Option<u64>,
    pub wall_us: u64,
    pub seed: u64,
    pub status: RunStatus,
    pub details: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(g: &Graph, algorithm: impl Into<String>, seed: u64) -> Self {
        RunReport {
            graph_id: graph_id(g),
            algorithm: algorithm.into(),
            n: g.order(),
            m: g.size(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            palette: None,
            bound: None,
            value: None,
            verdict: None,
            nodes: None,
            wall_us: 0,
            seed,
            status: RunStatus::Ok,
            details: None,
        }
    }

    pub const CSV_HEADER: &'static str =
        "graph,algorithm,n,m,delta,Delta,palette,bound,ok,nodes,ms,seed,status";

    pub fn csv_row(&self, graph: &str) -> String {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let status = serde_json::to_value(self.status).expect("status serializes");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3},{},{}",
            csv_field(graph),
            self.algorithm,
            self.n,
            self.m,
            self.min_degree,
            self.max_degree,
            opt(self.palette),
            opt(self.bound),
            opt(self.verdict.as_ref().map(|v| v.ok)),
            opt(self.nodes),
            self.wall_us as f64 / 1000.0,
            self.seed,
            status.as_str().unwrap_or_default(),
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn graph_id(g: &Graph) -> String {
    Sha256::digest(encode_graph6(g).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// What flows between pipeline stages: `{graph, coloring?, meta}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringRecord>,
    #[serde(default)]
    pub meta: Option<RunReport>,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("envelopes serialize")
    }
}
