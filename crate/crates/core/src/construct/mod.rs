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

//! Constructive colorings with proven palette bounds.
//!
//! Every public constructor audits its own output with the matching checker
//! from [`crate::verify`] and reports [`ConstructError::AuditFailed`] instead
//! of returning a coloring that does not satisfy its contract.

mod balance;
mod euler;
mod factor;
mod misra_gries;
mod recolor;
mod split;
mod strong8;
mod vertex;
mod walecki;

pub use balance::{
    balanced_edge_color, eq1_holds, eq2_holds, strong_edge_bipartite4, strong_edge_bipartite5,
    strong_edge_delta7, strong_edge_delta9, strong_edge_threshold_audited, DegreeBoundAudit,
};
pub use euler::euler_edge_color;
pub use factor::{color_6regular, two_factorize, TwoFactorization};
pub use misra_gries::{misra_gries_edge_color, proper_edge_color_subcubic};
pub use split::{split_vertices, SplitResult};
pub use strong8::{strong_edge_8, strong_edge_8_report, Strong8Diagnostics};
pub use vertex::{brooks_2delta1, color_complete_vertices, color_cycle_vertices, lovasz_two_color};
pub use walecki::{complete_edge_3color, ham_decompose_complete, HamDecomposition};

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::verify::{self, EdgeColoring, VerifyError, VertexColoring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("parameter too small: {0}")]
    TooSmall(String),
    #[error("graph is not admissible")]
    NotAdmissible,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("maximum degree {0} exceeds 3")]
    DegreeTooHigh(usize),
    #[error("vertex {0} has odd degree")]
    OddDegreeVertex(usize),
    #[error("graph is not 6-regular")]
    NotSixRegular,
    #[error("balancing did not reach the target discrepancy {target} (got {got})")]
    BudgetExceeded { target: usize, got: usize },
    #[error("repair left {violations} edges violated: {diagnostics}")]
    RepairFailed {
        violations: usize,
        diagnostics: String,
    },
    #[error("output failed its own audit: {0}")]
    AuditFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

pub(crate) fn audit_vertex(g: &Graph, c: VertexColoring) -> Result<VertexColoring, ConstructError> {
    let verdict = verify::check_strong_majority_vertex(g, &c)?;
    if !verdict.ok {
        return Err(ConstructError::AuditFailed(format!(
            "{} vertex witnesses, first {:?}",
            verdict.witnesses.len(),
            verdict.witnesses[0]
        )));
    }
    Ok(c)
}

pub(crate) fn audit_edge(g: &Graph, c: EdgeColoring) -> Result<EdgeColoring, ConstructError> {
    let verdict = verify::check_strong_majority_edge(g, &c)?;
    if !verdict.ok {
        return Err(ConstructError::AuditFailed(format!(
            "{} edge witnesses, first {:?}",
            verdict.witnesses.len(),
            verdict.witnesses[0]
        )));
    }
    Ok(c)
}

/// Sizes of `parts` groups splitting `total` as evenly as possible, larger
/// groups first.
pub(crate) fn equitable_sizes(total: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|i| total / parts + usize::from(i < total % parts))
        .collect()
}
