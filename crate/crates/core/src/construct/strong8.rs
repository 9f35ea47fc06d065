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

//! Strong majority edge-coloring with at most eight colors.
//!
//! Pipeline: split every vertex of degree above three into copies of degree
//! two or three, color cycle components of the split graph with a periodic
//! three-color pattern and the rest with a proper four-edge-coloring, recolor
//! the maximal paths through degree-two vertices (chains) with eight colors,
//! then carry the colors back to the input graph (edge ids are shared) and
//! repair whatever the merge broke.

use serde::{Deserialize, Serialize};

use super::misra_gries::misra_gries_edge_color;
use super::recolor::Recolor;
use super::split::split_vertices;
use super::{audit_edge, ConstructError};
use crate::graph::Graph;
use crate::verify::EdgeColoring;

const PALETTE: usize = 8;
const CHAIN_NODE_LIMIT: u64 = 200_000;
const LOCAL_NODE_LIMIT: u64 = 200_000;
const LOCAL_PASSES: usize = 20;

/// Counters describing how much repair work a run needed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strong8Diagnostics {
    pub split_vertices: usize,
    pub cycle_components: usize,
    pub chains: usize,
    pub chains_recolored: usize,
    pub chain_failures: usize,
    pub merge_violations: usize,
    pub local_repairs: usize,
    pub min_conflict_steps: usize,
}

/// Color pattern for a cycle of length `m` along its edges: 0,1,2 repeated,
/// with a fourth color absorbing the remainder. A 5-cycle takes five colors
/// since no four-color tail of the periodic pattern closes up on it.
fn cycle_pattern(m: usize) -> Vec<usize> {
    if m == 5 {
        return (0..5).collect();
    }
    let mut colors: Vec<usize> = (0..m).map(|i| i % 3).collect();
    match m % 3 {
        1 => colors[m - 1] = 3,
        2 => colors[m - 5..].copy_from_slice(&[0, 3, 1, 2, 3]),
        _ => {}
    }
    colors
}

/// Maximal trails whose inner vertices all have degree two, one per edge
/// set, skipping components that are cycles.
fn chains(g: &Graph, in_cycle: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.size()];
    let mut out = Vec::new();
    for x in (0..g.order()).filter(|&x| g.degree(x) != 2) {
        for &(_, e0) in g.incident(x) {
            if seen[e0] || in_cycle[e0] {
                continue;
            }
            let mut chain = Vec::new();
            let (mut at, mut e) = (x, e0);
            loop {
                seen[e] = true;
                chain.push(e);
                at = g.other_end(e, at);
                if g.degree(at) != 2 {
                    break;
                }
                match g.incident(at).iter().find(|&&(_, f)| f != e) {
                    Some(&(_, f)) if !seen[f] => e = f,
                    _ => break,
                }
            }
            out.push(chain);
        }
    }
    out
}

/// Strong majority edge-coloring with at most eight colors of an
/// edge-admissible graph.
pub fn strong_edge_8(g: &Graph) -> Result<EdgeColoring, ConstructError> {
    strong_edge_8_report(g).map(|(c, _)| c)
}

/// [`strong_edge_8`] together with its repair counters.
pub fn strong_edge_8_report(
    g: &Graph,
) -> Result<(EdgeColoring, Strong8Diagnostics), ConstructError> {
    let split = split_vertices(g)?;
    let gs = &split.split_graph;
    let mut diag = Strong8Diagnostics {
        split_vertices: split.groups.iter().filter(|grp| grp.len() > 1).count(),
        ..Default::default()
    };

    let mut colors = misra_gries_edge_color(gs).into_colors();
    let mut in_cycle = vec![false; gs.size()];
    for comp in gs.edge_components() {
        let (a, _) = gs.edge(comp[0]);
        let is_cycle = comp.iter().all(|&e| {
            let (u, v) = gs.edge(e);
            gs.degree(u) == 2 && gs.degree(v) == 2
        });
        if !is_cycle {
            continue;
        }
        diag.cycle_components += 1;
        let walk = gs.euler_circuit_from(a);
        for (&e, c) in walk.iter().zip(cycle_pattern(walk.len())) {
            colors[e] = c;
            in_cycle[e] = true;
        }
    }

    let mut rec = Recolor::new(gs, colors, PALETTE);
    for chain in chains(gs, &in_cycle) {
        diag.chains += 1;
        if chain.len() < 2 {
            continue;
        }
        let settled = chain.iter().all(|&e| rec.is_ok(e) && rec.is_proper_on(e));
        if settled {
            continue;
        }
        diag.chains_recolored += 1;
        if rec.solve(&chain, true, CHAIN_NODE_LIMIT) || rec.solve(&chain, false, CHAIN_NODE_LIMIT) {
            continue;
        }
        diag.chain_failures += 1;
    }

    // Edge ids of the split graph and of `g` coincide.
    let mut rec = Recolor::new(g, rec.into_colors(), PALETTE);
    diag.merge_violations = rec.violations().len();
    for _ in 0..LOCAL_PASSES {
        let violated = rec.violations();
        if violated.is_empty() {
            break;
        }
        for e in violated {
            if rec.is_ok(e) {
                continue;
            }
            let set: Vec<usize> = std::iter::once(e).chain(g.adjacent_edges(e)).collect();
            if rec.solve(&set, false, LOCAL_NODE_LIMIT) {
                diag.local_repairs += 1;
            }
        }
    }
    let remaining = rec.violations().len();
    if remaining > 0 {
        let budget = 10 * g.size();
        let left = rec.min_conflicts(budget, 0);
        diag.min_conflict_steps = budget;
        if left > 0 {
            return Err(ConstructError::RepairFailed {
                violations: left,
                diagnostics: format!("{diag:?}"),
            });
        }
    }
    let coloring = audit_edge(g, EdgeColoring::new(rec.into_colors()))?;
    if coloring.palette() > PALETTE {
        return Err(ConstructError::AuditFailed(format!(
            "palette {}",
            coloring.palette()
        )));
    }
    Ok((coloring, diag))
}
