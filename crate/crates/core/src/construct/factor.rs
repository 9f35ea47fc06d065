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

use serde::{Deserialize, Serialize};

use super::{audit_edge, ConstructError};
use crate::graph::Graph;
use crate::verify::EdgeColoring;

/// Three edge-disjoint spanning 2-regular subgraphs covering every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactorization {
    /// Edge ids of each factor, ascending.
    pub factors: Vec<Vec<usize>>,
}

impl TwoFactorization {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.size()];
        for factor in &self.factors {
            let mut deg = vec![0; g.order()];
            for &e in factor {
                if e >= g.size() || seen[e] {
                    return false;
                }
                seen[e] = true;
                let (u, v) = g.edge(e);
                deg[u] += 1;
                deg[v] += 1;
            }
            if deg.iter().any(|&d| d != 2) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Kuhn's augmenting-path matching in a bipartite graph given as
/// left-vertex adjacency lists of (right vertex, payload).
struct Kuhn<'a> {
    adj: &'a [Vec<(usize, usize)>],
    right_match: Vec<Option<(usize, usize)>>,
    visited: Vec<bool>,
}

impl Kuhn<'_> {
    fn augment(&mut self, left: usize) -> bool {
        for &(right, payload) in &self.adj[left] {
            if self.visited[right] {
                continue;
            }
            self.visited[right] = true;
            let free = match self.right_match[right] {
                None => true,
                Some((other, _)) => self.augment(other),
            };
            if free {
                self.right_match[right] = Some((left, payload));
                return true;
            }
        }
        false
    }
}

/// A perfect matching of a regular bipartite graph with `n` vertices per
/// side; returns the payloads of the matched edges.
fn perfect_matching(adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let n = adj.len();
    let mut kuhn = Kuhn {
        adj,
        right_match: vec![None; n],
        visited: vec![false; n],
    };
    for left in 0..n {
        kuhn.visited.iter_mut().for_each(|v| *v = false);
        let found = kuhn.augment(left);
        debug_assert!(found, "regular bipartite graphs have perfect matchings");
    }
    kuhn.right_match
        .into_iter()
        .flatten()
        .map(|(_, payload)| payload)
        .collect()
}

/// Splits a 6-regular graph into three 2-factors: orient every component
/// along an Euler tour, so each vertex has three outgoing and three incoming
/// edges, and peel three perfect matchings off the resulting 3-regular
/// out/in bipartite graph. Each matching gives every vertex one outgoing and
/// one incoming edge, hence degree two.
pub fn two_factorize(g: &Graph) -> Result<TwoFactorization, ConstructError> {
    let n = g.order();
    if n == 0 || (0..n).any(|v| g.degree(v) != 6) {
        return Err(ConstructError::NotSixRegular);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for comp in g.edge_components() {
        let start = g.edge(comp[0]).0;
        let mut at = start;
        for e in g.euler_circuit_from(start) {
            let next = g.other_end(e, at);
            adj[at].push((next, e));
            at = next;
        }
    }
    let mut factors = Vec::with_capacity(3);
    for _ in 0..3 {
        let mut factor = perfect_matching(&adj);
        factor.sort_unstable();
        for list in &mut adj {
            list.retain(|&(_, e)| factor.binary_search(&e).is_err());
        }
        factors.push(factor);
    }
    let result = TwoFactorization { factors };
    if !result.is_valid_for(g) {
        return Err(ConstructError::AuditFailed("2-factorization".into()));
    }
    Ok(result)
}

/// Colors every edge of a 6-regular graph by the index of its 2-factor.
pub fn color_6regular(g: &Graph) -> Result<EdgeColoring, ConstructError> {
    let tf = two_factorize(g)?;
    let mut colors = vec![0; g.size()];
    for (i, factor) in tf.factors.iter().enumerate() {
        for &e in factor {
            colors[e] = i;
        }
    }
    audit_edge(g, EdgeColoring::new(colors))
}
