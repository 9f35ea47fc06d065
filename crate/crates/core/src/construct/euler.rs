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

use super::{audit_edge, ConstructError};
use crate::graph::Graph;
use crate::verify::EdgeColoring;

/// Colors each component of an even-degree graph along its Euler tour with
/// 0,1,2 repeated; the one or two edges left over when the component size is
/// not a multiple of three get color 3.
///
/// Each tour starts at the smaller endpoint of the component's lowest edge
/// id, so the result is deterministic.
pub fn euler_edge_color(g: &Graph) -> Result<EdgeColoring, ConstructError> {
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(ConstructError::OddDegreeVertex(v));
    }
    let mut colors = vec![0; g.size()];
    for comp in g.edge_components() {
        let tour = g.euler_circuit_from(g.edge(comp[0]).0);
        debug_assert_eq!(tour.len(), comp.len());
        let full = 3 * (tour.len() / 3);
        for (i, &e) in tour.iter().enumerate() {
            colors[e] = if i < full { i % 3 } else { 3 };
        }
    }
    audit_edge(g, EdgeColoring::new(colors))
}
