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

use super::{audit_edge, equitable_sizes, ConstructError};
use crate::generators::complete;
use crate::verify::EdgeColoring;

/// Hamiltonian cycles (odd n) or Hamiltonian paths (even n) partitioning
/// the edges of K_n. Each member is a vertex sequence; a cycle repeats its
/// first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamDecomposition {
    pub n: usize,
    pub cycles: bool,
    pub members: Vec<Vec<usize>>,
}

impl HamDecomposition {
    /// Edges of every member, normalized `(min, max)`.
    pub fn member_edges(&self) -> Vec<Vec<(usize, usize)>> {
        self.members
            .iter()
            .map(|walk| {
                walk.windows(2)
                    .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                    .collect()
            })
            .collect()
    }
}

/// Zig-zag Hamiltonian path i, i+1, i-1, i+2, i-2, ... on Z_len.
fn zigzag(i: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|j| {
            let step = j.div_ceil(2);
            if j % 2 == 1 {
                (i + step) % len
            } else {
                (i + len - step % len) % len
            }
        })
        .collect()
}

/// Walecki decomposition: for even n the rotations i = 0..n/2 of the zig-zag
/// path on Z_n; for odd n the zig-zag paths on Z_{n-1} closed up through the
/// hub vertex n-1.
pub fn ham_decompose_complete(n: usize) -> Result<HamDecomposition, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall(format!(
            "K_n decomposition needs n >= 3, got {n}"
        )));
    }
    let members = if n.is_multiple_of(2) {
        (0..n / 2).map(|i| zigzag(i, n)).collect()
    } else {
        let hub = n - 1;
        (0..hub / 2)
            .map(|i| {
                let mut walk = vec![hub];
                walk.extend(zigzag(i, hub));
                walk.push(hub);
                walk
            })
            .collect()
    };
    Ok(HamDecomposition {
        n,
        cycles: n % 2 == 1,
        members,
    })
}

/// Strong majority 3-edge-coloring of K_n: the Walecki members split into
/// three near-equal parts, one color per part. Orders below six have too few
/// members and use direct colorings: distinct colors on K_3, the three
/// perfect matchings of K_4, and on K_5 the star at 0, the star at 1 in
/// K_5 - 0, and the remaining triangle.
///
/// K_8 and K_9 have four members, and a part holding two of them gives every
/// vertex four edges of one color, which overloads the edges of the other
/// colors. There the fourth member is shared out along its walk as
/// 0,0,1,1,2,2,0,1,2, so that each color gains two edges at one vertex only.
pub fn complete_edge_3color(n: usize) -> Result<EdgeColoring, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall(format!(
            "K_n edge coloring needs n >= 3, got {n}"
        )));
    }
    let g = complete(n).expect("n >= 3");
    let mut colors = vec![0; g.size()];
    let id = |u: usize, v: usize| g.edge_between(u, v).expect("complete graph");
    match n {
        3 => {
            colors[id(0, 1)] = 0;
            colors[id(1, 2)] = 1;
            colors[id(0, 2)] = 2;
        }
        4 => {
            for (c, pair) in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
                .iter()
                .enumerate()
            {
                for &(u, v) in pair {
                    colors[id(u, v)] = c;
                }
            }
        }
        5 => {
            for (e, &(u, _)) in g.edges().iter().enumerate() {
                colors[e] = u.min(2);
            }
        }
        8 | 9 => {
            let dec = ham_decompose_complete(n)?;
            let member_edges = dec.member_edges();
            for (c, member) in member_edges[..3].iter().enumerate() {
                for &(u, v) in member {
                    colors[id(u, v)] = c;
                }
            }
            for (i, &(u, v)) in member_edges[3].iter().enumerate() {
                colors[id(u, v)] = if i < 6 { i / 2 } else { i % 3 };
            }
        }
        _ => {
            let dec = ham_decompose_complete(n)?;
            let member_edges = dec.member_edges();
            let mut members = member_edges.iter();
            for (c, size) in equitable_sizes(member_edges.len(), 3)
                .into_iter()
                .enumerate()
            {
                for member in members.by_ref().take(size) {
                    for &(u, v) in member {
                        colors[id(u, v)] = c;
                    }
                }
            }
        }
    }
    audit_edge(&g, EdgeColoring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn check_decomposition(n: usize) {
        let dec = ham_decompose_complete(n).unwrap();
        assert_eq!(
            dec.members.len(),
            if n.is_multiple_of(2) {
                n / 2
            } else {
                (n - 1) / 2
            }
        );
        let mut all = BTreeSet::new();
        for (walk, edges) in dec.members.iter().zip(dec.member_edges()) {
            let distinct: BTreeSet<_> = walk.iter().collect();
            assert_eq!(distinct.len(), n, "member must be spanning");
            assert_eq!(edges.len(), if dec.cycles { n } else { n - 1 });
            for e in edges {
                assert!(all.insert(e), "edge repeated");
            }
        }
        assert_eq!(all.len(), n * (n - 1) / 2);
    }

    #[test]
    fn decompositions_partition_edges() {
        for n in 3..30 {
            check_decomposition(n);
        }
        let d7 = ham_decompose_complete(7).unwrap();
        assert!(d7.cycles);
        assert_eq!(d7.members.len(), 3);
        assert_eq!(ham_decompose_complete(8).unwrap().members.len(), 4);
    }

    #[test]
    fn three_colorings() {
        for n in 3..=40 {
            assert!(complete_edge_3color(n).unwrap().palette() <= 3);
        }
        assert!(complete_edge_3color(2).is_err());
    }
}
