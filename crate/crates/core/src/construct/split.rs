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

use super::ConstructError;
use crate::graph::Graph;

/// A graph with every vertex of degree above three split into copies of
/// degree two or three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub split_graph: Graph,
    /// `edge_map[e]` is the split-graph edge corresponding to edge `e`.
    pub edge_map: Vec<usize>,
    /// Original vertex of every split-graph vertex.
    pub copy_of: Vec<usize>,
    /// Per original vertex, the partition of its neighbors among its copies.
    /// Unsplit vertices have a single group holding all of their neighbors.
    pub groups: Vec<Vec<Vec<usize>>>,
}

/// Sizes of the neighbor groups for a vertex of degree `d > 3`: threes,
/// followed by one two (d ≡ 2 mod 3) or two twos (d ≡ 1 mod 3).
fn group_sizes(d: usize) -> Vec<usize> {
    let twos = match d % 3 {
        0 => 0,
        1 => 2,
        _ => 1,
    };
    let threes = (d - 2 * twos) / 3;
    let mut sizes = vec![3; threes];
    sizes.extend(std::iter::repeat_n(2, twos));
    sizes
}

pub fn split_vertices(g: &Graph) -> Result<SplitResult, ConstructError> {
    if !g.is_edge_admissible() {
        return Err(ConstructError::NotAdmissible);
    }
    let n = g.order();
    let sorted_nbrs = |v: usize| {
        let mut nbrs: Vec<usize> = g.neighbors(v).collect();
        nbrs.sort_unstable();
        nbrs
    };
    if g.max_degree() <= 3 {
        return Ok(SplitResult {
            split_graph: g.clone(),
            edge_map: (0..g.size()).collect(),
            copy_of: (0..n).collect(),
            groups: (0..n).map(|v| vec![sorted_nbrs(v)]).collect(),
        });
    }

    let mut copy_of = Vec::new();
    let mut groups = Vec::with_capacity(n);
    // copy_at[v][i]: split copy holding the i-th incident edge of v
    let mut copy_at: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let nbrs = sorted_nbrs(v);
        let sizes = if nbrs.len() > 3 {
            group_sizes(nbrs.len())
        } else {
            vec![nbrs.len()]
        };
        let mut v_groups = Vec::with_capacity(sizes.len());
        let mut holder = vec![0; nbrs.len()];
        let mut start = 0;
        for size in sizes {
            let copy = copy_of.len();
            copy_of.push(v);
            let group = &nbrs[start..start + size];
            for &u in group {
                let slot = g
                    .incident(v)
                    .iter()
                    .position(|&(w, _)| w == u)
                    .expect("neighbor is incident");
                holder[slot] = copy;
            }
            v_groups.push(group.to_vec());
            start += size;
        }
        groups.push(v_groups);
        copy_at.push(holder);
    }

    let slot_of = |v: usize, e: usize| {
        g.incident(v)
            .iter()
            .position(|&(_, f)| f == e)
            .expect("edge is incident")
    };
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let a = copy_at[u][slot_of(u, e)];
            let b = copy_at[v][slot_of(v, e)];
            (a.min(b), a.max(b))
        })
        .collect();
    Ok(SplitResult {
        split_graph: Graph::from_normalized(copy_of.len(), edges),
        edge_map: (0..g.size()).collect(),
        copy_of,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, petersen, random_min_degree};

    fn check_invariants(g: &Graph, s: &SplitResult) {
        let gs = &s.split_graph;
        assert_eq!(gs.size(), g.size());
        assert!(gs.max_degree() <= 3);
        for (e, &f) in s.edge_map.iter().enumerate() {
            let (a, b) = gs.edge(f);
            let (u, v) = g.edge(e);
            let mut ends = [s.copy_of[a], s.copy_of[b]];
            ends.sort_unstable();
            assert_eq!(ends, [u, v]);
        }
        for v in 0..g.order() {
            if g.degree(v) > 3 {
                assert!(s.groups[v]
                    .iter()
                    .all(|grp| grp.len() == 2 || grp.len() == 3));
                assert!(s.groups[v].iter().filter(|grp| grp.len() == 2).count() <= 2);
            }
            let total: usize = s.groups[v].iter().map(Vec::len).sum();
            assert_eq!(total, g.degree(v));
        }
        for c in 0..gs.order() {
            let d = gs.degree(c);
            if g.degree(s.copy_of[c]) > 3 {
                assert!(d == 2 || d == 3);
            }
        }
    }

    #[test]
    fn subcubic_is_identity() {
        let g = petersen();
        let s = split_vertices(&g).unwrap();
        assert_eq!(s.split_graph, g);
        assert_eq!(s.copy_of, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn group_shapes() {
        assert_eq!(group_sizes(4), [2, 2]);
        assert_eq!(group_sizes(5), [3, 2]);
        assert_eq!(group_sizes(6), [3, 3]);
        assert_eq!(group_sizes(7), [3, 2, 2]);
        assert_eq!(group_sizes(11), [3, 3, 3, 2]);
    }

    #[test]
    fn degree_seven_vertex() {
        let g = complete(8).unwrap();
        let s = split_vertices(&g).unwrap();
        let sizes: Vec<_> = s.groups[0].iter().map(Vec::len).collect();
        assert_eq!(sizes, [3, 2, 2]);
        assert_eq!(s.groups[0][0], vec![1, 2, 3]);
        check_invariants(&g, &s);
    }

    #[test]
    fn random_invariants() {
        for seed in 0..10 {
            let g = random_min_degree(40, 160, 2, seed).unwrap();
            check_invariants(&g, &split_vertices(&g).unwrap());
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(split_vertices(&p4), Err(ConstructError::NotAdmissible));
    }
}
