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

//! Finite simple undirected graphs with dense vertex and edge ids.
//!
//! Vertices are `0..n` and edges `0..m`. Every edge is stored normalized as
//! `(u, v)` with `u < v`; adjacency lists hold `(neighbor, edge id)` pairs
//! sorted by edge id, which makes "lowest-numbered unused incident edge"
//! traversals cheap.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex id {id} out of range for a graph of order {n}")]
    IdOutOfRange { id: usize, n: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex {0} has odd degree")]
    OddDegreeVertex(usize),
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    max_degree: usize,
    min_degree: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(repr: GraphRepr) -> Result<Self, Self::Error> {
        Graph::new(repr.n, &repr.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge ids follow the order of `edges`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(GraphError::IdOutOfRange { id, n });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            normalized.push(e);
        }
        Ok(Self::from_normalized(n, normalized))
    }

    /// Caller guarantees the edges are normalized, in range and distinct.
    pub(crate) fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let min_degree = adjacency.iter().map(Vec::len).min().unwrap_or(0);
        Graph {
            n,
            edges,
            adjacency,
            max_degree,
            min_degree,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge id)` pairs incident to `v`, ascending by edge id.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Δ(G); zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// δ(G); zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edges sharing an endpoint with `e`, excluding `e` itself.
    pub fn adjacent_edges(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let (u, v) = self.edges[e];
        self.adjacency[u]
            .iter()
            .chain(self.adjacency[v].iter())
            .map(|&(_, f)| f)
            .filter(move |&f| f != e)
    }

    /// Number of edges adjacent to `e`: d(u) + d(v) - 2.
    pub fn edge_degree(&self, e: usize) -> usize {
        let (u, v) = self.edges[e];
        self.degree(u) + self.degree(v) - 2
    }

    pub fn is_vertex_admissible(&self) -> bool {
        self.n > 0 && self.min_degree >= 2
    }

    /// No vertex of degree one has a neighbor of degree two.
    pub fn is_edge_admissible(&self) -> bool {
        (0..self.n)
            .filter(|&v| self.degree(v) == 1)
            .all(|v| self.neighbors(v).all(|u| self.degree(u) != 2))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A side assignment (0/1) when the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut component = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        component.push(u);
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Edge ids of each component that has at least one edge, ascending.
    pub fn edge_components(&self) -> Vec<Vec<usize>> {
        self.connected_components()
            .into_iter()
            .filter_map(|comp| {
                let mut edges: Vec<usize> = comp
                    .iter()
                    .flat_map(|&v| self.adjacency[v].iter().map(|&(_, e)| e))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                (!edges.is_empty()).then_some(edges)
            })
            .collect()
    }

    /// The line graph together with the map edge id -> line-graph vertex.
    /// Edge `e` of `self` becomes vertex `e`, so the map is the identity.
    pub fn line_graph(&self) -> Result<(Graph, Vec<usize>), GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut line_edges = Vec::new();
        for inc in &self.adjacency {
            for (i, &(_, e)) in inc.iter().enumerate() {
                for &(_, f) in &inc[i + 1..] {
                    line_edges.push((e.min(f), e.max(f)));
                }
            }
        }
        line_edges.sort_unstable();
        let map = (0..self.size()).collect();
        Ok((Graph::from_normalized(self.size(), line_edges), map))
    }

    /// Replaces every edge `uv` (id `e`) by the path `u, n + e, v`.
    pub fn subdivide(&self) -> Graph {
        let mut edges = Vec::with_capacity(2 * self.size());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            edges.push((u, self.n + e));
            edges.push((v, self.n + e));
        }
        Graph::from_normalized(self.n + self.size(), edges)
    }

    /// Disjoint union; vertices and edges of `other` are shifted after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::from_normalized(self.n + other.n, edges)
    }

    /// Closed walk through every edge exactly once (Hierholzer). Always leaves
    /// a vertex through its lowest-numbered unused edge and starts at the
    /// smaller endpoint of edge 0, so the tour is reproducible.
    pub fn euler_tour(&self) -> Result<EdgeSeq, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        if let Some(v) = (0..self.n).find(|&v| self.degree(v) % 2 == 1) {
            return Err(GraphError::OddDegreeVertex(v));
        }
        if self.edge_components().len() > 1 {
            return Err(GraphError::NotConnected);
        }
        Ok(EdgeSeq(self.euler_circuit_from(self.edges[0].0)))
    }

    /// Hierholzer from `start`, restricted to the component of `start`.
    /// Assumes every vertex in that component has even degree.
    pub(crate) fn euler_circuit_from(&self, start: usize) -> Vec<usize> {
        let mut used = vec![false; self.size()];
        let mut next = vec![0usize; self.n];
        // (vertex, edge used to arrive)
        let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, arrived)) = stack.last() {
            let inc = &self.adjacency[v];
            while next[v] < inc.len() && used[inc[next[v]].1] {
                next[v] += 1;
            }
            if next[v] < inc.len() {
                let (u, e) = inc[next[v]];
                used[e] = true;
                stack.push((u, Some(e)));
            } else {
                stack.pop();
                if let Some(e) = arrived {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        circuit
    }
}

/// An ordered list of edge ids forming a closed walk that uses each edge once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSeq(pub Vec<usize>);

impl EdgeSeq {
    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the closed-walk, coverage and passage-count invariants against `g`.
    pub fn is_euler_tour_of(&self, g: &Graph) -> bool {
        let walk = &self.0;
        if walk.len() != g.size() || walk.is_empty() {
            return false;
        }
        let mut seen = vec![false; g.size()];
        for &e in walk {
            if e >= g.size() || std::mem::replace(&mut seen[e], true) {
                return false;
            }
        }
        // Walk the tour vertex by vertex; a single edge must start at either end.
        let (a, b) = g.edge(walk[0]);
        [a, b].into_iter().any(|start| {
            let mut at = start;
            let mut passages = vec![0usize; g.order()];
            for &e in walk {
                let (u, v) = g.edge(e);
                at = if u == at {
                    v
                } else if v == at {
                    u
                } else {
                    return false;
                };
                passages[at] += 1;
            }
            at == start && (0..g.order()).all(|v| passages[v] * 2 == g.degree(v))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn triangle_degrees() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.size(), 3);
        assert_eq!((g.min_degree(), g.max_degree()), (2, 2));
        assert_eq!(g.edge(2), (0, 2));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::LoopEdge(1)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::IdOutOfRange { id: 2, n: 2 })
        );
    }

    #[test]
    fn line_graph_small_cases() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let (l, map) = k2.line_graph().unwrap();
        assert_eq!((l.order(), l.size()), (1, 0));
        assert_eq!(map, vec![0]);

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (l, _) = star.line_graph().unwrap();
        assert_eq!((l.order(), l.size()), (3, 3));

        let (l, _) = cycle(7).line_graph().unwrap();
        assert_eq!(l.order(), 7);
        assert!(l.degrees().iter().all(|&d| d == 2));
        assert_eq!(l.connected_components().len(), 1);

        assert_eq!(
            Graph::new(3, &[]).unwrap().line_graph(),
            Err(GraphError::EmptyGraph)
        );
    }

    #[test]
    fn subdivision_counts() {
        let s = complete(4).subdivide();
        assert_eq!((s.order(), s.size()), (10, 12));
        let c8 = cycle(4).subdivide();
        assert_eq!((c8.order(), c8.size()), (8, 8));
        assert!(c8.degrees().iter().all(|&d| d == 2));
        assert_eq!(c8.connected_components().len(), 1);
        let twice = complete(4).subdivide().subdivide();
        assert_eq!(twice.order(), 4 + 3 * 6);
    }

    #[test]
    fn admissibility() {
        assert!(cycle(5).is_vertex_admissible());
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!p3.is_vertex_admissible());
        assert!(complete(4).subdivide().is_vertex_admissible());

        assert!(Graph::new(2, &[(0, 1)]).unwrap().is_edge_admissible());
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!p4.is_edge_admissible());
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_edge_admissible());
    }

    #[test]
    fn euler_tour_of_cycle_is_cyclic_order() {
        let tour = cycle(6).euler_tour().unwrap();
        assert_eq!(tour.edges(), &[0, 1, 2, 3, 4, 5]);
        assert!(tour.is_euler_tour_of(&cycle(6)));
    }

    #[test]
    fn euler_tour_errors_and_k5() {
        let k5 = complete(5);
        let tour = k5.euler_tour().unwrap();
        assert_eq!(tour.len(), 10);
        assert!(tour.is_euler_tour_of(&k5));
        assert_eq!(
            complete(4).euler_tour(),
            Err(GraphError::OddDegreeVertex(0))
        );
        let two = cycle(3).disjoint_union(&cycle(4));
        assert_eq!(two.euler_tour(), Err(GraphError::NotConnected));
    }

    #[test]
    fn components() {
        let g = cycle(3).disjoint_union(&cycle(4));
        let sizes: Vec<_> = g.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 4]);
        assert_eq!(
            Graph::new(1, &[]).unwrap().connected_components(),
            vec![vec![0]]
        );
    }

    #[test]
    fn json_roundtrip_validates() {
        let g = complete(4);
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
