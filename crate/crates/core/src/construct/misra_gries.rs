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

//! Proper (Δ+1)-edge-coloring with the Misra–Gries fan rotation algorithm.

use super::ConstructError;
use crate::graph::Graph;
use crate::verify::{self, EdgeColoring};

const NONE: usize = usize::MAX;

struct MisraGries<'a> {
    g: &'a Graph,
    palette: usize,
    color: Vec<usize>,
    /// at[v * palette + c] = edge at v colored c, or NONE
    at: Vec<usize>,
}

impl<'a> MisraGries<'a> {
    fn new(g: &'a Graph) -> Self {
        let palette = g.max_degree() + 1;
        MisraGries {
            g,
            palette,
            color: vec![NONE; g.size()],
            at: vec![NONE; g.order() * palette],
        }
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.at[v * self.palette + c] == NONE
    }

    fn free_color(&self, v: usize) -> usize {
        (0..self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("a vertex of degree at most Δ has a free color among Δ+1")
    }

    fn set(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.edge(e);
        let old = self.color[e];
        if old != NONE {
            self.at[u * self.palette + old] = NONE;
            self.at[v * self.palette + old] = NONE;
        }
        self.color[e] = c;
        if c != NONE {
            self.at[u * self.palette + c] = e;
            self.at[v * self.palette + c] = e;
        }
    }

    /// Maximal fan at `u` starting with the uncolored edge to `v`: each next
    /// fan edge is colored with a color free at the previous fan vertex.
    fn fan(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let first = self.g.edge_between(u, v).expect("fan edge exists");
        let mut fan = vec![(v, first)];
        let mut in_fan = vec![false; self.g.order()];
        in_fan[v] = true;
        loop {
            let last = fan.last().expect("non-empty").0;
            let next = self.g.incident(u).iter().find(|&&(w, e)| {
                !in_fan[w] && self.color[e] != NONE && self.is_free(last, self.color[e])
            });
            match next {
                Some(&(w, e)) => {
                    in_fan[w] = true;
                    fan.push((w, e));
                }
                None => return fan,
            }
        }
    }

    /// Swaps colors c and d along the maximal path from `u` that starts with
    /// a d-colored edge and alternates d, c, d, ...
    fn invert_path(&mut self, u: usize, c: usize, d: usize) {
        if c == d {
            return;
        }
        let mut path = Vec::new();
        let (mut at, mut want) = (u, d);
        loop {
            let e = self.at[at * self.palette + want];
            if e == NONE || path.last() == Some(&e) {
                break;
            }
            path.push(e);
            at = self.g.other_end(e, at);
            want = if want == d { c } else { d };
        }
        for &e in &path {
            self.set(e, NONE);
        }
        // Path edges alternate d, c, ...; after inversion they alternate c, d.
        for (i, &e) in path.iter().enumerate() {
            self.set(e, if i % 2 == 0 { c } else { d });
        }
    }

    fn run(mut self) -> Vec<usize> {
        for e in 0..self.g.size() {
            let (u, v) = self.g.edge(e);
            let fan = self.fan(u, v);
            let c = self.free_color(u);
            let d = self.free_color(fan.last().expect("non-empty").0);
            self.invert_path(u, c, d);
            let w = fan
                .iter()
                .position(|&(x, _)| self.is_free(x, d))
                .expect("some fan vertex has d free after inversion");
            for i in 0..w {
                let next = self.color[fan[i + 1].1];
                self.set(fan[i + 1].1, NONE);
                self.set(fan[i].1, next);
            }
            self.set(fan[w].1, d);
        }
        self.color
    }
}

/// Proper edge-coloring with at most Δ(G) + 1 colors.
pub fn misra_gries_edge_color(g: &Graph) -> EdgeColoring {
    EdgeColoring::new(MisraGries::new(g).run())
}

/// Proper edge-coloring of a graph with Δ ≤ 3 using at most four colors.
pub fn proper_edge_color_subcubic(g: &Graph) -> Result<EdgeColoring, ConstructError> {
    if g.max_degree() > 3 {
        return Err(ConstructError::DegreeTooHigh(g.max_degree()));
    }
    let coloring = misra_gries_edge_color(g);
    if !verify::check_proper_edge(g, &coloring)? {
        return Err(ConstructError::AuditFailed(
            "Misra-Gries coloring is not proper".into(),
        ));
    }
    Ok(coloring)
}
