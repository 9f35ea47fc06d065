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

//! Local edge recoloring against the strong majority condition.
//!
//! Keeps a per-vertex color histogram so that the number of edges of color
//! α adjacent to `e = uv` is `hist[u][α] + hist[v][α]` minus the
//! contribution of `e` itself. Uncolored edges are absent from the
//! histogram, which makes every partial count a lower bound of the final
//! count and lets the set search prune as soon as a limit is exceeded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub(crate) const UNCOLORED: usize = usize::MAX;

pub(crate) struct Recolor<'a> {
    g: &'a Graph,
    palette: usize,
    colors: Vec<usize>,
    hist: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
}

impl<'a> Recolor<'a> {
    pub(crate) fn new(g: &'a Graph, colors: Vec<usize>, palette: usize) -> Self {
        let mut r = Recolor {
            g,
            palette,
            colors: vec![UNCOLORED; g.size()],
            hist: vec![0; g.order() * palette],
            mark: vec![0; g.size()],
            stamp: 0,
        };
        for (e, c) in colors.into_iter().enumerate() {
            if c != UNCOLORED {
                r.assign(e, c);
            }
        }
        r
    }

    #[cfg(test)]
    pub(crate) fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub(crate) fn into_colors(self) -> Vec<usize> {
        self.colors
    }

    fn h(&self, v: usize, c: usize) -> u32 {
        self.hist[v * self.palette + c]
    }

    pub(crate) fn assign(&mut self, e: usize, c: usize) {
        debug_assert_eq!(self.colors[e], UNCOLORED);
        let (u, v) = self.g.edge(e);
        self.hist[u * self.palette + c] += 1;
        self.hist[v * self.palette + c] += 1;
        self.colors[e] = c;
    }

    pub(crate) fn uncolor(&mut self, e: usize) {
        let c = self.colors[e];
        if c == UNCOLORED {
            return;
        }
        let (u, v) = self.g.edge(e);
        self.hist[u * self.palette + c] -= 1;
        self.hist[v * self.palette + c] -= 1;
        self.colors[e] = UNCOLORED;
    }

    /// Colored edges adjacent to `f` with color `c`.
    fn count(&self, f: usize, c: usize) -> usize {
        let (u, v) = self.g.edge(f);
        let own = if self.colors[f] == c { 2 } else { 0 };
        (self.h(u, c) + self.h(v, c) - own) as usize
    }

    fn limit(&self, f: usize) -> usize {
        self.g.edge_degree(f) / 2
    }

    /// An edge with exactly one adjacent edge can never be majority colored;
    /// such edges only occur in split graphs and are not constrained there.
    fn exempt(&self, f: usize) -> bool {
        self.g.edge_degree(f) == 1
    }

    pub(crate) fn is_ok(&self, f: usize) -> bool {
        self.exempt(f) || (0..self.palette).all(|c| self.count(f, c) <= self.limit(f))
    }

    pub(crate) fn violations(&self) -> Vec<usize> {
        (0..self.g.size()).filter(|&f| !self.is_ok(f)).collect()
    }

    /// No other edge at either endpoint of `e` has color `c`.
    fn proper_at(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.g.edge(e);
        let own = u32::from(self.colors[e] == c);
        self.h(u, c) == own && self.h(v, c) == own
    }

    pub(crate) fn is_proper_on(&self, e: usize) -> bool {
        self.colors[e] == UNCOLORED || self.proper_at(e, self.colors[e])
    }

    /// Recolors the edges of `set` so that every edge of the set and every
    /// currently satisfied edge next to it ends up satisfied; with `proper`,
    /// set edges also avoid colors already present at their endpoints.
    /// Colors of the set are left unchanged when no assignment is found
    /// within `node_limit` search nodes.
    pub(crate) fn solve(&mut self, set: &[usize], proper: bool, node_limit: u64) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        let old: Vec<usize> = set.iter().map(|&e| self.colors[e]).collect();
        let mut required: Vec<usize> = Vec::new();
        for &e in set {
            if self.mark[e] != stamp {
                self.mark[e] = stamp;
                required.push(e);
            }
        }
        for &e in set {
            for f in self.g.adjacent_edges(e) {
                if self.mark[f] != stamp && self.is_ok(f) {
                    self.mark[f] = stamp;
                    required.push(f);
                }
            }
        }
        for &e in set {
            self.uncolor(e);
        }
        // Edges pinned entirely by colors outside the set.
        let feasible = required
            .iter()
            .filter(|&&f| !self.exempt(f))
            .all(|&f| (0..self.palette).all(|c| self.count(f, c) <= self.limit(f)));
        let mut nodes = 0;
        if feasible && self.search(set, &old, 0, proper, stamp, &mut nodes, node_limit) {
            return true;
        }
        for &e in set {
            self.uncolor(e);
        }
        for (&e, &c) in set.iter().zip(&old) {
            if c != UNCOLORED {
                self.assign(e, c);
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &mut self,
        set: &[usize],
        old: &[usize],
        idx: usize,
        proper: bool,
        stamp: u32,
        nodes: &mut u64,
        node_limit: u64,
    ) -> bool {
        if idx == set.len() {
            return true;
        }
        let e = set[idx];
        let first = old[idx];
        let palette = self.palette;
        let order = std::iter::once(first)
            .filter(|&c| c < palette)
            .chain((0..palette).filter(|&c| c != first));
        for c in order {
            *nodes += 1;
            if *nodes > node_limit {
                return false;
            }
            if proper && !self.proper_at(e, c) {
                continue;
            }
            self.assign(e, c);
            let fits = self
                .g
                .adjacent_edges(e)
                .filter(|&f| self.mark[f] == stamp && !self.exempt(f))
                .all(|f| self.count(f, c) <= self.limit(f));
            if fits && self.search(set, old, idx + 1, proper, stamp, nodes, node_limit) {
                return true;
            }
            self.uncolor(e);
        }
        false
    }

    /// Violated edges among `e` and its neighbors.
    fn local_violations(&self, e: usize) -> usize {
        std::iter::once(e)
            .chain(self.g.adjacent_edges(e))
            .filter(|&f| !self.is_ok(f))
            .count()
    }

    /// Min-conflicts descent. A violated edge is fixed by recoloring the
    /// edges next to it, so each step picks a violated edge, one of its
    /// neighbors carrying the offending color, and moves that neighbor to
    /// the color with the fewest violations around it (random tie-breaks,
    /// occasional random moves). Seeded, hence deterministic. Returns the
    /// number of violations left.
    pub(crate) fn min_conflicts(&mut self, max_steps: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violated = self.violations();
        for step in 0..max_steps {
            if step % 32 == 0 {
                violated = self.violations();
            }
            violated.retain(|&e| !self.is_ok(e));
            if violated.is_empty() {
                violated = self.violations();
                if violated.is_empty() {
                    return 0;
                }
            }
            let e = violated[rng.gen_range(0..violated.len())];
            let limit = self.limit(e);
            let Some(alpha) = (0..self.palette).find(|&c| self.count(e, c) > limit) else {
                continue;
            };
            let holders: Vec<usize> = self
                .g
                .adjacent_edges(e)
                .filter(|&f| self.colors[f] == alpha)
                .collect();
            let f = holders[rng.gen_range(0..holders.len())];
            self.uncolor(f);
            let chosen = if rng.gen_bool(0.1) {
                rng.gen_range(0..self.palette)
            } else {
                let mut best = Vec::new();
                let mut best_score = usize::MAX;
                for c in 0..self.palette {
                    self.assign(f, c);
                    let score = self.local_violations(f);
                    self.uncolor(f);
                    if score < best_score {
                        best_score = score;
                        best.clear();
                    }
                    if score == best_score {
                        best.push(c);
                    }
                }
                best[rng.gen_range(0..best.len())]
            };
            self.assign(f, chosen);
        }
        self.violations().len()
    }
}
