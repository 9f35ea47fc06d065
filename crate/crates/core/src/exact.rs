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

//! Exact strong majority number and index by backtracking.
//!
//! Both problems are instances of one constraint system: a set of sites
//! (vertices, or edges), and for every site a neighborhood in which no color
//! may occur more than `⌊|neighborhood| / 2⌋` times. The search keeps
//! per-(neighborhood, color) counters and bitmask domains; once a color hits
//! its limit in a neighborhood it is struck from every uncolored member.
//!
//! Before searching, a level is refuted statically when some neighborhood
//! cannot be split into `k` classes of allowed size, or when the
//! "must differ" graph has a clique larger than `k`. That graph joins two
//! sites whenever they share a neighborhood of size two or three (limit one),
//! which is what forces, e.g., the branch vertices of a subdivided K_n or
//! the points of a Steiner triple system's incidence graph to be pairwise
//! distinct.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::verify::{Color, EdgeColoring, VertexColoring};

type Mask = u128;
const MAX_PALETTE: usize = Mask::BITS as usize;
const UNCOLORED: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is not admissible for this coloring problem")]
    NotAdmissible,
    #[error("palette size {0} is outside the supported range 1..={MAX_PALETTE}")]
    PaletteOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 100_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn with_time_limit(time_limit: Duration) -> Self {
        SearchBudget {
            time_limit,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Proven,
    BudgetExceeded,
}

/// Why a palette size was ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    /// Some neighborhood of size `size` cannot be split into `k` classes of
    /// at most `limit` members.
    Capacity { size: usize, limit: usize },
    /// The must-differ graph contains a clique of this size.
    Clique(usize),
    /// Exhaustive search.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Sat(Vec<Color>),
    Unsat(Refutation),
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub k: usize,
    pub outcome: LevelOutcome,
    pub nodes: u64,
    pub millis: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelOutcome {
    Sat,
    Unsat(Refutation),
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult<C> {
    /// Minimum palette size; an upper bound only when `status` is not PROVEN.
    pub value: usize,
    pub certificate: C,
    pub status: Status,
    pub lower_bound_trace: Vec<LevelTrace>,
}

impl<C> ExactResult<C> {
    pub fn total_nodes(&self) -> u64 {
        self.lower_bound_trace.iter().map(|t| t.nodes).sum()
    }
}

/// Sites `0..sites`, each constraint a neighborhood with its color limit.
#[derive(Debug, Clone)]
pub struct MajorityProblem {
    sites: usize,
    members: Vec<Vec<usize>>,
    limits: Vec<usize>,
}

impl MajorityProblem {
    pub fn vertex(g: &Graph) -> Self {
        let mut p = MajorityProblem {
            sites: g.order(),
            members: Vec::new(),
            limits: Vec::new(),
        };
        for v in 0..g.order() {
            p.push(g.neighbors(v).collect());
        }
        p
    }

    pub fn edge(g: &Graph) -> Self {
        let mut p = MajorityProblem {
            sites: g.size(),
            members: Vec::new(),
            limits: Vec::new(),
        };
        for e in 0..g.size() {
            p.push(g.adjacent_edges(e).collect());
        }
        p
    }

    fn push(&mut self, members: Vec<usize>) {
        if !members.is_empty() {
            self.limits.push(members.len() / 2);
            self.members.push(members);
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn is_satisfied_by(&self, colors: &[Color]) -> bool {
        self.members.iter().zip(&self.limits).all(|(m, &limit)| {
            let mut seen: Vec<Color> = m.iter().map(|&s| colors[s]).collect();
            seen.sort_unstable();
            seen.chunk_by(|a, b| a == b).all(|run| run.len() <= limit)
        })
    }

    fn capacity_refutation(&self, k: usize) -> Option<Refutation> {
        self.members
            .iter()
            .zip(&self.limits)
            .find(|(m, &limit)| k * limit < m.len())
            .map(|(m, &limit)| Refutation::Capacity {
                size: m.len(),
                limit,
            })
    }

    /// Greedy lower bound on the largest clique of the must-differ graph.
    pub fn distinct_clique(&self) -> Vec<usize> {
        let n = self.sites;
        let mut adj = vec![vec![false; n]; n];
        for (m, &limit) in self.members.iter().zip(&self.limits) {
            if limit == 1 {
                for (i, &a) in m.iter().enumerate() {
                    for &b in &m[i + 1..] {
                        adj[a][b] = true;
                        adj[b][a] = true;
                    }
                }
            }
        }
        let degree: Vec<usize> = adj
            .iter()
            .map(|r| r.iter().filter(|&&x| x).count())
            .collect();
        let mut best = Vec::new();
        for seed in 0..n {
            if degree[seed] < best.len() {
                continue;
            }
            let mut candidates: Vec<usize> = (0..n).filter(|&u| adj[seed][u]).collect();
            candidates.sort_by_key(|&u| (std::cmp::Reverse(degree[u]), u));
            let mut clique = vec![seed];
            for u in candidates {
                if clique.iter().all(|&w| adj[u][w]) {
                    clique.push(u);
                }
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    /// Decide whether a coloring with at most `k` colors exists.
    pub fn decide(&self, k: usize, budget: &SearchBudget) -> Result<(Decision, u64), ExactError> {
        if k == 0 {
            return Err(ExactError::PaletteOutOfRange(k));
        }
        if let Some(r) = self.capacity_refutation(k) {
            return Ok((Decision::Unsat(r), 0));
        }
        let clique = self.distinct_clique();
        if clique.len() > k {
            return Ok((Decision::Unsat(Refutation::Clique(clique.len())), 0));
        }
        if k >= self.sites {
            // All limits are at least one here, so distinct colors work.
            return Ok((Decision::Sat((0..self.sites).collect()), 0));
        }
        if k > MAX_PALETTE {
            return Err(ExactError::PaletteOutOfRange(k));
        }
        let mut search = Search::new(self, k, budget);
        let outcome = search.run();
        let nodes = search.nodes;
        let decision = match outcome {
            Outcome::Found => Decision::Sat(search.color.iter().map(|&c| c as Color).collect()),
            Outcome::Exhausted => Decision::Unsat(Refutation::Search),
            Outcome::OutOfBudget => Decision::BudgetExceeded,
        };
        Ok((decision, nodes))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    problem: &'a MajorityProblem,
    k: usize,
    color: Vec<u8>,
    domain: Vec<Mask>,
    /// counts[c * k + color]
    counts: Vec<u16>,
    uncolored_in: Vec<usize>,
    site_constraints: Vec<Vec<usize>>,
    static_degree: Vec<usize>,
    trail: Vec<(usize, Mask)>,
    max_used: Option<usize>,
    nodes: u64,
    started: Instant,
    budget: SearchBudget,
}

impl<'a> Search<'a> {
    fn new(problem: &'a MajorityProblem, k: usize, budget: &SearchBudget) -> Self {
        let mut site_constraints = vec![Vec::new(); problem.sites];
        for (c, m) in problem.members.iter().enumerate() {
            for &s in m {
                site_constraints[s].push(c);
            }
        }
        let static_degree = site_constraints
            .iter()
            .map(|cs| cs.iter().map(|&c| problem.members[c].len()).sum())
            .collect();
        let full: Mask = if k == MAX_PALETTE {
            Mask::MAX
        } else {
            (1 << k) - 1
        };
        Search {
            problem,
            k,
            color: vec![UNCOLORED; problem.sites],
            domain: vec![full; problem.sites],
            counts: vec![0; problem.members.len() * k],
            uncolored_in: problem.members.iter().map(Vec::len).collect(),
            site_constraints,
            static_degree,
            trail: Vec::new(),
            max_used: None,
            nodes: 0,
            started: Instant::now(),
            budget: *budget,
        }
    }

    fn run(&mut self) -> Outcome {
        self.started = Instant::now();
        self.dfs()
    }

    /// Colors a site may take without breaking canonical color order: any
    /// color already in use, or the lowest unused one.
    fn open_mask(&self) -> Mask {
        let open = self.max_used.map_or(1, |m| m + 2).min(self.k);
        if open == MAX_PALETTE {
            Mask::MAX
        } else {
            (1 << open) - 1
        }
    }

    fn pick_site(&self) -> Option<usize> {
        let open = self.open_mask();
        let mut best: Option<(u32, std::cmp::Reverse<usize>, usize)> = None;
        for s in 0..self.problem.sites {
            if self.color[s] != UNCOLORED {
                continue;
            }
            let key = (
                (self.domain[s] & open).count_ones(),
                std::cmp::Reverse(self.static_degree[s]),
                s,
            );
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, s)| s)
    }

    fn dfs(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes >= self.budget.node_limit
            || (self.nodes.is_multiple_of(1024) && self.started.elapsed() >= self.budget.time_limit)
        {
            return Outcome::OutOfBudget;
        }
        let Some(site) = self.pick_site() else {
            return Outcome::Found;
        };
        let mut choices = self.domain[site] & self.open_mask();
        while choices != 0 {
            let col = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            let mark = self.trail.len();
            let prev_max = self.max_used;
            if self.assign(site, col) {
                self.max_used = Some(prev_max.map_or(col, |m| m.max(col)));
                match self.dfs() {
                    Outcome::Exhausted => {}
                    other => return other,
                }
                self.max_used = prev_max;
            }
            self.unassign(site, col);
            while self.trail.len() > mark {
                let (s, d) = self.trail.pop().expect("trail entry");
                self.domain[s] = d;
            }
        }
        Outcome::Exhausted
    }

    /// Colors `site`, updates counters and prunes domains. Returns false on a
    /// wipe-out; the caller undoes through `unassign` plus the trail either way.
    fn assign(&mut self, site: usize, col: usize) -> bool {
        let k = self.k;
        let bit: Mask = 1 << col;
        self.color[site] = col as u8;
        let mut ok = true;
        for &c in &self.site_constraints[site] {
            let slot = c * k + col;
            self.counts[slot] += 1;
            self.uncolored_in[c] -= 1;
            if self.counts[slot] as usize == self.problem.limits[c] {
                for &s in &self.problem.members[c] {
                    if self.color[s] == UNCOLORED && self.domain[s] & bit != 0 {
                        self.trail.push((s, self.domain[s]));
                        self.domain[s] &= !bit;
                        if self.domain[s] == 0 {
                            ok = false;
                        }
                    }
                }
            } else if self.counts[slot] as usize > self.problem.limits[c] {
                ok = false;
            }
        }
        ok && self.capacity_ok(site)
    }

    /// For every neighborhood touched by `site`, the colors still available
    /// to its uncolored members must leave room for all of them.
    fn capacity_ok(&self, site: usize) -> bool {
        let k = self.k;
        self.site_constraints[site].iter().all(|&c| {
            let need = self.uncolored_in[c];
            if need == 0 {
                return true;
            }
            let available = self.problem.members[c]
                .iter()
                .filter(|&&s| self.color[s] == UNCOLORED)
                .fold(0 as Mask, |acc, &s| acc | self.domain[s]);
            let limit = self.problem.limits[c];
            let mut room = 0;
            let mut bits = available;
            while bits != 0 {
                let col = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                room += limit - self.counts[c * k + col] as usize;
                if room >= need {
                    return true;
                }
            }
            false
        })
    }

    fn unassign(&mut self, site: usize, col: usize) {
        let k = self.k;
        for &c in &self.site_constraints[site] {
            self.counts[c * k + col] -= 1;
            self.uncolored_in[c] += 1;
        }
        self.color[site] = UNCOLORED;
    }
}

fn solve_from(
    problem: &MajorityProblem,
    start_k: usize,
    budget: &SearchBudget,
) -> Result<ExactResult<Vec<Color>>, ExactError> {
    let mut trace = Vec::new();
    let mut status = Status::Proven;
    let mut k = start_k;
    loop {
        let t0 = Instant::now();
        let (decision, nodes) = problem.decide(k, budget)?;
        let millis = t0.elapsed().as_millis();
        let outcome = match &decision {
            Decision::Sat(_) => LevelOutcome::Sat,
            Decision::Unsat(r) => LevelOutcome::Unsat(*r),
            Decision::BudgetExceeded => LevelOutcome::BudgetExceeded,
        };
        trace.push(LevelTrace {
            k,
            outcome,
            nodes,
            millis,
        });
        match decision {
            Decision::Sat(colors) => {
                return Ok(ExactResult {
                    value: k,
                    certificate: colors,
                    status,
                    lower_bound_trace: trace,
                })
            }
            Decision::Unsat(_) => {}
            Decision::BudgetExceeded => status = Status::BudgetExceeded,
        }
        k += 1;
    }
}

/// Decide whether `g` has a strong majority vertex-coloring with `k` colors.
pub fn decide_vertex_k(g: &Graph, k: usize, budget: &SearchBudget) -> Result<Decision, ExactError> {
    if !g.is_vertex_admissible() {
        return Err(ExactError::NotAdmissible);
    }
    Ok(MajorityProblem::vertex(g).decide(k, budget)?.0)
}

/// Decide whether `g` has a strong majority edge-coloring with `k` colors.
pub fn decide_edge_k(g: &Graph, k: usize, budget: &SearchBudget) -> Result<Decision, ExactError> {
    if !g.is_edge_admissible() || g.size() == 0 {
        return Err(ExactError::NotAdmissible);
    }
    Ok(MajorityProblem::edge(g).decide(k, budget)?.0)
}

/// Maj(G): the strong majority number, trying k = 2, 3, ...
pub fn exact_maj_vertex(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<ExactResult<VertexColoring>, ExactError> {
    if !g.is_vertex_admissible() {
        return Err(ExactError::NotAdmissible);
    }
    let r = solve_from(&MajorityProblem::vertex(g), 2, budget)?;
    Ok(ExactResult {
        value: r.value,
        certificate: VertexColoring::new(r.certificate),
        status: r.status,
        lower_bound_trace: r.lower_bound_trace,
    })
}

/// Maj'(G): the strong majority index. Searches directly over edges, where
/// the neighborhood of an edge is the set of edges sharing an endpoint.
pub fn exact_maj_edge(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<ExactResult<EdgeColoring>, ExactError> {
    if !g.is_edge_admissible() || g.size() == 0 {
        return Err(ExactError::NotAdmissible);
    }
    let problem = MajorityProblem::edge(g);
    // One color works exactly when no edge has an adjacent edge.
    let r = if problem.is_satisfied_by(&vec![0; g.size()]) {
        ExactResult {
            value: 1,
            certificate: vec![0; g.size()],
            status: Status::Proven,
            lower_bound_trace: vec![LevelTrace {
                k: 1,
                outcome: LevelOutcome::Sat,
                nodes: 0,
                millis: 0,
            }],
        }
    } else {
        solve_from(&problem, 2, budget)?
    };
    Ok(ExactResult {
        value: r.value,
        certificate: EdgeColoring::new(r.certificate),
        status: r.status,
        lower_bound_trace: r.lower_bound_trace,
    })
}
