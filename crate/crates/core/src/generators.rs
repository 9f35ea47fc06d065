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

//! Named graph families and seeded random graphs.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Default cap on the number of edges `bipartite_witness` may produce.
pub const WITNESS_EDGE_CAP: usize = 1_000_000;

const RETRY_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameter too small: {0}")]
    TooSmall(String),
    #[error("graph would have {edges} edges, above the cap of {cap}")]
    SizeCapExceeded { edges: usize, cap: usize },
    #[error("no Steiner triple system of order {0}")]
    InvalidOrder(usize),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("gave up after {0} attempts")]
    RetryLimit(usize),
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall(format!("cycle needs n >= 3, got {n}")));
    }
    let edges = (0..n)
        .map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))
        .collect();
    Ok(Graph::from_normalized(n, edges))
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    Ok(complete_unchecked(n))
}

fn complete_unchecked(n: usize) -> Graph {
    Graph::from_normalized(n, (0..n).tuple_combinations().collect())
}

/// K_n with every edge replaced by a path of length two.
pub fn subdivided_complete(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall(format!(
            "subdivided K_n needs n >= 3, got {n}"
        )));
    }
    Ok(complete_unchecked(n).subdivide())
}

/// K_n with every edge `uv` replaced by a diamond K_4 - e whose two
/// degree-2 vertices are `u` and `v`. The diamond of the i-th edge of K_n
/// (lexicographic order) adds vertices `n + 2i` and `n + 2i + 1`.
pub fn diamond_complete(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall(format!(
            "diamond K_n needs n >= 3, got {n}"
        )));
    }
    let mut edges = Vec::new();
    for (i, (u, v)) in (0..n).tuple_combinations().enumerate() {
        let (a, b) = (n + 2 * i, n + 2 * i + 1);
        edges.extend([(u, a), (u, b), (v, a), (v, b), (a, b)]);
    }
    let order = n + n * (n - 1);
    Ok(Graph::from_normalized(order, edges))
}

/// Bipartite graph whose strong majority number is at least `k`.
///
/// `X = 0..⌊δ/2⌋k`; every δ-subset of `X` (lexicographic order) gets its own
/// vertex in `Y`, placed after `X`, adjacent to exactly that subset.
pub fn bipartite_witness(k: usize, delta: usize) -> Result<Graph, GenError> {
    bipartite_witness_capped(k, delta, WITNESS_EDGE_CAP)
}

pub fn bipartite_witness_capped(k: usize, delta: usize, cap: usize) -> Result<Graph, GenError> {
    if k < 2 || delta < 2 {
        return Err(GenError::TooSmall(format!(
            "witness needs K >= 2 and delta >= 2, got K={k}, delta={delta}"
        )));
    }
    let x = (delta / 2) * k;
    if x < delta {
        return Err(GenError::TooSmall(format!(
            "|X| = {x} is smaller than delta = {delta}"
        )));
    }
    let y = binomial(x, delta).ok_or(GenError::SizeCapExceeded {
        edges: usize::MAX,
        cap,
    })?;
    let edge_count = y.saturating_mul(delta);
    if edge_count > cap {
        return Err(GenError::SizeCapExceeded {
            edges: edge_count,
            cap,
        });
    }
    let mut edges = Vec::with_capacity(edge_count);
    for (j, subset) in (0..x).combinations(delta).enumerate() {
        edges.extend(subset.into_iter().map(|xi| (xi, x + j)));
    }
    Ok(Graph::from_normalized(x + y, edges))
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// A Steiner triple system on points `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerTripleSystem {
    pub n: usize,
    pub triples: Vec<[usize; 3]>,
}

impl SteinerTripleSystem {
    /// Every unordered pair of points lies in exactly one triple.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.triples.len() * 6 != n * n.saturating_sub(1) {
            return false;
        }
        let mut cover = vec![0u32; n * n];
        for t in &self.triples {
            if t.iter().any(|&p| p >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return false;
            }
            for (&a, &b) in t.iter().tuple_combinations() {
                cover[a * n + b] += 1;
                cover[b * n + a] += 1;
            }
        }
        (0..n)
            .tuple_combinations()
            .all(|(a, b)| cover[a * n + b] == 1)
    }
}

/// Bose construction for n ≡ 3 (mod 6), Skolem construction for n ≡ 1 (mod 6).
pub fn steiner_triple_system(n: usize) -> Result<SteinerTripleSystem, GenError> {
    if n < 7 || !matches!(n % 6, 1 | 3) {
        return Err(GenError::InvalidOrder(n));
    }
    let mut triples = if n % 6 == 3 { bose(n) } else { skolem(n) };
    for t in &mut triples {
        t.sort_unstable();
    }
    triples.sort_unstable();
    Ok(SteinerTripleSystem { n, triples })
}

fn bose(n: usize) -> Vec<[usize; 3]> {
    // Idempotent commutative quasigroup on Z_q, q odd: a∘b = (a + b)/2.
    let q = n / 3;
    let half = q.div_ceil(2);
    let op = |a: usize, b: usize| ((a + b) * half) % q;
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let mut triples: Vec<[usize; 3]> = (0..q).map(|x| [pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for (x, y) in (0..q).tuple_combinations() {
        for i in 0..3 {
            triples.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
        }
    }
    triples
}

fn skolem(n: usize) -> Vec<[usize; 3]> {
    // Half-idempotent commutative quasigroup on Z_{2v}: relabel the addition
    // table so that x∘x = (x+v)∘(x+v) = x for x < v.
    let q = (n - 1) / 3;
    let v = q / 2;
    let relabel = |s: usize| {
        if s.is_multiple_of(2) {
            s / 2
        } else {
            v + (s - 1) / 2
        }
    };
    let op = |a: usize, b: usize| relabel((a + b) % q);
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let inf = 3 * q;
    let mut triples = Vec::new();
    for x in 0..v {
        triples.push([pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            triples.push([inf, pt(x + v, i), pt(x, i + 1)]);
        }
    }
    for (x, y) in (0..q).tuple_combinations() {
        for i in 0..3 {
            triples.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
        }
    }
    triples
}

/// Block-point incidence graph: triples are vertices `0..s`, points follow
/// as `s..s+n`.
pub fn sts_incidence(sts: &SteinerTripleSystem) -> Graph {
    let s = sts.triples.len();
    let edges = sts
        .triples
        .iter()
        .enumerate()
        .flat_map(|(x, t)| t.iter().map(move |&p| (x, s + p)))
        .collect();
    Graph::from_normalized(s + sts.n, edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("petersen edges are simple")
}

/// Circulant graph on Z_n joining i and i ± s for every s in `steps`.
pub fn circulant(n: usize, steps: &[usize]) -> Result<Graph, GenError> {
    let mut set = HashSet::new();
    for &s in steps {
        if s == 0 || s >= n {
            return Err(GenError::Infeasible(format!(
                "step {s} invalid for order {n}"
            )));
        }
        for i in 0..n {
            let j = (i + s) % n;
            set.insert((i.min(j), i.max(j)));
        }
    }
    let mut edges: Vec<_> = set.into_iter().collect();
    edges.sort_unstable();
    Ok(Graph::from_normalized(n, edges))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn finish(n: usize, set: HashSet<(usize, usize)>) -> Graph {
    let mut edges: Vec<_> = set.into_iter().collect();
    edges.sort_unstable();
    Graph::from_normalized(n, edges)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Random r-regular graph from the pairing model. Points are matched one
/// pair at a time, rejecting pairs that would create a loop or a multi-edge;
/// a pairing that gets stuck is discarded and restarted.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph, GenError> {
    if (n * r) % 2 == 1 {
        return Err(GenError::Infeasible(format!("n*r = {} is odd", n * r)));
    }
    if r > 0 && r >= n {
        return Err(GenError::Infeasible(format!(
            "degree {r} needs more than {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    'attempt: for _ in 0..RETRY_LIMIT {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
        let mut set = HashSet::with_capacity(n * r / 2);
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..64 {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (a, b) = (points[i], points[j]);
                if i == j || a == b || set.contains(&key(a, b)) {
                    continue;
                }
                set.insert(key(a, b));
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Ok(finish(n, set));
    }
    Err(GenError::RetryLimit(RETRY_LIMIT))
}

/// Random graph with exactly `m` edges and all degrees even, built as an
/// edge-disjoint union of random cycles. Every nontrivial component has at
/// least three edges.
pub fn random_even_degree(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    if m == 1 || m == 2 || (m > 0 && n < 3) || m > n * n.saturating_sub(1) / 2 {
        return Err(GenError::Infeasible(format!(
            "no even graph with n={n}, m={m}"
        )));
    }
    let mut rng = rng(seed);
    let vertices: Vec<usize> = (0..n).collect();
    'attempt: for _ in 0..RETRY_LIMIT {
        let mut set = HashSet::with_capacity(m);
        let mut remaining = m;
        while remaining > 0 {
            let mut placed = false;
            for _ in 0..256 {
                let max_len = remaining.min(n);
                let len = rng.gen_range(3..=max_len);
                let rest = remaining - len;
                if rest == 1 || rest == 2 {
                    continue;
                }
                let cyc: Vec<usize> = vertices.choose_multiple(&mut rng, len).copied().collect();
                let cyc_edges: Vec<_> = (0..len).map(|i| key(cyc[i], cyc[(i + 1) % len])).collect();
                if cyc_edges.iter().any(|e| set.contains(e)) {
                    continue;
                }
                set.extend(cyc_edges);
                remaining = rest;
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Ok(finish(n, set));
    }
    Err(GenError::RetryLimit(RETRY_LIMIT))
}

/// Random graph with `m` edges and minimum degree at least `delta`.
/// Deficient vertices are first joined to random partners, then random
/// edges are added up to `m`.
pub fn random_min_degree(n: usize, m: usize, delta: usize, seed: u64) -> Result<Graph, GenError> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if delta >= n || m > max_edges || m * 2 < n * delta {
        return Err(GenError::Infeasible(format!(
            "no simple graph with n={n}, m={m}, min degree {delta}"
        )));
    }
    let mut rng = rng(seed);
    for _ in 0..RETRY_LIMIT {
        let mut set = HashSet::with_capacity(m);
        let mut deg = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for &v in &order {
            while deg[v] < delta {
                // Prefer partners that are themselves still deficient.
                let candidates: Vec<usize> = (0..n)
                    .filter(|&u| u != v && !set.contains(&key(u, v)))
                    .collect();
                let needy: Vec<usize> = candidates
                    .iter()
                    .copied()
                    .filter(|&u| deg[u] < delta)
                    .collect();
                let pool = if needy.is_empty() {
                    &candidates
                } else {
                    &needy
                };
                let Some(&u) = pool.choose(&mut rng) else {
                    break;
                };
                set.insert(key(u, v));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if set.len() > m || deg.iter().any(|&d| d < delta) {
            continue;
        }
        fill_random(&mut set, m, &mut rng, |_, _| true, n);
        return Ok(finish(n, set));
    }
    Err(GenError::RetryLimit(RETRY_LIMIT))
}

/// Random edge-admissible graph: a random graph with `m` edges, after which
/// every degree-2 vertex with a pendant neighbor gains one more random edge
/// (so the result may have a few more than `m` edges). Isolated and pendant
/// vertices are kept, which gives mixed degree profiles.
pub fn random_edge_admissible(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if n < 4 || m > max_edges / 2 {
        return Err(GenError::Infeasible(format!(
            "n={n}, m={m} is too dense or too small"
        )));
    }
    let mut rng = rng(seed);
    let mut set = HashSet::with_capacity(m);
    fill_random(&mut set, m, &mut rng, |_, _| true, n);
    let mut deg = vec![0usize; n];
    for &(a, b) in &set {
        deg[a] += 1;
        deg[b] += 1;
    }
    loop {
        let bad = (0..n).find(|&u| {
            deg[u] == 2
                && set
                    .iter()
                    .any(|&(a, b)| (a == u && deg[b] == 1) || (b == u && deg[a] == 1))
        });
        let Some(u) = bad else { break };
        let partners: Vec<usize> = (0..n)
            .filter(|&w| w != u && deg[w] != 1 && !set.contains(&key(u, w)))
            .collect();
        let Some(&w) = partners.choose(&mut rng) else {
            return Err(GenError::RetryLimit(0));
        };
        set.insert(key(u, w));
        deg[u] += 1;
        deg[w] += 1;
    }
    Ok(finish(n, set))
}

/// Random bipartite graph on parts `0..n1` and `n1..n1+n2` with `m` edges and
/// minimum degree at least `delta`.
pub fn random_bipartite_min_degree(
    n1: usize,
    n2: usize,
    m: usize,
    delta: usize,
    seed: u64,
) -> Result<Graph, GenError> {
    if delta > n1.min(n2) || m > n1 * n2 || m < n1.max(n2) * delta {
        return Err(GenError::Infeasible(format!(
            "no bipartite graph with parts {n1},{n2}, m={m}, min degree {delta}"
        )));
    }
    let n = n1 + n2;
    let side = |v: usize| v < n1;
    let mut rng = rng(seed);
    for _ in 0..RETRY_LIMIT {
        let mut set = HashSet::with_capacity(m);
        let mut deg = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for &v in &order {
            while deg[v] < delta {
                let candidates: Vec<usize> = (0..n)
                    .filter(|&u| side(u) != side(v) && !set.contains(&key(u, v)))
                    .collect();
                let needy: Vec<usize> = candidates
                    .iter()
                    .copied()
                    .filter(|&u| deg[u] < delta)
                    .collect();
                let pool = if needy.is_empty() {
                    &candidates
                } else {
                    &needy
                };
                let Some(&u) = pool.choose(&mut rng) else {
                    break;
                };
                set.insert(key(u, v));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if set.len() > m || deg.iter().any(|&d| d < delta) {
            continue;
        }
        fill_random(&mut set, m, &mut rng, |a, b| side(a) != side(b), n);
        return Ok(finish(n, set));
    }
    Err(GenError::RetryLimit(RETRY_LIMIT))
}

fn fill_random(
    set: &mut HashSet<(usize, usize)>,
    m: usize,
    rng: &mut ChaCha8Rng,
    allowed: impl Fn(usize, usize) -> bool,
    n: usize,
) {
    let mut free: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(a, b)| allowed(a, b) && !set.contains(&(a, b)))
        .collect();
    free.shuffle(rng);
    let need = m - set.len();
    set.extend(free.into_iter().take(need));
}
