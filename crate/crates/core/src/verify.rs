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

//! Majority-condition checkers and edge discrepancy.
//!
//! "At most half" is always `count <= limit / 2` in integer arithmetic.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("graph is not admissible for this coloring problem")]
    NotAdmissible,
    #[error("coloring has {got} entries, expected {expected}")]
    PartialColoring { expected: usize, got: usize },
    #[error("color {color} out of range for palette size {k}")]
    ColorOutOfRange { color: Color, k: usize },
}

fn palette_of(colors: &[Color]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// A total map vertex id -> color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    colors: Vec<Color>,
}

/// A total map edge id -> color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

macro_rules! coloring_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(colors: Vec<Color>) -> Self {
                $ty { colors }
            }

            pub fn colors(&self) -> &[Color] {
                &self.colors
            }

            pub fn into_colors(self) -> Vec<Color> {
                self.colors
            }

            pub fn color(&self, id: usize) -> Color {
                self.colors[id]
            }

            pub fn len(&self) -> usize {
                self.colors.len()
            }

            pub fn is_empty(&self) -> bool {
                self.colors.is_empty()
            }

            /// Number of distinct colors present.
            pub fn palette(&self) -> usize {
                palette_of(&self.colors)
            }

            /// Relabels colors to `0..palette` in order of first appearance.
            pub fn normalized(&self) -> Self {
                let mut map = HashMap::new();
                let colors = self
                    .colors
                    .iter()
                    .map(|&c| {
                        let next = map.len();
                        *map.entry(c).or_insert(next)
                    })
                    .collect();
                $ty { colors }
            }
        }
    };
}

coloring_impl!(VertexColoring);
coloring_impl!(EdgeColoring);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Site {
    Vertex(usize),
    Edge(usize),
}

/// One violated majority condition: at `site`, `color` occurs `count` times
/// among the neighbors (or adjacent edges) while at most `threshold` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub site: Site,
    pub color: Color,
    pub count: usize,
    pub threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Verdict {
            ok: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Sites with at least one witness, deduplicated, in first-seen order.
    pub fn violating_sites(&self) -> Vec<Site> {
        let mut seen = BTreeSet::new();
        self.witnesses
            .iter()
            .filter(|w| seen.insert(w.site))
            .map(|w| w.site)
            .collect()
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), VerifyError> {
    if expected != got {
        return Err(VerifyError::PartialColoring { expected, got });
    }
    Ok(())
}

/// Appends a witness for every color that occurs more than `threshold` times.
fn tally(
    site: Site,
    colors: impl Iterator<Item = Color>,
    threshold: usize,
    out: &mut Vec<Witness>,
) {
    let mut counts: Vec<(Color, usize)> = Vec::new();
    for c in colors {
        match counts.iter_mut().find(|(k, _)| *k == c) {
            Some((_, n)) => *n += 1,
            None => counts.push((c, 1)),
        }
    }
    counts.sort_unstable();
    out.extend(
        counts
            .into_iter()
            .filter(|&(_, n)| n > threshold)
            .map(|(color, count)| Witness {
                site,
                color,
                count,
                threshold,
            }),
    );
}

/// Every color occupies at most half of every neighborhood.
pub fn check_strong_majority_vertex(g: &Graph, c: &VertexColoring) -> Result<Verdict, VerifyError> {
    check_len(g.order(), c.len())?;
    if !g.is_vertex_admissible() {
        return Err(VerifyError::NotAdmissible);
    }
    let mut witnesses = Vec::new();
    for v in 0..g.order() {
        tally(
            Site::Vertex(v),
            g.neighbors(v).map(|u| c.color(u)),
            g.degree(v) / 2,
            &mut witnesses,
        );
    }
    Ok(Verdict::from_witnesses(witnesses))
}

/// Every color occupies at most half of the edges adjacent to every edge.
pub fn check_strong_majority_edge(g: &Graph, c: &EdgeColoring) -> Result<Verdict, VerifyError> {
    check_len(g.size(), c.len())?;
    if !g.is_edge_admissible() {
        return Err(VerifyError::NotAdmissible);
    }
    let mut witnesses = Vec::new();
    for e in 0..g.size() {
        tally(
            Site::Edge(e),
            g.adjacent_edges(e).map(|f| c.color(f)),
            g.edge_degree(e) / 2,
            &mut witnesses,
        );
    }
    Ok(Verdict::from_witnesses(witnesses))
}

/// Classical majority coloring: at most half of the neighbors of `v` share
/// the color of `v`.
pub fn check_majority_vertex(g: &Graph, c: &VertexColoring) -> Result<Verdict, VerifyError> {
    check_len(g.order(), c.len())?;
    let mut witnesses = Vec::new();
    for v in 0..g.order() {
        let own = c.color(v);
        let count = g.neighbors(v).filter(|&u| c.color(u) == own).count();
        let threshold = g.degree(v) / 2;
        if count > threshold {
            witnesses.push(Witness {
                site: Site::Vertex(v),
                color: own,
                count,
                threshold,
            });
        }
    }
    Ok(Verdict::from_witnesses(witnesses))
}

pub fn check_proper_vertex(g: &Graph, c: &VertexColoring) -> Result<bool, VerifyError> {
    check_len(g.order(), c.len())?;
    Ok(g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v)))
}

pub fn check_proper_edge(g: &Graph, c: &EdgeColoring) -> Result<bool, VerifyError> {
    check_len(g.size(), c.len())?;
    Ok((0..g.order()).all(|v| {
        let mut seen: Vec<Color> = g.incident(v).iter().map(|&(_, e)| c.color(e)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }))
}

/// Recomputes a witness from scratch; true iff it is a genuine violation.
pub fn replay_witness(g: &Graph, colors: &[Color], w: &Witness) -> bool {
    let (count, threshold) = match w.site {
        Site::Vertex(v) if v < g.order() => (
            g.neighbors(v).filter(|&u| colors[u] == w.color).count(),
            g.degree(v) / 2,
        ),
        Site::Edge(e) if e < g.size() => (
            g.adjacent_edges(e)
                .filter(|&f| colors[f] == w.color)
                .count(),
            g.edge_degree(e) / 2,
        ),
        _ => return false,
    };
    count == w.count && threshold == w.threshold && count > threshold
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    /// max over v and colors i, j of |d_i(v) - d_j(v)|.
    pub value: usize,
    /// `per_vertex[v][i]` = number of edges at `v` colored `i`.
    pub per_vertex: Vec<Vec<usize>>,
}

pub fn discrepancy(
    g: &Graph,
    c: &EdgeColoring,
    k: usize,
) -> Result<DiscrepancyReport, VerifyError> {
    check_len(g.size(), c.len())?;
    if let Some(&color) = c.colors().iter().find(|&&col| col >= k) {
        return Err(VerifyError::ColorOutOfRange { color, k });
    }
    let mut per_vertex = vec![vec![0usize; k]; g.order()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        per_vertex[u][c.color(e)] += 1;
        per_vertex[v][c.color(e)] += 1;
    }
    let value = per_vertex
        .iter()
        .map(|row| row.iter().max().unwrap_or(&0) - row.iter().min().unwrap_or(&0))
        .max()
        .unwrap_or(0);
    Ok(DiscrepancyReport { value, per_vertex })
}
