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

//! Algorithm dispatch: every entry point returns a [`RunReport`] and, when
//! one was produced, the coloring it describes.

use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde_json::json;

use majcolor::construct::{self, DegreeBoundAudit};
use majcolor::exact::{self, Decision, LevelOutcome, SearchBudget, Status};
use majcolor::generators;
use majcolor::verify;
use majcolor::{EdgeColoring, Graph};

use crate::error::{CliError, EXIT_VIOLATED};
use crate::report::{
    ColoringKind, ColoringRecord, Condition, RunReport, RunStatus, VerdictSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Strong vertex-coloring of a cycle with 2 or 3 colors.
    #[value(name = "cycle")]
    Cycle,
    /// Strong vertex-coloring of K_n with 3 colors (4 for K_4).
    #[value(name = "complete")]
    Complete,
    /// Strong vertex-coloring with at most 2*Delta + 1 colors.
    #[value(name = "brooks2d1")]
    Brooks2d1,
    /// Two-color majority vertex-coloring.
    #[value(name = "lovasz2")]
    Lovasz2,
    /// Strong edge-coloring with at most 8 colors.
    #[value(name = "edge8")]
    Edge8,
    /// Strong edge-coloring of an even-degree graph along Euler tours.
    #[value(name = "euler")]
    Euler,
    /// Strong 3-edge-coloring of a 6-regular graph.
    #[value(name = "sixreg")]
    Sixreg,
    /// Strong 3-edge-coloring of K_n.
    #[value(name = "kn3")]
    Kn3,
    /// Strong 4-edge-coloring when the minimum degree is at least 7.
    #[value(name = "delta7")]
    Delta7,
    /// Strong 3-edge-coloring when the minimum degree is at least 9.
    #[value(name = "delta9")]
    Delta9,
    /// Strong 4-edge-coloring of a bipartite graph with minimum degree 4.
    #[value(name = "bip4")]
    Bip4,
    /// Strong 3-edge-coloring of a bipartite graph with minimum degree 5.
    #[value(name = "bip5")]
    Bip5,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cycle => "cycle",
            Algorithm::Complete => "complete",
            Algorithm::Brooks2d1 => "brooks2d1",
            Algorithm::Lovasz2 => "lovasz2",
            Algorithm::Edge8 => "edge8",
            Algorithm::Euler => "euler",
            Algorithm::Sixreg => "sixreg",
            Algorithm::Kn3 => "kn3",
            Algorithm::Delta7 => "delta7",
            Algorithm::Delta9 => "delta9",
            Algorithm::Bip4 => "bip4",
            Algorithm::Bip5 => "bip5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Vertex,
    Edge,
}

/// A benchmark task: a coloring algorithm or an exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Color(Algorithm),
    Exact(Mode),
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact-vertex" => Ok(Task::Exact(Mode::Vertex)),
            "exact-edge" => Ok(Task::Exact(Mode::Edge)),
            _ => Algorithm::from_str(s, false)
                .map(Task::Color)
                .map_err(|_| format!("unknown algorithm {s:?}")),
        }
    }
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Color(a) => a.name(),
            Task::Exact(Mode::Vertex) => "exact-vertex",
            Task::Exact(Mode::Edge) => "exact-edge",
        }
    }
}

/// Solver budget: `--budget-ms`, else `MAJCOLOR_BUDGET_MS`, else the default.
pub fn budget(flag_ms: Option<u64>) -> Result<SearchBudget, CliError> {
    let ms = match flag_ms {
        Some(ms) => Some(ms),
        None => match std::env::var("MAJCOLOR_BUDGET_MS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                CliError::usage(format!(
                    "MAJCOLOR_BUDGET_MS={v:?} is not a number of milliseconds"
                ))
            })?),
            Err(_) => None,
        },
    };
    Ok(ms.map_or_else(SearchBudget::default, |ms| {
        SearchBudget::with_time_limit(Duration::from_millis(ms))
    }))
}

/// Vertices of `g` in cycle order, if `g` is a single cycle.
fn cycle_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 || g.size() != n || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut at = 0;
    loop {
        let next = g.neighbors(at).find(|&x| x != prev)?;
        if next == 0 {
            break;
        }
        order.push(next);
        (prev, at) = (at, next);
    }
    (order.len() == n).then_some(order)
}

fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    n >= 3 && g.size() == n * (n - 1) / 2
}

fn components_divisible_by_three(g: &Graph) -> bool {
    g.edge_components().iter().all(|c| c.len() % 3 == 0)
}

struct Built {
    record: ColoringRecord,
    bound: usize,
    details: Option<serde_json::Value>,
}

fn vertex(colors: Vec<usize>, condition: Condition) -> ColoringRecord {
    ColoringRecord {
        kind: ColoringKind::Vertex,
        condition,
        colors,
    }
}

fn edge(c: EdgeColoring) -> ColoringRecord {
    ColoringRecord {
        kind: ColoringKind::Edge,
        condition: Condition::Strong,
        colors: c.into_colors(),
    }
}

fn threshold(g: &Graph, k: usize, min_delta: usize, bipartite: bool) -> Result<Built, CliError> {
    let (c, audit) = construct::strong_edge_threshold_audited(g, k, min_delta, bipartite)?;
    Ok(Built {
        record: edge(c),
        bound: k,
        details: Some(audit_json(&audit)),
    })
}

fn audit_json(audit: &DegreeBoundAudit) -> serde_json::Value {
    serde_json::to_value(audit).expect("audits serialize")
}

fn build(g: &Graph, alg: Algorithm) -> Result<Built, CliError> {
    let built = match alg {
        Algorithm::Cycle => {
            let order = cycle_order(g)
                .ok_or_else(|| CliError::hypothesis("input is not a single cycle"))?;
            let n = order.len();
            let pattern = construct::color_cycle_vertices(n)?.into_colors();
            let mut colors = vec![0; n];
            for (&v, c) in order.iter().zip(pattern) {
                colors[v] = c;
            }
            Built {
                record: vertex(colors, Condition::Strong),
                bound: if n % 4 == 0 { 2 } else { 3 },
                details: None,
            }
        }
        Algorithm::Complete => {
            if !is_complete(g) {
                return Err(CliError::hypothesis(
                    "input is not a complete graph on at least 3 vertices",
                ));
            }
            let n = g.order();
            let colors = construct::color_complete_vertices(n)?.into_colors();
            Built {
                record: vertex(colors, Condition::Strong),
                bound: if n == 4 { 4 } else { 3 },
                details: None,
            }
        }
        Algorithm::Brooks2d1 => Built {
            record: vertex(
                construct::brooks_2delta1(g)?.into_colors(),
                Condition::Strong,
            ),
            bound: 2 * g.max_degree() + 1,
            details: None,
        },
        Algorithm::Lovasz2 => Built {
            record: vertex(
                construct::lovasz_two_color(g)?.into_colors(),
                Condition::Majority,
            ),
            bound: 2,
            details: None,
        },
        Algorithm::Edge8 => {
            let (c, diag) = construct::strong_edge_8_report(g)?;
            let bound = if g.degrees().iter().all(|d| d % 3 == 0) {
                4
            } else {
                8
            };
            Built {
                record: edge(c),
                bound,
                details: Some(serde_json::to_value(diag).expect("diagnostics serialize")),
            }
        }
        Algorithm::Euler => Built {
            record: edge(construct::euler_edge_color(g)?),
            bound: if components_divisible_by_three(g) {
                3
            } else {
                4
            },
            details: None,
        },
        Algorithm::Sixreg => {
            let f = construct::two_factorize(g)?;
            let c = construct::color_6regular(g)?;
            Built {
                record: edge(c),
                bound: 3,
                details: Some(
                    json!({ "factors": f.factors.iter().map(Vec::len).collect::<Vec<_>>() }),
                ),
            }
        }
        Algorithm::Kn3 => {
            if !is_complete(g) {
                return Err(CliError::hypothesis(
                    "input is not a complete graph on at least 3 vertices",
                ));
            }
            let n = g.order();
            let reference = generators::complete(n)?;
            let c = construct::complete_edge_3color(n)?;
            let colors = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    c.color(
                        reference
                            .edge_between(u, v)
                            .expect("complete graphs have every edge"),
                    )
                })
                .collect();
            Built {
                record: edge(EdgeColoring::new(colors)),
                bound: 3,
                details: None,
            }
        }
        Algorithm::Delta7 => threshold(g, 4, 7, false)?,
        Algorithm::Delta9 => threshold(g, 3, 9, false)?,
        Algorithm::Bip4 => threshold(g, 4, 4, true)?,
        Algorithm::Bip5 => threshold(g, 3, 5, true)?,
    };
    Ok(built)
}

/// Runs a coloring algorithm, re-checks its output and compares the palette
/// with the guaranteed bound.
pub fn color(
    g: &Graph,
    alg: Algorithm,
    seed: u64,
) -> Result<(RunReport, ColoringRecord), CliError> {
    let start = Instant::now();
    let built = build(g, alg)?;
    let verdict = built.record.check(g).map_err(CliError::audit)?;
    let mut report = RunReport::new(g, alg.name(), seed);
    report.wall_us = start.elapsed().as_micros() as u64;
    report.palette = Some(built.record.palette());
    report.bound = Some(built.bound);
    report.verdict = Some(VerdictSummary::from(&verdict));
    report.details = built.details;
    if !verdict.ok {
        return Err(CliError::audit(format!(
            "{} output failed the checker",
            alg.name()
        )));
    }
    if built.record.palette() > built.bound {
        return Err(CliError::audit(format!(
            "{} used {} colors, above its bound {}",
            alg.name(),
            built.record.palette(),
            built.bound
        )));
    }
    Ok((report, built.record))
}

fn outcome_json(o: &LevelOutcome) -> serde_json::Value {
    serde_json::to_value(o).expect("outcomes serialize")
}

/// Exact minimum palette search, or a single decision when `k` is given.
pub fn exact(
    g: &Graph,
    mode: Mode,
    k: Option<usize>,
    budget: &SearchBudget,
    seed: u64,
) -> Result<(RunReport, Option<ColoringRecord>), CliError> {
    let start = Instant::now();
    let name = Task::Exact(mode).name();
    let mut report = RunReport::new(g, name, seed);
    let kind = match mode {
        Mode::Vertex => ColoringKind::Vertex,
        Mode::Edge => ColoringKind::Edge,
    };
    let record = |colors: Vec<usize>| ColoringRecord {
        kind,
        condition: Condition::Strong,
        colors,
    };
    let coloring = if let Some(k) = k {
        let decision = match mode {
            Mode::Vertex => exact::decide_vertex_k(g, k, budget)?,
            Mode::Edge => exact::decide_edge_k(g, k, budget)?,
        };
        let (status, answer, coloring) = match decision {
            Decision::Sat(c) => (RunStatus::Proven, json!("sat"), Some(record(c))),
            Decision::Unsat(r) => (RunStatus::Proven, json!({ "unsat": r }), None),
            Decision::BudgetExceeded => (RunStatus::BudgetExceeded, json!("budget_exceeded"), None),
        };
        report.status = status;
        report.details = Some(json!({ "k": k, "decision": answer }));
        coloring
    } else {
        let (value, colors, status, trace) = match mode {
            Mode::Vertex => {
                let r = exact::exact_maj_vertex(g, budget)?;
                (
                    r.value,
                    r.certificate.into_colors(),
                    r.status,
                    r.lower_bound_trace,
                )
            }
            Mode::Edge => {
                let r = exact::exact_maj_edge(g, budget)?;
                (
                    r.value,
                    r.certificate.into_colors(),
                    r.status,
                    r.lower_bound_trace,
                )
            }
        };
        report.value = Some(value);
        report.nodes = Some(trace.iter().map(|t| t.nodes).sum());
        report.status = match status {
            Status::Proven => RunStatus::Proven,
            Status::BudgetExceeded => RunStatus::BudgetExceeded,
        };
        // Per-level times are left out so reports stay reproducible.
        let levels: Vec<_> = trace
            .iter()
            .map(|t| json!({ "k": t.k, "outcome": outcome_json(&t.outcome), "nodes": t.nodes }))
            .collect();
        report.details = Some(json!({ "levels": levels }));
        Some(record(colors))
    };
    if let Some(c) = &coloring {
        let verdict = c.check(g).map_err(CliError::audit)?;
        report.palette = Some(c.palette());
        report.verdict = Some(VerdictSummary::from(&verdict));
        if !verdict.ok {
            return Err(CliError::audit("exact certificate failed the checker"));
        }
    }
    report.wall_us = start.elapsed().as_micros() as u64;
    Ok((report, coloring))
}

/// Discrepancy of the given edge-coloring, or of a balanced one built here.
pub fn discrepancy(
    g: &Graph,
    k: usize,
    given: Option<&ColoringRecord>,
    seed: u64,
) -> Result<(RunReport, ColoringRecord), CliError> {
    let start = Instant::now();
    let (name, c) = match given {
        Some(rec) if rec.kind == ColoringKind::Edge => {
            ("discrepancy", EdgeColoring::new(rec.colors.clone()))
        }
        Some(_) => return Err(CliError::usage("discrepancy needs an edge-coloring")),
        None => ("balanced", construct::balanced_edge_color(g, k)?),
    };
    let d = verify::discrepancy(g, &c, k).map_err(|e| CliError::usage(e.to_string()))?;
    let mut report = RunReport::new(g, name, seed);
    report.value = Some(d.value);
    report.palette = Some(c.palette());
    report.bound = Some(if g.is_bipartite() { 1 } else { 2 });
    report.details = Some(json!({ "k": k }));
    report.wall_us = start.elapsed().as_micros() as u64;
    if given.is_none() && d.value > report.bound.unwrap_or(0) {
        return Err(CliError::audit(format!(
            "balanced coloring has discrepancy {}",
            d.value
        )));
    }
    let record = ColoringRecord {
        kind: ColoringKind::Edge,
        condition: Condition::Strong,
        colors: c.into_colors(),
    };
    Ok((report, record))
}

/// Checks a coloring against its graph. A violated coloring is an error whose
/// report is still returned.
pub fn check(g: &Graph, c: &ColoringRecord, seed: u64) -> (RunReport, Option<CliError>) {
    let start = Instant::now();
    let name = match (c.kind, c.condition) {
        (ColoringKind::Vertex, Condition::Strong) => "check-strong-vertex",
        (ColoringKind::Vertex, Condition::Majority) => "check-majority-vertex",
        (ColoringKind::Edge, _) => "check-strong-edge",
    };
    let mut report = RunReport::new(g, name, seed);
    let verdict = match c.check(g) {
        Ok(v) => v,
        Err(message) => {
            report.status = RunStatus::HypothesisViolated;
            return (report, Some(CliError::hypothesis(message)));
        }
    };
    report.palette = Some(c.palette());
    report.verdict = Some(VerdictSummary::from(&verdict));
    report.wall_us = start.elapsed().as_micros() as u64;
    if verdict.ok {
        (report, None)
    } else {
        report.status = RunStatus::Violated;
        let err = CliError::new(
            "Violated",
            EXIT_VIOLATED,
            format!(
                "{} witnesses at {} sites",
                verdict.witnesses.len(),
                verdict.violating_sites().len()
            ),
        );
        (report, Some(err))
    }
}

/// One benchmark row; failures become a status instead of an error.
pub fn bench_one(g: &Graph, task: Task, budget: &SearchBudget, seed: u64) -> RunReport {
    let start = Instant::now();
    let result = match task {
        Task::Color(alg) => color(g, alg, seed).map(|(r, _)| r),
        Task::Exact(mode) => exact(g, mode, None, budget, seed).map(|(r, _)| r),
    };
    result.unwrap_or_else(|e| {
        let mut r = RunReport::new(g, task.name(), seed);
        r.status = e.status();
        r.details = Some(json!({ "error": e.message }));
        r.wall_us = start.elapsed().as_micros() as u64;
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use majcolor::generators::*;

    #[test]
    fn cycle_order_walks_relabelled_cycles() {
        let g = Graph::new(5, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 0)]).unwrap();
        assert_eq!(cycle_order(&g), Some(vec![0, 3, 1, 4, 2]));
        let two = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap());
        assert_eq!(cycle_order(&two), None);
        let (report, rec) = color(&g, Algorithm::Cycle, 0).unwrap();
        assert_eq!(report.palette, Some(3));
        assert!(rec.check(&g).unwrap().ok);
    }

    #[test]
    fn every_algorithm_on_a_fitting_graph() {
        let cases = [
            (Algorithm::Cycle, cycle(8).unwrap()),
            (Algorithm::Complete, complete(4).unwrap()),
            (Algorithm::Brooks2d1, petersen()),
            (Algorithm::Lovasz2, petersen()),
            (Algorithm::Edge8, petersen().subdivide()),
            (Algorithm::Euler, complete(7).unwrap()),
            (Algorithm::Sixreg, complete(7).unwrap()),
            (Algorithm::Kn3, complete(9).unwrap()),
            (Algorithm::Delta7, random_regular(16, 8, 1).unwrap()),
            (Algorithm::Delta9, random_regular(20, 10, 1).unwrap()),
            (
                Algorithm::Bip4,
                random_bipartite_min_degree(8, 8, 40, 4, 1).unwrap(),
            ),
            (
                Algorithm::Bip5,
                random_bipartite_min_degree(9, 9, 50, 5, 1).unwrap(),
            ),
        ];
        for (alg, g) in cases {
            let (report, _) = color(&g, alg, 0).unwrap_or_else(|e| panic!("{}: {e}", alg.name()));
            assert!(report.palette <= report.bound, "{}", alg.name());
            assert_eq!(report.status, RunStatus::Ok);
        }
    }

    #[test]
    fn hypothesis_failures_map_to_exit_two() {
        let g = random_regular(12, 5, 0).unwrap();
        let e = color(&g, Algorithm::Delta7, 0).unwrap_err();
        assert_eq!(e.exit_code, crate::error::EXIT_HYPOTHESIS);
        let e = color(&petersen(), Algorithm::Kn3, 0).unwrap_err();
        assert_eq!(e.exit_code, crate::error::EXIT_HYPOTHESIS);
    }

    #[test]
    fn tasks_parse() {
        assert_eq!("bip5".parse::<Task>(), Ok(Task::Color(Algorithm::Bip5)));
        assert_eq!("exact-edge".parse::<Task>(), Ok(Task::Exact(Mode::Edge)));
        assert!("vizing".parse::<Task>().is_err());
    }
}
