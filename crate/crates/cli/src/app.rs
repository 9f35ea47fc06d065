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

//! Command-line definitions and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use majcolor::format::{emit_coloring, emit_graph, parse_coloring, ColoringFormat, GraphFormat};
use majcolor::generators as gen;
use majcolor::Graph;

use crate::error::{CliError, EXIT_BUDGET};
use crate::input::{read_corpus, read_envelope, read_source, InputFormat};
use crate::report::{ColoringKind, ColoringRecord, Condition, Envelope, RunReport, RunStatus};
use crate::run::{self, Algorithm, Mode, Task};

#[derive(Debug, Parser)]
#[command(
    name = "majcolor",
    version,
    about = "Strong majority colorings of graphs"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; stdin when absent or "-".
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphEmit {
    /// `{graph, meta}` JSON envelope.
    Envelope,
    /// Bare `{n, edges}` JSON.
    Json,
    Graph6,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColoringEmit {
    /// `{graph, coloring, meta}` JSON envelope.
    Envelope,
    /// The color array alone.
    Json,
    /// `id,color` rows.
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodecFormat {
    Json,
    Csv,
}

impl From<CodecFormat> for ColoringFormat {
    fn from(f: CodecFormat) -> Self {
        match f {
            CodecFormat::Json => ColoringFormat::Json,
            CodecFormat::Csv => ColoringFormat::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value_t = GraphEmit::Envelope, global = true)]
        emit: GraphEmit,
    },
    /// Check the coloring carried by an envelope or given with --coloring.
    Check {
        #[command(flatten)]
        input: Input,
        /// Coloring file, overriding the envelope's coloring.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CodecFormat::Json)]
        coloring_format: CodecFormat,
        /// What a --coloring file colors.
        #[arg(long, value_enum, default_value_t = KindArg::Vertex)]
        kind: KindArg,
        /// Condition a --coloring file must satisfy.
        #[arg(long, value_enum, default_value_t = ConditionArg::Strong)]
        condition: ConditionArg,
    },
    /// Color a graph with one of the constructive algorithms.
    Color {
        #[arg(value_enum)]
        algorithm: Algorithm,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ColoringEmit::Envelope)]
        emit: ColoringEmit,
    },
    /// Minimum palette size by exhaustive search.
    Exact {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Decide this palette size only.
        #[arg(long)]
        k: Option<usize>,
        /// Time budget; overrides MAJCOLOR_BUDGET_MS.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[command(flatten)]
        input: Input,
    },
    /// Discrepancy of the envelope's edge-coloring, or of a balanced one.
    Discrepancy {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Run algorithms over a corpus directory and print CSV rows.
    Bench {
        corpus: PathBuf,
        /// Algorithms, comma separated; also exact-vertex and exact-edge.
        #[arg(long, short, value_delimiter = ',', required = true, value_parser = parse_task)]
        algorithm: Vec<Task>,
        /// Worker threads; all cores when absent.
        #[arg(long, short)]
        jobs: Option<usize>,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Derive a new graph.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = GraphEmit::Envelope)]
        emit: GraphEmit,
    },
}

fn parse_task(s: &str) -> Result<Task, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    Strong,
    Majority,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    /// Replace every edge by a path of length two.
    Subdivide,
    /// Line graph; vertex i is edge i of the input.
    LineGraph,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Family {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// K_n with every edge subdivided.
    Khat {
        n: usize,
    },
    /// K_n with every edge replaced by a diamond.
    Ktilde {
        n: usize,
    },
    /// Bipartite graph with one vertex per delta-subset of K*(delta/2) points.
    Witness {
        k: usize,
        delta: usize,
    },
    /// Block-point incidence graph of a Steiner triple system.
    #[command(alias = "sts")]
    StsIncidence {
        n: usize,
    },
    Petersen,
    Circulant {
        n: usize,
        #[arg(required = true)]
        steps: Vec<usize>,
    },
    RandomRegular {
        n: usize,
        r: usize,
    },
    /// Random graph with every degree even.
    RandomEven {
        n: usize,
        m: usize,
    },
    RandomMinDegree {
        n: usize,
        m: usize,
        delta: usize,
    },
    /// Random graph without pendant paths of length two.
    RandomAdmissible {
        n: usize,
        m: usize,
    },
    RandomBipartite {
        a: usize,
        b: usize,
        m: usize,
        delta: usize,
    },
}

impl Family {
    fn generate(
        &self,
        seed: u64,
    ) -> Result<(Graph, &'static str, Option<serde_json::Value>), CliError> {
        let out = match *self {
            Family::Cycle { n } => (gen::cycle(n)?, "cycle", None),
            Family::Complete { n } => (gen::complete(n)?, "complete", None),
            Family::Khat { n } => (gen::subdivided_complete(n)?, "khat", None),
            Family::Ktilde { n } => (gen::diamond_complete(n)?, "ktilde", None),
            Family::Witness { k, delta } => (gen::bipartite_witness(k, delta)?, "witness", None),
            Family::StsIncidence { n } => {
                let sts = gen::steiner_triple_system(n)?;
                let details = json!({ "triples": sts.triples });
                (gen::sts_incidence(&sts), "sts-incidence", Some(details))
            }
            Family::Petersen => (gen::petersen(), "petersen", None),
            Family::Circulant { n, ref steps } => (gen::circulant(n, steps)?, "circulant", None),
            Family::RandomRegular { n, r } => {
                (gen::random_regular(n, r, seed)?, "random-regular", None)
            }
            Family::RandomEven { n, m } => {
                (gen::random_even_degree(n, m, seed)?, "random-even", None)
            }
            Family::RandomMinDegree { n, m, delta } => (
                gen::random_min_degree(n, m, delta, seed)?,
                "random-min-degree",
                None,
            ),
            Family::RandomAdmissible { n, m } => (
                gen::random_edge_admissible(n, m, seed)?,
                "random-admissible",
                None,
            ),
            Family::RandomBipartite { a, b, m, delta } => (
                gen::random_bipartite_min_degree(a, b, m, delta, seed)?,
                "random-bipartite",
                None,
            ),
        };
        Ok(out)
    }
}

fn emit_graph_output(g: Graph, meta: RunReport, emit: GraphEmit) -> String {
    match emit {
        GraphEmit::Envelope => {
            Envelope {
                graph: g,
                coloring: None,
                meta: Some(meta),
            }
            .to_json()
                + "\n"
        }
        GraphEmit::Json => emit_graph(&g, GraphFormat::Json) + "\n",
        GraphEmit::Graph6 => emit_graph(&g, GraphFormat::Graph6),
        GraphEmit::Edgelist => emit_graph(&g, GraphFormat::EdgeList),
    }
}

fn envelope_line(graph: Graph, coloring: Option<ColoringRecord>, meta: RunReport) -> String {
    Envelope {
        graph,
        coloring,
        meta: Some(meta),
    }
    .to_json()
        + "\n"
}

/// Runs one command, writing its output to `out`. Returns the exit code.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let seed = cli.seed;
    let text;
    let mut code = 0;
    match cli.command {
        Command::Gen { family, emit } => {
            let (g, name, details) = family.generate(seed)?;
            let mut meta = RunReport::new(&g, format!("gen:{name}"), seed);
            meta.details = details;
            text = emit_graph_output(g, meta, emit);
        }
        Command::Check {
            input,
            coloring,
            coloring_format,
            kind,
            condition,
        } => {
            let env = read_envelope(input.input.as_deref(), input.format)?;
            let record = match coloring {
                Some(path) => {
                    let (bytes, source) = read_source(Some(&path))?;
                    let colors = parse_coloring(&bytes, coloring_format.into())
                        .map_err(|e| CliError::parse(e, &source))?;
                    ColoringRecord {
                        kind: match kind {
                            KindArg::Vertex => ColoringKind::Vertex,
                            KindArg::Edge => ColoringKind::Edge,
                        },
                        condition: match condition {
                            ConditionArg::Strong => Condition::Strong,
                            ConditionArg::Majority => Condition::Majority,
                        },
                        colors,
                    }
                }
                None => env
                    .coloring
                    .ok_or_else(|| CliError::usage("input carries no coloring; pass --coloring"))?,
            };
            let (report, err) = run::check(&env.graph, &record, seed);
            out.write_all(envelope_line(env.graph, Some(record), report).as_bytes())
                .map_err(|e| CliError::io(e, "stdout"))?;
            return err.map_or(Ok(0), Err);
        }
        Command::Color {
            algorithm,
            input,
            emit,
        } => {
            let env = read_envelope(input.input.as_deref(), input.format)?;
            let (report, record) = run::color(&env.graph, algorithm, seed)?;
            text = match emit {
                ColoringEmit::Envelope => envelope_line(env.graph, Some(record), report),
                ColoringEmit::Json => emit_coloring(&record.colors, ColoringFormat::Json) + "\n",
                ColoringEmit::Csv => emit_coloring(&record.colors, ColoringFormat::Csv),
            };
        }
        Command::Exact {
            mode,
            k,
            budget_ms,
            input,
        } => {
            let budget = run::budget(budget_ms)?;
            let env = read_envelope(input.input.as_deref(), input.format)?;
            let (report, record) = run::exact(&env.graph, mode, k, &budget, seed)?;
            if report.status == RunStatus::BudgetExceeded {
                code = EXIT_BUDGET;
            }
            text = envelope_line(env.graph, record, report);
        }
        Command::Discrepancy { k, input } => {
            let env = read_envelope(input.input.as_deref(), input.format)?;
            let (report, record) = run::discrepancy(&env.graph, k, env.coloring.as_ref(), seed)?;
            text = envelope_line(env.graph, Some(record), report);
        }
        Command::Transform { op, input, emit } => {
            let env = read_envelope(input.input.as_deref(), input.format)?;
            let (g, name) = match op {
                TransformOp::Subdivide => (env.graph.subdivide(), "transform:subdivide"),
                TransformOp::LineGraph => (env.graph.line_graph()?.0, "transform:line-graph"),
            };
            let meta = RunReport::new(&g, name, seed);
            text = emit_graph_output(g, meta, emit);
        }
        Command::Bench {
            corpus,
            algorithm,
            jobs,
            budget_ms,
        } => {
            return bench(&corpus, &algorithm, jobs, budget_ms, seed, out);
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(e, "stdout"))?;
    Ok(code)
}

fn bench(
    corpus: &std::path::Path,
    tasks: &[Task],
    jobs: Option<usize>,
    budget_ms: Option<u64>,
    seed: u64,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let budget = run::budget(budget_ms)?;
    let graphs = read_corpus(corpus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let work: Vec<(&str, &Graph, Task)> = graphs
        .iter()
        .flat_map(|entry| {
            tasks
                .iter()
                .map(move |&t| (entry.name.as_str(), &entry.graph, t))
        })
        .collect();
    let io = |e| CliError::io(e, "stdout");
    writeln!(out, "{}", RunReport::CSV_HEADER).map_err(io)?;
    let mut audit_failed = false;
    let batch = pool.current_num_threads().max(1) * 4;
    for chunk in work.chunks(batch) {
        let rows: Vec<RunReport> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(_, g, task)| run::bench_one(g, task, &budget, seed))
                .collect()
        });
        for ((name, _, _), report) in chunk.iter().zip(&rows) {
            audit_failed |= report.status == RunStatus::AuditFailed;
            writeln!(out, "{}", report.csv_row(name)).map_err(io)?;
        }
        out.flush().map_err(io)?;
    }
    Ok(if audit_failed {
        crate::error::EXIT_AUDIT
    } else {
        0
    })
}
