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

//! Reading graphs and envelopes from files, stdin and corpus directories.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use majcolor::format::{parse_edge_list, parse_graph6, parse_graph6_lines, ParseError};
use majcolor::Graph;

use crate::error::CliError;
use crate::report::Envelope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Guess from the first non-blank byte.
    Auto,
    /// A `{graph, coloring?, meta?}` envelope or a bare `{n, edges}` graph.
    Json,
    Graph6,
    Edgelist,
}

pub fn read_source(path: Option<&Path>) -> Result<(Vec<u8>, String), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            let name = p.display().to_string();
            std::fs::read(p)
                .map(|b| (b, name.clone()))
                .map_err(|e| CliError::io(e, &name))
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::io(e, "stdin"))?;
            Ok((buf, "stdin".to_string()))
        }
    }
}

fn detect(input: &[u8]) -> InputFormat {
    let first = input
        .split(|&b| b == b'\n')
        .map(|l| l.trim_ascii())
        .find(|l| !l.is_empty());
    match first.and_then(|l| l.first()) {
        Some(b'{') => InputFormat::Json,
        Some(b'#') => InputFormat::Edgelist,
        Some(b) if b.is_ascii_digit() => InputFormat::Edgelist,
        _ => InputFormat::Graph6,
    }
}

pub fn parse_envelope(
    input: &[u8],
    format: InputFormat,
    source: &str,
) -> Result<Envelope, CliError> {
    let format = match format {
        InputFormat::Auto => detect(input),
        f => f,
    };
    let bare = |graph| Envelope {
        graph,
        coloring: None,
        meta: None,
    };
    match format {
        InputFormat::Json => {
            let value: serde_json::Value =
                serde_json::from_slice(input).map_err(|e| json_error(input, e, source))?;
            let parsed = if value.get("graph").is_some() {
                serde_json::from_value::<Envelope>(value)
            } else {
                serde_json::from_value::<Graph>(value).map(bare)
            };
            parsed.map_err(|e| {
                CliError::parse(
                    ParseError {
                        offset: 0,
                        message: e.to_string(),
                    },
                    source,
                )
            })
        }
        InputFormat::Graph6 => parse_graph6(input)
            .map(bare)
            .map_err(|e| CliError::parse(e, source)),
        InputFormat::Edgelist => parse_edge_list(input)
            .map(bare)
            .map_err(|e| CliError::parse(e, source)),
        InputFormat::Auto => unreachable!("resolved above"),
    }
}

fn json_error(input: &[u8], e: serde_json::Error, source: &str) -> CliError {
    let line_start: usize = input
        .split(|&b| b == b'\n')
        .take(e.line().saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum();
    let offset = (line_start + e.column().saturating_sub(1)).min(input.len());
    CliError::parse(
        ParseError {
            offset,
            message: e.to_string(),
        },
        source,
    )
}

pub fn read_envelope(path: Option<&Path>, format: InputFormat) -> Result<Envelope, CliError> {
    let (bytes, source) = read_source(path)?;
    parse_envelope(&bytes, format, &source)
}

/// One named graph of a benchmark corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// Loads every `.g6`/`.graph6` (one graph per line), `.txt`/`.el`/`.edges`
/// (edge list) and `.json` file directly inside `dir`, sorted by file name.
pub fn read_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let name = dir.display().to_string();
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(e, &name))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut corpus = Vec::new();
    for path in files {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("graph")
            .to_string();
        let source = path.display().to_string();
        let read = || std::fs::read(&path).map_err(|e| CliError::io(e, &source));
        match ext {
            "g6" | "graph6" => {
                let graphs =
                    parse_graph6_lines(&read()?).map_err(|e| CliError::parse(e, &source))?;
                let single = graphs.len() == 1;
                for (i, graph) in graphs.into_iter().enumerate() {
                    let name = if single {
                        stem.clone()
                    } else {
                        format!("{stem}#{i}")
                    };
                    corpus.push(CorpusEntry { name, graph });
                }
            }
            "txt" | "el" | "edges" => {
                let graph = parse_edge_list(&read()?).map_err(|e| CliError::parse(e, &source))?;
                corpus.push(CorpusEntry { name: stem, graph });
            }
            "json" => {
                let env = parse_envelope(&read()?, InputFormat::Json, &source)?;
                corpus.push(CorpusEntry {
                    name: stem,
                    graph: env.graph,
                });
            }
            _ => {}
        }
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_formats() {
        assert_eq!(detect(b"0 1\n1 2\n"), InputFormat::Edgelist);
        assert_eq!(detect(b"# comment\n0 1\n"), InputFormat::Edgelist);
        assert_eq!(detect(b"  {\"n\": 1, \"edges\": []}"), InputFormat::Json);
        assert_eq!(detect(b"Bw\n"), InputFormat::Graph6);
        assert_eq!(detect(b">>graph6<<Bw"), InputFormat::Graph6);
    }

    #[test]
    fn parses_all_formats_to_the_same_graph() {
        let a = parse_envelope(b"0 1\n1 2\n2 0\n", InputFormat::Auto, "t").unwrap();
        let b = parse_envelope(b"Bw\n", InputFormat::Auto, "t").unwrap();
        let c = parse_envelope(
            br#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#,
            InputFormat::Auto,
            "t",
        )
        .unwrap();
        assert_eq!(a.graph.order(), 3);
        assert_eq!(a.graph.size(), 3);
        assert_eq!(majcolor::format::encode_graph6(&a.graph), "Bw");
        assert_eq!(majcolor::format::encode_graph6(&b.graph), "Bw");
        assert_eq!(majcolor::format::encode_graph6(&c.graph), "Bw");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse_envelope(b"0 1\n0 x\n", InputFormat::Auto, "t").unwrap_err();
        assert_eq!(e.exit_code, crate::error::EXIT_PARSE);
        assert_eq!(e.offset, Some(6));
        let e =
            parse_envelope(b"{\"n\": 2,\n \"edges\": [[0,1]", InputFormat::Auto, "t").unwrap_err();
        assert_eq!(e.exit_code, crate::error::EXIT_PARSE);
        assert!(e.offset.is_some());
    }
}
