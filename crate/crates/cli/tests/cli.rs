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

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Out {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Out {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_majcolor"));
    cmd.args(args)
        .env_remove("MAJCOLOR_BUDGET_MS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Out {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn run(args: &[&str], stdin: &str) -> Out {
    run_env(args, stdin, &[])
}

/// Runs `stages` as a shell-style pipe and returns the last stage's output.
fn pipe(stages: &[&[&str]]) -> Out {
    let mut input = String::new();
    let mut last = None;
    for (i, args) in stages.iter().enumerate() {
        let out = run(args, &input);
        assert!(
            out.code == 0 || i == stages.len() - 1,
            "stage {args:?} exited {}: {}",
            out.code,
            out.stderr
        );
        input = out.stdout.clone();
        last = Some(out);
    }
    last.unwrap()
}

fn meta(out: &Out) -> Value {
    let v: Value =
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    v["meta"].clone()
}

fn error(out: &Out) -> Value {
    let v: Value =
        serde_json::from_str(out.stderr.trim()).unwrap_or_else(|e| panic!("{e}: {}", out.stderr));
    v["error"].clone()
}

#[test]
fn sts7_incidence_needs_seven_colors() {
    let out = pipe(&[&["gen", "sts-incidence", "7"], &["color", "brooks2d1"]]);
    assert_eq!(out.code, 0);
    let m = meta(&out);
    assert_eq!(m["palette"], 7);
    assert_eq!(m["bound"], 7);
    assert_eq!(m["verdict"]["ok"], true);
    assert_eq!(m["status"], "OK");
}

#[test]
fn five_cycle_exact_value() {
    let out = pipe(&[&["gen", "cycle", "5"], &["exact", "--mode", "vertex"]]);
    assert_eq!(out.code, 0);
    let m = meta(&out);
    assert_eq!(m["value"], 3);
    assert_eq!(m["status"], "PROVEN");
}

#[test]
fn subdivided_petersen_edge_value() {
    let out = pipe(&[
        &["gen", "petersen"],
        &["transform", "subdivide"],
        &["exact", "--mode", "edge"],
    ]);
    assert_eq!(out.code, 0);
    let m = meta(&out);
    assert_eq!(m["value"], 4);
    assert_eq!(m["status"], "PROVEN");
    assert_eq!(m["n"], 25);
}

#[test]
fn colorings_survive_check() {
    let cases: &[(&[&str], &str)] = &[
        (&["gen", "cycle", "10"], "cycle"),
        (&["gen", "complete", "6"], "complete"),
        (&["gen", "random-min-degree", "30", "70", "2"], "brooks2d1"),
        (&["gen", "petersen"], "lovasz2"),
        (&["gen", "random-admissible", "40", "60"], "edge8"),
        (&["gen", "khat", "5"], "edge8"),
        (&["gen", "ktilde", "4"], "edge8"),
        (&["gen", "random-even", "20", "40"], "euler"),
        (&["gen", "circulant", "12", "1", "2", "3"], "sixreg"),
        (&["gen", "complete", "11"], "kn3"),
        (&["gen", "random-regular", "20", "8"], "delta7"),
        (&["gen", "random-regular", "24", "10"], "delta9"),
        (&["gen", "random-bipartite", "10", "10", "50", "4"], "bip4"),
        (&["gen", "random-bipartite", "10", "10", "60", "5"], "bip5"),
    ];
    for &(gen, alg) in cases {
        let colored = pipe(&[gen, &["color", alg]]);
        assert_eq!(colored.code, 0, "{alg}: {}", colored.stderr);
        let checked = run(&["check"], &colored.stdout);
        assert_eq!(checked.code, 0, "{alg}: {}", checked.stderr);
        assert_eq!(meta(&checked)["verdict"]["ok"], true, "{alg}");
        let m = meta(&colored);
        assert!(m["palette"].as_u64() <= m["bound"].as_u64(), "{alg}");
    }
}

#[test]
fn csv_coloring_checks_against_graph6() {
    let dir = std::env::temp_dir().join(format!("majcolor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g6 = run(&["gen", "petersen", "--emit", "graph6"], "").stdout;
    let csv = run(&["color", "edge8", "--emit", "csv"], &g6);
    assert!(csv.stdout.starts_with("id,color\n"));
    let path = dir.join("petersen.csv");
    std::fs::write(&path, &csv.stdout).unwrap();
    let p = path.to_str().unwrap();
    let ok = run(
        &[
            "check",
            "--coloring",
            p,
            "--coloring-format",
            "csv",
            "--kind",
            "edge",
        ],
        &g6,
    );
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    // The same colors read as a vertex coloring have the wrong length.
    let wrong = run(&["check", "--coloring", p, "--coloring-format", "csv"], &g6);
    assert_ne!(wrong.code, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn without_wall_time(s: &str) -> String {
    let mut v: Value = serde_json::from_str(s).unwrap();
    v["meta"]["wall_us"] = Value::Null;
    v.to_string()
}

#[test]
fn same_seed_same_report() {
    let first = pipe(&[
        &["--seed", "9", "gen", "random-admissible", "60", "90"],
        &["color", "edge8"],
    ]);
    let second = pipe(&[
        &["gen", "random-admissible", "60", "90", "--seed", "9"],
        &["color", "edge8"],
    ]);
    assert_eq!(
        without_wall_time(&first.stdout),
        without_wall_time(&second.stdout)
    );
    let gen_a = run(&["--seed", "3", "gen", "random-regular", "30", "4"], "").stdout;
    let gen_b = run(&["--seed", "3", "gen", "random-regular", "30", "4"], "").stdout;
    let gen_c = run(&["--seed", "4", "gen", "random-regular", "30", "4"], "").stdout;
    assert_eq!(gen_a, gen_b);
    assert_ne!(gen_a, gen_c);
    let exact_a = pipe(&[
        &["gen", "witness", "3", "2"],
        &["exact", "--mode", "vertex"],
    ]);
    let exact_b = pipe(&[
        &["gen", "witness", "3", "2"],
        &["exact", "--mode", "vertex"],
    ]);
    assert_eq!(
        without_wall_time(&exact_a.stdout),
        without_wall_time(&exact_b.stdout)
    );
}

#[test]
fn exit_codes() {
    let delta5 = run(&["gen", "random-regular", "12", "5"], "").stdout;
    let out = run(&["color", "delta7"], &delta5);
    assert_eq!(out.code, 2);
    assert_eq!(error(&out)["kind"], "HypothesisViolated");

    let out = run(&["check"], "0 1\n0 x\n");
    assert_eq!(out.code, 3);
    assert_eq!(error(&out)["offset"], 6);

    let hard = run(&["gen", "random-regular", "80", "6"], "").stdout;
    let out = run(&["exact", "--mode", "vertex", "--budget-ms", "1"], &hard);
    assert_eq!(out.code, 4);
    assert_eq!(meta(&out)["status"], "BUDGET_EXCEEDED");
    let out = run_env(
        &["exact", "--mode", "vertex"],
        &hard,
        &[("MAJCOLOR_BUDGET_MS", "1")],
    );
    assert_eq!(out.code, 4);
    let out = run_env(
        &["exact", "--mode", "vertex"],
        &hard,
        &[("MAJCOLOR_BUDGET_MS", "soon")],
    );
    assert_eq!(out.code, 1);

    let out = run(&["color", "vizing"], "");
    assert_eq!(out.code, 1);

    let bad = r#"{"graph":{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]},"coloring":{"kind":"vertex","condition":"strong","colors":[0,0,0,0]}}"#;
    let out = run(&["check"], bad);
    assert_eq!(out.code, 6);
    assert_eq!(meta(&out)["verdict"]["ok"], false);
    assert_eq!(meta(&out)["status"], "VIOLATED");

    let p4 = "0 1\n1 2\n2 3\n";
    assert_eq!(run(&["exact", "--mode", "edge"], p4).code, 2);
}

#[test]
fn decision_mode() {
    let sts = run(&["gen", "sts", "7"], "").stdout;
    let unsat = run(&["exact", "--mode", "vertex", "--k", "6"], &sts);
    assert_eq!(unsat.code, 0);
    let m = meta(&unsat);
    assert_eq!(m["status"], "PROVEN");
    assert!(m["details"]["decision"].get("unsat").is_some());
    let sat = run(&["exact", "--mode", "vertex", "--k", "7"], &sts);
    assert_eq!(meta(&sat)["details"]["decision"], "sat");
    assert_eq!(meta(&sat)["verdict"]["ok"], true);
}

#[test]
fn line_graph_duality() {
    for g in [
        &["gen", "complete", "4"][..],
        &["gen", "ktilde", "3"],
        &["gen", "cycle", "7"],
    ] {
        let edge = pipe(&[g, &["exact", "--mode", "edge"]]);
        let vertex = pipe(&[
            g,
            &["transform", "line-graph"],
            &["exact", "--mode", "vertex"],
        ]);
        assert_eq!(meta(&edge)["value"], meta(&vertex)["value"], "{g:?}");
    }
}

#[test]
fn discrepancy_of_balanced_colorings() {
    let bip = run(
        &[
            "--seed",
            "2",
            "gen",
            "random-bipartite",
            "8",
            "9",
            "40",
            "3",
        ],
        "",
    )
    .stdout;
    let out = run(&["discrepancy", "--k", "3"], &bip);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(meta(&out)["value"].as_u64().unwrap() <= 1);
    // Re-measuring the emitted coloring gives the same value.
    let again = run(&["discrepancy", "--k", "3"], &out.stdout);
    assert_eq!(meta(&again)["value"], meta(&out)["value"]);
}

#[test]
fn bench_rows_follow_input_order() {
    let dir = std::env::temp_dir().join(format!("majcolor-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut g6 = String::new();
    for n in [5, 6, 7, 8, 9] {
        g6.push_str(&run(&["gen", "cycle", &n.to_string(), "--emit", "graph6"], "").stdout);
    }
    std::fs::write(dir.join("cycles.g6"), g6).unwrap();
    std::fs::write(dir.join("k4.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(
        &[
            "bench",
            dir.to_str().unwrap(),
            "-a",
            "cycle,exact-vertex,sixreg",
            "-j",
            "3",
        ],
        "",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "graph,algorithm,n,m,delta,Delta,palette,bound,ok,nodes,ms,seed,status"
    );
    assert_eq!(lines.len(), 1 + 6 * 3);
    let names: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let expected: Vec<String> = (0..5)
        .map(|i| format!("cycles#{i}"))
        .chain(["k4".to_string()])
        .flat_map(|name| std::iter::repeat_n(name, 3))
        .collect();
    assert_eq!(names, expected);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 13);
        match (cols[0], cols[1]) {
            ("k4", "cycle") | (_, "sixreg") => assert_eq!(cols[12], "HYPOTHESIS_VIOLATED"),
            (_, "exact-vertex") => assert_eq!(cols[12], "PROVEN"),
            _ => assert_eq!(cols[12], "OK"),
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
