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

use std::collections::HashSet;
use std::time::Duration;

use proptest::prelude::*;

use majcolor::construct::*;
use majcolor::exact::{decide_edge_k, decide_vertex_k, Decision, SearchBudget};
use majcolor::format::{
    emit_coloring, encode_graph6, parse_coloring, parse_graph6, ColoringFormat,
};
use majcolor::generators::*;
use majcolor::verify::{self, replay_witness};
use majcolor::{EdgeColoring, Graph, VertexColoring};

/// Arbitrary simple graph on up to `max_n` vertices.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&p, _)| p)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn graph_with_colors(
    max_n: usize,
    k: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    graph(max_n).prop_flat_map(move |g| {
        let (n, m) = (g.order(), g.size());
        (
            Just(g),
            proptest::collection::vec(0..k, n),
            proptest::collection::vec(0..k, m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn line_graph_degree_law(g in graph(12)) {
        prop_assume!(g.size() > 0);
        let (lg, map) = g.line_graph().unwrap();
        prop_assert_eq!(lg.order(), g.size());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert_eq!(lg.degree(map[e]), g.degree(u) + g.degree(v) - 2);
        }
    }

    #[test]
    fn double_subdivision_order(g in graph(12)) {
        let s = g.subdivide().subdivide();
        prop_assert_eq!(s.order(), g.order() + 3 * g.size());
        prop_assert_eq!(s.size(), 4 * g.size());
    }

    #[test]
    fn checker_line_graph_duality((g, _, colors) in graph_with_colors(9, 3)) {
        prop_assume!(g.size() > 0);
        let (lg, map) = g.line_graph().unwrap();
        prop_assume!(lg.min_degree() >= 2);
        let mut lc = vec![0; lg.order()];
        for (e, &x) in map.iter().enumerate() {
            lc[x] = colors[e];
        }
        let edge = verify::check_strong_majority_edge(&g, &EdgeColoring::new(colors)).unwrap();
        let vertex = verify::check_strong_majority_vertex(&lg, &VertexColoring::new(lc)).unwrap();
        prop_assert_eq!(edge.ok, vertex.ok);
        prop_assert_eq!(edge.witnesses.len(), vertex.witnesses.len());
    }

    #[test]
    fn witnesses_replay((g, vcolors, ecolors) in graph_with_colors(10, 3)) {
        if g.is_vertex_admissible() {
            let verdict = verify::check_strong_majority_vertex(&g, &VertexColoring::new(vcolors.clone())).unwrap();
            prop_assert_eq!(verdict.ok, verdict.witnesses.is_empty());
            for w in &verdict.witnesses {
                prop_assert!(replay_witness(&g, &vcolors, w));
            }
        }
        if g.is_edge_admissible() {
            let verdict = verify::check_strong_majority_edge(&g, &EdgeColoring::new(ecolors.clone())).unwrap();
            for w in &verdict.witnesses {
                prop_assert!(replay_witness(&g, &ecolors, w));
            }
        }
    }

    #[test]
    fn proper_colorings_respecting_half_pass((g, _, _) in graph_with_colors(10, 2)) {
        prop_assume!(g.is_vertex_admissible());
        // All-distinct colors are proper and put one vertex per class in every
        // neighborhood, which is at most half of any degree >= 2.
        let c = VertexColoring::new((0..g.order()).collect());
        prop_assert!(verify::check_strong_majority_vertex(&g, &c).unwrap().ok);
        let mono = VertexColoring::new(vec![0; g.order()]);
        prop_assert!(!verify::check_strong_majority_vertex(&g, &mono).unwrap().ok);
    }

    #[test]
    fn decision_is_monotone_in_k(g in graph(7)) {
        prop_assume!(g.is_vertex_admissible());
        let budget = SearchBudget::with_time_limit(Duration::from_secs(10));
        let mut seen_sat = false;
        for k in 1..=g.order() {
            let sat = matches!(decide_vertex_k(&g, k, &budget).unwrap(), Decision::Sat(_));
            prop_assert!(!seen_sat || sat, "SAT at a smaller k but not at k = {}", k);
            seen_sat |= sat;
        }
        prop_assert!(seen_sat);
    }

    #[test]
    fn edge_decision_certificates_check(g in graph(7)) {
        prop_assume!(g.size() > 0 && g.is_edge_admissible());
        let budget = SearchBudget::with_time_limit(Duration::from_secs(10));
        for k in 1..=4 {
            if let Decision::Sat(colors) = decide_edge_k(&g, k, &budget).unwrap() {
                prop_assert!(colors.iter().all(|&c| c < k));
                let verdict = verify::check_strong_majority_edge(&g, &EdgeColoring::new(colors)).unwrap();
                prop_assert!(verdict.ok);
            }
        }
    }

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        let s = encode_graph6(&g);
        let h = parse_graph6(s.as_bytes()).unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(encode_graph6(&h), s);
    }

    #[test]
    fn coloring_codecs_round_trip(colors in proptest::collection::vec(0usize..50, 0..40)) {
        for f in [ColoringFormat::Json, ColoringFormat::Csv] {
            prop_assert_eq!(parse_coloring(emit_coloring(&colors, f).as_bytes(), f).unwrap(), colors.clone());
        }
    }

    #[test]
    fn split_preserves_edges(seed in 0u64..1000, n in 8usize..40) {
        let g = random_min_degree(n, 3 * n, 2, seed).unwrap();
        let s = split_vertices(&g).unwrap();
        prop_assert_eq!(s.split_graph.size(), g.size());
        prop_assert!(s.split_graph.max_degree() <= 3);
        let mut ids: Vec<usize> = s.edge_map.clone();
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..g.size()).collect::<Vec<_>>());
        for (c, &orig) in s.copy_of.iter().enumerate() {
            if g.degree(orig) > 3 {
                prop_assert!(matches!(s.split_graph.degree(c), 2 | 3));
            }
        }
    }

    #[test]
    fn euler_tour_invariants(seed in 0u64..1000, n in 8usize..25) {
        let g = random_even_degree(n, n + 3, seed).unwrap();
        for comp in g.edge_components() {
            let sub_edges: Vec<(usize, usize)> = comp.iter().map(|&e| g.edge(e)).collect();
            let sub = Graph::new(g.order(), &sub_edges).unwrap();
            let tour = sub.euler_tour().unwrap();
            prop_assert!(tour.is_euler_tour_of(&sub));
            // Every vertex is passed degree / 2 times.
            let mut passages = vec![0; sub.order()];
            let walk = tour.edges();
            for i in 0..walk.len() {
                let (a, b) = sub.edge(walk[i]);
                let (c, d) = sub.edge(walk[(i + 1) % walk.len()]);
                let shared = if a == c || a == d { a } else { b };
                prop_assert!(shared == c || shared == d);
                passages[shared] += 1;
            }
            for (v, &p) in passages.iter().enumerate() {
                prop_assert_eq!(p * 2, sub.degree(v));
            }
        }
    }

    #[test]
    fn constructions_pass_checkers(seed in 0u64..500, n in 6usize..40) {
        let g = random_min_degree(n, 2 * n, 2, seed).unwrap();
        let c = brooks_2delta1(&g).unwrap();
        prop_assert!(c.palette() <= 2 * g.max_degree() + 1);
        let c = lovasz_two_color(&g).unwrap();
        prop_assert!(verify::check_majority_vertex(&g, &c).unwrap().ok);
        let c = strong_edge_8(&g).unwrap();
        prop_assert!(c.palette() <= 8);
        let c = misra_gries_edge_color(&g);
        prop_assert!(verify::check_proper_edge(&g, &c).unwrap());
        prop_assert!(c.colors().iter().all(|&x| x <= g.max_degree()));
    }
}

#[test]
fn steiner_systems_cover_pairs_once() {
    for n in [7, 9, 13, 15, 19, 21, 25, 27, 31, 33, 37, 39, 43, 45] {
        let sts = steiner_triple_system(n).unwrap();
        assert_eq!(sts.triples.len(), n * (n - 1) / 6);
        let mut pairs = HashSet::new();
        for t in &sts.triples {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                assert!(
                    pairs.insert((a.min(b), a.max(b))),
                    "pair covered twice in STS({n})"
                );
            }
        }
        assert_eq!(pairs.len(), n * (n - 1) / 2);
        let g = sts_incidence(&sts);
        let s = sts.triples.len();
        for p in s..s + n {
            assert_eq!(g.degree(p), (n - 1) / 2);
            for q in p + 1..s + n {
                let common = g.neighbors(p).filter(|&x| g.has_edge(x, q)).count();
                assert_eq!(common, 1);
            }
        }
    }
    for n in [8, 10, 11, 12] {
        assert!(steiner_triple_system(n).is_err());
    }
}

#[test]
fn bipartite_witness_structure() {
    for (k, delta) in [(3, 2), (4, 2), (3, 3), (2, 4)] {
        let g = bipartite_witness(k, delta).unwrap();
        let x = (delta / 2) * k;
        let mut subsets = HashSet::new();
        for y in x..g.order() {
            let mut nbrs: Vec<usize> = g.neighbors(y).collect();
            nbrs.sort_unstable();
            assert_eq!(nbrs.len(), delta);
            assert!(nbrs.iter().all(|&v| v < x));
            assert!(subsets.insert(nbrs), "g is not injective");
        }
        assert!(g.is_bipartite());
    }
}

#[test]
fn random_generators_are_deterministic() {
    for seed in 0..5 {
        assert_eq!(
            random_regular(20, 3, seed).unwrap(),
            random_regular(20, 3, seed).unwrap()
        );
        assert_eq!(
            random_even_degree(12, 20, seed).unwrap(),
            random_even_degree(12, 20, seed).unwrap()
        );
        assert_eq!(
            random_min_degree(15, 30, 2, seed).unwrap(),
            random_min_degree(15, 30, 2, seed).unwrap()
        );
        assert_eq!(
            random_bipartite_min_degree(6, 7, 20, 2, seed).unwrap(),
            random_bipartite_min_degree(6, 7, 20, 2, seed).unwrap()
        );
        assert_eq!(
            random_edge_admissible(20, 25, seed).unwrap(),
            random_edge_admissible(20, 25, seed).unwrap()
        );
        let g = random_regular(10, 3, seed).unwrap();
        assert!((0..10).all(|v| g.degree(v) == 3));
        let e = random_even_degree(12, 20, seed).unwrap();
        assert!((0..12).all(|v| e.degree(v).is_multiple_of(2)));
        assert!(random_edge_admissible(30, 40, seed)
            .unwrap()
            .is_edge_admissible());
    }
    assert!(matches!(
        random_regular(5, 3, 0),
        Err(GenError::Infeasible(_))
    ));
}

#[test]
fn six_regular_histograms() {
    for seed in 0..5 {
        let g = random_regular(20, 6, seed).unwrap();
        let c = color_6regular(&g).unwrap();
        for e in 0..g.size() {
            let mut hist = [0; 3];
            for f in g.adjacent_edges(e) {
                hist[c.color(f)] += 1;
            }
            let mut sorted = hist;
            sorted.sort_unstable();
            assert_eq!(sorted, [2, 4, 4]);
            assert_eq!(hist[c.color(e)], 2);
        }
    }
}
