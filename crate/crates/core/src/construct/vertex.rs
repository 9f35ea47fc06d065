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

use std::collections::{BTreeSet, VecDeque};

use super::{audit_vertex, equitable_sizes, ConstructError};
use crate::graph::Graph;
use crate::verify::{self, VertexColoring};

/// Strong majority coloring of C_n along the vertex order 0..n: the pattern
/// 0,0,1,1,... with a tail fix using a third color when n is not a multiple
/// of four. C_3 is K_3 and gets three distinct colors.
pub fn color_cycle_vertices(n: usize) -> Result<VertexColoring, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let mut colors: Vec<usize> = (0..n).map(|i| (i / 2) % 2).collect();
    match n % 4 {
        1 => colors[n - 1] = 2,
        2 => colors[n - 2..].copy_from_slice(&[2, 2]),
        3 if n == 3 => colors = vec![0, 1, 2],
        3 => colors[n - 3..].copy_from_slice(&[0, 2, 2]),
        _ => {}
    }
    let g = crate::generators::cycle(n).expect("n >= 3");
    audit_vertex(&g, VertexColoring::new(colors))
}

/// Three near-equal color classes, or four singletons for K_4.
pub fn color_complete_vertices(n: usize) -> Result<VertexColoring, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall(format!(
            "complete graph needs n >= 3, got {n}"
        )));
    }
    let colors = if n == 4 {
        vec![0, 1, 2, 3]
    } else {
        equitable_sizes(n, 3)
            .into_iter()
            .enumerate()
            .flat_map(|(c, size)| std::iter::repeat_n(c, size))
            .collect()
    };
    let g = crate::generators::complete(n).expect("n >= 3");
    audit_vertex(&g, VertexColoring::new(colors))
}

/// The auxiliary graph whose proper colorings are exactly the colorings in
/// which no two consecutive neighbors (in id order, cyclically) of any
/// vertex agree.
pub(crate) fn neighbor_cycle_graph(g: &Graph) -> Graph {
    let mut set = BTreeSet::new();
    for v in 0..g.order() {
        let mut nbrs: Vec<usize> = g.neighbors(v).collect();
        nbrs.sort_unstable();
        match nbrs.len() {
            0 | 1 => {}
            2 => {
                set.insert((nbrs[0], nbrs[1]));
            }
            d => {
                for i in 0..d {
                    let (a, b) = (nbrs[i], nbrs[(i + 1) % d]);
                    set.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    Graph::from_normalized(g.order(), set.into_iter().collect())
}

/// Smallest-last order: repeatedly remove a vertex of minimum remaining
/// degree; returned in removal order.
fn degeneracy_order(h: &Graph) -> Vec<usize> {
    let mut deg: Vec<usize> = h.degrees();
    let mut removed = vec![false; h.order()];
    let mut queue: BTreeSet<(usize, usize)> = (0..h.order()).map(|v| (deg[v], v)).collect();
    let mut order = Vec::with_capacity(h.order());
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for u in h.neighbors(v) {
            if !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    order
}

/// Greedy proper coloring in reverse degeneracy order; uses at most
/// degeneracy + 1 colors.
pub(crate) fn greedy_degeneracy_color(h: &Graph) -> Vec<usize> {
    let mut colors = vec![usize::MAX; h.order()];
    for v in degeneracy_order(h).into_iter().rev() {
        let mut used: Vec<usize> = h
            .neighbors(v)
            .map(|u| colors[u])
            .filter(|&c| c != usize::MAX)
            .collect();
        used.sort_unstable();
        used.dedup();
        colors[v] = used
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(used.len(), |(i, _)| i);
    }
    colors
}

/// Strong majority coloring with at most 2Δ(G) + 1 colors: a proper coloring
/// of the neighbor-cycle auxiliary graph.
pub fn brooks_2delta1(g: &Graph) -> Result<VertexColoring, ConstructError> {
    if !g.is_vertex_admissible() {
        return Err(ConstructError::NotAdmissible);
    }
    let h = neighbor_cycle_graph(g);
    let coloring = VertexColoring::new(greedy_degeneracy_color(&h));
    debug_assert!(coloring.palette() <= h.max_degree() + 1);
    audit_vertex(g, coloring)
}

/// Two-coloring in which every vertex has at most half of its neighbors in
/// its own class. Starts from a BFS 2-coloring and flips any vertex with too
/// many same-colored neighbors; each flip strictly increases the number of
/// bichromatic edges, so the loop terminates.
pub fn lovasz_two_color(g: &Graph) -> Result<VertexColoring, ConstructError> {
    let n = g.order();
    let mut side = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if side[u] == usize::MAX {
                    side[u] = 1 - side[v];
                    queue.push_back(u);
                }
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            let same = g.neighbors(v).filter(|&u| side[u] == side[v]).count();
            if same > g.degree(v) / 2 {
                side[v] = 1 - side[v];
                changed = true;
            }
        }
    }
    let coloring = VertexColoring::new(side);
    let verdict = verify::check_majority_vertex(g, &coloring)?;
    if !verdict.ok {
        return Err(ConstructError::AuditFailed("majority 2-coloring".into()));
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        complete, cycle, random_min_degree, steiner_triple_system, sts_incidence,
    };
    use crate::verify::check_proper_vertex;

    fn one_based(c: &VertexColoring) -> Vec<usize> {
        c.colors().iter().map(|x| x + 1).collect()
    }

    #[test]
    fn cycle_patterns() {
        assert_eq!(
            one_based(&color_cycle_vertices(8).unwrap()),
            [1, 1, 2, 2, 1, 1, 2, 2]
        );
        assert_eq!(
            one_based(&color_cycle_vertices(5).unwrap()),
            [1, 1, 2, 2, 3]
        );
        assert_eq!(
            one_based(&color_cycle_vertices(7).unwrap()),
            [1, 1, 2, 2, 1, 3, 3]
        );
        for n in 3..40 {
            let c = color_cycle_vertices(n).unwrap();
            assert_eq!(c.palette(), if n % 4 == 0 { 2 } else { 3 }, "n = {n}");
        }
        assert!(color_cycle_vertices(2).is_err());
    }

    #[test]
    fn complete_classes() {
        let class_sizes = |c: &VertexColoring| {
            let mut sizes = vec![0; c.palette()];
            for &x in c.colors() {
                sizes[x] += 1;
            }
            sizes
        };
        assert_eq!(class_sizes(&color_complete_vertices(6).unwrap()), [2, 2, 2]);
        assert_eq!(class_sizes(&color_complete_vertices(7).unwrap()), [3, 2, 2]);
        assert_eq!(color_complete_vertices(4).unwrap().palette(), 4);
        for n in (3..30).filter(|&n| n != 4) {
            assert_eq!(color_complete_vertices(n).unwrap().palette(), 3);
        }
    }

    #[test]
    fn brooks_bounds() {
        let c = brooks_2delta1(&cycle(9).unwrap()).unwrap();
        assert!(c.palette() <= 5);
        let g = sts_incidence(&steiner_triple_system(7).unwrap());
        assert_eq!(brooks_2delta1(&g).unwrap().palette(), 7);
        for seed in 0..20 {
            let g = random_min_degree(30, 70, 2, seed).unwrap();
            let c = brooks_2delta1(&g).unwrap();
            assert!(c.palette() <= 2 * g.max_degree() + 1);
            assert!(check_proper_vertex(&neighbor_cycle_graph(&g), &c).unwrap());
        }
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(brooks_2delta1(&p3), Err(ConstructError::NotAdmissible));
    }

    #[test]
    fn lovasz_cases() {
        let c = lovasz_two_color(&complete(4).unwrap()).unwrap();
        let ones = c.colors().iter().filter(|&&x| x == 1).count();
        assert_eq!(ones, 2);
        let c6 = cycle(6).unwrap();
        let c = lovasz_two_color(&c6).unwrap();
        assert!(check_proper_vertex(&c6, &c).unwrap());
        assert!(lovasz_two_color(&cycle(5).unwrap()).is_ok());
        for n in 2..12 {
            assert!(lovasz_two_color(&complete(n).unwrap()).is_ok());
        }
    }
}
