//! Vertex orderings and weakly-reachable sets. The quality of an ordering
//! is only ever consumed through the measured `c_bound` of its
//! `WeakReachReport`, so the ordering heuristics are free to approximate.

use crate::graph::{Graph, VertexSet};

/// A linear order on the vertices: `position[v]` is the rank of `v`.
#[derive(Clone, Debug)]
pub struct VertexOrdering {
    position: Vec<usize>,
    by_rank: Vec<usize>,
}

impl VertexOrdering {
    pub fn from_ranked(by_rank: Vec<usize>) -> Self {
        let mut position = vec![0; by_rank.len()];
        for (rank, &v) in by_rank.iter().enumerate() {
            position[v] = rank;
        }
        VertexOrdering { position, by_rank }
    }

    pub fn rank(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, rank: usize) -> usize {
        self.by_rank[rank]
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }

    /// Vertices in ascending rank.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_rank.iter().copied()
    }
}

/// Weakly m-accessible sets B^sigma_m(v) for every vertex, plus the bound
/// 1 + max |B| they certify.
#[derive(Clone, Debug)]
pub struct WeakReachReport {
    pub m: usize,
    pub per_vertex: Vec<VertexSet>,
    pub c_bound: usize,
}

/// Repeatedly remove a minimum-degree vertex; the returned ordering puts
/// the last-removed vertex first, so every vertex has at most `degeneracy`
/// neighbors ranked before it.
pub fn degeneracy_ordering(g: &Graph) -> (VertexOrdering, usize) {
    let n = g.n();
    let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut removal_order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degs[v], v))
            .unwrap();
        removed[v] = true;
        removal_order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degs[w] -= 1;
            }
        }
    }
    removal_order.reverse();
    let ordering = VertexOrdering::from_ranked(removal_order);
    let degeneracy = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| ordering.rank(w) < ordering.rank(v))
                .count()
        })
        .max()
        .unwrap_or(0);
    (ordering, degeneracy)
}

/// Score cap for the admissibility proxy; only relative order matters, and
/// truncation keeps dense balls from dominating the cost.
const ADMISSIBILITY_SCORE_CAP: usize = 64;

/// Greedy back-to-front ordering: repeatedly place last the unplaced
/// vertex whose m-ball meets the fewest still-unplaced vertices. This is a
/// cheap proxy for m-admissibility; the downstream guarantees only use the
/// c_bound measured afterwards by `weak_reach`.
pub fn admissibility_ordering(g: &Graph, m: usize) -> VertexOrdering {
    assert!(m >= 1);
    let n = g.n();
    let mut unplaced = VertexSet::full(n);
    let mut suffix = Vec::with_capacity(n);
    for _ in 0..n {
        // (score, degree, vertex): ties go to low-degree vertices so hubs
        // end up early, inside the back-reach of their satellites
        let mut best: Option<(usize, usize, usize)> = None;
        for v in unplaced.iter() {
            let mut score = 0usize;
            let dm = g.bfs_within(v, m).expect("valid vertex");
            for (w, _) in dm.iter() {
                if w != v && unplaced.contains(w) {
                    score += 1;
                    if score >= ADMISSIBILITY_SCORE_CAP {
                        break;
                    }
                }
            }
            let key = (score, g.degree(v), v);
            match best {
                Some(b) if b <= key => {}
                _ => best = Some(key),
            }
        }
        let (_, _, v) = best.unwrap();
        unplaced.remove(v);
        suffix.push(v);
    }
    suffix.reverse();
    VertexOrdering::from_ranked(suffix)
}

/// Exact B^sigma_m(v) for all v: u belongs to B(v) iff rank(u) < rank(v)
/// and some u-v path of length <= m has all internal vertices ranked after
/// u. Computed by one BFS per u inside the subgraph of later-ranked
/// vertices.
pub fn weak_reach(g: &Graph, sigma: &VertexOrdering, m: usize) -> WeakReachReport {
    assert!(m >= 1);
    let n = g.n();
    let mut per_vertex: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
    for u in 0..n {
        // forbid everything ranked at or before u (except u itself)
        let forbidden = VertexSet::from_iter(
            n,
            (0..n).filter(|&w| w != u && sigma.rank(w) < sigma.rank(u)),
        );
        let dm = g
            .bfs_within_avoiding(u, m, &forbidden)
            .expect("u is not forbidden");
        for (v, _) in dm.iter() {
            if v != u && sigma.rank(u) < sigma.rank(v) {
                per_vertex[v].insert(u);
            }
        }
    }
    let c_bound = 1 + per_vertex.iter().map(|b| b.len()).max().unwrap_or(0);
    WeakReachReport { m, per_vertex, c_bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn degeneracy_tree_is_1() {
        let (_, d) = degeneracy_ordering(&path_graph(8));
        assert_eq!(d, 1);
    }

    #[test]
    fn degeneracy_k4_is_3() {
        let (_, d) = degeneracy_ordering(&complete(4));
        assert_eq!(d, 3);
    }

    #[test]
    fn degeneracy_subdivided_k5_is_2() {
        // K5 with every edge subdivided once: peeling removes degree-2
        // subdivision vertices throughout.
        let k5 = complete(5);
        let mut h = Graph::new(5);
        for (u, v) in k5.edges() {
            let mid = h.add_vertex();
            h.add_edge(u, mid);
            h.add_edge(mid, v);
        }
        let (_, d) = degeneracy_ordering(&h);
        assert_eq!(d, 2);
    }

    #[test]
    fn admissibility_path_cbound() {
        for m in 1..=3 {
            let g = path_graph(9);
            let sigma = admissibility_ordering(&g, m);
            let report = weak_reach(&g, &sigma, m);
            assert!(report.c_bound <= 2 * m + 1, "m={m}: {}", report.c_bound);
        }
    }

    #[test]
    fn admissibility_k4_cbound_4() {
        let g = complete(4);
        let sigma = admissibility_ordering(&g, 2);
        assert_eq!(weak_reach(&g, &sigma, 2).c_bound, 4);
    }

    #[test]
    fn empty_graph_cbound_1() {
        let g = Graph::new(4);
        let sigma = admissibility_ordering(&g, 2);
        assert_eq!(weak_reach(&g, &sigma, 2).c_bound, 1);
    }

    #[test]
    fn weak_reach_path_identity_order() {
        // path 0-1-2 with identity order, m = 2: B(2) = {0, 1}.
        let g = path_graph(3);
        let sigma = VertexOrdering::from_ranked(vec![0, 1, 2]);
        let report = weak_reach(&g, &sigma, 2);
        assert_eq!(report.per_vertex[2].to_vec(), vec![0, 1]);
        assert_eq!(report.c_bound, 3);
    }

    #[test]
    fn weak_reach_m1_is_earlier_neighbors() {
        let g = complete(5);
        let sigma = VertexOrdering::from_ranked(vec![4, 2, 0, 1, 3]);
        let report = weak_reach(&g, &sigma, 1);
        for v in 0..5 {
            let expected: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| sigma.rank(w) < sigma.rank(v))
                .collect();
            assert_eq!(report.per_vertex[v].to_vec(), expected);
        }
    }

    #[test]
    fn weak_reach_single_vertex() {
        let g = Graph::new(1);
        let sigma = VertexOrdering::from_ranked(vec![0]);
        let report = weak_reach(&g, &sigma, 3);
        assert!(report.per_vertex[0].is_empty());
        assert_eq!(report.c_bound, 1);
    }

    #[test]
    fn weak_reach_monotone_in_m() {
        let mut g = path_graph(8);
        g.add_edge(0, 5);
        g.add_edge(2, 7);
        let sigma = admissibility_ordering(&g, 2);
        let r1 = weak_reach(&g, &sigma, 1);
        let r2 = weak_reach(&g, &sigma, 2);
        let r3 = weak_reach(&g, &sigma, 3);
        for v in 0..8 {
            assert!(r1.per_vertex[v].is_subset_of(&r2.per_vertex[v]));
            assert!(r2.per_vertex[v].is_subset_of(&r3.per_vertex[v]));
        }
    }
}
