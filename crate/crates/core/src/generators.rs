//! Deterministic instance families, plus two constructive reductions used
//! as instance factories: Graph Motif -> Connected Dominating Set (with a
//! degree-taming rewrite) and Set Cover -> 3r0-Dominating Set.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = path(n);
    g.add_edge(n - 1, 0);
    g
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    assert!(rows >= 1 && cols >= 1);
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1);
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols);
            }
        }
    }
    g
}

/// K_n with every edge subdivided `t` times (t = 0 gives K_n itself).
pub fn subdivided_clique(n: usize, t: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if t == 0 {
                g.add_edge(u, v);
            } else {
                g.connect_by_path(u, v, t + 1);
            }
        }
    }
    g
}

/// Seeded random graph with maximum degree at most `d`: repeated stub
/// pairing with simple-graph rejection.
pub fn random_bounded_degree(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d < 1 {
        return Err(Error::BadGenerator("degree bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    if n < 2 {
        return Ok(g);
    }
    let attempts = 3 * n * d;
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && g.degree(u) < d && g.degree(v) < d && !g.has_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// A Graph Motif instance: a colored graph and a palette size; asks for a
/// connected set with exactly one vertex of each color.
#[derive(Clone, Debug)]
pub struct MotifInstance {
    pub graph: Graph,
    pub k: usize,
    /// color of each vertex, in [0, k)
    pub color: Vec<usize>,
}

impl MotifInstance {
    pub fn new(graph: Graph, k: usize, color: Vec<usize>) -> Result<Self> {
        let inst = MotifInstance { graph, k, color };
        inst.validate()?;
        Ok(inst)
    }

    /// Colors are a surjection onto [0,k) and the graph is a forest.
    pub fn validate(&self) -> Result<()> {
        if self.color.len() != self.graph.n() {
            return Err(Error::BadGenerator("color map length mismatch".into()));
        }
        let mut seen = vec![false; self.k];
        for &c in &self.color {
            if c >= self.k {
                return Err(Error::BadGenerator(format!("color {c} out of palette {}", self.k)));
            }
            seen[c] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::BadGenerator("color map is not surjective".into()));
        }
        if !is_forest(&self.graph) {
            return Err(Error::BadGenerator("motif graph must be a forest".into()));
        }
        Ok(())
    }

    /// Edge set of the color graph: colors i, j are adjacent when some
    /// edge of the instance joins them.
    pub fn color_graph(&self) -> Graph {
        let mut cg = Graph::new(self.k);
        for (u, v) in self.graph.edges() {
            if self.color[u] != self.color[v] {
                cg.add_edge(self.color[u], self.color[v]);
            }
        }
        cg
    }
}

fn is_forest(g: &Graph) -> bool {
    let mut seen = vec![false; g.n()];
    let mut components = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    g.m() == g.n() - components
}

/// Seeded random motif instance: a random tree with maximum degree 3 and
/// a surjective random coloring.
pub fn random_motif(n: usize, k: usize, seed: u64) -> Result<MotifInstance> {
    if k == 0 || k > n {
        return Err(Error::BadGenerator("need 1 <= k <= n".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        // attach to a random earlier vertex with spare degree
        let candidates: Vec<usize> = (0..v).filter(|&u| g.degree(u) < 3).collect();
        let u = candidates[rng.gen_range(0..candidates.len())];
        g.add_edge(u, v);
    }
    let mut color: Vec<usize> = (0..n).map(|v| if v < k { v } else { rng.gen_range(0..k) }).collect();
    // shuffle so low ids are not biased towards low colors
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        color.swap(i, j);
    }
    // repair surjectivity after the shuffle (it permutes positions only,
    // so every color is still present; the check below is belt-and-braces)
    MotifInstance::new(g, k, color)
}

/// Brute-force motif solver: is there a connected set with exactly one
/// vertex of each color? Desk scale only (enumerates connected subsets).
pub fn solve_motif_brute(inst: &MotifInstance) -> bool {
    let g = &inst.graph;
    let k = inst.k;
    if k == 0 {
        return true;
    }
    // DFS over connected supersets, grown from each minimum vertex
    fn grow(
        g: &Graph,
        inst: &MotifInstance,
        start: usize,
        current: &mut Vec<usize>,
        used_colors: &mut Vec<bool>,
        target: usize,
    ) -> bool {
        if current.len() == target {
            return true;
        }
        // frontier: neighbors of the current set, above `start`, unused color
        let mut frontier: Vec<usize> = Vec::new();
        for &u in current.iter() {
            for &w in g.neighbors(u) {
                if w > start
                    && !current.contains(&w)
                    && !used_colors[inst.color[w]]
                    && !frontier.contains(&w)
                {
                    frontier.push(w);
                }
            }
        }
        for w in frontier {
            current.push(w);
            used_colors[inst.color[w]] = true;
            if grow(g, inst, start, current, used_colors, target) {
                return true;
            }
            used_colors[inst.color[w]] = false;
            current.pop();
        }
        false
    }
    for start in 0..g.n() {
        let mut current = vec![start];
        let mut used = vec![false; k];
        used[inst.color[start]] = true;
        if grow(g, inst, start, &mut current, &mut used, k) {
            return true;
        }
    }
    false
}

/// The motif -> connected dominating set construction: per color i a
/// selector w_i adjacent to the whole color class, with a pendant w_i°.
/// The instance is a yes-instance iff the output graph has a connected
/// dominating set of size at most 2k.
pub fn motif_to_cds(inst: &MotifInstance) -> (Graph, usize) {
    let mut g = inst.graph.clone();
    for i in 0..inst.k {
        let w = g.add_vertex();
        g.set_label(w, &format!("w{i}"));
        for v in 0..inst.graph.n() {
            if inst.color[v] == i {
                g.add_edge(w, v);
            }
        }
        let pendant = g.add_vertex();
        g.set_label(pendant, &format!("w{i}o"));
        g.add_edge(w, pendant);
    }
    (g, 2 * inst.k)
}

/// Degree taming: rewrites a motif instance so that both the graph and
/// its color graph have bounded degree, preserving the answer. Every
/// original edge uv with edge-color alpha is replaced by a pair of
/// per-endpoint paths threading through the tuple colors, and every
/// endpoint additionally carries complementary Q-paths so that the
/// associated vertex sets cover each tuple color exactly once.
pub fn motif_degree_taming(inst: &MotifInstance) -> Result<MotifInstance> {
    let g = &inst.graph;
    let k = inst.k;
    let delta = g.max_degree();
    let palette = delta + 1;
    let f = proper_edge_coloring(g, palette)?;

    // new colors: [0,k) originals, then (i, j, alpha) tuples
    let tuple = |i: usize, j: usize, alpha: usize| k + (i * k + j) * palette + alpha;
    let k_prime = k + palette * k * k;

    let mut color = inst.color.clone();
    // original edges are replaced by the path gadgets, so start from the
    // vertex set alone
    let edges = g.edges();
    let mut g_new = Graph::new(g.n());
    let add_path = |g_new: &mut Graph,
                        color: &mut Vec<usize>,
                        i: usize,
                        alpha: usize,
                        lo: usize,
                        hi: usize|
     -> Vec<usize> {
        // an (i,alpha;lo,hi)-path: one vertex per index, chained
        let mut ids = Vec::with_capacity(hi + 1 - lo);
        for j in lo..=hi {
            let v = g_new.add_vertex();
            color.push(tuple(i, j, alpha));
            if let Some(&prev) = ids.last() {
                g_new.add_edge(prev, v);
            }
            ids.push(v);
        }
        ids
    };

    let mut used: Vec<Vec<bool>> = vec![vec![false; palette]; g.n()];
    for (idx, &(u, v)) in edges.iter().enumerate() {
        let alpha = f[idx];
        used[u][alpha] = true;
        used[v][alpha] = true;
        let (i, j) = (inst.color[u], inst.color[v]);
        // P_u: indices 0..=j, low end at u; P_v: indices 0..=i, low end at v
        let p_u = add_path(&mut g_new, &mut color, i, alpha, 0, j);
        let p_v = add_path(&mut g_new, &mut color, j, alpha, 0, i);
        g_new.add_edge(u, p_u[0]);
        g_new.add_edge(v, p_v[0]);
        g_new.add_edge(*p_u.last().unwrap(), *p_v.last().unwrap());
        // complementary Q-paths attach at their high (k-1) end
        if j < k - 1 {
            let q_u = add_path(&mut g_new, &mut color, i, alpha, j + 1, k - 1);
            g_new.add_edge(u, *q_u.last().unwrap());
        }
        if i < k - 1 {
            let q_v = add_path(&mut g_new, &mut color, j, alpha, i + 1, k - 1);
            g_new.add_edge(v, *q_v.last().unwrap());
        }
    }
    // full Q-paths for edge-colors unused at a vertex
    for u in 0..g.n() {
        for alpha in 0..palette {
            if !used[u][alpha] {
                let q = add_path(&mut g_new, &mut color, inst.color[u], alpha, 0, k - 1);
                g_new.add_edge(u, *q.last().unwrap());
            }
        }
    }

    let out = MotifInstance { graph: g_new, k: k_prime, color };
    debug_assert!(out.graph.max_degree() <= 2 * delta + 2);
    Ok(out)
}

/// Proper edge coloring of a forest with at most `palette` colors:
/// BFS from each root, coloring every child edge with the smallest color
/// unused at either endpoint. Returns one color per edge, aligned with
/// `g.edges()` order.
fn proper_edge_coloring(g: &Graph, palette: usize) -> Result<Vec<usize>> {
    if !is_forest(g) {
        return Err(Error::BadGenerator("edge coloring expects a forest".into()));
    }
    let edges = g.edges();
    let index_of = |u: usize, v: usize| {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).expect("existing edge")
    };
    let mut coloring = vec![usize::MAX; edges.len()];
    let mut used_at: Vec<Vec<bool>> = vec![vec![false; palette]; g.n()];
    let mut seen = vec![false; g.n()];
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                let alpha = (0..palette)
                    .find(|&a| !used_at[u][a] && !used_at[w][a])
                    .ok_or_else(|| Error::BadGenerator("palette exhausted".into()))?;
                used_at[u][alpha] = true;
                used_at[w][alpha] = true;
                coloring[index_of(u, w)] = alpha;
                queue.push_back(w);
            }
        }
    }
    Ok(coloring)
}

/// A Set Cover instance (U, F, k).
#[derive(Clone, Debug)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub families: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn validate(&self) -> Result<()> {
        for fam in &self.families {
            if fam.iter().any(|&e| e >= self.universe) {
                return Err(Error::BadGenerator("family element outside universe".into()));
            }
        }
        Ok(())
    }

    /// Brute-force answer: can k families cover the universe?
    pub fn solve_brute(&self) -> bool {
        let m = self.families.len();
        let full: u64 = if self.universe == 0 { 0 } else { (1u64 << self.universe) - 1 };
        let masks: Vec<u64> = self
            .families
            .iter()
            .map(|f| f.iter().fold(0u64, |a, &e| a | 1 << e))
            .collect();
        (0u64..1 << m)
            .filter(|sel| sel.count_ones() as usize <= self.k)
            .any(|sel| {
                (0..m)
                    .filter(|&i| sel >> i & 1 == 1)
                    .fold(0u64, |a, i| a | masks[i])
                    == full
            })
    }
}

pub fn random_set_cover(universe: usize, families: usize, k: usize, seed: u64) -> SetCoverInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fams = (0..families)
        .map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    SetCoverInstance { universe, families: fams, k }
}

/// The Set Cover -> distance-3r0 Dominating Set construction: k selector
/// gadgets, each a 2r0-subdivided clique over the families with a hub b^i
/// and a pendant r0-path, plus one element vertex per universe element
/// wired to the sets containing it, with its own pendant r0-path.
/// The instance has a set cover of size k iff the graph has a
/// 3r0-dominating set of size at most k.
pub fn setcover_to_rds(inst: &SetCoverInstance, r0: usize) -> Result<(Graph, usize, usize)> {
    if r0 < 1 {
        return Err(Error::BadGenerator("r0 must be at least 1".into()));
    }
    inst.validate()?;
    let nf = inst.families.len();
    let mut g = Graph::new(0);
    let mut a = vec![vec![0usize; nf]; inst.k];
    for i in 0..inst.k {
        for x in 0..nf {
            a[i][x] = g.add_vertex();
            g.set_label(a[i][x], &format!("a{i}_{x}"));
        }
        // 2r0-subdivided clique over the family vertices
        for x in 0..nf {
            for y in x + 1..nf {
                g.connect_by_path(a[i][x], a[i][y], 2 * r0);
            }
        }
        let b = g.add_vertex();
        g.set_label(b, &format!("b{i}"));
        for x in 0..nf {
            g.connect_by_path(b, a[i][x], 2 * r0);
        }
        let c = g.attach_path(b, r0);
        g.set_label(c, &format!("c{i}"));
    }
    for e in 0..inst.universe {
        let u = g.add_vertex();
        g.set_label(u, &format!("u{e}"));
        for i in 0..inst.k {
            for (x, fam) in inst.families.iter().enumerate() {
                if fam.contains(&e) {
                    g.connect_by_path(u, a[i][x], 2 * r0);
                }
            }
        }
        let v = g.attach_path(u, r0);
        g.set_label(v, &format!("v{e}"));
    }
    Ok((g, 3 * r0, inst.k))
}
