//! r-projections, the closure procedure built on shallow-minor
//! contractions, and the short-paths closure.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The nested chain M_1(u,X) ⊆ ... ⊆ M_l(u,X).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionProfile {
    pub vertex: usize,
    pub chain: Vec<VertexSet>,
}

impl ProjectionProfile {
    /// The outermost projection M_l(u,X).
    pub fn last(&self) -> &VertexSet {
        self.chain.last().expect("l >= 1")
    }
}

/// Evidence that the closure loop ran past its round budget: the grown
/// target set became denser than any graph respecting the hypothesised
/// sparsity threshold could be.
#[derive(Clone, Copy, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityWitness {
    pub rounds_used: usize,
    pub xi_used: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub y_edges: usize,
}

impl DensityWitness {
    /// The density the run certifies: xi * (|X|+1) / (2|X|+1), computed
    /// from the recorded counts. Exceeding xi/2 is the escalation trigger.
    pub fn certified_density(&self) -> f64 {
        self.y_edges as f64 / self.y_size.max(1) as f64
    }

    pub fn threshold(&self) -> f64 {
        self.xi_used as f64 * (self.x_size as f64 + 1.0) / (2.0 * self.x_size as f64 + 1.0)
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub cl: VertexSet,
    pub rounds: usize,
}

#[derive(Clone, Debug)]
pub enum ClosureOutcome {
    Closure(Closure),
    Density(DensityWitness),
}

/// M_r(u, X): vertices w in X joined to u by a path of length at most r
/// whose internal vertices avoid X.
pub fn projection(g: &Graph, x: &VertexSet, u: usize, r: usize) -> Result<VertexSet> {
    if x.contains(u) {
        return Err(Error::InsideX { v: u });
    }
    let dm = g.bfs_within_avoiding(u, r, x)?;
    Ok(VertexSet::from_iter(
        g.n(),
        dm.iter().filter(|&(w, _)| x.contains(w)).map(|(w, _)| w),
    ))
}

/// The full nested chain in one avoided BFS: the avoided distance of each
/// reached X-vertex is the least i with w in M_i(u,X).
pub fn projection_profile(g: &Graph, x: &VertexSet, u: usize, l: usize) -> Result<ProjectionProfile> {
    if x.contains(u) {
        return Err(Error::InsideX { v: u });
    }
    let dm = g.bfs_within_avoiding(u, l, x)?;
    let mut chain: Vec<VertexSet> = (0..l).map(|_| VertexSet::new(g.n())).collect();
    for (w, d) in dm.iter() {
        if x.contains(w) && d >= 1 {
            for m in &mut chain[d - 1..] {
                m.insert(w);
            }
        }
    }
    Ok(ProjectionProfile { vertex: u, chain })
}

/// State of the contraction loop: the working graph H, the grown target
/// set Y over H's ids, and tau mapping each H-vertex to the set of
/// original vertices contracted onto it.
struct ContractionState {
    h: Graph,
    y: VertexSet,
    tau: Vec<Vec<usize>>,
}

impl ContractionState {
    /// Contracts `merge` (which contains `u`) onto a single vertex, keeps
    /// ids dense, and remaps Y and tau. Returns the id of the merged
    /// vertex in the new graph.
    fn contract(&mut self, merge: &VertexSet) -> usize {
        let old_n = self.h.n();
        let mut old_to_new = vec![usize::MAX; old_n];
        let mut merged_new = usize::MAX;
        let mut next = 0;
        for v in 0..old_n {
            if merge.contains(v) {
                if merged_new == usize::MAX {
                    merged_new = next;
                    next += 1;
                }
                old_to_new[v] = merged_new;
            } else {
                old_to_new[v] = next;
                next += 1;
            }
        }
        let mut h = Graph::new(next);
        for (a, b) in self.h.edges() {
            let (na, nb) = (old_to_new[a], old_to_new[b]);
            if na != nb {
                h.add_edge(na, nb);
            }
        }
        let mut tau: Vec<Vec<usize>> = vec![Vec::new(); next];
        for v in 0..old_n {
            tau[old_to_new[v]].extend_from_slice(&self.tau[v]);
        }
        for t in &mut tau {
            t.sort_unstable();
        }
        let y = VertexSet::from_iter(next, self.y.iter().map(|v| old_to_new[v]));
        self.h = h;
        self.y = y;
        self.tau = tau;
        merged_new
    }
}

/// The closure procedure: repeatedly find a vertex outside Y whose
/// r-projection onto Y has size at least xi, contract xi witnessing paths
/// onto it, and adopt it into Y. Stops within |X| rounds on graphs that
/// respect the hypothesised sparsity; otherwise the recorded edge counts
/// of H[Y] form a density witness.
pub fn r_closure(g: &Graph, x: &VertexSet, r: usize, xi: usize) -> ClosureOutcome {
    assert!(r >= 1 && xi >= 1);
    if x.is_empty() {
        return ClosureOutcome::Closure(Closure { cl: VertexSet::new(g.n()), rounds: 0 });
    }
    let mut st = ContractionState {
        h: g.clone(),
        y: x.clone(),
        tau: (0..g.n()).map(|v| vec![v]).collect(),
    };
    let mut rounds = 0;
    loop {
        // lowest-id vertex outside Y with a projection of size >= xi
        let mut found: Option<(usize, VertexSet)> = None;
        for u in 0..st.h.n() {
            if st.y.contains(u) {
                continue;
            }
            let proj = projection(&st.h, &st.y, u, r).expect("u outside Y");
            if proj.len() >= xi {
                found = Some((u, proj));
                break;
            }
        }
        let Some((u, proj)) = found else {
            break;
        };
        rounds += 1;
        // first xi projection members, each with a Y-internally-avoiding
        // path from u; merge u with all path interiors
        let dm = st.h.bfs_within_avoiding(u, r, &st.y).expect("u outside Y");
        let mut merge = VertexSet::from_iter(st.h.n(), [u]);
        for w in proj.iter().take(xi) {
            let path = dm.path_to(w).expect("w is in the projection");
            for &p in &path[..path.len() - 1] {
                merge.insert(p);
            }
        }
        let merged = st.contract(&merge);
        st.y.insert(merged);
        if rounds > x.len() {
            // each round added a vertex with >= xi fresh edges into Y, so
            // H[Y] is now denser than the hypothesised threshold allows
            let (hy, _) = st.h.induced_subgraph(&st.y);
            return ClosureOutcome::Density(DensityWitness {
                rounds_used: rounds,
                xi_used: xi,
                x_size: x.len(),
                y_size: hy.n(),
                y_edges: hy.m(),
            });
        }
    }
    // cl = tau(Y), expressed over the original vertex ids
    let mut cl = VertexSet::new(g.n());
    for y in st.y.iter() {
        for &orig in &st.tau[y] {
            cl.insert(orig);
        }
    }
    debug_assert!(x.is_subset_of(&cl));
    debug_assert!(cl.len() <= ((r - 1) * xi + 2) * x.len());
    ClosureOutcome::Closure(Closure { cl, rounds })
}

/// Audit of the three closure guarantees, run directly against the
/// original graph. Used by tests and by the CLI's closure report.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureAudit {
    pub contains_x: bool,
    pub size_ok: bool,
    pub projections_ok: bool,
    pub max_outside_projection: usize,
}

impl ClosureAudit {
    pub fn passed(&self) -> bool {
        self.contains_x && self.size_ok && self.projections_ok
    }
}

pub fn audit_closure(g: &Graph, x: &VertexSet, cl: &VertexSet, r: usize, xi: usize) -> ClosureAudit {
    let contains_x = x.is_subset_of(cl);
    let size_ok = cl.len() <= ((r - 1) * xi + 2) * x.len();
    let cap = xi * (1 + (r - 1) * xi);
    let mut max_proj = 0;
    for u in 0..g.n() {
        if !cl.contains(u) {
            let p = projection(g, cl, u, r).expect("u outside cl").len();
            max_proj = max_proj.max(p);
        }
    }
    ClosureAudit {
        contains_x,
        size_ok,
        projections_ok: max_proj <= cap,
        max_outside_projection: max_proj,
    }
}

#[derive(Clone, Debug)]
pub enum ShortPathsOutcome {
    Extended(VertexSet),
    Density(DensityWitness),
}

/// Closure followed by one shortest interior-avoiding path per pair of
/// closure vertices at distance at most r: distances at most r between
/// members of X are then realized exactly inside the induced subgraph.
pub fn short_paths_closure(g: &Graph, x: &VertexSet, r: usize, xi: usize) -> ShortPathsOutcome {
    let x0 = match r_closure(g, x, r, xi) {
        ClosureOutcome::Closure(c) => c.cl,
        ClosureOutcome::Density(w) => return ShortPathsOutcome::Density(w),
    };
    let mut x_prime = x0.clone();
    for u in x0.iter() {
        // one avoided BFS covers every partner of u at once; a path of
        // length <= r internally avoiding X0 exists iff the avoided
        // distance is <= r (interiors never touch X0 by construction)
        let mut forbidden = x0.clone();
        forbidden.remove(u);
        let dm = g.bfs_within_avoiding(u, r, &forbidden).expect("u not forbidden");
        for v in x0.iter() {
            if v <= u {
                continue;
            }
            if dm.get(v).is_some() {
                for p in dm.path_to(v).expect("reached") {
                    x_prime.insert(p);
                }
            }
        }
    }
    ShortPathsOutcome::Extended(x_prime)
}
