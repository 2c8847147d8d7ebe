//! Exact desk-scale solvers and validators. These anchor every test in the
//! library: the kernelization pipeline is only ever believed because its
//! answers agree with the branch-and-bound solvers here.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_DS_CAP: usize = 64;
pub const DOMCORE_CAP: usize = 22;
pub const CONNECTED_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub optimum: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

/// Minimum r-dominating set, guarded by the default size cap.
pub fn exact_ds(g: &Graph, r: usize) -> Result<ExactResult> {
    exact_ds_capped(g, r, DEFAULT_DS_CAP)
}

pub fn exact_ds_capped(g: &Graph, r: usize, cap: usize) -> Result<ExactResult> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    Ok(solve(g, &VertexSet::full(g.n()), r, None).expect("unbounded search finds the optimum"))
}

/// Minimum (Z,r)-dominator: only vertices of `z` need to be covered.
pub fn exact_annotated_ds(g: &Graph, z: &VertexSet, r: usize) -> Result<ExactResult> {
    exact_annotated_ds_capped(g, z, r, DEFAULT_DS_CAP)
}

pub fn exact_annotated_ds_capped(
    g: &Graph,
    z: &VertexSet,
    r: usize,
    cap: usize,
) -> Result<ExactResult> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    if z.capacity() != g.n() {
        return Err(Error::BadTargets);
    }
    Ok(solve(g, z, r, None).expect("unbounded search finds the optimum"))
}

/// Decision variant: is there a (Z,r)-dominator of size at most `budget`?
/// Uncapped; the search depth is bounded by the budget itself, which keeps
/// this usable on kernels larger than the oracle cap.
pub fn ds_decision(g: &Graph, z: &VertexSet, r: usize, budget: usize) -> bool {
    solve(g, z, r, Some(budget)).is_some()
}

/// Branch and bound on the lowest-id uncovered target vertex: some member
/// of its closed r-ball must belong to any (Z,r)-dominator, so branching
/// over that ball is complete.
fn solve(g: &Graph, z: &VertexSet, r: usize, budget: Option<usize>) -> Option<ExactResult> {
    let n = g.n();
    let balls: Vec<VertexSet> = (0..n).map(|v| g.ball(v, r)).collect();
    let max_ball = balls.iter().map(|b| b.len()).max().unwrap_or(1).max(1);

    // Greedy cover for an initial upper bound.
    let mut greedy = Vec::new();
    let mut covered = z.complement();
    while covered.len() < n {
        let target = (0..n).find(|&v| !covered.contains(v)).unwrap();
        let pick = balls[target]
            .iter()
            .max_by_key(|&c| (balls[c].difference(&covered).len(), usize::MAX - c))
            .unwrap();
        covered.union_with(&balls[pick]);
        greedy.push(pick);
    }

    let mut best_size = greedy.len();
    let mut best: Option<Vec<usize>> = Some(greedy);
    if let Some(b) = budget {
        if best_size > b {
            best = None;
            best_size = b + 1; // search strictly below budget+1
        }
    }

    struct Ctx<'a> {
        g: &'a Graph,
        balls: &'a [VertexSet],
        max_ball: usize,
        best_size: usize,
        best: Option<Vec<usize>>,
        nodes: u64,
    }

    fn dfs(ctx: &mut Ctx, chosen: &mut Vec<usize>, covered: &VertexSet) {
        ctx.nodes += 1;
        if covered.len() == ctx.g.n() {
            if chosen.len() < ctx.best_size {
                ctx.best_size = chosen.len();
                ctx.best = Some(chosen.clone());
            }
            return;
        }
        let uncovered = ctx.g.n() - covered.len();
        let lb = chosen.len() + uncovered.div_ceil(ctx.max_ball);
        if lb >= ctx.best_size {
            return;
        }
        let target = (0..ctx.g.n()).find(|&v| !covered.contains(v)).unwrap();
        // Candidates sorted by coverage gain (desc), then id: good first
        // branches tighten the bound early while staying deterministic.
        let mut cands: Vec<(usize, usize)> = ctx.balls[target]
            .iter()
            .map(|c| (ctx.balls[c].difference(covered).len(), c))
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in cands {
            chosen.push(c);
            let mut cov = covered.clone();
            cov.union_with(&ctx.balls[c]);
            dfs(ctx, chosen, &cov);
            chosen.pop();
        }
    }

    let mut ctx = Ctx { g, balls: &balls, max_ball, best_size, best, nodes: 0 };
    let covered = z.complement();
    if covered.len() == n {
        return Some(ExactResult {
            optimum: 0,
            witness: VertexSet::new(n),
            nodes_explored: 1,
        });
    }
    let mut chosen = Vec::new();
    dfs(&mut ctx, &mut chosen, &covered);
    ctx.best.map(|w| ExactResult {
        optimum: w.len(),
        witness: VertexSet::from_iter(n, w),
        nodes_explored: ctx.nodes,
    })
}

/// Does D r-dominate every vertex of Z?
pub fn is_dominator(g: &Graph, d: &VertexSet, z: &VertexSet, r: usize) -> bool {
    let mut covered = VertexSet::new(g.n());
    for v in d.iter() {
        covered.union_with(&g.ball(v, r));
    }
    z.is_subset_of(&covered)
}

/// Is A pairwise at distance greater than `d`?
pub fn is_scattered(g: &Graph, a: &VertexSet, d: usize) -> bool {
    let members: Vec<usize> = a.to_vec();
    for (i, &u) in members.iter().enumerate() {
        let dm = g.bfs_within(u, d).expect("valid vertex");
        for &v in &members[i + 1..] {
            if dm.get(v).is_some() {
                return false;
            }
        }
    }
    true
}

/// Is Z an r-domination core: does *every* minimum-size (Z,r)-dominator
/// r-dominate the whole graph? Enumerates all minimum dominators, so it is
/// guarded by a small cap.
pub fn is_domination_core(g: &Graph, z: &VertexSet, r: usize) -> Result<bool> {
    if g.n() > DOMCORE_CAP {
        return Err(Error::CapExceeded { n: g.n(), cap: DOMCORE_CAP });
    }
    let opt = exact_annotated_ds(g, z, r)?.optimum;
    let n = g.n();
    let balls: Vec<VertexSet> = (0..n).map(|v| g.ball(v, r)).collect();
    let full = VertexSet::full(n);

    // Enumerate every minimum (Z,r)-dominator by complete branching on the
    // lowest uncovered target; each one must dominate all of G.
    fn rec(
        balls: &[VertexSet],
        full: &VertexSet,
        n: usize,
        opt: usize,
        chosen: &mut Vec<usize>,
        covered: &VertexSet,
    ) -> bool {
        if covered.len() == n {
            // a minimum (Z,r)-dominator; check it dominates everything
            let mut all = VertexSet::new(n);
            for &c in chosen.iter() {
                all.union_with(&balls[c]);
            }
            return full.is_subset_of(&all);
        }
        if chosen.len() == opt {
            return true; // dead branch, not a dominator
        }
        let target = (0..n).find(|&v| !covered.contains(v)).unwrap();
        for c in balls[target].iter() {
            if chosen.contains(&c) {
                continue;
            }
            chosen.push(c);
            let mut cov = covered.clone();
            cov.union_with(&balls[c]);
            if !rec(balls, full, n, opt, chosen, &cov) {
                return false;
            }
            chosen.pop();
        }
        true
    }

    let covered = z.complement();
    if covered.len() == n {
        // opt = 0; the empty set must dominate everything, i.e. n = 0.
        return Ok(n == 0);
    }
    let mut chosen = Vec::new();
    Ok(rec(&balls, &full, n, opt, &mut chosen, &covered))
}

/// Minimum connected dominating set (r = 1), by exhaustive subset
/// enumeration in increasing size. Desk-scale only.
pub fn exact_connected_ds(g: &Graph) -> Result<ExactResult> {
    if g.n() > CONNECTED_CAP {
        return Err(Error::CapExceeded { n: g.n(), cap: CONNECTED_CAP });
    }
    match connected_ds_search(g, g.n()) {
        Some(res) => Ok(res),
        None => Err(Error::NoConnectedDominatingSet),
    }
}

/// Decision variant: connected dominating set of size at most `budget`?
pub fn cds_decision(g: &Graph, budget: usize) -> Result<bool> {
    if g.n() > CONNECTED_CAP {
        return Err(Error::CapExceeded { n: g.n(), cap: CONNECTED_CAP });
    }
    Ok(connected_ds_search(g, budget.min(g.n())).is_some())
}

fn connected_ds_search(g: &Graph, max_size: usize) -> Option<ExactResult> {
    let n = g.n();
    if n == 0 {
        return Some(ExactResult { optimum: 0, witness: VertexSet::new(0), nodes_explored: 0 });
    }
    let balls: Vec<u64> = (0..n)
        .map(|v| {
            let mut b = 1u64 << v;
            for &w in g.neighbors(v) {
                b |= 1 << w;
            }
            b
        })
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut nodes = 0u64;
    for size in 1..=max_size {
        // lexicographic combinations of `size` vertices
        let mut combo: Vec<usize> = (0..size).collect();
        'combos: loop {
            nodes += 1;
            let mask: u64 = combo.iter().map(|&v| balls[v]).fold(0, |a, b| a | b);
            if mask == full && induces_connected(g, &combo) {
                return Some(ExactResult {
                    optimum: size,
                    witness: VertexSet::from_iter(n, combo.iter().copied()),
                    nodes_explored: nodes,
                });
            }
            // advance to the next combination, or move on to the next size
            let mut i = size;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if combo[i] != i + n - size {
                    break;
                }
            }
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

fn induces_connected(g: &Graph, verts: &[usize]) -> bool {
    if verts.is_empty() {
        return true;
    }
    let inset = VertexSet::from_iter(g.n(), verts.iter().copied());
    let mut seen = VertexSet::new(g.n());
    let mut stack = vec![verts[0]];
    seen.insert(verts[0]);
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if inset.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}
