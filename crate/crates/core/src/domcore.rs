//! Domination-core reduction: iterative extraction of a dominator/scattered
//! structure pair, elimination of irrelevant dominatees, and the
//! core-shrinking driver. Constants are adaptive with an escalation policy;
//! correctness never depends on them, only the core size does.

use crate::graph::{Graph, VertexSet};
use crate::oracle::{is_dominator, is_scattered};
use crate::projections::{projection_profile, r_closure, ClosureOutcome};
use crate::winwin::{annotated_win_win, RatioBudget, WinWinTag};
use std::collections::BTreeMap;

/// Runtime stand-ins for the closure threshold, scattered-vs-dominator
/// ratio, and round limit, together with the escalation policy applied
/// when a run returns a density witness or exhausts its rounds.
#[derive(Clone, Debug)]
pub struct AdaptiveConstants {
    /// closure projection threshold
    pub xi: usize,
    /// diagnostic cap on observed projection sizes (logged, not asserted)
    pub delta_cl_cap: usize,
    /// required ratio |S| > c0 |X| at acceptance
    pub c0: usize,
    /// approximation slack for the win-win dominator
    pub ratio_budget: RatioBudget,
    /// maximum extraction rounds before escalating
    pub round_cap: usize,
    pub escalation_factor: usize,
    pub max_escalations: usize,
    /// batch removal keeps |M_3r|+1 classmates and removes the rest;
    /// when off, one vertex is removed per round
    pub batch_removal: bool,
}

impl Default for AdaptiveConstants {
    fn default() -> Self {
        AdaptiveConstants {
            xi: 4,
            delta_cl_cap: 64,
            c0: 4,
            ratio_budget: RatioBudget::Auto { scale: 1.0 },
            round_cap: 8,
            escalation_factor: 2,
            max_escalations: 6,
            batch_removal: false,
        }
    }
}

impl AdaptiveConstants {
    /// One escalation step: widen the closure threshold and round limit.
    pub fn escalate(&self) -> Self {
        let mut next = self.clone();
        next.xi *= self.escalation_factor;
        next.round_cap *= self.escalation_factor;
        next
    }
}

/// Per-iteration sizes recorded by the extraction loop.
#[derive(Clone, Copy, Debug)]
pub struct RoundTrace {
    pub y_size: usize,
    pub x_size: usize,
    pub d_size: usize,
}

/// The extracted structure: X is a 3r-closed (Z,r)-dominator and S is a
/// large set of targets scattered in its complement.
#[derive(Clone, Debug)]
pub struct StructurePair {
    pub x: VertexSet,
    pub s: VertexSet,
    pub trace: Vec<RoundTrace>,
}

#[derive(Clone, Debug)]
pub enum ExtractOutcome {
    Pair(StructurePair),
    /// a verified 2r-scattered subset of Z larger than the budget
    Infeasible { certificate: VertexSet },
    NeedEscalation { reason: String },
    /// the closure swallowed every remaining target; nothing to extract
    Stalled,
}

/// Audits the structure-pair invariants directly against the graph.
pub fn audit_structure_pair(
    g: &Graph,
    z: &VertexSet,
    pair: &StructurePair,
    r: usize,
    consts: &AdaptiveConstants,
) -> bool {
    let x = &pair.x;
    let s = &pair.s;
    if !is_dominator(g, x, z, r) {
        return false;
    }
    if !s.is_subset_of(&z.difference(x)) {
        return false;
    }
    let (h, map) = g.induced_subgraph(&x.complement());
    let s_h = map.set_to_new(s, h.n());
    if !is_scattered(&h, &s_h, 2 * r) {
        return false;
    }
    if s.len() <= consts.c0 * x.len() {
        return false;
    }
    let bound = consts.xi * (1 + (3 * r - 1) * consts.xi);
    for u in x.complement().iter() {
        let profile = projection_profile(g, x, u, 3 * r).expect("u outside X");
        if profile.last().len() > bound {
            return false;
        }
    }
    true
}

/// One run of the extraction procedure: alternate closures of the current
/// dominator with annotated win-win calls on the remainder until the
/// scattered side wins, the budget collapses, or the round limit trips.
pub fn extract_structure(
    g: &Graph,
    z: &VertexSet,
    r: usize,
    k: usize,
    consts: &AdaptiveConstants,
) -> ExtractOutcome {
    assert!(r >= 1);
    if z.is_empty() {
        return ExtractOutcome::Pair(StructurePair {
            x: VertexSet::new(g.n()),
            s: VertexSet::new(g.n()),
            trace: Vec::new(),
        });
    }
    let first = annotated_win_win(g, z, r, k, consts.ratio_budget).expect("targets in range");
    let mut y = match first.tag {
        WinWinTag::Scattered => {
            return ExtractOutcome::Infeasible { certificate: first.scattered }
        }
        WinWinTag::RatioExceeded => {
            return ExtractOutcome::NeedEscalation {
                reason: "initial win-win exceeded its ratio budget".into(),
            }
        }
        WinWinTag::Dominator => first.dominator,
    };

    let mut trace = Vec::new();
    for _ in 0..consts.round_cap {
        let x = match r_closure(g, &y, 3 * r, consts.xi) {
            ClosureOutcome::Closure(c) => c.cl,
            ClosureOutcome::Density(w) => {
                return ExtractOutcome::NeedEscalation {
                    reason: format!(
                        "density witness: {} edges on {} vertices at xi={}",
                        w.y_edges, w.y_size, w.xi_used
                    ),
                }
            }
        };
        let z_rest = z.difference(&x);
        if z_rest.is_empty() {
            return ExtractOutcome::Stalled;
        }
        let (h, map) = g.induced_subgraph(&x.complement());
        let z_h = map.set_to_new(&z_rest, h.n());
        let budget = consts.c0 * x.len();
        let res =
            annotated_win_win(&h, &z_h, r, budget, consts.ratio_budget).expect("targets in range");
        match res.tag {
            WinWinTag::Scattered => {
                let s = map.set_to_old(&res.scattered, g.n());
                trace.push(RoundTrace { y_size: y.len(), x_size: x.len(), d_size: 0 });
                return ExtractOutcome::Pair(StructurePair { x, s, trace });
            }
            WinWinTag::Dominator => {
                let d = map.set_to_old(&res.dominator, g.n());
                trace.push(RoundTrace { y_size: y.len(), x_size: x.len(), d_size: d.len() });
                y = x;
                y.union_with(&d);
            }
            WinWinTag::RatioExceeded => {
                return ExtractOutcome::NeedEscalation {
                    reason: "remainder win-win exceeded its ratio budget".into(),
                }
            }
        }
    }
    ExtractOutcome::NeedEscalation { reason: "round cap exceeded".into() }
}

/// A class of equal-profile targets together with the members that can be
/// dropped from Z while it stays a domination core.
#[derive(Clone, Debug)]
pub struct RemovableBatch {
    pub class: VertexSet,
    pub safe_removals: VertexSet,
}

/// Partitions S by projection profiles up to radius 3r onto X and checks
/// the largest class for droppable members: removals are safe as long as
/// at least |M_3r| + 1 classmates survive. Conservative mode removes one
/// vertex; batch mode removes everything beyond the required survivors.
pub fn find_irrelevant(
    g: &Graph,
    z: &VertexSet,
    x: &VertexSet,
    s: &VertexSet,
    r: usize,
    batch: bool,
) -> Option<RemovableBatch> {
    debug_assert!(s.is_subset_of(&z.difference(x)));
    let mut classes: BTreeMap<Vec<Vec<usize>>, Vec<usize>> = BTreeMap::new();
    for u in s.iter() {
        let profile = projection_profile(g, x, u, 3 * r).expect("S avoids X");
        let key: Vec<Vec<usize>> = profile.chain.iter().map(|p| p.to_vec()).collect();
        classes.entry(key).or_default().push(u);
    }
    // largest class; ties broken towards the lowest smallest member
    let (key, members) = classes
        .iter()
        .max_by(|a, b| (a.1.len(), std::cmp::Reverse(a.1[0])).cmp(&(b.1.len(), std::cmp::Reverse(b.1[0]))))?;
    let m_size = key.last().map_or(0, |p| p.len());
    let survivors = m_size + 1;
    if members.len() <= survivors {
        return None;
    }
    let removable = if batch { members.len() - survivors } else { 1 };
    // keep the lowest ids, remove from the top
    let removals = VertexSet::from_iter(g.n(), members.iter().rev().take(removable).copied());
    Some(RemovableBatch {
        class: VertexSet::from_iter(g.n(), members.iter().copied()),
        safe_removals: removals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreTag {
    Core,
    Infeasible,
    Escalated,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EscalationRecord {
    pub reason: String,
    pub xi: usize,
    pub round_cap: usize,
}

#[derive(Clone, Debug)]
pub struct CoreResult {
    pub tag: CoreTag,
    pub z: VertexSet,
    pub removed_count: usize,
    pub escalation_log: Vec<EscalationRecord>,
    /// verified 2r-scattered certificate when tag is Infeasible
    pub certificate: Option<VertexSet>,
    pub exit_reason: String,
    /// removal batches in order, for test replay
    pub removal_batches: Vec<Vec<usize>>,
}

/// The core-shrinking loop: start from Z = V, repeatedly extract a
/// structure pair and drop irrelevant targets; stop when no class yields
/// removals, infeasibility is certified, or escalations run out (the
/// current Z is still a valid core in every exit).
pub fn reduce_core(g: &Graph, r: usize, k: usize, consts: &AdaptiveConstants) -> CoreResult {
    let mut consts = consts.clone();
    let mut z = VertexSet::full(g.n());
    let mut removed_count = 0;
    let mut escalation_log = Vec::new();
    let mut removal_batches = Vec::new();
    let batch_mode = consts.batch_removal || g.n() > 200;
    loop {
        if z.len() <= k {
            return CoreResult {
                tag: CoreTag::Core,
                z,
                removed_count,
                escalation_log,
                certificate: None,
                exit_reason: "target set no larger than the budget".into(),
                removal_batches,
            };
        }
        match extract_structure(g, &z, r, k, &consts) {
            ExtractOutcome::Pair(pair) => {
                match find_irrelevant(g, &z, &pair.x, &pair.s, r, batch_mode) {
                    Some(batch) => {
                        for v in batch.safe_removals.iter() {
                            z.remove(v);
                            removed_count += 1;
                        }
                        removal_batches.push(batch.safe_removals.to_vec());
                    }
                    None => {
                        return CoreResult {
                            tag: CoreTag::Core,
                            z,
                            removed_count,
                            escalation_log,
                            certificate: None,
                            exit_reason: "no class admits a safe removal".into(),
                            removal_batches,
                        }
                    }
                }
            }
            ExtractOutcome::Infeasible { certificate } => {
                debug_assert!(is_scattered(g, &certificate, 2 * r) && certificate.len() > k);
                return CoreResult {
                    tag: CoreTag::Infeasible,
                    z,
                    removed_count,
                    escalation_log,
                    certificate: Some(certificate),
                    exit_reason: "scattered certificate exceeds the budget".into(),
                    removal_batches,
                };
            }
            ExtractOutcome::Stalled => {
                return CoreResult {
                    tag: CoreTag::Core,
                    z,
                    removed_count,
                    escalation_log,
                    certificate: None,
                    exit_reason: "closure absorbed all remaining targets".into(),
                    removal_batches,
                }
            }
            ExtractOutcome::NeedEscalation { reason } => {
                if escalation_log.len() >= consts.max_escalations {
                    return CoreResult {
                        tag: CoreTag::Escalated,
                        z,
                        removed_count,
                        escalation_log,
                        certificate: None,
                        exit_reason: reason,
                        removal_batches,
                    };
                }
                consts = consts.escalate();
                escalation_log.push(EscalationRecord {
                    reason,
                    xi: consts.xi,
                    round_cap: consts.round_cap,
                });
            }
        }
    }
}
