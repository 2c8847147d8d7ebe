//! Dominator reduction and the three public kernels: the induced r=1
//! kernel, the annotated induced kernel, and the plain kernel obtained by
//! re-attaching the annotation gadget.

use crate::domcore::{reduce_core, AdaptiveConstants, CoreResult, CoreTag, EscalationRecord};
use crate::graph::{Graph, VertexSet};
use crate::projections::{
    projection_profile, r_closure, short_paths_closure, ClosureOutcome, DensityWitness,
    ShortPathsOutcome,
};
use crate::winwin::annotated_to_plain;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub enum DominatorReduction {
    Reduced(VertexSet),
    Density(DensityWitness),
}

/// Shrinks the dominator side: close the core under r-closure, partition
/// the outside by projection profiles up to radius r, and keep one
/// lowest-id representative per class alongside the closed core.
pub fn reduce_dominators(g: &Graph, z: &VertexSet, r: usize, xi: usize) -> DominatorReduction {
    let z_cl = match r_closure(g, z, r, xi) {
        ClosureOutcome::Closure(c) => c.cl,
        ClosureOutcome::Density(w) => return DominatorReduction::Density(w),
    };
    let mut y = z_cl.clone();
    let mut reps: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
    for u in z_cl.complement().iter() {
        let profile = projection_profile(g, &z_cl, u, r).expect("u outside closure");
        let key: Vec<Vec<usize>> = profile.chain.iter().map(|p| p.to_vec()).collect();
        reps.entry(key).or_insert(u); // ascending iteration: first is lowest
    }
    for &v in reps.values() {
        y.insert(v);
    }
    DominatorReduction::Reduced(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum KernelKind {
    InducedR1,
    AnnotatedW,
    PlainGadget,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelTrace {
    pub core_exit: String,
    pub core_size: usize,
    pub removed_from_core: usize,
    pub core_escalations: Vec<EscalationRecord>,
    pub reduction_escalations: Vec<EscalationRecord>,
    pub y_size: usize,
    pub w_size: usize,
}

#[derive(Clone, Debug)]
pub enum KernelOutput {
    /// a verified 2r-scattered certificate larger than the budget
    Infeasible { certificate: VertexSet, trace: KernelTrace },
    Kernel {
        kind: KernelKind,
        graph: Graph,
        /// annotated targets in kernel ids (empty for InducedR1/PlainGadget)
        z: VertexSet,
        k_prime: usize,
        /// kernel vertex -> original vertex; gadget vertices and path
        /// interiors map through their origin, apex/pendant to None
        id_map: Vec<Option<usize>>,
        trace: KernelTrace,
    },
}

impl KernelOutput {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, KernelOutput::Infeasible { .. })
    }

    /// Maps a dominating set found in the kernel back to original ids.
    pub fn lift(&self, kernel_solution: &VertexSet, original_n: usize) -> VertexSet {
        match self {
            KernelOutput::Infeasible { .. } => VertexSet::new(original_n),
            KernelOutput::Kernel { id_map, .. } => VertexSet::from_iter(
                original_n,
                kernel_solution.iter().filter_map(|v| id_map[v]),
            ),
        }
    }
}

/// Runs the closure-based reduction with the escalation policy: on a
/// density witness the threshold doubles, up to the escalation budget.
/// The final attempt's outcome is returned even if it is still a witness.
fn reduce_dominators_escalating(
    g: &Graph,
    z: &VertexSet,
    r: usize,
    consts: &AdaptiveConstants,
    log: &mut Vec<EscalationRecord>,
) -> DominatorReduction {
    let mut xi = consts.xi;
    for _ in 0..=consts.max_escalations {
        match reduce_dominators(g, z, r, xi) {
            DominatorReduction::Reduced(y) => return DominatorReduction::Reduced(y),
            DominatorReduction::Density(w) => {
                if log.len() >= consts.max_escalations {
                    return DominatorReduction::Density(w);
                }
                xi *= consts.escalation_factor;
                log.push(EscalationRecord {
                    reason: format!(
                        "dominator reduction density witness at xi={}",
                        w.xi_used
                    ),
                    xi,
                    round_cap: consts.round_cap,
                });
            }
        }
    }
    unreachable!("loop returns on final attempt");
}

fn short_paths_escalating(
    g: &Graph,
    y: &VertexSet,
    r: usize,
    consts: &AdaptiveConstants,
    log: &mut Vec<EscalationRecord>,
) -> ShortPathsOutcome {
    let mut xi = consts.xi;
    for _ in 0..=consts.max_escalations {
        match short_paths_closure(g, y, r, xi) {
            ShortPathsOutcome::Extended(w) => return ShortPathsOutcome::Extended(w),
            ShortPathsOutcome::Density(w) => {
                if log.len() >= consts.max_escalations {
                    return ShortPathsOutcome::Density(w);
                }
                xi *= consts.escalation_factor;
                log.push(EscalationRecord {
                    reason: format!("short-paths closure density witness at xi={}", w.xi_used),
                    xi,
                    round_cap: consts.round_cap,
                });
            }
        }
    }
    unreachable!("loop returns on final attempt");
}

fn trace_from_core(core: &CoreResult) -> KernelTrace {
    KernelTrace {
        core_exit: core.exit_reason.clone(),
        core_size: core.z.len(),
        removed_from_core: core.removed_count,
        core_escalations: core.escalation_log.clone(),
        ..KernelTrace::default()
    }
}

/// Theorem-style r=1 kernel: an induced subgraph G[Y] with the same
/// budget and the same yes/no answer for plain domination.
pub fn kernelize_r1(g: &Graph, k: usize, consts: &AdaptiveConstants) -> KernelOutput {
    let core = reduce_core(g, 1, k, consts);
    let mut trace = trace_from_core(&core);
    if core.tag == CoreTag::Infeasible {
        return KernelOutput::Infeasible { certificate: core.certificate.unwrap(), trace };
    }
    let y = match reduce_dominators_escalating(g, &core.z, 1, consts, &mut trace.reduction_escalations) {
        DominatorReduction::Reduced(y) => y,
        // a persistent witness never blocks the output: the whole vertex
        // set is always a valid (if unreduced) dominator side
        DominatorReduction::Density(_) => VertexSet::full(g.n()),
    };
    trace.y_size = y.len();
    let (graph, map) = g.induced_subgraph(&y);
    let id_map = (0..graph.n()).map(|v| Some(map.to_old(v))).collect();
    KernelOutput::Kernel {
        kind: KernelKind::InducedR1,
        z: VertexSet::new(graph.n()),
        graph,
        k_prime: k,
        id_map,
        trace,
    }
}

/// Annotated kernel for general r: an induced subgraph G[W] with target
/// set Z such that ds_r(G) <= k iff ds_r(G[W], Z) <= k.
pub fn kernelize_annotated(g: &Graph, r: usize, k: usize, consts: &AdaptiveConstants) -> KernelOutput {
    assert!(r >= 1);
    let core = reduce_core(g, r, k, consts);
    let mut trace = trace_from_core(&core);
    if core.tag == CoreTag::Infeasible {
        return KernelOutput::Infeasible { certificate: core.certificate.unwrap(), trace };
    }
    let y = match reduce_dominators_escalating(g, &core.z, r, consts, &mut trace.reduction_escalations) {
        DominatorReduction::Reduced(y) => y,
        DominatorReduction::Density(_) => VertexSet::full(g.n()),
    };
    trace.y_size = y.len();
    let w = match short_paths_escalating(g, &y, r, consts, &mut trace.reduction_escalations) {
        ShortPathsOutcome::Extended(w) => w,
        ShortPathsOutcome::Density(_) => VertexSet::full(g.n()),
    };
    trace.w_size = w.len();
    debug_assert!(core.z.is_subset_of(&w));
    let (graph, map) = g.induced_subgraph(&w);
    let z = map.set_to_new(&core.z, graph.n());
    let id_map = (0..graph.n()).map(|v| Some(map.to_old(v))).collect();
    KernelOutput::Kernel { kind: KernelKind::AnnotatedW, z, graph, k_prime: k, id_map, trace }
}

/// Plain kernel for general r: the annotated kernel with its targets
/// folded back in via the apex gadget; ds_r(G) <= k iff the kernel has an
/// r-dominating set of size at most k+1.
pub fn kernelize_plain(g: &Graph, r: usize, k: usize, consts: &AdaptiveConstants) -> KernelOutput {
    let annotated = kernelize_annotated(g, r, k, consts);
    let (w_graph, z_w, id_map_w, trace) = match annotated {
        KernelOutput::Infeasible { certificate, trace } => {
            return KernelOutput::Infeasible { certificate, trace }
        }
        KernelOutput::Kernel { graph, z, id_map, trace, .. } => (graph, z, id_map, trace),
    };
    let (graph, record) = annotated_to_plain(&w_graph, &z_w, r).expect("targets in range");
    let id_map = (0..graph.n())
        .map(|v| record.replacement(v, w_graph.n()).and_then(|w| id_map_w[w]))
        .collect();
    KernelOutput::Kernel {
        kind: KernelKind::PlainGadget,
        z: VertexSet::new(graph.n()),
        graph,
        k_prime: k + 1,
        id_map,
        trace,
    }
}
