//! Acceptance gate: one test per acceptance criterion, each emitting a
//! single "ACCEPTANCE <n> <name>: PASS|FAIL" line.

use sparsedom::domcore::{reduce_core, AdaptiveConstants};
use sparsedom::generators;
use sparsedom::graph::{Graph, VertexSet};
use sparsedom::kernel::{kernelize_annotated, kernelize_plain, kernelize_r1, KernelKind, KernelOutput};
use sparsedom::oracle::{
    cds_decision, ds_decision, exact_annotated_ds, exact_ds, is_dominator, is_domination_core,
    is_scattered,
};
use sparsedom::projections::{
    audit_closure, r_closure, short_paths_closure, ClosureOutcome, ShortPathsOutcome,
};
use sparsedom::winwin::{annotated_win_win, build_annotation_gadget, win_win, RatioBudget, WinWinTag};

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {n} {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn consts() -> AdaptiveConstants {
    AdaptiveConstants::default()
}

/// The shared instance sweep: paths, cycles, grids, subdivided cliques,
/// and seeded bounded-degree randoms, all with n <= 40.
fn sweep() -> Vec<(String, Graph)> {
    let mut v: Vec<(String, Graph)> = Vec::new();
    for n in [5usize, 9, 14, 20] {
        v.push((format!("path{n}"), generators::path(n)));
    }
    for n in [6usize, 11, 17] {
        v.push((format!("cycle{n}"), generators::cycle(n)));
    }
    for (r, c) in [(2usize, 3usize), (3, 4), (4, 5), (5, 5)] {
        v.push((format!("grid{r}x{c}"), generators::grid(r, c)));
    }
    for (n, t) in [(4usize, 1usize), (4, 2), (5, 1), (5, 2)] {
        v.push((format!("subK{n}t{t}"), generators::subdivided_clique(n, t)));
    }
    for (n, seed) in [(15usize, 0u64), (25, 1), (40, 2)] {
        v.push((
            format!("rand{n}s{seed}"),
            generators::random_bounded_degree(n, 3, seed).unwrap(),
        ));
    }
    v
}

fn kernel_verdict(out: &KernelOutput, r: usize) -> bool {
    match out {
        KernelOutput::Infeasible { .. } => false,
        KernelOutput::Kernel { kind, graph, z, k_prime, .. } => {
            let targets = match kind {
                KernelKind::AnnotatedW => z.clone(),
                _ => VertexSet::full(graph.n()),
            };
            ds_decision(graph, &targets, r, *k_prime)
        }
    }
}

#[test]
fn criterion_1_kernel_equivalence() {
    let mut failures = Vec::new();
    for (name, g) in &sweep() {
        for r in 1..=3usize {
            let opt = exact_ds(g, r).unwrap().optimum;
            for k in 0..=opt + 1 {
                let truth = opt <= k;
                let modes: &[&str] = if r == 1 { &["r1", "annotated", "plain"] } else { &["annotated", "plain"] };
                for mode in modes {
                    let out = match *mode {
                        "r1" => kernelize_r1(g, k, &consts()),
                        "annotated" => kernelize_annotated(g, r, k, &consts()),
                        _ => kernelize_plain(g, r, k, &consts()),
                    };
                    if kernel_verdict(&out, r) != truth {
                        failures.push(format!("{name} r={r} k={k} mode={mode}"));
                    }
                }
            }
        }
    }
    report(1, "kernel-equivalence", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_2_core_soundness() {
    let mut failures = Vec::new();
    for (name, g) in &sweep() {
        if g.n() > 22 {
            continue;
        }
        for r in 1..=2usize {
            let opt = exact_ds(g, r).unwrap().optimum;
            for k in [opt.saturating_sub(1), opt] {
                let res = reduce_core(g, r, k, &consts());
                let mut z = VertexSet::full(g.n());
                for batch in &res.removal_batches {
                    for &v in batch {
                        z.remove(v);
                    }
                    let core_ok = is_domination_core(g, &z, r).unwrap();
                    let ds_ok = exact_annotated_ds(g, &z, r).unwrap().optimum == opt;
                    if !core_ok || !ds_ok {
                        failures.push(format!("{name} r={r} k={k} batch {:?}", batch));
                    }
                }
            }
        }
    }
    report(2, "core-soundness", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_3_closure_audit() {
    let mut failures = Vec::new();
    for case in 0..500usize {
        let n = 8 + case % 20;
        let d = 2 + case % 3;
        let g = generators::random_bounded_degree(n, d, case as u64).unwrap();
        let r = 1 + case % 3;
        let xi = 2 + case % 7;
        let x = VertexSet::from_iter(
            n,
            (0..n).filter(|v| (v * 7 + case) % 5 == 0).chain([case % n]),
        );
        match r_closure(&g, &x, r, xi) {
            ClosureOutcome::Closure(c) => {
                let audit = audit_closure(&g, &x, &c.cl, r, xi);
                if !audit.passed() {
                    failures.push(format!("case {case}: {audit:?}"));
                }
            }
            ClosureOutcome::Density(w) => {
                // the witness must actually certify the edge-count trigger
                if w.y_edges < w.rounds_used * xi || w.certified_density() < w.threshold() {
                    failures.push(format!("case {case}: weak witness {w:?}"));
                }
            }
        }
    }
    report(3, "closure-audit", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_4_short_paths_distances() {
    let mut instances = sweep();
    instances.push(("rand60".into(), generators::random_bounded_degree(60, 3, 9).unwrap()));
    let mut failures = Vec::new();
    for (idx, (name, g)) in instances.iter().enumerate() {
        let n = g.n();
        let x = VertexSet::from_iter(n, (0..n).filter(|v| (v * 3 + idx) % 4 == 0));
        if x.is_empty() {
            continue;
        }
        for r in 1..=3usize {
            let w = match short_paths_closure(g, &x, r, 4) {
                ShortPathsOutcome::Extended(w) => w,
                ShortPathsOutcome::Density(_) => continue,
            };
            let (h, map) = g.induced_subgraph(&w);
            for u in x.iter() {
                for v in x.iter() {
                    if v <= u {
                        continue;
                    }
                    if let Some(d) = g.dist(u, v, r) {
                        let hd = h.dist(map.to_new(u).unwrap(), map.to_new(v).unwrap(), r);
                        if hd != Some(d) {
                            failures.push(format!("{name} r={r} pair ({u},{v})"));
                        }
                    }
                }
            }
        }
    }
    report(4, "short-paths-distances", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_5_win_win_certificates() {
    let mut failures = Vec::new();
    for (name, g) in &sweep() {
        for r in 1..=3usize {
            let opt = exact_ds(g, r).unwrap().optimum;
            for k in [0, opt.saturating_sub(1), opt] {
                let full = VertexSet::full(g.n());
                let plain = win_win(g, r, k, RatioBudget::Auto { scale: 1.0 });
                let mut outputs = vec![("plain", full.clone(), plain)];
                let z = VertexSet::from_iter(g.n(), (0..g.n()).step_by(2));
                if !z.is_empty() {
                    let ann = annotated_win_win(g, &z, r, k, RatioBudget::Auto { scale: 1.0 })
                        .unwrap();
                    outputs.push(("annotated", z, ann));
                }
                for (mode, targets, res) in outputs {
                    match res.tag {
                        WinWinTag::Dominator | WinWinTag::RatioExceeded => {
                            if !is_dominator(g, &res.dominator, &targets, r) {
                                failures.push(format!("{name} {mode} r={r} k={k}: bad dominator"));
                            }
                        }
                        WinWinTag::Scattered => {
                            let ok = is_scattered(g, &res.scattered, 2 * r)
                                && res.scattered.len() > k
                                && res.scattered.is_subset_of(&targets)
                                && exact_annotated_ds(g, &targets, r).unwrap().optimum > k;
                            if !ok {
                                failures.push(format!("{name} {mode} r={r} k={k}: bad scattered"));
                            }
                        }
                    }
                }
            }
        }
    }
    report(5, "win-win-certificates", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_6_gadget_identity() {
    let instances = vec![
        ("path6", generators::path(6)),
        ("cycle6", generators::cycle(6)),
        ("grid2x3", generators::grid(2, 3)),
        ("path10", generators::path(10)),
    ];
    let mut failures = Vec::new();
    for (name, g) in &instances {
        let n = g.n();
        for mask in 0u32..(1 << n) {
            let z = VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1));
            for r in 1..=2usize {
                let annotated = exact_annotated_ds(g, &z, r).unwrap().optimum;
                let (g2, _) = build_annotation_gadget(g, &z, r).unwrap();
                let plain = exact_ds(&g2, r).unwrap().optimum;
                if plain != annotated + 1 {
                    failures.push(format!("{name} r={r} mask={mask:#x}: {plain} != {annotated}+1"));
                }
            }
        }
    }
    report(6, "gadget-identity", failures.is_empty(), &failures.join(", "));
}

/// Decodes a Prüfer sequence into a labeled tree on n vertices.
fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut g = Graph::new(n);
    if n == 1 {
        return g;
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut seq = seq.to_vec();
    seq.push(usize::MAX); // sentinel; replaced by the final join below
    let mut used = vec![false; n];
    for i in 0..seq.len() - 1 {
        let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        used[leaf] = true;
        g.add_edge(leaf, seq[i]);
        degree[seq[i]] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

fn all_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::new(1)];
    }
    if n == 2 {
        return vec![prufer_tree(2, &[])];
    }
    let len = n - 2;
    let mut out = Vec::new();
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        out.push(prufer_tree(n, &seq));
    }
    out
}

/// Advances a sorted index combination over [0, s); returns false when
/// the last combination has been visited.
fn next_combination(idx: &mut [usize], s: usize) -> bool {
    let f = idx.len();
    let mut i = f;
    while i > 0 {
        i -= 1;
        if idx[i] < s - (f - i) {
            idx[i] += 1;
            for j in i + 1..f {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[test]
fn criterion_7_reduction_equivalences() {
    let mut failures = Vec::new();

    // Graph Motif -> Connected Dominating Set on every labeled tree with
    // up to 7 vertices, one deterministic surjective coloring per (tree, k)
    for n in 1..=7usize {
        for (t_idx, tree) in all_trees(n).into_iter().enumerate() {
            for k in 1..=3.min(n) {
                let color: Vec<usize> =
                    (0..n).map(|v| if v < k { v } else { (v * 31 + t_idx) % k }).collect();
                let inst = generators::MotifInstance::new(tree.clone(), k, color).unwrap();
                let motif_yes = generators::solve_motif_brute(&inst);
                let (cds_graph, budget) = generators::motif_to_cds(&inst);
                let cds_yes = cds_decision(&cds_graph, budget).unwrap();
                if motif_yes != cds_yes {
                    failures.push(format!("motif n={n} tree#{t_idx} k={k}"));
                }
            }
        }
    }

    // Set Cover -> distance-3r0 domination over all distinct nonempty
    // family combinations for small universes, plus seeded u=4 instances
    let mut sc_cases: Vec<generators::SetCoverInstance> = Vec::new();
    for u in 1..=3usize {
        let subsets: Vec<Vec<usize>> = (1u32..1 << u)
            .map(|m| (0..u).filter(|e| m >> e & 1 == 1).collect())
            .collect();
        let s = subsets.len();
        for f in 1..=3.min(s) {
            // all f-combinations of distinct subsets
            let mut idx: Vec<usize> = (0..f).collect();
            loop {
                let fams: Vec<Vec<usize>> = idx.iter().map(|&i| subsets[i].clone()).collect();
                for k in 1..=2.min(f) {
                    sc_cases.push(generators::SetCoverInstance {
                        universe: u,
                        families: fams.clone(),
                        k,
                    });
                }
                if !next_combination(&mut idx, s) {
                    break;
                }
            }
        }
    }
    for seed in 0..4u64 {
        let mut inst = generators::random_set_cover(4, 4, 2, seed);
        inst.k = 1 + (seed as usize % 2);
        sc_cases.push(inst);
    }
    for (idx, inst) in sc_cases.iter().enumerate() {
        for r0 in 1..=2usize {
            let truth = inst.solve_brute();
            let (g, r, budget) = generators::setcover_to_rds(inst, r0).unwrap();
            let rds_yes = ds_decision(&g, &VertexSet::full(g.n()), r, budget);
            if truth != rds_yes {
                failures.push(format!("setcover case {idx} r0={r0}"));
            }
        }
    }

    report(7, "reduction-equivalences", failures.is_empty(), &failures.join(", "));
}

#[test]
fn criterion_8_linear_size_trend() {
    let mut ratios = Vec::new();
    for m in (6..=20usize).step_by(2) {
        let g = generators::grid(m, m);
        let k = win_win(&g, 1, g.n(), RatioBudget::Auto { scale: 1.0 }).dominator.len();
        let out = kernelize_annotated(&g, 1, k, &consts());
        let y = match &out {
            KernelOutput::Kernel { trace, .. } => trace.y_size,
            KernelOutput::Infeasible { .. } => unreachable!("k is a valid dominator size"),
        };
        ratios.push(y as f64 / k as f64);
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let pass = max / min <= 3.0;
    report(8, "linear-size-trend", pass, &format!("ratios {ratios:?} max/min {:.2}", max / min));
}

#[test]
fn criterion_9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.txt");
    std::fs::write(&graph_path, generators::grid(3, 4).to_edge_list()).unwrap();
    let gp = graph_path.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "--family", "randdeg", "--params", "30,3", "--seed", "7"],
        vec!["gen", "--family", "sc2rds", "--params", "4,3,2,1", "--seed", "3"],
        vec!["solve", "--graph", gp, "--r", "1"],
        vec!["approx", "--graph", gp, "--r", "2", "--k", "2"],
        vec!["core", "--graph", gp, "--r", "1", "--k", "4"],
        vec!["kernelize", "--graph", gp, "--r", "1", "--k", "4", "--mode", "plain"],
        vec!["bench", "--family", "grid", "--sizes", "4,5", "--r", "1"],
        vec!["sparsity-report", "--graph", gp, "--m", "1,2"],
    ];
    let mut failures = Vec::new();
    for args in &commands {
        let run = || {
            std::process::Command::new(env!("CARGO_BIN_EXE_sparsedom"))
                .args(args)
                .env("KERNEL_SEED", "0")
                .output()
                .expect("binary runs")
        };
        let a = run();
        let b = run();
        if a.stdout != b.stdout || a.stdout.is_empty() {
            failures.push(args.join(" "));
        }
    }
    report(9, "cli-determinism", failures.is_empty(), &failures.join(", "));
}
