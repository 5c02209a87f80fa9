//! Acceptance suite: one line per criterion with its time limit.
//!
//! Run with `cargo test -p czf-core --test acceptance`; the lines are written
//! straight to stdout so they show without `--nocapture`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use czf_core::construct::{
    contraction_probe, cover_to_strategy, monotone_chain, perturb_delta, spectrum_witness, subdivision_value,
    vc_to_czf_reduction, verify_chain, ChainKind,
};
use czf_core::deduction::{check_order_invariance, check_terminal_success, is_successful, Layout};
use czf_core::family::{
    cactus_czf, cactus_solve, clique_construction_value, clique_solve, dismantlable_value, dismantle_solve,
    pendent_dismantle, tree_solve, unicyclic_solve, CactusInstance,
};
use czf_core::gen::{
    random_cactus, random_clique_construction, random_connected, random_dismantlable, random_subset, random_tree,
    random_unicyclic,
};
use czf_core::graph::{generate, induced_subgraph, subdivide_all, EdgeEdit, FamilySpec};
use czf_core::oracle::{alpha_exact, cfms_exact, cfms_preoccupied_exact, czf_exact, d_exact, mu_exact};
use czf_core::report::{ParameterResult, Witness};
use czf_core::search::{cfms_run, cfms_run_preoccupied};
use czf_core::{parse_edge_list, Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const FIG1: &str = "7 11\n0 1\n1 2\n3 4\n4 5\n0 3\n1 4\n2 5\n1 3\n5 6\n1 6\n0 2";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn czf(g: &Graph) -> usize {
    czf_exact(g).expect("within oracle limit").value
}

fn replay(r: &ParameterResult, g: &Graph) -> Result<(), String> {
    r.replay(g).map_err(|e| format!("{}\n{}", e.0, g.to_edge_list()))
}

/// Colour refinement followed by a search over orderings within colour
/// classes; equal keys mean isomorphic graphs.
fn canonical_key(g: &Graph) -> (Vec<usize>, u64) {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let ranks: BTreeSet<&(usize, Vec<usize>)> = sig.iter().collect();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> = ranks.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = sig.iter().map(|s| rank[s]).collect();
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        let done = classes(&next) == classes(&colour);
        colour = next;
        if done {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colour[v]);
    let mut sorted_colours: Vec<usize> = order.iter().map(|&v| colour[v]).collect();
    sorted_colours.push(usize::MAX);
    let mut best = u64::MAX;
    fn search(g: &Graph, colours: &[usize], order: &mut Vec<usize>, pos: usize, best: &mut u64) {
        let n = g.n();
        if pos == n {
            let mut key = 0u64;
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if g.has_edge(order[i], order[j]) {
                        key |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            *best = (*best).min(key);
            return;
        }
        let mut end = pos;
        while colours[end] == colours[pos] {
            end += 1;
        }
        for i in pos..end {
            order.swap(pos, i);
            search(g, colours, order, pos + 1, best);
            order.swap(pos, i);
        }
    }
    search(g, &sorted_colours, &mut order, 0, &mut best);
    sorted_colours.pop();
    (sorted_colours, best)
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// grown from the classes on `n - 1` vertices by adding a vertex with every
/// possible neighbourhood.
fn graph_classes(max_n: usize) -> Vec<Vec<Graph>> {
    let mut out = vec![vec![Graph::empty(0)]];
    for n in 1..=max_n {
        let mut seen = BTreeMap::new();
        for g in &out[n - 1] {
            for s in 0u32..1 << (n - 1) {
                let edges = g
                    .edges()
                    .iter()
                    .map(|e| (e.0, e.1))
                    .chain((0..n - 1).filter(|&v| s >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::new(n, edges).unwrap();
                seen.entry(canonical_key(&h)).or_insert(h);
            }
        }
        out.push(seen.into_values().collect());
    }
    out
}

fn labeled_connected(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap())
        .filter(|g| g.is_connected() && g.m() > 0)
        .collect()
}

/// The criterion-2 corpus: every connected labelled graph on 5 vertices and
/// 240 random connected graphs on 6 or 7 vertices.
fn equivalence_corpus() -> Vec<Graph> {
    let mut corpus = labeled_connected(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..240 {
        let n = rng.gen_range(6..=7);
        let p = rng.gen_range(0.1..0.7);
        corpus.push(random_connected(n, p, &mut rng));
    }
    corpus
}

fn c1_worked_example() -> Outcome {
    let g = parse_edge_list(FIG1).map_err(|e| e.to_string())?;
    let (z, c, d) = (czf_exact(&g).unwrap(), cfms_exact(&g).unwrap(), d_exact(&g).unwrap());
    let mu = mu_exact(&g).unwrap();
    ensure(z.value == 4 && c.value == 4 && d.value == 4, || {
        format!("czf {} cfms {} d {}", z.value, c.value, d.value)
    })?;
    ensure(mu.value == 3, || format!("mu {}", mu.value))?;
    for r in [&z, &c, &d, &mu] {
        replay(r, &g)?;
    }
    let Witness::Uniqueness(w) = &mu.witness else {
        return Err("mu witness is not a uniqueness witness".into());
    };
    w.validate(&g)?;
    Ok("czf = cfms = d = 4, mu = 3, all witnesses replay".into())
}

fn c2_equivalence(corpus: &[Graph]) -> Outcome {
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let vals = [
                czf(g),
                cfms_exact(g).unwrap().value,
                d_exact(g).unwrap().value,
                g.n() - mu_exact(g).unwrap().value,
            ];
            (vals.iter().any(|&v| v != vals[0])).then(|| format!("{vals:?}\n{}", g.to_edge_list()))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{} graphs, czf = cfms = d = n - mu on all", corpus.len()))
}

fn c3_closed_forms() -> Outcome {
    let mut checked = 0;
    for n in 1..=10usize {
        let half = n.div_ceil(2);
        let mut cases = vec![(FamilySpec::Path(n), half)];
        if n >= 2 {
            cases.push((FamilySpec::Complete(n), n - 1));
            cases.push((FamilySpec::Star(n), n - 1));
        }
        if n >= 3 {
            cases.push((FamilySpec::Cycle(n), half));
        }
        // W_4 is K_4, so the wheel formula starts at 5
        if n >= 5 {
            cases.push((FamilySpec::Wheel(n), half));
        }
        for (spec, want) in cases {
            let got = czf(&generate(spec).unwrap());
            ensure(got == want, || format!("{spec:?}: got {got}, expected {want}"))?;
            checked += 1;
        }
    }
    let w4 = czf(&generate(FamilySpec::Wheel(4)).unwrap());
    ensure(w4 == 3, || format!("W_4 = K_4 gave {w4}"))?;
    Ok(format!("{checked} family members match their formulas; W_4 = K_4 has czf 3"))
}

fn c4_order_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut successful = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..=8);
        let g = random_connected(n, rng.gen_range(0.1..0.8), &mut rng);
        let mut counts: Vec<u32> = (0..n).map(|_| u32::from(rng.gen_bool(0.55))).collect();
        if rng.gen_bool(0.1) {
            counts[rng.gen_range(0..n)] += 1;
        }
        let l = Layout::from_counts(counts);
        let seed = rng.gen::<u64>();
        ensure(check_order_invariance(&g, &l, 8, seed), || {
            format!("trial {trial}: protected sets differ\n{}", g.to_edge_list())
        })?;
        if is_successful(&g, &l) {
            successful += 1;
            let t = check_terminal_success(&g, &l).map_err(|e| e.to_string())?;
            ensure(t.holds(), || format!("trial {trial}: terminal layout check failed\n{}", g.to_edge_list()))?;
        }
    }
    Ok(format!("1000 triples invariant, {successful} successful layouts with valid terminal layouts"))
}

fn c5_bounds(corpus: &[Graph]) -> Outcome {
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let n = g.n();
            let z = czf(g);
            if z < n.div_ceil(2) || z > n - 1 {
                return Some(format!("czf {z} outside bounds\n{}", g.to_edge_list()));
            }
            let a = alpha_exact(g).unwrap().value;
            if z < a {
                return Some(format!("czf {z} < alpha {a}\n{}", g.to_edge_list()));
            }
            for keep in 1u32..(1 << n) - 1 {
                let mask: Vec<bool> = (0..n).map(|v| keep >> v & 1 == 1).collect();
                let h = induced_subgraph(g, &mask).graph;
                if czf(&h) > z {
                    return Some(format!("induced subgraph {keep:b} exceeds {z}\n{}", g.to_edge_list()));
                }
            }
            None
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} violations, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{} graphs: bounds, independence and induced subgraphs hold", corpus.len()))
}

fn c6_perturbation(classes: &[Vec<Graph>]) -> Outcome {
    let graphs: Vec<&Graph> = classes[..=6].iter().flatten().collect();
    let results: Vec<Result<usize, String>> = graphs
        .par_iter()
        .map(|g| {
            let mut edits = 0;
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    let mode = if g.has_edge(a, b) { EdgeEdit::Remove } else { EdgeEdit::Add };
                    let d = perturb_delta(g, Edge(a, b), mode).map_err(|e| format!("{e}\n{}", g.to_edge_list()))?;
                    if !(-1..=1).contains(&d) {
                        return Err(format!("delta {d}\n{}", g.to_edge_list()));
                    }
                    edits += 1;
                }
            }
            Ok(edits)
        })
        .collect();
    let mut edits = 0;
    for r in results {
        edits += r?;
    }
    Ok(format!("{} graphs up to isomorphism, {edits} edits, all deltas in {{-1, 0, 1}}", graphs.len()))
}

fn c7_spectrum() -> Outcome {
    let cases: Vec<(usize, usize)> = (6..=10usize).flat_map(|n| (n.div_ceil(2)..n).map(move |d| (n, d))).collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, d)| match spectrum_witness(n, d) {
            Ok(g) if g.n() == n && czf(&g) == d => None,
            Ok(g) => Some(format!("({n}, {d}) gave czf {}", czf(&g))),
            Err(e) => Some(format!("({n}, {d}): {e}")),
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} (n, d) pairs certified", cases.len()))
}

fn c8_chains() -> Outcome {
    let mut parts = Vec::new();
    for (kind, m, steps) in [
        (ChainKind::Decrease, 8, 3),
        (ChainKind::Decrease, 10, 4),
        (ChainKind::Increase, 2, 2),
        (ChainKind::Increase, 3, 3),
        (ChainKind::Neutral, 4, 12),
    ] {
        let chain = monotone_chain(kind, m).map_err(|e| e.to_string())?;
        ensure(chain.edges.len() == steps, || format!("{kind:?} m={m}: {} steps", chain.edges.len()))?;
        let values = verify_chain(&chain).map_err(|e| format!("{kind:?} m={m}: {e}"))?;
        parts.push(format!("{kind:?}({m}) {values:?}"));
    }
    Ok(parts.join(", "))
}

fn c9_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut count = [0usize; 5];
    for _ in 0..110 {
        let t = random_tree(rng.gen_range(2..=12), &mut rng);
        let r = tree_solve(&t).map_err(|e| e.to_string())?;
        let z = czf(&t);
        ensure(r.value == z, || format!("tree {} vs {z}\n{}", r.value, t.to_edge_list()))?;
        replay(&r, &t)?;
        let a = alpha_exact(&t).unwrap().value;
        ensure(a == z, || format!("tree alpha {a} vs czf {z}\n{}", t.to_edge_list()))?;
        count[0] += 1;

        let u = random_unicyclic(rng.gen_range(3..=12), &mut rng);
        let r = unicyclic_solve(&u).map_err(|e| e.to_string())?;
        ensure(r.value == czf(&u), || format!("unicyclic {}\n{}", r.value, u.to_edge_list()))?;
        replay(&r, &u)?;
        count[1] += 1;

        let g = random_dismantlable(rng.gen_range(1..=5), rng.gen_range(0..=2), 0.4, &mut rng);
        let o = pendent_dismantle(&g).ok_or("generated graph did not dismantle")?;
        let v = dismantlable_value(&g, &o).map_err(|e| e.to_string())?;
        ensure(v == czf(&g), || format!("dismantlable {v}\n{}", g.to_edge_list()))?;
        replay(&dismantle_solve(&g).map_err(|e| e.to_string())?, &g)?;
        count[2] += 1;

        let (g, c) = random_clique_construction(12, &mut rng);
        let v = clique_construction_value(&g, &c).map_err(|e| e.to_string())?;
        ensure(v == czf(&g), || format!("clique construction {v}\n{}", g.to_edge_list()))?;
        replay(&clique_solve(&g).map_err(|e| e.to_string())?, &g)?;
        count[3] += 1;

        let g = random_cactus(rng.gen_range(1..=12), &mut rng);
        let r = cactus_czf(&g).map_err(|e| e.to_string())?;
        ensure(r.value == czf(&g), || format!("cactus {}\n{}", r.value, g.to_edge_list()))?;
        replay(&r, &g)?;
        count[4] += 1;
    }
    Ok(format!(
        "tree {} (czf = alpha on all), unicyclic {}, dismantlable {}, clique {}, cactus {}",
        count[0], count[1], count[2], count[3], count[4]
    ))
}

fn c10_subdivision(classes: &[Vec<Graph>]) -> Outcome {
    let graphs: Vec<&Graph> = classes
        .iter()
        .flatten()
        .filter(|g| g.n() >= 1 && g.is_connected() && g.n() + g.m() <= 14)
        .collect();
    let results: Vec<Result<(bool, bool), String>> = graphs
        .par_iter()
        .map(|g| {
            let r = subdivision_value(g).map_err(|e| format!("{e}\n{}", g.to_edge_list()))?;
            let sub = subdivide_all(g);
            let z = czf(&sub);
            if r.value != z {
                return Err(format!("formula {} vs oracle {z}\n{}", r.value, g.to_edge_list()));
            }
            replay(&r, &sub)?;
            let is_tree = g.m() + 1 == g.n();
            Ok((is_tree, (0..g.n()).all(|v| g.degree(v) == 2)))
        })
        .collect();
    let (mut trees, mut cycles) = (0, 0);
    for r in results {
        let (t, c) = r?;
        trees += usize::from(t);
        cycles += usize::from(c);
    }
    ensure(trees > 0 && cycles > 0, || "corpus lacks trees or cycles".into())?;
    Ok(format!(
        "{} connected graphs up to isomorphism ({trees} trees, {cycles} cycles)",
        graphs.len()
    ))
}

fn c11_reduction() -> Outcome {
    let k4 = generate(FamilySpec::Complete(4)).unwrap();
    let k33 = Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    let prism = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
    let cube = Graph::new(
        8,
        (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(a, b)| a < b),
    )
    .unwrap();
    let mut parts = Vec::new();
    for (name, g, cover) in [
        ("K4", &k4, vec![0, 1, 2]),
        ("K3,3", &k33, vec![0, 1, 2]),
        ("prism", &prism, vec![0, 1, 3, 5]),
        ("Q3", &cube, vec![0, 3, 5, 6]),
    ] {
        let l = cover.len();
        let inst = vc_to_czf_reduction(g, l).map_err(|e| e.to_string())?;
        inst.check_invariants().map_err(|e| format!("{name}: {e}"))?;
        ensure(inst.h.n() == 2 * g.n() + 8 * g.m(), || format!("{name}: vertex count"))?;
        ensure(inst.h.max_degree() <= 19, || format!("{name}: degree {}", inst.h.max_degree()))?;
        ensure(inst.k == 4 * g.m() + g.n() + l, || format!("{name}: budget"))?;
        let s = cover_to_strategy(&inst, &cover).map_err(|e| e.to_string())?;
        ensure(s.searchers() == inst.k, || format!("{name}: {} searchers", s.searchers()))?;
        let out = cfms_run(&inst.h, &s).map_err(|e| format!("{name}: {e}"))?;
        ensure(out.success, || format!("{name}: strategy does not clear"))?;
        parts.push(format!("{name} |V(H)|={} k={}", inst.h.n(), inst.k));
    }
    Ok(parts.join(", "))
}

fn c12_preoccupied_cactus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut with_pre = 0;
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let g = random_cactus(n, &mut rng);
        let pre = random_subset(n, rng.gen_range(0.1..0.5), &mut rng);
        with_pre += usize::from(!pre.is_empty());
        let inst = CactusInstance::new(g.clone(), pre.clone()).map_err(|e| e.to_string())?;
        let plan = cactus_solve(&inst).map_err(|e| format!("{e}\n{}", inst.to_text()))?;
        let (want, _) = cfms_preoccupied_exact(&g, &pre).unwrap();
        ensure(plan.additional_searchers == want, || {
            format!("{} vs oracle {want}\n{}", plan.additional_searchers, inst.to_text())
        })?;
        let out = cfms_run_preoccupied(&g, &pre, &plan.strategy).map_err(|e| e.to_string())?;
        ensure(out.success, || format!("strategy does not clear\n{}", inst.to_text()))?;
    }
    Ok(format!("150 cacti ({with_pre} with pre-occupied searchers) match the oracle"))
}

fn c13_contraction(classes: &[Vec<Graph>]) -> Outcome {
    let graphs: Vec<&Graph> = classes[..=7].iter().flatten().collect();
    let results: Vec<Result<(usize, Vec<String>), String>> = graphs
        .par_iter()
        .map(|g| {
            let mut findings = Vec::new();
            for &e in g.edges() {
                let p = contraction_probe(g, e).map_err(|err| format!("{err}\n{}", g.to_edge_list()))?;
                if p.increased() {
                    findings.push(format!("{} -> {} contracting {e} in {:?}", p.before, p.after, g.edges()));
                }
            }
            Ok((g.m(), findings))
        })
        .collect();
    let mut probes = 0;
    let mut findings = Vec::new();
    for r in results {
        let (m, f) = r?;
        probes += m;
        findings.extend(f);
    }
    let mut out = std::io::stdout().lock();
    for f in findings.iter().take(5) {
        let _ = writeln!(out, "    finding: {f}");
    }
    Ok(format!(
        "{} graphs, {probes} contractions, after <= before + 1 on all; {} increased",
        graphs.len(),
        findings.len()
    ))
}

type Criterion<'a> = (&'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

#[test]
fn acceptance_criteria() {
    let corpus = equivalence_corpus();
    let classes = graph_classes(7);
    let criteria: Vec<Criterion> = vec![
        ("C1 worked example", 1, Box::new(c1_worked_example)),
        ("C2 equivalence", 300, Box::new(|| c2_equivalence(&corpus))),
        ("C3 closed-form families", 60, Box::new(c3_closed_forms)),
        ("C4 order invariance and terminal success", 120, Box::new(c4_order_invariance)),
        ("C5 bounds", 300, Box::new(|| c5_bounds(&corpus))),
        ("C6 edge perturbation", 300, Box::new(|| c6_perturbation(&classes))),
        ("C7 spectrum", 300, Box::new(c7_spectrum)),
        ("C8 monotone chains", 300, Box::new(c8_chains)),
        ("C9 family solvers", 600, Box::new(c9_families)),
        ("C10 subdivision", 600, Box::new(|| c10_subdivision(&classes))),
        ("C11 reduction", 60, Box::new(c11_reduction)),
        ("C12 pre-occupied cactus", 600, Box::new(c12_preoccupied_cactus)),
        ("C13 contraction probe", 600, Box::new(|| c13_contraction(&classes))),
    ];
    let mut failures = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&result, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        let line = format!("[{status}] {name} ({:.2}s, limit {limit}s): {detail}", elapsed.as_secs_f64());
        let _ = writeln!(std::io::stdout().lock(), "{line}");
        if status == "FAIL" {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}

#[test]
fn graph_class_counts() {
    let counts: Vec<usize> = graph_classes(7).iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
}
