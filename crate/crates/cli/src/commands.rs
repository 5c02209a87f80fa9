use std::time::Instant;

use czf_core::construct::{
    build_reduction, contraction_probe, cover_to_strategy, monotone_chain, perturb_delta, spectrum_witness,
    vc_to_czf_reduction, verify_chain, ChainKind,
};
use czf_core::deduction::{run_deduction, DeductionState, FiringPolicy, FiringSequence};
use czf_core::family::{
    cactus_czf, cactus_solve, clique_solve, dismantle_solve, pendent_dismantle, tree_solve, unicyclic_solve,
    CactusInstance, FamilyError,
};
use czf_core::gen::{
    random_cactus, random_clique_construction, random_connected, random_dismantlable, random_tree, random_unicyclic,
};
use czf_core::graph::{classify, generate as generate_family, EdgeEdit, FamilySpec};
use czf_core::oracle::{
    alpha_exact, cfms_exact_with, cfms_preoccupied_exact, czf_exact_with, d_exact_with, mu_exact,
};
use czf_core::report::{Method, Parameter, ParameterResult, Witness};
use czf_core::search::{cfms_run_preoccupied, czf_run, czf_run_random, Strategy};
use czf_core::{Edge, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::input::{parse_csv, parse_layout, parse_strategy, read_graph};
use crate::{
    ChainArg, GenerateArgs, MethodArg, Model, ParameterArg, PolicyArg, ProbeArgs, ProbeKind, ReduceArgs, SimulateArgs,
    SolveArgs, VerifyArgs,
};

const ORACLE_CEILING: usize = 24;

pub struct Options {
    pub trace: bool,
    pub parallel: bool,
    pub force: bool,
}

#[derive(Serialize)]
struct RunReport {
    parameter: &'static str,
    value: usize,
    method: &'static str,
    witness: Witness,
    ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    preoccupied: Option<Vec<usize>>,
}

fn emit(value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn list(vs: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = vs.into_iter().map(|v| v.to_string()).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(",")
    }
}

fn oracle_guard(g: &Graph, opts: &Options) -> Result<(), CliError> {
    if g.n() > ORACLE_CEILING && !opts.force {
        return Err(CliError::Usage(format!(
            "exact oracle refuses {} vertices (limit {ORACLE_CEILING}) without --force",
            g.n()
        )));
    }
    Ok(())
}

fn exact(g: &Graph, p: ParameterArg, opts: &Options) -> Result<ParameterResult, CliError> {
    oracle_guard(g, opts)?;
    Ok(match p {
        ParameterArg::Czf => czf_exact_with(g, opts.parallel)?,
        ParameterArg::Cfms => cfms_exact_with(g, opts.parallel)?,
        ParameterArg::D => d_exact_with(g, opts.parallel)?,
        ParameterArg::Mu => mu_exact(g)?,
        ParameterArg::Alpha => alpha_exact(g)?,
    })
}

fn family(g: &Graph, m: MethodArg) -> Result<ParameterResult, FamilyError> {
    match m {
        MethodArg::Tree => tree_solve(g),
        MethodArg::Unicyclic => unicyclic_solve(g),
        MethodArg::Cactus => cactus_czf(g),
        MethodArg::Dismantle => dismantle_solve(g),
        MethodArg::Clique => clique_solve(g),
        MethodArg::Auto | MethodArg::Exact => unreachable!("not a family method"),
    }
}

/// Tree, then unicyclic, then cactus, then pendent-edge dismantlable, then
/// the exact oracle.
fn auto_method(g: &Graph) -> MethodArg {
    let s = classify(g);
    if s.is_tree {
        MethodArg::Tree
    } else if s.is_unicyclic {
        MethodArg::Unicyclic
    } else if s.is_cactus_forest {
        MethodArg::Cactus
    } else if pendent_dismantle(g).is_some() {
        MethodArg::Dismantle
    } else {
        MethodArg::Exact
    }
}

pub fn solve(a: &SolveArgs, opts: &Options) -> Result<(), CliError> {
    let input = read_graph(&a.input)?;
    let g = &input.graph;
    let start = Instant::now();
    if let Some(pre) = input.preoccupied {
        if !matches!(a.method, MethodArg::Auto | MethodArg::Cactus) {
            return Err(CliError::Usage("pre-occupied searchers are only supported by the cactus method".into()));
        }
        let inst = CactusInstance::new(g.clone(), pre.clone())?;
        let plan = cactus_solve(&inst)?;
        let out = cfms_run_preoccupied(g, &pre, &plan.strategy)
            .map_err(|e| CliError::Internal(format!("cactus strategy does not replay: {e}")))?;
        if !out.success || plan.strategy.searchers() != plan.additional_searchers {
            return Err(CliError::Internal("cactus strategy does not clear the graph".into()));
        }
        if opts.trace {
            for step in &plan.trace {
                eprintln!("{step}");
            }
            eprintln!("strategy: {}", plan.strategy);
        }
        return emit(&RunReport {
            parameter: Parameter::Cfms.name(),
            value: plan.additional_searchers,
            method: Method::Cactus.name(),
            witness: Witness::Strategy { strategy: plan.strategy },
            ms: start.elapsed().as_secs_f64() * 1000.0,
            preoccupied: Some(pre),
        });
    }
    let method = match a.method {
        MethodArg::Auto => auto_method(g),
        m => m,
    };
    if method != MethodArg::Exact && a.parameter != ParameterArg::Czf {
        return Err(CliError::Usage(format!(
            "--parameter {:?} needs --method exact",
            a.parameter
        )));
    }
    let r = match method {
        MethodArg::Exact => exact(g, a.parameter, opts)?,
        m => family(g, m)?,
    };
    r.replay(g).map_err(|e| CliError::Internal(e.to_string()))?;
    if opts.trace {
        eprintln!("method: {}", r.method.name());
        eprintln!("witness: {}", serde_json::to_string(&r.witness).unwrap_or_default());
    }
    emit(&RunReport {
        parameter: r.parameter.name(),
        value: r.value,
        method: r.method.name(),
        witness: r.witness,
        ms: start.elapsed().as_secs_f64() * 1000.0,
        preoccupied: None,
    })
}

pub fn simulate(a: &SimulateArgs) -> Result<(), CliError> {
    let input = read_graph(&a.input)?;
    let g = &input.graph;
    let model = a.model.unwrap_or(if a.strategy.is_some() { Model::Cfms } else { Model::Czf });
    match model {
        Model::Czf => {
            let csv = a.layout.as_deref().ok_or_else(|| CliError::Usage("--layout is required".into()))?;
            let mut initial = parse_csv(g.n(), csv)?;
            initial.dedup();
            let out = match a.policy {
                PolicyArg::Random => czf_run_random(g, &initial, &mut ChaCha8Rng::seed_from_u64(a.seed)),
                _ => czf_run(g, &initial),
            };
            println!("initial: {}", list(initial.iter().copied()));
            let mut colored = vec![false; g.n()];
            for &v in &initial {
                colored[v] = true;
            }
            for (i, &(v, w)) in out.forces.iter().enumerate() {
                colored[w] = true;
                println!(
                    "step {}: {v} forces {w} | colored: {}",
                    i + 1,
                    list((0..g.n()).filter(|&x| colored[x]))
                );
            }
            if out.all_colored() {
                println!("colored: all");
            } else {
                println!(
                    "colored: {}; uncolored: {}",
                    list((0..g.n()).filter(|&x| out.colored[x])),
                    list((0..g.n()).filter(|&x| !out.colored[x]))
                );
            }
            println!("success: {}", out.all_colored());
        }
        Model::Deduction => {
            let csv = a.layout.as_deref().ok_or_else(|| CliError::Usage("--layout is required".into()))?;
            let l = parse_layout(g.n(), csv)?;
            let policy = match (&a.sequence, a.policy) {
                (Some(seq), _) => FiringPolicy::Explicit(
                    seq.parse::<FiringSequence>().map_err(|e| CliError::Input(format!("sequence: {e}")))?,
                ),
                (None, PolicyArg::All) => FiringPolicy::AllFireable,
                (None, PolicyArg::Single) => FiringPolicy::SingleFire,
                (None, PolicyArg::Random) => FiringPolicy::Random(a.seed),
            };
            let out = run_deduction(g, &l, &policy).map_err(|e| CliError::Input(e.to_string()))?;
            println!("layout: {l}");
            let mut state = DeductionState::new(g, &l).map_err(|e| CliError::Input(e.to_string()))?;
            for (i, stage) in out.sequence.stages.iter().enumerate() {
                state
                    .apply_stage(g, stage)
                    .map_err(|e| CliError::Internal(format!("recorded stage does not replay: {e}")))?;
                let fired = FiringSequence { stages: vec![stage.clone()] };
                println!(
                    "stage {}: {fired} | protected: {}",
                    i + 1,
                    list((0..g.n()).filter(|&x| state.protected()[x]))
                );
            }
            println!("terminal layout: {}", out.terminal);
            if out.all_protected() {
                println!("protected: all");
            } else {
                println!(
                    "unprotected: {}",
                    list((0..g.n()).filter(|&x| !out.protected[x]))
                );
            }
            println!("success: {}", out.all_protected());
        }
        Model::Cfms => {
            let text = a.strategy.as_deref().ok_or_else(|| CliError::Usage("--strategy is required".into()))?;
            let s = parse_strategy(text)?;
            let pre = match &a.preoccupied {
                Some(csv) => parse_csv(g.n(), csv)?,
                None => input.preoccupied.clone().unwrap_or_default(),
            };
            if !pre.is_empty() {
                println!("preoccupied: {}", list(pre.iter().copied()));
            }
            let mut last = None;
            for i in 1..=s.actions.len() {
                let prefix = Strategy::new(s.actions[..i].to_vec());
                let out = cfms_run_preoccupied(g, &pre, &prefix).map_err(|e| CliError::Input(e.to_string()))?;
                let cleared = out.cleared.iter().filter(|&&c| c).count();
                let visited = out.visited.iter().filter(|&&c| c).count();
                let shown = Strategy::new(vec![s.actions[i - 1]]);
                println!(
                    "action {i}: {shown} | cleared edges: {cleared}/{} | visited: {visited}/{}",
                    g.m(),
                    g.n()
                );
                last = Some(out);
            }
            let out = match last {
                Some(out) => out,
                None => cfms_run_preoccupied(g, &pre, &s).map_err(|e| CliError::Input(e.to_string()))?,
            };
            if out.cleared.iter().all(|&c| c) {
                println!("cleared: all");
            } else {
                let dirty: Vec<String> = g
                    .edges()
                    .iter()
                    .zip(&out.cleared)
                    .filter(|(_, &c)| !c)
                    .map(|(e, _)| e.to_string())
                    .collect();
                println!("contaminated: {}", dirty.join(" "));
            }
            println!("success: {}", out.success);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Check {
    solver: String,
    value: usize,
    replayed: bool,
}

pub fn verify(a: &VerifyArgs, opts: &Options) -> Result<(), CliError> {
    let input = read_graph(&a.input)?;
    let g = &input.graph;
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let mut certificates = Vec::new();
    let mut ok = true;

    if let Some(pre) = &input.preoccupied {
        let inst = CactusInstance::new(g.clone(), pre.clone())?;
        let plan = cactus_solve(&inst)?;
        let replayed = cfms_run_preoccupied(g, pre, &plan.strategy).is_ok_and(|o| o.success);
        checks.push(Check {
            solver: "cactus".into(),
            value: plan.additional_searchers,
            replayed,
        });
        if g.n() <= ORACLE_CEILING || opts.force {
            let (value, _) = cfms_preoccupied_exact(g, pre)?;
            checks.push(Check {
                solver: "exact".into(),
                value,
                replayed: true,
            });
        } else {
            skipped.push("exact".to_string());
        }
    } else {
        let exact_ok = g.n() <= ORACLE_CEILING || opts.force;
        if exact_ok {
            for (name, p) in [("czf", ParameterArg::Czf), ("cfms", ParameterArg::Cfms), ("d", ParameterArg::D)] {
                let r = exact(g, p, opts)?;
                checks.push(Check {
                    solver: format!("exact {name}"),
                    value: r.value,
                    replayed: r.replay(g).is_ok(),
                });
            }
            let mu = mu_exact(g)?;
            checks.push(Check {
                solver: "n - mu".into(),
                value: g.n() - mu.value,
                replayed: mu.replay(g).is_ok(),
            });
            let alpha = alpha_exact(g)?;
            if alpha.value > checks[0].value || alpha.replay(g).is_err() {
                ok = false;
                certificates.push(json!({"certificate": "independence lower bound", "valid": false}));
            }
        } else {
            skipped.push("exact".to_string());
        }
        for m in [
            MethodArg::Tree,
            MethodArg::Unicyclic,
            MethodArg::Cactus,
            MethodArg::Dismantle,
            MethodArg::Clique,
        ] {
            let name = format!("{m:?}").to_lowercase();
            match family(g, m) {
                Ok(r) => checks.push(Check {
                    solver: name,
                    replayed: r.replay(g).is_ok(),
                    value: r.value,
                }),
                Err(FamilyError::Internal(e)) => return Err(CliError::Internal(format!("{name}: {e}"))),
                Err(_) => skipped.push(name),
            }
        }
    }

    let pre = input.preoccupied.clone().unwrap_or_default();
    if let Some(csv) = &a.layout {
        let l = parse_layout(g.n(), csv)?;
        let valid = czf_core::deduction::is_successful(g, &l);
        ok &= valid;
        certificates.push(json!({"certificate": "layout", "size": l.total(), "valid": valid}));
    }
    if let Some(text) = &a.strategy {
        let s = parse_strategy(text)?;
        let valid = cfms_run_preoccupied(g, &pre, &s).is_ok_and(|o| o.success);
        ok &= valid;
        certificates.push(json!({"certificate": "strategy", "searchers": s.searchers(), "valid": valid}));
    }

    let agree = checks.windows(2).all(|w| w[0].value == w[1].value);
    let replayed = checks.iter().all(|c| c.replayed);
    ok &= agree && replayed;
    if opts.trace {
        for c in &checks {
            eprintln!("{}: {} (replayed: {})", c.solver, c.value, c.replayed);
        }
    }
    emit(&json!({
        "n": g.n(),
        "m": g.m(),
        "checks": checks,
        "not_applicable": skipped,
        "certificates": certificates,
        "agree": agree,
        "ok": ok,
    }))?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Internal("verification failed".into()))
    }
}

pub fn generate(a: &GenerateArgs) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let need = |cond: bool, msg: &str| if cond { Ok(()) } else { Err(CliError::Usage(msg.into())) };
    let g = match a.family.as_str() {
        "tree" => {
            need(a.n >= 1, "--n must be at least 1")?;
            random_tree(a.n, &mut rng)
        }
        "unicyclic" => {
            need(a.n >= 3, "--n must be at least 3")?;
            random_unicyclic(a.n, &mut rng)
        }
        "cactus" => {
            need(a.n >= 1, "--n must be at least 1")?;
            random_cactus(a.n, &mut rng)
        }
        "connected" => {
            need(a.n >= 1 && (0.0..=1.0).contains(&a.p), "--n must be positive and --p a probability")?;
            random_connected(a.n, a.p, &mut rng)
        }
        "dismantlable" => random_dismantlable(a.n, a.m.unwrap_or(0), a.p, &mut rng),
        "clique" => {
            need(a.n >= 2, "--n must be at least 2")?;
            random_clique_construction(a.n, &mut rng).0
        }
        "spectrum" => {
            let d = a.m.ok_or_else(|| CliError::Usage("spectrum needs the target value as --m".into()))?;
            need(a.n <= ORACLE_CEILING, "spectrum is limited to 24 vertices")?;
            spectrum_witness(a.n, d)?
        }
        name => {
            let size = match name {
                "star_plus_matching" | "star-plus-matching" | "k4_minus_star" | "k4-minus-star" => a.m.unwrap_or(a.n),
                _ => a.n,
            };
            let spec = FamilySpec::from_name(name, size).map_err(|e| CliError::Usage(e.to_string()))?;
            generate_family(spec).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    print!("{}", g.to_edge_list());
    Ok(())
}

pub fn reduce(a: &ReduceArgs, opts: &Options) -> Result<(), CliError> {
    let g = read_graph(&a.vc_instance)?.graph;
    let inst = if opts.force {
        build_reduction(&g, a.l)?
    } else {
        vc_to_czf_reduction(&g, a.l)?
    };
    inst.check_invariants().map_err(CliError::Internal)?;
    let mut report = json!({
        "vertices": inst.h.n(),
        "edges": inst.h.m(),
        "max_degree": inst.h.max_degree(),
        "k": inst.k,
        "l": inst.l,
    });
    if let Some(csv) = &a.cover {
        let cover = parse_csv(g.n(), csv)?;
        let s = cover_to_strategy(&inst, &cover)?;
        let out = czf_core::search::cfms_run(&inst.h, &s)
            .map_err(|e| CliError::Internal(format!("strategy does not replay: {e}")))?;
        if !out.success || s.searchers() != inst.k {
            return Err(CliError::Internal("cover strategy does not clear the reduced graph".into()));
        }
        report["searchers"] = json!(s.searchers());
        report["strategy"] = json!(s.to_string());
        report["strategy_clears"] = json!(true);
    }
    match &a.out {
        Some(path) => {
            let sidecar = path.with_extension("json");
            std::fs::write(path, inst.h.to_edge_list())
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let meta = serde_json::to_string_pretty(&inst.sidecar()).map_err(|e| CliError::Internal(e.to_string()))?;
            std::fs::write(&sidecar, meta).map_err(|e| CliError::Input(format!("{}: {e}", sidecar.display())))?;
            report["graph_file"] = json!(path.display().to_string());
            report["sidecar_file"] = json!(sidecar.display().to_string());
        }
        None => {
            report["graph"] = json!(inst.h.to_edge_list());
            report["sidecar"] = json!(inst.sidecar());
        }
    }
    emit(&report)
}

pub fn probe(a: &ProbeArgs, opts: &Options) -> Result<(), CliError> {
    let graph = || -> Result<Graph, CliError> {
        let path = a.input.as_ref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
        let g = read_graph(path)?.graph;
        oracle_guard(&g, opts)?;
        Ok(g)
    };
    match a.kind {
        ProbeKind::Perturb => {
            let g = graph()?;
            let mut results = Vec::new();
            let mut counts = [0usize; 3];
            for x in 0..g.n() {
                for y in x + 1..g.n() {
                    let mode = if g.has_edge(x, y) { EdgeEdit::Remove } else { EdgeEdit::Add };
                    let delta = perturb_delta(&g, Edge(x, y), mode)?;
                    counts[(delta + 1) as usize] += 1;
                    let mode = if mode == EdgeEdit::Add { "add" } else { "remove" };
                    results.push(json!({"edge": [x, y], "mode": mode, "delta": delta}));
                }
            }
            emit(&json!({
                "kind": "perturb",
                "results": results,
                "counts": {"-1": counts[0], "0": counts[1], "1": counts[2]},
            }))
        }
        ProbeKind::Contract => {
            let g = graph()?;
            let mut results = Vec::new();
            let mut increases = 0;
            for &e in g.edges() {
                let p = contraction_probe(&g, e)?;
                if p.increased() {
                    increases += 1;
                    eprintln!("finding: contracting {e} raised the value from {} to {}", p.before, p.after);
                }
                results.push(json!({"edge": e, "before": p.before, "after": p.after, "increased": p.increased()}));
            }
            emit(&json!({"kind": "contract", "results": results, "increases": increases}))
        }
        ProbeKind::Chain => {
            let kind = match a.chain.ok_or_else(|| CliError::Usage("--chain is required".into()))? {
                ChainArg::Decrease => ChainKind::Decrease,
                ChainArg::Increase => ChainKind::Increase,
                ChainArg::Neutral => ChainKind::Neutral,
            };
            let m = a.m.ok_or_else(|| CliError::Usage("--m is required".into()))?;
            let chain = monotone_chain(kind, m)?;
            oracle_guard(&chain.base, opts)?;
            let values = verify_chain(&chain)?;
            emit(&json!({
                "kind": "chain",
                "chain": kind,
                "m": m,
                "base": chain.base.to_edge_list(),
                "edges": chain.edges,
                "values": values,
            }))
        }
        ProbeKind::Spectrum => {
            let n = a.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
            if n > ORACLE_CEILING && !opts.force {
                return Err(CliError::Usage(format!("spectrum on {n} vertices needs --force")));
            }
            let targets: Vec<usize> = match a.m {
                Some(d) => vec![d],
                None => (n.div_ceil(2)..n).collect(),
            };
            let mut results = Vec::new();
            for d in targets {
                let g = spectrum_witness(n, d)?;
                results.push(json!({"d": d, "edges": g.edges()}));
            }
            emit(&json!({"kind": "spectrum", "n": n, "results": results}))
        }
    }
}
