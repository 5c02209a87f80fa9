use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::dismantle::{cycle_pattern, verified_strategy};
use super::FamilyError;
use crate::graph::{classify, parse_edge_list, Graph};
use crate::report::{Method, ParameterResult};
use crate::search::{greedy_completion, Strategy};

/// A cactus forest with some vertices already holding a searcher.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusInstance {
    pub graph: Graph,
    /// Sorted, without repeats.
    pub preoccupied: Vec<usize>,
}

impl CactusInstance {
    pub fn new(graph: Graph, mut preoccupied: Vec<usize>) -> Result<CactusInstance, FamilyError> {
        if !classify(&graph).is_cactus_forest {
            return Err(FamilyError::NotCactus);
        }
        check_pre(&graph, &preoccupied)?;
        preoccupied.sort_unstable();
        preoccupied.dedup();
        Ok(CactusInstance { graph, preoccupied })
    }

    /// Edge-list text with an optional `preoccupied v1 v2 ...` line.
    pub fn parse(text: &str) -> Result<CactusInstance, FamilyError> {
        let mut pre = Vec::new();
        let mut rest = String::new();
        for line in text.lines() {
            let mut toks = line.split_whitespace();
            if toks.next() == Some("preoccupied") {
                for t in toks {
                    let v = t.parse().map_err(|_| {
                        FamilyError::Graph(crate::graph::GraphError::Parse {
                            line: 0,
                            message: format!("invalid pre-occupied vertex `{t}`"),
                        })
                    })?;
                    pre.push(v);
                }
            } else {
                rest.push_str(line);
                rest.push('\n');
            }
        }
        CactusInstance::new(parse_edge_list(&rest)?, pre)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_edge_list();
        let list: Vec<String> = self.preoccupied.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("preoccupied {}\n", list.join(" ")));
        s
    }
}

fn check_pre(g: &Graph, pre: &[usize]) -> Result<(), FamilyError> {
    match pre.iter().find(|&&v| v >= g.n()) {
        Some(&v) => Err(FamilyError::PreoccupiedOutOfRange(v)),
        None => Ok(()),
    }
}

/// How the searchers on an isolated cycle were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleCase {
    NoPreoccupied,
    /// Two adjacent pre-occupied vertices; the edge between them is dropped.
    AdjacentPair,
    /// (a) the searcher on the lowest pre-occupied vertex stays put.
    Stays,
    /// (b) that searcher slides to a cycle neighbour.
    SlidesToNeighbor,
    /// (c) a searcher is placed on a cycle neighbour.
    NeighborPlaced,
}

impl CycleCase {
    pub fn label(self) -> &'static str {
        match self {
            CycleCase::NoPreoccupied => "no pre-occupied vertex",
            CycleCase::AdjacentPair => "adjacent pre-occupied pair",
            CycleCase::Stays => "a",
            CycleCase::SlidesToNeighbor => "b",
            CycleCase::NeighborPlaced => "c",
        }
    }
}

/// Which part of a leaf cycle is cleared, by extender status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeafCase {
    /// Pre-occupied extender, path as hard as the cycle: clear the path.
    #[serde(rename = "5.1")]
    PreoccupiedPath,
    /// Pre-occupied extender, path one harder: clear the cycle.
    #[serde(rename = "5.2")]
    PreoccupiedCycle,
    /// Contaminated extender, path one easier: clear the path.
    #[serde(rename = "5.3")]
    ContaminatedPath,
    /// Contaminated extender, path as hard as the cycle: clear the cycle.
    #[serde(rename = "5.4")]
    ContaminatedCycle,
}

impl LeafCase {
    pub fn label(self) -> &'static str {
        match self {
            LeafCase::PreoccupiedPath => "5.1",
            LeafCase::PreoccupiedCycle => "5.2",
            LeafCase::ContaminatedPath => "5.3",
            LeafCase::ContaminatedCycle => "5.4",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// Steps 1-4 on a degree-one vertex.
    Leaf { rule: u8, leaf: usize, neighbor: usize },
    DropPreoccupiedIsolated { vertex: usize },
    PlaceIsolated { vertex: usize },
    IsolatedCycle { cycle: Vec<usize>, case: CycleCase, searchers: usize },
    LeafCycle {
        case: LeafCase,
        extender: usize,
        cycle: Vec<usize>,
        cfms_path: usize,
        cfms_cycle: usize,
        cycle_case: CycleCase,
    },
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Leaf { rule, leaf, neighbor } => {
                write!(f, "step {rule}: leaf {leaf}, neighbour {neighbor}")
            }
            TraceStep::DropPreoccupiedIsolated { vertex } => {
                write!(f, "step 5: drop pre-occupied isolated vertex {vertex}")
            }
            TraceStep::PlaceIsolated { vertex } => write!(f, "step 5: place on isolated vertex {vertex}"),
            TraceStep::IsolatedCycle { cycle, case, searchers } => write!(
                f,
                "step 5: isolated cycle {cycle:?} ({}) with {searchers} searchers",
                case.label()
            ),
            TraceStep::LeafCycle {
                case,
                extender,
                cycle,
                cfms_path,
                cfms_cycle,
                cycle_case,
            } => write!(
                f,
                "step {}: leaf cycle {cycle:?} at extender {extender}, path {cfms_path}, cycle {cfms_cycle} ({})",
                case.label(),
                cycle_case.label()
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum AuxNode {
    /// A vertex on no cycle.
    Vertex(usize),
    /// A cycle, by index into the cycle list.
    Cycle(usize),
    /// A cycle vertex of degree at least 3.
    Junction(usize),
}

/// Cycles, non-cycle vertices and cycle vertices of degree above two as
/// nodes; degree-2 cycle vertices are left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryTree {
    pub nodes: Vec<AuxNode>,
    pub adj: Vec<Vec<usize>>,
}

impl AuxiliaryTree {
    pub fn build(g: &Graph, cycles: &[Vec<usize>]) -> AuxiliaryTree {
        let n = g.n();
        let mut on_cycle = vec![Vec::new(); n];
        for (c, cyc) in cycles.iter().enumerate() {
            for &v in cyc {
                on_cycle[v].push(c);
            }
        }
        let mut nodes = Vec::new();
        let mut vertex_node = vec![usize::MAX; n];
        for v in 0..n {
            if on_cycle[v].is_empty() {
                vertex_node[v] = nodes.len();
                nodes.push(AuxNode::Vertex(v));
            } else if g.degree(v) > 2 {
                vertex_node[v] = nodes.len();
                nodes.push(AuxNode::Junction(v));
            }
        }
        let first_cycle = nodes.len();
        nodes.extend((0..cycles.len()).map(AuxNode::Cycle));
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut link = |a: usize, b: usize| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for v in 0..n {
            if g.degree(v) > 2 {
                for &c in &on_cycle[v] {
                    link(vertex_node[v], first_cycle + c);
                }
            }
        }
        let mut cycle_edge = BTreeSet::new();
        for cyc in cycles {
            for i in 0..cyc.len() {
                cycle_edge.insert(crate::graph::Edge::new(cyc[i], cyc[(i + 1) % cyc.len()]));
            }
        }
        for e in g.edges() {
            if !cycle_edge.contains(e) {
                link(vertex_node[e.0], vertex_node[e.1]);
            }
        }
        AuxiliaryTree { nodes, adj }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_forest(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut components = 0;
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        self.edge_count() + components == self.nodes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusPlan {
    /// Searchers placed, not counting pre-occupying ones.
    pub additional_searchers: usize,
    pub strategy: Strategy,
    pub trace: Vec<TraceStep>,
    pub auxiliary: AuxiliaryTree,
}

/// Steps 1-5 on a shrinking cactus forest. Vertices keep their ids and are
/// deleted in place; leaves are bucketed by rule, and each cycle tracks how
/// many of its vertices still have degree 3 or more.
struct Engine<'g> {
    g: &'g Graph,
    pre: Vec<bool>,
    alive: Vec<bool>,
    deg: Vec<usize>,
    leaves: [BTreeSet<usize>; 4],
    isolated: BTreeSet<usize>,
    cycles: Vec<Vec<usize>>,
    cycles_of: Vec<Vec<usize>>,
    intact: Vec<bool>,
    heavy: Vec<usize>,
    extender: Vec<usize>,
    isolated_cycles: BTreeSet<usize>,
    leaf_cycles: BTreeSet<(usize, usize)>,
    placements: Vec<usize>,
    trace: Vec<TraceStep>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g Graph, pre: Vec<bool>, cycles: Vec<Vec<usize>>) -> Engine<'g> {
        let n = g.n();
        let mut cycles_of = vec![Vec::new(); n];
        for (c, cyc) in cycles.iter().enumerate() {
            for &v in cyc {
                cycles_of[v].push(c);
            }
        }
        let heavy = cycles
            .iter()
            .map(|cyc| cyc.iter().filter(|&&v| g.degree(v) >= 3).count())
            .collect();
        let mut e = Engine {
            g,
            pre,
            alive: vec![true; n],
            deg: (0..n).map(|v| g.degree(v)).collect(),
            leaves: Default::default(),
            isolated: BTreeSet::new(),
            intact: vec![true; cycles.len()],
            extender: vec![usize::MAX; cycles.len()],
            cycles,
            cycles_of,
            heavy,
            isolated_cycles: BTreeSet::new(),
            leaf_cycles: BTreeSet::new(),
            placements: Vec::new(),
            trace: Vec::new(),
        };
        for v in 0..n {
            e.bucket(v);
        }
        for c in 0..e.cycles.len() {
            e.update_cycle(c);
        }
        e
    }

    fn neighbor(&self, v: usize) -> usize {
        *self
            .g
            .neighbors(v)
            .iter()
            .find(|&&w| self.alive[w])
            .expect("vertex has a live neighbour")
    }

    fn bucket(&mut self, v: usize) {
        for set in &mut self.leaves {
            set.remove(&v);
        }
        self.isolated.remove(&v);
        if !self.alive[v] {
            return;
        }
        match self.deg[v] {
            0 => {
                self.isolated.insert(v);
            }
            1 => {
                let u = self.neighbor(v);
                let rule = match (self.pre[v], self.pre[u]) {
                    (false, false) => 0,
                    (true, true) => 1,
                    (true, false) => 2,
                    (false, true) => 3,
                };
                self.leaves[rule].insert(v);
            }
            _ => {}
        }
    }

    fn update_cycle(&mut self, c: usize) {
        self.isolated_cycles.remove(&c);
        self.leaf_cycles.remove(&(self.extender[c], c));
        if !self.intact[c] {
            return;
        }
        match self.heavy[c] {
            0 => {
                self.isolated_cycles.insert(c);
            }
            1 => {
                let ext = *self.cycles[c]
                    .iter()
                    .find(|&&v| self.deg[v] >= 3)
                    .expect("one heavy vertex");
                self.extender[c] = ext;
                self.leaf_cycles.insert((ext, c));
            }
            _ => {}
        }
    }

    fn kill(&mut self, v: usize) {
        if !self.alive[v] {
            return;
        }
        self.alive[v] = false;
        self.bucket(v);
        for i in 0..self.cycles_of[v].len() {
            let c = self.cycles_of[v][i];
            if self.intact[c] {
                self.intact[c] = false;
                self.update_cycle(c);
            }
        }
        for i in 0..self.g.neighbors(v).len() {
            let w = self.g.neighbors(v)[i];
            if self.alive[w] {
                self.deg[w] -= 1;
                if self.deg[w] == 2 {
                    for j in 0..self.cycles_of[w].len() {
                        let c = self.cycles_of[w][j];
                        if self.intact[c] {
                            self.heavy[c] -= 1;
                            self.update_cycle(c);
                        }
                    }
                }
                self.bucket(w);
            }
        }
    }

    fn run(&mut self) -> Result<(), FamilyError> {
        loop {
            if let Some(&v) = self.leaves[0].first() {
                let u = self.neighbor(v);
                self.placements.push(v);
                self.trace.push(TraceStep::Leaf { rule: 1, leaf: v, neighbor: u });
                self.kill(v);
                self.kill(u);
            } else if let Some(&v) = self.leaves[1].first() {
                let u = self.neighbor(v);
                self.trace.push(TraceStep::Leaf { rule: 2, leaf: v, neighbor: u });
                self.kill(v);
            } else if let Some(&v) = self.leaves[2].first().or(self.leaves[3].first()) {
                let u = self.neighbor(v);
                let rule = if self.pre[v] { 3 } else { 4 };
                self.trace.push(TraceStep::Leaf { rule, leaf: v, neighbor: u });
                self.kill(v);
                self.kill(u);
            } else if let Some(&v) = self.isolated.first() {
                if self.pre[v] {
                    self.trace.push(TraceStep::DropPreoccupiedIsolated { vertex: v });
                } else {
                    self.placements.push(v);
                    self.trace.push(TraceStep::PlaceIsolated { vertex: v });
                }
                self.kill(v);
            } else if let Some(&c) = self.isolated_cycles.first() {
                let cycle = self.cycles[c].clone();
                let (value, placements, case) = solve_cycle(&cycle, &self.pre)?;
                self.placements.extend(placements);
                self.trace.push(TraceStep::IsolatedCycle {
                    cycle: cycle.clone(),
                    case,
                    searchers: value,
                });
                for v in cycle {
                    self.kill(v);
                }
            } else if let Some(&(ext, c)) = self.leaf_cycles.first() {
                self.leaf_cycle(ext, c)?;
            } else {
                break;
            }
        }
        match (0..self.g.n()).find(|&v| self.alive[v]) {
            Some(v) => Err(FamilyError::Internal(format!("no rule applies at vertex {v}"))),
            None => Ok(()),
        }
    }

    fn leaf_cycle(&mut self, ext: usize, c: usize) -> Result<(), FamilyError> {
        let cyc = &self.cycles[c];
        let at = cyc.iter().position(|&v| v == ext).expect("extender is on its cycle");
        let cycle: Vec<usize> = (0..cyc.len()).map(|t| cyc[(at + t) % cyc.len()]).collect();
        let path = &cycle[1..];
        let (pv, pp) = solve_path(path, &self.pre)?;
        let (cv, cp, cycle_case) = solve_cycle(&cycle, &self.pre)?;
        let case = match (self.pre[ext], pv as isize - cv as isize) {
            (true, 0) => LeafCase::PreoccupiedPath,
            (true, 1) => LeafCase::PreoccupiedCycle,
            (false, -1) => LeafCase::ContaminatedPath,
            (false, 0) => LeafCase::ContaminatedCycle,
            _ => {
                return Err(FamilyError::Internal(format!(
                    "leaf cycle at {ext}: path needs {pv} and cycle needs {cv}, outside the allowed gap"
                )))
            }
        };
        let clear_path = matches!(case, LeafCase::PreoccupiedPath | LeafCase::ContaminatedPath);
        self.trace.push(TraceStep::LeafCycle {
            case,
            extender: ext,
            cycle: cycle.clone(),
            cfms_path: pv,
            cfms_cycle: cv,
            cycle_case,
        });
        if clear_path {
            self.placements.extend(pp);
            for &v in path {
                self.kill(v);
            }
        } else {
            self.placements.extend(cp);
            for &v in &cycle {
                self.kill(v);
            }
        }
        Ok(())
    }
}

/// Local copy of the path `order` (consecutive entries adjacent).
fn local_path(order: &[usize]) -> Graph {
    Graph::new(order.len(), (1..order.len()).map(|i| (i - 1, i))).expect("path edges are valid")
}

fn local_cycle(len: usize) -> Graph {
    Graph::new(len, (0..len).map(|i| (i, (i + 1) % len))).expect("cycle edges are valid")
}

/// Steps 1-4 and isolated-vertex handling on a path given in order.
fn solve_path(order: &[usize], pre: &[bool]) -> Result<(usize, Vec<usize>), FamilyError> {
    let p = local_path(order);
    let mut e = Engine::new(&p, order.iter().map(|&v| pre[v]).collect(), Vec::new());
    e.run()?;
    Ok((e.placements.len(), e.placements.iter().map(|&i| order[i]).collect()))
}

/// Fewest placements for the cycle `order`, by case on its pre-occupied
/// vertices. Candidates from the subcases are checked by replay on the cycle.
fn solve_cycle(order: &[usize], pre: &[bool]) -> Result<(usize, Vec<usize>, CycleCase), FamilyError> {
    let l = order.len();
    let p = |i: usize| pre[order[i % l]];
    if !(0..l).any(p) {
        return Ok((l.div_ceil(2), cycle_pattern(order), CycleCase::NoPreoccupied));
    }
    let rot = |start: usize, len: usize| -> Vec<usize> { (0..len).map(|t| order[(start + t) % l]).collect() };
    let mut candidates = Vec::new();
    if let Some(i) = (0..l).find(|&i| p(i) && p(i + 1)) {
        candidates.push((rot(i + 1, l), CycleCase::AdjacentPair));
    } else {
        let j = (0..l).filter(|&i| p(i)).min_by_key(|&i| order[i]).expect("some vertex is pre-occupied");
        candidates.push((rot(j + 1, l - 1), CycleCase::Stays));
        candidates.push((rot(j + 1, l - 2), CycleCase::SlidesToNeighbor));
        candidates.push((rot(j + 2, l - 2), CycleCase::SlidesToNeighbor));
        candidates.push((rot(j, l), CycleCase::NeighborPlaced));
        candidates.push((rot(j + 1, l), CycleCase::NeighborPlaced));
    }
    let cg = local_cycle(l);
    let local_pre: Vec<usize> = (0..l).filter(|&i| p(i)).collect();
    let index_of = |v: usize| order.iter().position(|&w| w == v).expect("vertex on the cycle");
    let mut best: Option<(usize, Vec<usize>, CycleCase)> = None;
    for (path, case) in candidates {
        let (value, placements) = solve_path(&path, pre)?;
        if best.as_ref().is_some_and(|b| b.0 <= value) {
            continue;
        }
        let local: Vec<usize> = placements.iter().map(|&v| index_of(v)).collect();
        if greedy_completion(&cg, &local_pre, &local).1 {
            best = Some((value, placements, case));
        }
    }
    best.ok_or_else(|| FamilyError::Internal(format!("no cycle subcase clears {order:?}")))
}

fn pre_flags(n: usize, pre: &[usize]) -> Vec<bool> {
    let mut flags = vec![false; n];
    for &v in pre {
        flags[v] = true;
    }
    flags
}

fn finish(g: &Graph, pre: &[usize], placements: &[usize]) -> Result<Strategy, FamilyError> {
    let (strategy, ok) = greedy_completion(g, pre, placements);
    if !ok {
        return Err(FamilyError::Internal(
            "the chosen placements do not clear the graph".into(),
        ));
    }
    Ok(strategy)
}

/// Minimum additional searchers for a disjoint union of paths with
/// pre-occupied vertices, with a strategy that includes their slides.
pub fn preoccupied_path_solve(p: &Graph, pre: &[usize]) -> Result<(usize, Strategy), FamilyError> {
    if p.max_degree() > 2 || !classify(p).is_forest {
        return Err(FamilyError::NotPaths);
    }
    check_pre(p, pre)?;
    let mut e = Engine::new(p, pre_flags(p.n(), pre), Vec::new());
    e.run()?;
    Ok((e.placements.len(), finish(p, pre, &e.placements)?))
}

/// As [`preoccupied_path_solve`] for a single cycle.
pub fn preoccupied_cycle_solve(c: &Graph, pre: &[usize]) -> Result<(usize, Strategy), FamilyError> {
    let n = c.n();
    if n < 3 || !c.is_connected() || (0..n).any(|v| c.degree(v) != 2) {
        return Err(FamilyError::NotCycle);
    }
    check_pre(c, pre)?;
    let order = classify(c).cycles.remove(0);
    let (value, placements, _) = solve_cycle(&order, &pre_flags(n, pre))?;
    Ok((value, finish(c, pre, &placements)?))
}

pub fn cactus_solve(inst: &CactusInstance) -> Result<CactusPlan, FamilyError> {
    let g = &inst.graph;
    let s = classify(g);
    if !s.is_cactus_forest {
        return Err(FamilyError::NotCactus);
    }
    check_pre(g, &inst.preoccupied)?;
    let auxiliary = AuxiliaryTree::build(g, &s.cycles);
    let mut e = Engine::new(g, pre_flags(g.n(), &inst.preoccupied), s.cycles);
    e.run()?;
    let strategy = finish(g, &inst.preoccupied, &e.placements)?;
    Ok(CactusPlan {
        additional_searchers: e.placements.len(),
        strategy,
        trace: e.trace,
        auxiliary,
    })
}

/// The cactus algorithm with nothing pre-occupied, as a parameter result.
pub fn cactus_czf(g: &Graph) -> Result<ParameterResult, FamilyError> {
    let plan = cactus_solve(&CactusInstance::new(g.clone(), Vec::new())?)?;
    verified_strategy(g, &plan.strategy.placements(), Method::Cactus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::search::cfms_run_preoccupied;

    #[test]
    fn path_examples() {
        let p2 = generate(FamilySpec::Path(2)).unwrap();
        assert_eq!(preoccupied_path_solve(&p2, &[]).unwrap().0, 1);
        let (v, s) = preoccupied_path_solve(&p2, &[0, 1]).unwrap();
        assert_eq!(v, 0);
        assert!(cfms_run_preoccupied(&p2, &[0, 1], &s).unwrap().success);
        let p3 = generate(FamilySpec::Path(3)).unwrap();
        let (v, s) = preoccupied_path_solve(&p3, &[1]).unwrap();
        assert_eq!(v, 1);
        assert!(cfms_run_preoccupied(&p3, &[1], &s).unwrap().success);
        assert_eq!(
            preoccupied_path_solve(&generate(FamilySpec::Star(4)).unwrap(), &[]),
            Err(FamilyError::NotPaths)
        );
    }

    #[test]
    fn cycle_examples() {
        let c6 = generate(FamilySpec::Cycle(6)).unwrap();
        assert_eq!(preoccupied_cycle_solve(&c6, &[]).unwrap().0, 3);
        let c3 = generate(FamilySpec::Cycle(3)).unwrap();
        let (v, s) = preoccupied_cycle_solve(&c3, &[1]).unwrap();
        assert_eq!(v, 1);
        assert!(cfms_run_preoccupied(&c3, &[1], &s).unwrap().success);
        let c4 = generate(FamilySpec::Cycle(4)).unwrap();
        let p4 = generate(FamilySpec::Path(4)).unwrap();
        // cycle 0-1-2-3 with 0,1 pre-occupied opens into the path 1-2-3-0
        let on_cycle = preoccupied_cycle_solve(&c4, &[0, 1]).unwrap().0;
        assert_eq!(on_cycle, preoccupied_path_solve(&p4, &[0, 3]).unwrap().0);
    }

    #[test]
    fn cactus_examples() {
        let bowtie = generate(FamilySpec::Bowtie).unwrap();
        let plan = cactus_solve(&CactusInstance::new(bowtie.clone(), vec![]).unwrap()).unwrap();
        assert_eq!(plan.additional_searchers, 3);
        assert!(plan.auxiliary.is_forest());
        let r = cactus_czf(&bowtie).unwrap();
        r.replay(&bowtie).unwrap();

        let c4_leaf = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        assert_eq!(cactus_czf(&c4_leaf).unwrap().value, 3);

        let two_c4 = Graph::new(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0), (0, 7)],
        )
        .unwrap();
        let r = cactus_czf(&two_c4).unwrap();
        assert_eq!(r.value, crate::oracle::czf_exact(&two_c4).unwrap().value);
    }

    #[test]
    fn parse_and_print() {
        let inst = CactusInstance::parse("3 3\n0 1\n1 2\n2 0\npreoccupied 2 0\n").unwrap();
        assert_eq!(inst.preoccupied, vec![0, 2]);
        assert_eq!(CactusInstance::parse(&inst.to_text()).unwrap(), inst);
        assert_eq!(
            CactusInstance::parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"),
            Err(FamilyError::NotCactus)
        );
        assert_eq!(
            CactusInstance::parse("2 1\n0 1\npreoccupied 5\n"),
            Err(FamilyError::PreoccupiedOutOfRange(5))
        );
    }

    #[test]
    fn auxiliary_tree_shape() {
        let bowtie = generate(FamilySpec::Bowtie).unwrap();
        let s = classify(&bowtie);
        let t = AuxiliaryTree::build(&bowtie, &s.cycles);
        // the shared vertex and the two triangles
        assert_eq!(t.nodes.len(), 3);
        assert_eq!(t.edge_count(), 2);
    }
}
