//! Constrained zero forcing and constrained fast-mixed search simulators.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deduction::{FiringSequence, Layout};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzfOutcome {
    pub colored: Vec<bool>,
    /// `(forcer, forced)` pairs in the order they happened.
    pub forces: Vec<(usize, usize)>,
}

impl CzfOutcome {
    pub fn all_colored(&self) -> bool {
        self.colored.iter().all(|&c| c)
    }
}

fn lone_uncolored(g: &Graph, colored: &[bool], v: usize) -> Option<usize> {
    let mut it = g.neighbors(v).iter().filter(|&&w| !colored[w]);
    match (it.next(), it.next()) {
        (Some(&w), None) => Some(w),
        _ => None,
    }
}

/// Constrained zero forcing from `initial`: only initial vertices force, each
/// at most once, and a vertex forces its unique uncolored neighbour.
/// Forcers are scanned in ascending order on every pass.
pub fn czf_run(g: &Graph, initial: &[usize]) -> CzfOutcome {
    let mut colored = vec![false; g.n()];
    for &v in initial {
        colored[v] = true;
    }
    let mut pending: Vec<usize> = (0..g.n()).filter(|&v| colored[v]).collect();
    let mut forces = Vec::new();
    loop {
        let before = forces.len();
        pending.retain(|&v| match lone_uncolored(g, &colored, v) {
            Some(w) => {
                colored[w] = true;
                forces.push((v, w));
                false
            }
            None => g.neighbors(v).iter().any(|&w| !colored[w]),
        });
        if forces.len() == before {
            return CzfOutcome { colored, forces };
        }
    }
}

/// Same process, but each force is chosen uniformly among the ready forcers.
pub fn czf_run_random<R: Rng>(g: &Graph, initial: &[usize], rng: &mut R) -> CzfOutcome {
    let mut colored = vec![false; g.n()];
    for &v in initial {
        colored[v] = true;
    }
    let mut spent = vec![false; g.n()];
    let mut forces = Vec::new();
    loop {
        let ready: Vec<(usize, usize)> = (0..g.n())
            .filter(|&v| colored[v] && !spent[v] && initial.contains(&v))
            .filter_map(|v| lone_uncolored(g, &colored, v).map(|w| (v, w)))
            .collect();
        if ready.is_empty() {
            return CzfOutcome { colored, forces };
        }
        let (v, w) = ready[rng.gen_range(0..ready.len())];
        spent[v] = true;
        colored[w] = true;
        forces.push((v, w));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Place(usize),
    Slide(usize, usize),
}

/// Ordered place/slide actions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Strategy {
    pub actions: Vec<Action>,
}

impl Strategy {
    pub fn new(actions: Vec<Action>) -> Strategy {
        Strategy { actions }
    }

    pub fn placements(&self) -> Vec<usize> {
        self.actions
            .iter()
            .filter_map(|a| match a {
                Action::Place(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    /// Number of searchers brought in by placing.
    pub fn searchers(&self) -> usize {
        self.placements().len()
    }

    pub fn is_normalized(&self) -> bool {
        let first_slide = self
            .actions
            .iter()
            .position(|a| matches!(a, Action::Slide(..)))
            .unwrap_or(self.actions.len());
        self.actions[first_slide..]
            .iter()
            .all(|a| matches!(a, Action::Slide(..)))
    }

    /// Moves every placement ahead of every slide, keeping relative order.
    pub fn normalized(&self) -> Strategy {
        let (mut places, slides): (Vec<Action>, Vec<Action>) = self
            .actions
            .iter()
            .partition(|a| matches!(a, Action::Place(_)));
        places.extend(slides);
        Strategy { actions: places }
    }
}

/// Text form: `place 0; slide 0 1`.
impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .actions
            .iter()
            .map(|a| match a {
                Action::Place(v) => format!("place {v}"),
                Action::Slide(u, v) => format!("slide {u} {v}"),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        let mut actions = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let toks: Vec<&str> = part.split_whitespace().collect();
            let num = |t: &str| t.parse::<usize>().map_err(|_| format!("invalid vertex `{t}` in `{part}`"));
            actions.push(match toks.as_slice() {
                ["place", v] => Action::Place(num(v)?),
                ["slide", u, v] => Action::Slide(num(u)?, num(v)?),
                _ => return Err(format!("cannot parse action `{part}`")),
            });
        }
        Ok(Strategy { actions })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionFault {
    OutOfRange(usize),
    PlaceOnOccupied(usize),
    SlideFromEmpty(usize),
    AlreadySlid(usize),
    NotAnEdge(usize, usize),
    EdgeNotContaminated(usize, usize),
    OtherContaminatedEdges { vertex: usize, count: usize },
}

impl fmt::Display for ActionFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionFault::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            ActionFault::PlaceOnOccupied(v) => write!(f, "vertex {v} is already occupied"),
            ActionFault::SlideFromEmpty(v) => write!(f, "no searcher on {v}"),
            ActionFault::AlreadySlid(v) => write!(f, "the searcher on {v} has already slid"),
            ActionFault::NotAnEdge(u, v) => write!(f, "{u}-{v} is not an edge"),
            ActionFault::EdgeNotContaminated(u, v) => write!(f, "edge {u}-{v} is not contaminated"),
            ActionFault::OtherContaminatedEdges { vertex, count } => {
                write!(f, "vertex {vertex} has {count} contaminated edges")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("action {index}: {fault}")]
pub struct CfmsError {
    pub index: usize,
    pub fault: ActionFault,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfmsOutcome {
    /// Indexed like [`Graph::edges`].
    pub cleared: Vec<bool>,
    pub occupied: Vec<bool>,
    pub visited: Vec<bool>,
    /// All edges cleared and every vertex visited.
    pub success: bool,
}

/// Live simulation state shared by replay and greedy completion.
struct Cfms<'g> {
    g: &'g Graph,
    cleared: Vec<bool>,
    contaminated_deg: Vec<usize>,
    occupied: Vec<bool>,
    slid: Vec<bool>,
    visited: Vec<bool>,
}

impl<'g> Cfms<'g> {
    fn new(g: &'g Graph, pre: &[usize]) -> Cfms<'g> {
        let mut s = Cfms {
            g,
            cleared: vec![false; g.m()],
            contaminated_deg: (0..g.n()).map(|v| g.degree(v)).collect(),
            occupied: vec![false; g.n()],
            slid: vec![false; g.n()],
            visited: vec![false; g.n()],
        };
        for &v in pre {
            s.occupied[v] = true;
            s.visited[v] = true;
        }
        for &v in pre {
            s.clear_around(v);
        }
        s
    }

    fn clear(&mut self, u: usize, v: usize) {
        let i = self.g.edge_index(u, v).expect("edge exists");
        if !self.cleared[i] {
            self.cleared[i] = true;
            self.contaminated_deg[u] -= 1;
            self.contaminated_deg[v] -= 1;
        }
    }

    /// Rule 1 at a newly occupied vertex.
    fn clear_around(&mut self, v: usize) {
        for &w in self.g.neighbors(v) {
            if self.occupied[w] {
                self.clear(v, w);
            }
        }
    }

    fn apply(&mut self, a: Action) -> Result<(), ActionFault> {
        let n = self.g.n();
        match a {
            Action::Place(v) => {
                if v >= n {
                    return Err(ActionFault::OutOfRange(v));
                }
                if self.occupied[v] {
                    return Err(ActionFault::PlaceOnOccupied(v));
                }
                self.occupied[v] = true;
                self.slid[v] = false;
                self.visited[v] = true;
                self.clear_around(v);
            }
            Action::Slide(u, v) => {
                for x in [u, v] {
                    if x >= n {
                        return Err(ActionFault::OutOfRange(x));
                    }
                }
                if !self.occupied[u] {
                    return Err(ActionFault::SlideFromEmpty(u));
                }
                if self.slid[u] {
                    return Err(ActionFault::AlreadySlid(u));
                }
                let i = self.g.edge_index(u, v).ok_or(ActionFault::NotAnEdge(u, v))?;
                if self.cleared[i] {
                    return Err(ActionFault::EdgeNotContaminated(u, v));
                }
                if self.contaminated_deg[u] != 1 {
                    return Err(ActionFault::OtherContaminatedEdges {
                        vertex: u,
                        count: self.contaminated_deg[u],
                    });
                }
                // uv contaminated means v is empty, otherwise rule 1 would have fired
                self.clear(u, v);
                self.occupied[u] = false;
                self.slid[u] = false;
                self.occupied[v] = true;
                self.slid[v] = true;
                self.visited[v] = true;
                self.clear_around(v);
            }
        }
        Ok(())
    }

    /// Lowest occupied vertex whose searcher may slide now, with its target.
    fn next_slide(&self) -> Option<(usize, usize)> {
        (0..self.g.n())
            .find(|&u| self.occupied[u] && !self.slid[u] && self.contaminated_deg[u] == 1)
            .map(|u| {
                let v = *self
                    .g
                    .neighbors(u)
                    .iter()
                    .find(|&&w| !self.cleared[self.g.edge_index(u, w).unwrap()])
                    .expect("one contaminated edge");
                (u, v)
            })
    }

    fn outcome(self) -> CfmsOutcome {
        let success = self.cleared.iter().all(|&c| c) && self.visited.iter().all(|&v| v);
        CfmsOutcome {
            cleared: self.cleared,
            occupied: self.occupied,
            visited: self.visited,
            success,
        }
    }
}

/// Validates and executes a strategy from the all-contaminated start.
pub fn cfms_run(g: &Graph, s: &Strategy) -> Result<CfmsOutcome, CfmsError> {
    cfms_run_preoccupied(g, &[], s)
}

/// As [`cfms_run`], with searchers already standing on `pre`. Those
/// searchers have not slid and may each slide once.
pub fn cfms_run_preoccupied(g: &Graph, pre: &[usize], s: &Strategy) -> Result<CfmsOutcome, CfmsError> {
    let mut sim = Cfms::new(g, pre);
    for (index, &a) in s.actions.iter().enumerate() {
        sim.apply(a).map_err(|fault| CfmsError { index, fault })?;
    }
    Ok(sim.outcome())
}

/// Places searchers on `placements` (in order), then repeatedly slides the
/// lowest searcher that is allowed to slide until none is. Returns the full
/// strategy and whether it clears the graph.
pub fn greedy_completion(g: &Graph, pre: &[usize], placements: &[usize]) -> (Strategy, bool) {
    let mut sim = Cfms::new(g, pre);
    let mut actions = Vec::with_capacity(2 * placements.len());
    for &v in placements {
        let a = Action::Place(v);
        if sim.apply(a).is_err() {
            return (Strategy { actions }, false);
        }
        actions.push(a);
    }
    while let Some((u, v)) = sim.next_slide() {
        let a = Action::Slide(u, v);
        sim.apply(a).expect("greedy slide is legal");
        actions.push(a);
    }
    let ok = sim.outcome().success;
    (Strategy { actions }, ok)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConversionError {
    #[error("layout is not standard")]
    NotStandard,
    #[error("layout has {got} entries, graph has {n} vertices")]
    LayoutSize { got: usize, n: usize },
}

/// Turns a standard deduction certificate into a cfms strategy: one place
/// per occupied vertex, then one slide per move in firing order. A move into
/// a vertex that is already occupied is dropped, since that vertex is
/// already guarded.
pub fn deduction_to_cfms(g: &Graph, l: &Layout, f: &FiringSequence) -> Result<Strategy, ConversionError> {
    if l.n() != g.n() {
        return Err(ConversionError::LayoutSize { got: l.n(), n: g.n() });
    }
    if !l.is_standard() {
        return Err(ConversionError::NotStandard);
    }
    let mut occupied: Vec<bool> = l.counts().iter().map(|&c| c > 0).collect();
    let mut actions: Vec<Action> = l.support().into_iter().map(Action::Place).collect();
    for stage in &f.stages {
        let mut fires: Vec<_> = stage.iter().collect();
        fires.sort_by_key(|f| f.vertex);
        for fire in fires {
            let mut targets = fire.targets.clone();
            targets.sort_unstable();
            for t in targets {
                if occupied[t] || !occupied[fire.vertex] {
                    continue;
                }
                occupied[fire.vertex] = false;
                occupied[t] = true;
                actions.push(Action::Slide(fire.vertex, t));
            }
        }
    }
    Ok(Strategy { actions })
}
