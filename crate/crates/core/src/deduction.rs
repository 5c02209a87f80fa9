//! The deduction process: searchers sit on vertices, and a vertex whose
//! unmoved searchers are at least its number of unprotected neighbours may
//! fire one searcher into each of them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Searcher counts per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Layout {
    counts: Vec<u32>,
}

impl Layout {
    pub fn empty(n: usize) -> Layout {
        Layout { counts: vec![0; n] }
    }

    pub fn from_counts(counts: Vec<u32>) -> Layout {
        Layout { counts }
    }

    /// One searcher per listed vertex; repeated vertices stack.
    pub fn from_vertices(n: usize, vertices: &[usize]) -> Layout {
        let mut counts = vec![0; n];
        for &v in vertices {
            counts[v] += 1;
        }
        Layout { counts }
    }

    pub fn from_mask(n: usize, mask: u64) -> Layout {
        Layout::from_vertices(n, &crate::bits::iter_bits(mask).collect::<Vec<_>>())
    }

    /// Parses a comma separated vertex list such as `0,2,2,5`.
    pub fn parse(n: usize, csv: &str) -> Result<Layout, String> {
        let mut vs = Vec::new();
        for tok in csv.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| format!("invalid vertex `{tok}`"))?;
            if v >= n {
                return Err(format!("vertex {v} out of range 0..{n}"));
            }
            vs.push(v);
        }
        Ok(Layout::from_vertices(n, &vs))
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_standard(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Occupied vertices, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&v| self.counts[v] > 0).collect()
    }

    /// Vertices listed once per searcher, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (v, &c) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat_n(v, c as usize));
        }
        out
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", vs.join(","))
    }
}

/// One vertex firing within a stage. Empty `targets` in a user supplied
/// sequence means "every unprotected neighbour".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fire {
    pub vertex: usize,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiringSequence {
    pub stages: Vec<Vec<Fire>>,
}

impl FiringSequence {
    /// Vertices fired in each stage.
    pub fn stage_sets(&self) -> Vec<Vec<usize>> {
        self.stages
            .iter()
            .map(|s| s.iter().map(|f| f.vertex).collect())
            .collect()
    }

    pub fn moves(&self) -> usize {
        self.stages.iter().flatten().map(|f| f.targets.len()).sum()
    }
}

/// Text form: stages separated by `;`, fires by whitespace, each fire written
/// `v->t1,t2` (`v->` fires toward every unprotected neighbour).
impl fmt::Display for FiringSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stages: Vec<String> = self
            .stages
            .iter()
            .map(|s| {
                s.iter()
                    .map(|fire| {
                        let ts: Vec<String> = fire.targets.iter().map(|t| t.to_string()).collect();
                        format!("{}->{}", fire.vertex, ts.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", stages.join("; "))
    }
}

impl FromStr for FiringSequence {
    type Err = String;

    fn from_str(s: &str) -> Result<FiringSequence, String> {
        let mut stages = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut stage = Vec::new();
            for tok in part.split_whitespace() {
                let (v, ts) = tok.split_once("->").unwrap_or((tok, ""));
                let vertex = v.parse().map_err(|_| format!("invalid vertex `{v}` in `{tok}`"))?;
                let targets = ts
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| format!("invalid target `{t}` in `{tok}`")))
                    .collect::<Result<Vec<usize>, String>>()?;
                stage.push(Fire { vertex, targets });
            }
            stages.push(stage);
        }
        Ok(FiringSequence { stages })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiringPolicy {
    /// Every fireable vertex fires at each stage.
    AllFireable,
    /// The lowest fireable vertex fires alone at each stage.
    SingleFire,
    /// A uniformly random nonempty subset of the fireable vertices fires.
    Random(u64),
    /// The given stages are replayed, then single-fire continues.
    Explicit(FiringSequence),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageFault {
    AlreadyFired,
    FiredTwice,
    NoSearcher,
    NotEnoughSearchers { have: u32, need: usize },
    NotNeighbor(usize),
    DuplicateTarget(usize),
    MissingTarget(usize),
}

impl fmt::Display for StageFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageFault::AlreadyFired => write!(f, "vertex already fired in an earlier stage"),
            StageFault::FiredTwice => write!(f, "vertex listed twice in the stage"),
            StageFault::NoSearcher => write!(f, "no unmoved searcher"),
            StageFault::NotEnoughSearchers { have, need } => {
                write!(f, "{have} unmoved searchers for {need} targets")
            }
            StageFault::NotNeighbor(t) => write!(f, "target {t} is not a neighbour"),
            StageFault::DuplicateTarget(t) => write!(f, "target {t} listed twice"),
            StageFault::MissingTarget(t) => write!(f, "unprotected neighbour {t} is not a target"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeductionError {
    #[error("layout has {got} entries, graph has {n} vertices")]
    LayoutSize { got: usize, n: usize },
    #[error("stage {stage}, vertex {vertex}: {fault}")]
    Stage {
        stage: usize,
        vertex: usize,
        fault: StageFault,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("layout is not successful")]
    NotSuccessful,
}

/// Mid-run state of a deduction game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionState {
    protected: Vec<bool>,
    unmoved: Vec<u32>,
    positions: Vec<u32>,
    fired: Vec<bool>,
    history: FiringSequence,
}

impl DeductionState {
    pub fn new(g: &Graph, l: &Layout) -> Result<DeductionState, DeductionError> {
        if l.n() != g.n() {
            return Err(DeductionError::LayoutSize { got: l.n(), n: g.n() });
        }
        Ok(DeductionState {
            protected: l.counts().iter().map(|&c| c > 0).collect(),
            unmoved: l.counts().to_vec(),
            positions: l.counts().to_vec(),
            fired: vec![false; g.n()],
            history: FiringSequence::default(),
        })
    }

    pub fn protected(&self) -> &[bool] {
        &self.protected
    }

    pub fn unmoved(&self, v: usize) -> u32 {
        self.unmoved[v]
    }

    pub fn history(&self) -> &FiringSequence {
        &self.history
    }

    pub fn positions(&self) -> Layout {
        Layout::from_counts(self.positions.clone())
    }

    pub fn all_protected(&self) -> bool {
        self.protected.iter().all(|&p| p)
    }

    pub fn unprotected_neighbors(&self, g: &Graph, v: usize) -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !self.protected[w])
            .collect()
    }

    fn unprotected_count(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v).iter().filter(|&&w| !self.protected[w]).count()
    }

    /// Validates and applies one stage against the state at its start.
    pub fn apply_stage(&mut self, g: &Graph, stage: &[Fire]) -> Result<(), DeductionError> {
        let index = self.history.stages.len();
        let fault = |vertex, fault| DeductionError::Stage {
            stage: index,
            vertex,
            fault,
        };
        let mut resolved = Vec::with_capacity(stage.len());
        let mut in_stage = vec![false; g.n()];
        for fire in stage {
            let v = fire.vertex;
            if v >= g.n() {
                return Err(DeductionError::VertexOutOfRange(v));
            }
            if self.fired[v] {
                return Err(fault(v, StageFault::AlreadyFired));
            }
            if in_stage[v] {
                return Err(fault(v, StageFault::FiredTwice));
            }
            in_stage[v] = true;
            if self.unmoved[v] == 0 {
                return Err(fault(v, StageFault::NoSearcher));
            }
            let targets = if fire.targets.is_empty() {
                self.unprotected_neighbors(g, v)
            } else {
                let mut ts = fire.targets.clone();
                ts.sort_unstable();
                for w in ts.windows(2) {
                    if w[0] == w[1] {
                        return Err(fault(v, StageFault::DuplicateTarget(w[0])));
                    }
                }
                if let Some(&t) = ts.iter().find(|&&t| !g.has_edge(v, t)) {
                    return Err(fault(v, StageFault::NotNeighbor(t)));
                }
                if let Some(t) = self
                    .unprotected_neighbors(g, v)
                    .into_iter()
                    .find(|t| ts.binary_search(t).is_err())
                {
                    return Err(fault(v, StageFault::MissingTarget(t)));
                }
                ts
            };
            if targets.len() > self.unmoved[v] as usize {
                return Err(fault(
                    v,
                    StageFault::NotEnoughSearchers {
                        have: self.unmoved[v],
                        need: targets.len(),
                    },
                ));
            }
            resolved.push(Fire { vertex: v, targets });
        }
        for fire in &resolved {
            let v = fire.vertex;
            self.fired[v] = true;
            self.unmoved[v] -= fire.targets.len() as u32;
            self.positions[v] -= fire.targets.len() as u32;
            for &t in &fire.targets {
                self.positions[t] += 1;
            }
        }
        for fire in &resolved {
            for &t in &fire.targets {
                self.protected[t] = true;
            }
        }
        self.history.stages.push(resolved);
        Ok(())
    }
}

/// Vertices that may fire now: not yet fired, holding an unmoved searcher,
/// with at least one and at most `unmoved` unprotected neighbours.
pub fn fireable(g: &Graph, s: &DeductionState) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| {
            if s.fired[v] || s.unmoved[v] == 0 {
                return false;
            }
            let need = s.unprotected_count(g, v);
            need >= 1 && need <= s.unmoved[v] as usize
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionOutcome {
    pub protected: Vec<bool>,
    pub terminal: Layout,
    pub sequence: FiringSequence,
}

impl DeductionOutcome {
    pub fn all_protected(&self) -> bool {
        self.protected.iter().all(|&p| p)
    }
}

fn single_fire_stage(g: &Graph, s: &DeductionState) -> Option<Vec<Fire>> {
    fireable(g, s).first().map(|&v| {
        vec![Fire {
            vertex: v,
            targets: Vec::new(),
        }]
    })
}

fn finish(state: DeductionState) -> DeductionOutcome {
    DeductionOutcome {
        terminal: state.positions(),
        protected: state.protected,
        sequence: state.history,
    }
}

/// Runs deduction until no vertex can fire.
pub fn run_deduction(
    g: &Graph,
    l: &Layout,
    policy: &FiringPolicy,
) -> Result<DeductionOutcome, DeductionError> {
    let mut state = DeductionState::new(g, l)?;
    let mut rng = match policy {
        FiringPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    if let FiringPolicy::Explicit(seq) = policy {
        for stage in &seq.stages {
            state.apply_stage(g, stage)?;
        }
    }
    loop {
        let stage = match policy {
            FiringPolicy::AllFireable => {
                let f = fireable(g, &state);
                (!f.is_empty()).then(|| {
                    f.into_iter()
                        .map(|v| Fire {
                            vertex: v,
                            targets: Vec::new(),
                        })
                        .collect()
                })
            }
            FiringPolicy::SingleFire | FiringPolicy::Explicit(_) => single_fire_stage(g, &state),
            FiringPolicy::Random(_) => {
                let f = fireable(g, &state);
                let rng = rng.as_mut().expect("seeded above");
                (!f.is_empty()).then(|| {
                    let mut pick: Vec<usize> = Vec::new();
                    while pick.is_empty() {
                        pick = f.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                    }
                    pick.into_iter()
                        .map(|v| Fire {
                            vertex: v,
                            targets: Vec::new(),
                        })
                        .collect()
                })
            }
        };
        match stage {
            Some(stage) => state.apply_stage(g, &stage)?,
            None => return Ok(finish(state)),
        }
    }
}

/// Replays exactly the given stages, with no continuation.
pub fn verify_sequence(
    g: &Graph,
    l: &Layout,
    seq: &FiringSequence,
) -> Result<DeductionOutcome, DeductionError> {
    let mut state = DeductionState::new(g, l)?;
    for stage in &seq.stages {
        state.apply_stage(g, stage)?;
    }
    Ok(finish(state))
}

pub fn is_successful(g: &Graph, l: &Layout) -> bool {
    run_deduction(g, l, &FiringPolicy::AllFireable)
        .map(|o| o.all_protected())
        .unwrap_or(false)
}

/// Compares the protected sets reached by all-fireable, single-fire and
/// `trials` random policies.
pub fn check_order_invariance(g: &Graph, l: &Layout, trials: usize, seed: u64) -> bool {
    let run = |p: FiringPolicy| run_deduction(g, l, &p).map(|o| o.protected);
    let reference = match run(FiringPolicy::AllFireable) {
        Ok(p) => p,
        Err(_) => return false,
    };
    if run(FiringPolicy::SingleFire).as_ref() != Ok(&reference) {
        return false;
    }
    (0..trials as u64).all(|t| run(FiringPolicy::Random(seed.wrapping_add(t))).as_ref() == Ok(&reference))
}

/// Result of the terminal-layout check for one firing policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalCheck {
    pub terminal: Layout,
    pub forward: FiringSequence,
    /// `(S'_k, ..., S'_1)`: each stage fires from the targets of the
    /// matching forward stage back to the vertices that fired into them.
    pub reversed: FiringSequence,
    pub terminal_successful: bool,
    /// The reversed sequence is valid from the terminal layout, protects
    /// every vertex, and returns the searchers to the starting layout.
    pub reversed_valid: bool,
}

impl TerminalCheck {
    pub fn holds(&self) -> bool {
        self.terminal_successful && self.reversed_valid
    }
}

pub fn reverse_sequence(seq: &FiringSequence) -> FiringSequence {
    let stages = seq
        .stages
        .iter()
        .rev()
        .map(|stage| {
            let mut back: Vec<Fire> = Vec::new();
            let mut pairs: Vec<(usize, usize)> = stage
                .iter()
                .flat_map(|f| f.targets.iter().map(move |&t| (t, f.vertex)))
                .collect();
            pairs.sort_unstable();
            for (t, src) in pairs {
                match back.last_mut() {
                    Some(last) if last.vertex == t => last.targets.push(src),
                    _ => back.push(Fire {
                        vertex: t,
                        targets: vec![src],
                    }),
                }
            }
            back
        })
        .filter(|s| !s.is_empty())
        .collect();
    FiringSequence { stages }
}

pub fn check_terminal_success(g: &Graph, l: &Layout) -> Result<TerminalCheck, DeductionError> {
    check_terminal_success_with(g, l, &FiringPolicy::SingleFire)
}

/// Reaches a terminal layout of `l` with `policy`, then checks that it is
/// successful and that the reversed sequence leads back to `l`.
pub fn check_terminal_success_with(
    g: &Graph,
    l: &Layout,
    policy: &FiringPolicy,
) -> Result<TerminalCheck, DeductionError> {
    let forward = run_deduction(g, l, policy)?;
    if !forward.all_protected() {
        return Err(DeductionError::NotSuccessful);
    }
    let reversed = reverse_sequence(&forward.sequence);
    let reversed_valid = match verify_sequence(g, &forward.terminal, &reversed) {
        Ok(back) => back.all_protected() && back.terminal == *l,
        Err(_) => false,
    };
    Ok(TerminalCheck {
        terminal_successful: is_successful(g, &forward.terminal),
        terminal: forward.terminal,
        forward: forward.sequence,
        reversed,
        reversed_valid,
    })
}
