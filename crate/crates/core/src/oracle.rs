//! Exhaustive ground truth for small graphs. Vertex sets are `u64` masks, so
//! every oracle refuses inputs (or components) beyond 64 vertices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{deposit, first_subset, iter_bits, low_mask, mask_of};
use crate::deduction::{is_successful, Layout};
use crate::graph::{induced_subgraph, Edge, Graph};
use crate::report::{Method, Parameter, ParameterResult, Witness};

pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{size} vertices exceed the exhaustive limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

fn masks(g: &Graph) -> Result<Vec<u64>, OracleError> {
    g.adjacency_masks().ok_or(OracleError::TooLarge {
        size: g.n(),
        limit: MASK_LIMIT,
    })
}

/// Final colored set of constrained forcing from `init`.
pub fn czf_closure(adj: &[u64], init: u64) -> u64 {
    let mut colored = init;
    let mut forcers = init;
    loop {
        let mut changed = false;
        for v in iter_bits(forcers) {
            let unc = adj[v] & !colored;
            if unc == 0 {
                forcers &= !(1 << v);
            } else if unc & (unc - 1) == 0 {
                colored |= unc;
                forcers &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            return colored;
        }
    }
}

/// Exact constrained zero forcing number, summed over components.
pub fn czf_exact(g: &Graph) -> Result<ParameterResult, OracleError> {
    czf_exact_with(g, false)
}

/// As [`czf_exact`]; with `parallel` each subset size is searched on the
/// rayon pool. The witness is the same either way.
pub fn czf_exact_with(g: &Graph, parallel: bool) -> Result<ParameterResult, OracleError> {
    let mut value = 0;
    let mut witness = Vec::new();
    for comp in g.components() {
        let mut keep = vec![false; g.n()];
        for &v in &comp {
            keep[v] = true;
        }
        let sub = induced_subgraph(g, &keep);
        let adj = masks(&sub.graph)?;
        let n = comp.len();
        let full = low_mask(n);
        let lower = if sub.graph.m() == 0 { 1 } else { n.div_ceil(2) };
        let found = (lower..=n)
            .find_map(|k| first_subset(n, k, parallel, |s| czf_closure(&adj, s) == full))
            .expect("the full vertex set always forces");
        value += found.count_ones() as usize;
        witness.extend(iter_bits(found).map(|i| sub.new_to_old[i]));
    }
    witness.sort_unstable();
    Ok(ParameterResult {
        parameter: Parameter::Czf,
        value,
        method: Method::Exact,
        witness: Witness::ForcingSet { vertices: witness },
    })
}

/// Smallest successful standard layout, found by running free deduction on
/// every vertex subset in order of size.
pub fn d_exact(g: &Graph) -> Result<ParameterResult, OracleError> {
    d_exact_with(g, false)
}

pub fn d_exact_with(g: &Graph, parallel: bool) -> Result<ParameterResult, OracleError> {
    masks(g)?;
    let n = g.n();
    let found = (0..=n)
        .find_map(|k| {
            first_subset(n, k, parallel, |s| is_successful(g, &Layout::from_mask(n, s)))
        })
        .expect("the full vertex set is successful");
    Ok(ParameterResult {
        parameter: Parameter::D,
        value: found.count_ones() as usize,
        method: Method::Exact,
        witness: Witness::Layout {
            vertices: iter_bits(found).collect(),
        },
    })
}

/// Smallest successful layout when vertices may hold several searchers.
pub fn d_exact_general(g: &Graph) -> Result<(usize, Layout), OracleError> {
    masks(g)?;
    let n = g.n();
    fn search(g: &Graph, counts: &mut Vec<u32>, from: usize, left: u32) -> bool {
        if left == 0 {
            return is_successful(g, &Layout::from_counts(counts.clone()));
        }
        for v in from..counts.len() {
            counts[v] += 1;
            if search(g, counts, v, left - 1) {
                return true;
            }
            counts[v] -= 1;
        }
        false
    }
    for k in 0..=n as u32 {
        let mut counts = vec![0; n];
        if search(g, &mut counts, 0, k) {
            return Ok((k as usize, Layout::from_counts(counts)));
        }
    }
    unreachable!("one searcher per vertex is successful")
}

/// Greedy completion of constrained fast-mixed search on masks: `pre` and
/// `place` start occupied, then the lowest slidable searcher slides until
/// none can. Edges are tracked explicitly.
pub fn cfms_greedy(adj: &[u64], pre: u64, place: u64) -> bool {
    let n = adj.len();
    let mut cont = [0u64; 64];
    cont[..n].copy_from_slice(adj);
    let mut occupied = pre | place;
    let mut visited = occupied;
    let mut unslid = occupied;
    for v in iter_bits(occupied) {
        cont[v] &= !occupied;
    }
    'outer: loop {
        for u in iter_bits(occupied & unslid) {
            let c = cont[u];
            if c != 0 && c & (c - 1) == 0 {
                let w = c.trailing_zeros() as usize;
                cont[u] = 0;
                cont[w] &= !(1 << u);
                occupied = (occupied & !(1 << u)) | (1 << w);
                unslid &= !(1 << u);
                visited |= 1 << w;
                for x in iter_bits(adj[w] & occupied) {
                    cont[w] &= !(1 << x);
                    cont[x] &= !(1 << w);
                }
                continue 'outer;
            }
        }
        break;
    }
    visited == low_mask(n) && cont[..n].iter().all(|&c| c == 0)
}

/// Fewest placements whose greedy slide completion clears the graph.
pub fn cfms_exact(g: &Graph) -> Result<ParameterResult, OracleError> {
    cfms_exact_with(g, false)
}

pub fn cfms_exact_with(g: &Graph, parallel: bool) -> Result<ParameterResult, OracleError> {
    let adj = masks(g)?;
    let n = g.n();
    let found = (0..=n)
        .find_map(|k| first_subset(n, k, parallel, |s| cfms_greedy(&adj, 0, s)))
        .expect("occupying every vertex clears the graph");
    let placements: Vec<usize> = iter_bits(found).collect();
    let (strategy, ok) = crate::search::greedy_completion(g, &[], &placements);
    debug_assert!(ok);
    Ok(ParameterResult {
        parameter: Parameter::Cfms,
        value: placements.len(),
        method: Method::Exact,
        witness: Witness::Strategy { strategy },
    })
}

/// Fewest extra placements clearing `g` when `pre` already hold searchers
/// that may each slide once. Returns the count and the placements.
pub fn cfms_preoccupied_exact(g: &Graph, pre: &[usize]) -> Result<(usize, Vec<usize>), OracleError> {
    let adj = masks(g)?;
    let pre_mask = mask_of(pre);
    let free: Vec<usize> = (0..g.n()).filter(|v| pre_mask >> v & 1 == 0).collect();
    for k in 0..=free.len() {
        if let Some(c) = first_subset(free.len(), k, false, |c| {
            cfms_greedy(&adj, pre_mask, deposit(c, &free))
        }) {
            return Ok((k, iter_bits(deposit(c, &free)).collect()));
        }
    }
    unreachable!("occupying every vertex clears the graph")
}

/// A matching `M` that is the unique perfect matching of the bipartite
/// subgraph formed by the edges between `v1` and `v2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessWitness {
    pub matching: Vec<Edge>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

/// Number of perfect matchings between `left` and `right` (equal sizes)
/// using edges of `adj`, counting no further than 2.
fn count_perfect_matchings(adj: &[u64], left: u64, right: u64) -> u32 {
    if left == 0 {
        return 1;
    }
    let v = left.trailing_zeros() as usize;
    let mut total = 0;
    for w in iter_bits(adj[v] & right) {
        total += count_perfect_matchings(adj, left & !(1 << v), right & !(1 << w));
        if total >= 2 {
            return 2;
        }
    }
    total
}

impl UniquenessWitness {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let adj = masks(g).map_err(|e| e.to_string())?;
        if self.v1.iter().chain(&self.v2).any(|&v| v >= g.n()) {
            return Err("vertex out of range".into());
        }
        let a = mask_of(&self.v1);
        let b = mask_of(&self.v2);
        if a & b != 0 {
            return Err("V1 and V2 intersect".into());
        }
        let k = self.matching.len();
        if a.count_ones() as usize != k || b.count_ones() as usize != k || self.v1.len() != k || self.v2.len() != k {
            return Err("|M|, |V1| and |V2| differ".into());
        }
        let mut seen = 0u64;
        for e in &self.matching {
            if !g.has_edge(e.0, e.1) {
                return Err(format!("{e} is not an edge"));
            }
            let ends = (1u64 << e.0) | (1u64 << e.1);
            if seen & ends != 0 {
                return Err(format!("{e} shares an endpoint with another matching edge"));
            }
            seen |= ends;
            let crosses = (a >> e.0 & 1 == 1 && b >> e.1 & 1 == 1) || (a >> e.1 & 1 == 1 && b >> e.0 & 1 == 1);
            if !crosses {
                return Err(format!("{e} does not join V1 to V2"));
            }
        }
        if count_perfect_matchings(&adj, a, b) != 1 {
            return Err("the bipartite subgraph has more than one perfect matching".into());
        }
        Ok(())
    }

    /// True if some vertex has exactly one neighbour across the bipartition.
    pub fn has_degree_one_vertex(&self, g: &Graph) -> bool {
        let a = mask_of(&self.v1);
        let b = mask_of(&self.v2);
        let cross = |v: usize, other: u64| g.neighbors(v).iter().filter(|&&w| other >> w & 1 == 1).count();
        self.v1.iter().any(|&v| cross(v, b) == 1) || self.v2.iter().any(|&v| cross(v, a) == 1)
    }

    /// `V(G) \ V2`, which colors the graph under constrained forcing.
    pub fn forcing_set(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|v| !self.v2.contains(v)).collect()
    }
}

/// Largest matching with the uniqueness property, by enumerating matchings
/// from the largest size down and trying every split of their endpoints.
pub fn mu_exact(g: &Graph) -> Result<ParameterResult, OracleError> {
    let adj = masks(g)?;
    let edges = g.edges();

    fn pick(
        edges: &[Edge],
        adj: &[u64],
        from: usize,
        used: u64,
        chosen: &mut Vec<Edge>,
        need: usize,
    ) -> Option<(u64, u64)> {
        if chosen.len() == need {
            return orient(adj, chosen);
        }
        for i in from..edges.len() {
            if edges.len() - i < need - chosen.len() {
                break;
            }
            let e = edges[i];
            let ends = (1u64 << e.0) | (1u64 << e.1);
            if used & ends != 0 {
                continue;
            }
            chosen.push(e);
            if let Some(found) = pick(edges, adj, i + 1, used | ends, chosen, need) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    // The first edge's orientation is fixed: swapping V1 and V2 gives the same subgraph.
    fn orient(adj: &[u64], m: &[Edge]) -> Option<(u64, u64)> {
        let k = m.len();
        (0..1u64 << k.saturating_sub(1)).find_map(|bits| {
            let (mut a, mut b) = (0u64, 0u64);
            for (i, e) in m.iter().enumerate() {
                let flip = i > 0 && bits >> (i - 1) & 1 == 1;
                let (x, y) = if flip { (e.1, e.0) } else { (e.0, e.1) };
                a |= 1 << x;
                b |= 1 << y;
            }
            (count_perfect_matchings(adj, a, b) == 1).then_some((a, b))
        })
    }

    for size in (0..=g.n() / 2).rev() {
        let mut chosen = Vec::new();
        if let Some((a, b)) = pick(edges, &adj, 0, 0, &mut chosen, size) {
            return Ok(ParameterResult {
                parameter: Parameter::Mu,
                value: size,
                method: Method::Exact,
                witness: Witness::Uniqueness(UniquenessWitness {
                    matching: chosen,
                    v1: iter_bits(a).collect(),
                    v2: iter_bits(b).collect(),
                }),
            });
        }
    }
    unreachable!("the empty matching always qualifies")
}

fn mis(adj: &[u64], cand: u64, cur: u64, best: &mut u64) {
    if cur.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    if cand == 0 {
        *best = cur;
        return;
    }
    let mut pivot = None;
    let mut pivot_deg = 0;
    for v in iter_bits(cand) {
        let d = (adj[v] & cand).count_ones();
        if d == 0 {
            return mis(adj, cand & !(1 << v), cur | (1 << v), best);
        }
        if pivot.is_none() || d > pivot_deg {
            pivot = Some(v);
            pivot_deg = d;
        }
    }
    let v = pivot.expect("cand is nonempty");
    mis(adj, cand & !adj[v] & !(1 << v), cur | (1 << v), best);
    mis(adj, cand & !(1 << v), cur, best);
}

/// Maximum independent set by branch and bound.
pub fn alpha_exact(g: &Graph) -> Result<ParameterResult, OracleError> {
    let adj = masks(g)?;
    let mut best = 0u64;
    if g.n() > 0 {
        // seed the bound with a single vertex so the first leaf is accepted only if larger
        mis(&adj, low_mask(g.n()), 0, &mut best);
    }
    Ok(ParameterResult {
        parameter: Parameter::Alpha,
        value: best.count_ones() as usize,
        method: Method::Exact,
        witness: Witness::IndependentSet {
            vertices: iter_bits(best).collect(),
        },
    })
}

/// Whether `g` has a vertex cover with at most `l` vertices.
pub fn vertex_cover_decide(g: &Graph, l: usize) -> Result<bool, OracleError> {
    Ok(g.n() - alpha_exact(g)?.value <= l)
}
