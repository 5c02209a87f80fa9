use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::graph::{classify, strong_product_k2, Edge, EdgeRole, Graph, Role};
use crate::search::{Action, Strategy};

/// A K4-block: two base vertices of `G ⊠ K2` joined by a non-base edge and
/// the two inner vertices added for that edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub base: [usize; 2],
    pub inner: [usize; 2],
}

impl Block {
    pub fn vertices(&self) -> [usize; 4] {
        [self.base[0], self.base[1], self.inner[0], self.inner[1]]
    }
}

/// The vertex cover instance `(g, l)` turned into a graph `h` and budget `k`.
///
/// Vertex `v` of `g` appears as `v` and `v + n` in `h`; inner vertices start
/// at `2n`. `blocks[i]` lists the four blocks of edge `g.edges()[i]` in the
/// order `(a, b)`, `(a, b+n)`, `(a+n, b)`, `(a+n, b+n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub h: Graph,
    pub k: usize,
    pub source: Graph,
    pub l: usize,
    pub blocks: Vec<[Block; 4]>,
}

/// Metadata written next to the edge list of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSidecar {
    pub k: usize,
    pub l: usize,
    pub source_n: usize,
    pub blocks: Vec<EdgeBlocks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBlocks {
    pub edge: Edge,
    pub blocks: [Block; 4],
}

impl ReductionInstance {
    pub fn sidecar(&self) -> ReductionSidecar {
        ReductionSidecar {
            k: self.k,
            l: self.l,
            source_n: self.source.n(),
            blocks: self
                .source
                .edges()
                .iter()
                .zip(&self.blocks)
                .map(|(&edge, &blocks)| EdgeBlocks { edge, blocks })
                .collect(),
        }
    }

    /// Checks vertex and edge counts, the budget, the degree bound
    /// `6Δ(g) + 1` (19 for cubic input) and that every block is a K4 with
    /// exactly two inner vertices.
    pub fn check_invariants(&self) -> Result<(), String> {
        let (n, m) = (self.source.n(), self.source.m());
        if self.h.n() != 2 * n + 8 * m {
            return Err(format!("{} vertices, expected {}", self.h.n(), 2 * n + 8 * m));
        }
        if self.h.m() != 24 * m + n {
            return Err(format!("{} edges, expected {}", self.h.m(), 24 * m + n));
        }
        if self.k != 4 * m + n + self.l {
            return Err(format!("budget {} != 4m + n + l", self.k));
        }
        let bound = 6 * self.source.max_degree() + 1;
        if self.h.max_degree() > bound {
            return Err(format!("maximum degree {} exceeds {bound}", self.h.max_degree()));
        }
        for quad in &self.blocks {
            for b in quad {
                let vs = b.vertices();
                for (i, &x) in vs.iter().enumerate() {
                    if vs[i + 1..].iter().any(|&y| !self.h.has_edge(x, y)) {
                        return Err(format!("block {vs:?} is not complete"));
                    }
                }
                let inner = vs.iter().filter(|&&v| self.h.role(v) == Role::Inner).count();
                if inner != 2 {
                    return Err(format!("block {vs:?} has {inner} inner vertices"));
                }
            }
        }
        Ok(())
    }
}

/// Builds the reduction for a connected cubic `g` and budget `l >= 1`.
pub fn vc_to_czf_reduction(g: &Graph, l: usize) -> Result<ReductionInstance, ConstructError> {
    let s = classify(g);
    if !s.is_cubic {
        return Err(ConstructError::NotCubic);
    }
    if !s.is_connected {
        return Err(ConstructError::NotConnected);
    }
    build_reduction(g, l)
}

/// The same construction without the cubic and connectivity checks, for
/// small inputs where the exact oracles still reach `h`.
pub fn build_reduction(g: &Graph, l: usize) -> Result<ReductionInstance, ConstructError> {
    if l == 0 {
        return Err(ConstructError::ZeroBudget);
    }
    let (n, m) = (g.n(), g.m());
    let product = strong_product_k2(g);
    let mut edges: Vec<(usize, usize)> = product.edges().iter().map(|e| (e.0, e.1)).collect();
    let mut edge_roles: BTreeMap<Edge, EdgeRole> = product.edge_roles().cloned().unwrap_or_default();
    let mut blocks = Vec::with_capacity(m);
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.0, e.1);
        let pairs = [(a, b), (a, b + n), (a + n, b), (a + n, b + n)];
        let quad = std::array::from_fn(|j| {
            let (u, v) = pairs[j];
            let p = 2 * n + 8 * i + 2 * j;
            let q = p + 1;
            for (x, y) in [(p, q), (u, p), (u, q), (v, p), (v, q)] {
                edges.push((x, y));
                edge_roles.insert(Edge::new(x, y), EdgeRole::Plain);
            }
            Block {
                base: [u, v],
                inner: [p, q],
            }
        });
        blocks.push(quad);
    }
    let mut roles = vec![Role::Base; 2 * n];
    roles.extend(std::iter::repeat_n(Role::Inner, 8 * m));
    let h = Graph::new(2 * n + 8 * m, edges)?
        .with_roles(roles)?
        .with_edge_roles(edge_roles)?;
    Ok(ReductionInstance {
        h,
        k: 4 * m + n + l,
        source: g.clone(),
        l,
        blocks,
    })
}

/// Turns a vertex cover of the source graph into a clearing strategy for
/// `h` with `k` searchers.
///
/// Searchers go on every first-copy vertex, on the second copies of the
/// cover (padded with the smallest other vertices up to `l`), and on one
/// inner vertex of every block. Slides then run in three rounds: inner
/// vertices of blocks whose base vertices are both occupied, first copies of
/// vertices outside the padded cover onto their twins, and the remaining
/// inner vertices.
pub fn cover_to_strategy(inst: &ReductionInstance, cover: &[usize]) -> Result<Strategy, ConstructError> {
    let g = &inst.source;
    let n = g.n();
    let mut in_cover = vec![false; n];
    for &v in cover {
        if v >= n {
            return Err(ConstructError::InvalidCover(format!("vertex {v} out of range")));
        }
        if in_cover[v] {
            return Err(ConstructError::InvalidCover(format!("vertex {v} repeated")));
        }
        in_cover[v] = true;
    }
    if cover.len() > inst.l {
        return Err(ConstructError::InvalidCover(format!(
            "{} vertices exceed the budget {}",
            cover.len(),
            inst.l
        )));
    }
    if let Some(e) = g.edges().iter().find(|e| !in_cover[e.0] && !in_cover[e.1]) {
        return Err(ConstructError::InvalidCover(format!("edge {e} is uncovered")));
    }
    let mut padded = in_cover.clone();
    let mut extra = inst.l.min(n) - cover.len();
    for flag in padded.iter_mut() {
        if extra == 0 {
            break;
        }
        if !*flag {
            *flag = true;
            extra -= 1;
        }
    }

    let mut actions: Vec<Action> = (0..n).map(Action::Place).collect();
    actions.extend((0..n).filter(|&v| padded[v]).map(|v| Action::Place(v + n)));
    let all_blocks = || inst.blocks.iter().flatten();
    actions.extend(all_blocks().map(|b| Action::Place(b.inner[0])));

    let occupied = |x: usize| x < n || padded[x - n];
    let mut done = vec![false; inst.blocks.len() * 4];
    for (i, b) in all_blocks().enumerate() {
        if occupied(b.base[0]) && occupied(b.base[1]) {
            actions.push(Action::Slide(b.inner[0], b.inner[1]));
            done[i] = true;
        }
    }
    actions.extend((0..n).filter(|&v| !padded[v]).map(|v| Action::Slide(v, v + n)));
    for (i, b) in all_blocks().enumerate() {
        if !done[i] {
            actions.push(Action::Slide(b.inner[0], b.inner[1]));
        }
    }
    Ok(Strategy::new(actions))
}
