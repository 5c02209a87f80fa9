use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::graph::{edit_edge, generate, Edge, EdgeEdit, FamilySpec, Graph};
use crate::oracle::czf_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Decrease,
    Increase,
    Neutral,
}

impl ChainKind {
    pub fn delta(self) -> isize {
        match self {
            ChainKind::Decrease => -1,
            ChainKind::Increase => 1,
            ChainKind::Neutral => 0,
        }
    }
}

/// A base graph and edges whose successive additions each change `czf` by
/// `kind.delta()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneChain {
    pub kind: ChainKind,
    pub base: Graph,
    pub edges: Vec<Edge>,
}

/// Builds a chain of the given kind:
/// * `Decrease`: the star on `m` vertices, joining leaves in pairs
///   `(1,2), (3,4), ...`, `floor(m/2) - 1` steps.
/// * `Increase`: `m` copies of K4 minus an edge hung on a star, adding each
///   missing edge, `m` steps.
/// * `Neutral`: the star on `2m` vertices with `m - 1` matching edges among
///   its leaves, adding `a_i a_j`, then `b_i b_j`, then `a_i b_j` (`i < j`),
///   `(m-1)(3m-4)/2` steps.
pub fn monotone_chain(kind: ChainKind, m: usize) -> Result<MonotoneChain, ConstructError> {
    if m < 2 {
        return Err(ConstructError::Internal("chains need m >= 2".into()));
    }
    let (base, edges) = match kind {
        ChainKind::Decrease => {
            let steps = m / 2 - 1;
            let edges = (0..steps).map(|i| Edge(2 * i + 1, 2 * i + 2)).collect();
            (generate(FamilySpec::Star(m))?, edges)
        }
        ChainKind::Increase => {
            let edges = (0..m).map(|j| Edge(2 + 4 * j, 5 + 4 * j)).collect();
            (generate(FamilySpec::K4MinusStar(m))?, edges)
        }
        ChainKind::Neutral => {
            let a = |i: usize| i - 1;
            let b = |i: usize| m + i - 1;
            let mut edges = Vec::new();
            for i in 2..=m {
                for j in i + 1..=m {
                    edges.push(Edge(a(i), a(j)));
                }
            }
            for i in 1..=m {
                for j in i + 1..=m {
                    edges.push(Edge(b(i), b(j)));
                }
            }
            for i in 2..=m {
                for j in i + 1..=m {
                    edges.push(Edge(a(i), b(j)));
                }
            }
            (generate(FamilySpec::StarPlusMatching(m))?, edges)
        }
    };
    Ok(MonotoneChain { kind, base, edges })
}

/// Adds the chain's edges one by one and checks every step with the exact
/// oracle. Returns the value of the base graph and after every step.
pub fn verify_chain(chain: &MonotoneChain) -> Result<Vec<usize>, ConstructError> {
    let mut g = chain.base.clone();
    let mut values = vec![czf_exact(&g)?.value];
    for (step, &e) in chain.edges.iter().enumerate() {
        g = edit_edge(&g, e, EdgeEdit::Add)?.graph;
        let value = czf_exact(&g)?.value;
        let got = value as isize - *values.last().unwrap() as isize;
        if got != chain.kind.delta() {
            return Err(ConstructError::ChainMismatch {
                step,
                expected: chain.kind.delta(),
                got,
            });
        }
        values.push(value);
    }
    Ok(values)
}
