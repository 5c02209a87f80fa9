use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::graph::{edit_edge, generate, Edge, EdgeEdit, FamilySpec, Graph};
use crate::oracle::czf_exact;

fn czf(g: &Graph) -> Result<usize, ConstructError> {
    Ok(czf_exact(g)?.value)
}

/// A graph on `n` vertices with `czf = d`, for `ceil(n/2) <= d <= n - 1`.
///
/// Starts from `C_n` and adds the missing edges in lexicographic order,
/// stopping at the first graph whose value is `d`.
pub fn spectrum_witness(n: usize, d: usize) -> Result<Graph, ConstructError> {
    let (lo, hi) = (n.div_ceil(2), n.saturating_sub(1));
    if n < 3 || d < lo || d > hi {
        return Err(ConstructError::OutOfRange { n, d, lo, hi });
    }
    let mut g = generate(FamilySpec::Cycle(n))?;
    let mut current = czf(&g)?;
    for a in 0..n {
        for b in a + 1..n {
            if current == d {
                return Ok(g);
            }
            if g.has_edge(a, b) {
                continue;
            }
            let next = edit_edge(&g, Edge(a, b), EdgeEdit::Add)?.graph;
            let value = czf(&next)?;
            if value.abs_diff(current) >= 2 {
                return Err(ConstructError::StepTooLarge { before: current, after: value });
            }
            g = next;
            current = value;
        }
    }
    if current == d {
        Ok(g)
    } else {
        Err(ConstructError::Internal(format!("sweep from C_{n} to K_{n} never reached {d}")))
    }
}

/// `czf(edited) - czf(g)` after adding or removing `e`.
pub fn perturb_delta(g: &Graph, e: Edge, mode: EdgeEdit) -> Result<isize, ConstructError> {
    if mode == EdgeEdit::Contract {
        return Err(ConstructError::InvalidEdit);
    }
    let edited = edit_edge(g, e, mode)?.graph;
    let (before, after) = (czf(g)?, czf(&edited)?);
    if before.abs_diff(after) >= 2 {
        return Err(ConstructError::StepTooLarge { before, after });
    }
    Ok(after as isize - before as isize)
}

/// Values before and after contracting one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProbe {
    pub before: usize,
    pub after: usize,
}

impl ContractionProbe {
    /// Contraction raised the value.
    pub fn increased(&self) -> bool {
        self.after > self.before
    }
}

/// Contracts `e` and compares values. An increase by more than one is an
/// error; an increase by exactly one is reported through
/// [`ContractionProbe::increased`].
pub fn contraction_probe(g: &Graph, e: Edge) -> Result<ContractionProbe, ConstructError> {
    if !g.has_edge(e.0, e.1) {
        return Err(ConstructError::Graph(crate::graph::GraphError::MissingEdge(Edge::new(e.0, e.1))));
    }
    let contracted = edit_edge(g, e, EdgeEdit::Contract)?.graph;
    let probe = ContractionProbe {
        before: czf(g)?,
        after: czf(&contracted)?,
    };
    if probe.after > probe.before + 1 {
        return Err(ConstructError::StepTooLarge {
            before: probe.before,
            after: probe.after,
        });
    }
    Ok(probe)
}
