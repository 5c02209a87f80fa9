//! Parameter values together with replayable certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deduction::{is_successful, Layout};
use crate::graph::Graph;
use crate::oracle::UniquenessWitness;
use crate::search::{cfms_run, czf_run, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Czf,
    Cfms,
    D,
    Mu,
    Alpha,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::Czf => "czf",
            Parameter::Cfms => "cfms",
            Parameter::D => "d",
            Parameter::Mu => "mu",
            Parameter::Alpha => "alpha",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Tree,
    Unicyclic,
    Dismantle,
    Clique,
    Cactus,
    Formula,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Tree => "tree",
            Method::Unicyclic => "unicyclic",
            Method::Dismantle => "dismantle",
            Method::Clique => "clique",
            Method::Cactus => "cactus",
            Method::Formula => "formula",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Initial colored set for constrained zero forcing.
    ForcingSet { vertices: Vec<usize> },
    /// Deduction layout, one entry per searcher.
    Layout { vertices: Vec<usize> },
    Strategy { strategy: Strategy },
    Uniqueness(UniquenessWitness),
    IndependentSet { vertices: Vec<usize> },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("witness does not certify the value: {0}")]
pub struct ReplayError(pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterResult {
    pub parameter: Parameter,
    pub value: usize,
    pub method: Method,
    pub witness: Witness,
}

impl ParameterResult {
    /// Re-runs the witness through the simulator it belongs to and checks
    /// that it achieves `value`.
    pub fn replay(&self, g: &Graph) -> Result<(), ReplayError> {
        let fail = |m: String| Err(ReplayError(m));
        let sized = |len: usize| {
            if len == self.value {
                Ok(())
            } else {
                Err(ReplayError(format!("witness has size {len}, value is {}", self.value)))
            }
        };
        match &self.witness {
            Witness::ForcingSet { vertices } => {
                sized(vertices.len())?;
                if vertices.iter().any(|&v| v >= g.n()) {
                    return fail("vertex out of range".into());
                }
                if !czf_run(g, vertices).all_colored() {
                    return fail("forcing set does not color the graph".into());
                }
            }
            Witness::Layout { vertices } => {
                sized(vertices.len())?;
                if vertices.iter().any(|&v| v >= g.n()) {
                    return fail("vertex out of range".into());
                }
                if !is_successful(g, &Layout::from_vertices(g.n(), vertices)) {
                    return fail("layout is not successful".into());
                }
            }
            Witness::Strategy { strategy } => {
                sized(strategy.searchers())?;
                match cfms_run(g, strategy) {
                    Ok(out) if out.success => {}
                    Ok(_) => return fail("strategy leaves contamination".into()),
                    Err(e) => return fail(e.to_string()),
                }
            }
            Witness::Uniqueness(w) => {
                sized(w.matching.len())?;
                w.validate(g).map_err(ReplayError)?;
            }
            Witness::IndependentSet { vertices } => {
                sized(vertices.len())?;
                for (i, &a) in vertices.iter().enumerate() {
                    if a >= g.n() {
                        return fail("vertex out of range".into());
                    }
                    if vertices[i + 1..].iter().any(|&b| b == a || g.has_edge(a, b)) {
                        return fail(format!("vertex {a} repeats or has a neighbour in the set"));
                    }
                }
            }
        }
        Ok(())
    }
}
