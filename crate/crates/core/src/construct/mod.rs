//! Derived graphs and experiments: the vertex-cover reduction, subdivision,
//! edge perturbation sweeps and monotone edge chains.

use thiserror::Error;

use crate::graph::GraphError;
use crate::oracle::OracleError;

mod chain;
mod reduction;
mod subdivision;
mod sweep;

pub use chain::{monotone_chain, verify_chain, ChainKind, MonotoneChain};
pub use reduction::{build_reduction, cover_to_strategy, vc_to_czf_reduction, Block, ReductionInstance, ReductionSidecar};
pub use subdivision::subdivision_value;
pub use sweep::{contraction_probe, perturb_delta, spectrum_witness, ContractionProbe};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("source graph is not cubic")]
    NotCubic,
    #[error("source graph is not connected")]
    NotConnected,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("invalid vertex cover: {0}")]
    InvalidCover(String),
    #[error("target {d} outside [{lo}, {hi}] for n = {n}")]
    OutOfRange { n: usize, d: usize, lo: usize, hi: usize },
    #[error("perturbation must add or remove an edge")]
    InvalidEdit,
    #[error("single edge edit moved the value from {before} to {after}")]
    StepTooLarge { before: usize, after: usize },
    #[error("chain step {step}: expected change {expected}, got {got}")]
    ChainMismatch { step: usize, expected: isize, got: isize },
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
