//! Polynomial-time solvers for structured graph families.

use thiserror::Error;

use crate::graph::GraphError;

mod attach;
mod cactus;
mod clique;
mod dismantle;
mod tree;

pub use attach::attach_trees_solve;
pub use cactus::{
    cactus_czf, cactus_solve, preoccupied_cycle_solve, preoccupied_path_solve, AuxNode, AuxiliaryTree,
    CactusInstance, CactusPlan, CycleCase, LeafCase, TraceStep,
};
pub use clique::{clique_construction_value, clique_solve, find_clique_construction, CliqueConstruction};
pub use dismantle::{
    dismantlable_value, dismantle_solve, pendent_dismantle, pendent_dismantle_stats, unicyclic_solve,
    DismantlingOrdering,
};
pub(crate) use dismantle::cycle_pattern;
pub use tree::tree_solve;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("graph is not a forest")]
    NotForest,
    #[error("graph is not a connected unicyclic graph")]
    NotUnicyclic,
    #[error("graph is not a cactus forest")]
    NotCactus,
    #[error("graph is not a disjoint union of paths")]
    NotPaths,
    #[error("graph is not a cycle")]
    NotCycle,
    #[error("graph has no pendent-edge dismantling ordering")]
    NotDismantlable,
    #[error("graph has no clique-construction ordering")]
    NotCliqueConstructable,
    #[error("invalid dismantling ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid clique construction: {0}")]
    InvalidConstruction(String),
    #[error("invalid attachment: {0}")]
    InvalidAttachment(String),
    #[error("tree attached at vertex {0} has no leaf at odd distance")]
    NoOddLeaf(usize),
    #[error("pre-occupied vertex {0} out of range")]
    PreoccupiedOutOfRange(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
