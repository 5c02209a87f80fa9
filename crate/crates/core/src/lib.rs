//! Constrained zero forcing, deduction and constrained fast-mixed search on
//! simple graphs: simulators, exact oracles, structural solvers and the
//! extremal constructions built on them.

pub mod bits;
pub mod construct;
pub mod deduction;
pub mod family;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod search;

pub use graph::{parse_edge_list, Edge, Graph, GraphError};
