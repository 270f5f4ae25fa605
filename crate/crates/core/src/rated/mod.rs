//! Rated decomposition graphs and their `b`-indexed invariants.
//!
//! Nodes are pieces of the link (conical, or fibered mapping tori with a
//! collapse rate), edges are the tori along which they are glued. At a rate
//! `b` every fibered node of rate `> b` collapses onto its base circle; the
//! fundamental group is the graph-of-groups presentation of the result and
//! homology is that of the graph-of-spaces total complex.

mod filtration;
pub mod fixtures;
mod graph;
mod model;
pub mod random;
mod rate;

use thiserror::Error;

pub use filtration::{
    bcone, euler_matches, evaluate, filtration, interior_samples, jump_set, BCone, BFiltration, Interval, Level,
};
pub use graph::{EdgeEnd, EdgePiece, NodeKind, NodePiece, RatedGraph, TorusChains};
pub use model::{
    build_model, homology, hurewicz_check, pi1, structure_chain_map, structure_map, BModel, HurewiczMismatch,
    StructureMap,
};
pub use rate::{Rate, RateError};

use crate::chain::AbelianGroup;
use crate::presentation::PresentationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatedError {
    #[error("graph has no nodes")]
    Empty,
    #[error("id `{0}` is used twice")]
    DuplicateId(String),
    #[error("conical node {0} must have rate 1")]
    ConicalRate(String),
    #[error("complex of node {node} has dd != 0 in degree {degree}")]
    NodeComplex { node: String, degree: usize },
    #[error("complex of conical node {0} is not connected")]
    ConicalDisconnected(String),
    #[error("conical node {node}: abelianized group {abelianized} differs from H1 {h1}")]
    ConicalHomology {
        node: String,
        abelianized: AbelianGroup,
        h1: AbelianGroup,
    },
    #[error("{context}: {source}")]
    Presentation {
        context: String,
        source: PresentationError,
    },
    #[error("edge {edge} refers to unknown node index {node}")]
    UnknownNode { edge: String, node: usize },
    #[error("edge {edge} end {end}: {which}: {message}")]
    EdgeWord {
        edge: String,
        end: usize,
        which: String,
        message: String,
    },
    #[error("edge {edge} end {end}: {which} chain: {message}")]
    EdgeChain {
        edge: String,
        end: usize,
        which: String,
        message: String,
    },
    #[error("edge {edge} end {end} is at a conical node and needs explicit chains")]
    MissingChains { edge: String, end: usize },
    #[error("graph is disconnected: node {0} is unreachable")]
    Disconnected(String),
    #[error("structure maps go from higher to lower rate, got {from} -> {to}")]
    Order { from: Rate, to: Rate },
    #[error("link complex: {0}")]
    LinkComplex(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
}
