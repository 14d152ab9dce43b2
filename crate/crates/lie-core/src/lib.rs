//! Root-system combinatorics for finite products of simple Lie algebras of
//! types A, B, C, D, F4 and G2.
//!
//! All arithmetic is integral. Node indices are 0-based in the API; the
//! Bourbaki numbering `1..=n` maps to `0..n`. See [`cartan`] for the Cartan
//! convention.

pub mod cartan;
mod freudenthal;
mod root_system;
mod weight;
mod weyl;

use thiserror::Error;

pub use cartan::Series;
pub use freudenthal::{Character, DEFAULT_WEIGHT_BOUND};
pub use root_system::{Factor, RootSystem};
pub use weight::Weight;
pub use weyl::Dominantization;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("node {node} out of range for rank {rank}")]
    InvalidNode { node: usize, rank: usize },
    #[error("weight has {got} coordinates, root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("representation of dimension {dim} exceeds the bound {bound}")]
    ResourceBound { dim: String, bound: u64 },
    #[error("dimension {0} does not fit in 64 bits")]
    Overflow(String),
}

/// A subset of Dynkin nodes, used for Levi subsystems.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NodeMask(Vec<bool>);

impl NodeMask {
    pub fn full(rank: usize) -> Self {
        NodeMask(vec![true; rank])
    }

    pub fn empty(rank: usize) -> Self {
        NodeMask(vec![false; rank])
    }

    pub fn from_nodes(rank: usize, nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut m = vec![false; rank];
        for i in nodes {
            m[i] = true;
        }
        NodeMask(m)
    }

    /// All nodes except `removed`.
    pub fn complement_of(rank: usize, removed: impl IntoIterator<Item = usize>) -> Self {
        let mut m = vec![true; rank];
        for i in removed {
            m[i] = false;
        }
        NodeMask(m)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl RootSystem {
    /// ρ, the all-ones weight.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }
}
