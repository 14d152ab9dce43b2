//! Borel–Weil–Bott on G/P.
//!
//! A [`MarkedDiagram`] is a root system with a set of crossed nodes; the
//! parabolic P has Levi factor generated by the uncrossed nodes. An
//! [`IrreducibleBundle`] is `E_λ` for a P-dominant λ, normalized so that
//! `H^0(G/P, E_λ) = V_λ` when λ is dominant. With this convention `O(1)` on
//! a Grassmannian `G/P_k` is `E_{ω_k}` and the canonical bundle has weight
//! `-Σ_{α ∈ Φ+ \ Φ_L} α`.

mod graded;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use lie_core::{Dominantization, LieError, NodeMask, RootSystem, Weight};
use thiserror::Error;

pub use graded::{DegreeEntry, GradedDims};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BwbError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("weight {weight} is not P-dominant on {space}: negative at uncrossed node {node}")]
    NotPDominant { weight: Weight, space: String, node: usize },
    #[error("invalid marked diagram: {0}")]
    InvalidSpace(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// G/P given by a root system and its crossed nodes (0-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedDiagram {
    rs: Arc<RootSystem>,
    crossed: BTreeSet<usize>,
}

impl MarkedDiagram {
    pub fn new(rs: Arc<RootSystem>, crossed: impl IntoIterator<Item = usize>) -> Result<Self, BwbError> {
        let crossed: BTreeSet<usize> = crossed.into_iter().collect();
        if crossed.is_empty() {
            return Err(BwbError::InvalidSpace("no crossed nodes".into()));
        }
        if let Some(&bad) = crossed.iter().find(|&&c| c >= rs.rank()) {
            return Err(BwbError::InvalidSpace(format!("node {} out of range", bad + 1)));
        }
        Ok(MarkedDiagram { rs, crossed })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn crossed(&self) -> &BTreeSet<usize> {
        &self.crossed
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Uncrossed nodes, i.e. the simple roots of the Levi factor.
    pub fn levi_mask(&self) -> NodeMask {
        NodeMask::complement_of(self.rank(), self.crossed.iter().copied())
    }

    /// The same group with a different set of crossed nodes.
    pub fn with_crossed(&self, crossed: impl IntoIterator<Item = usize>) -> Result<Self, BwbError> {
        MarkedDiagram::new(self.rs.clone(), crossed)
    }

    fn non_levi_roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| self.crossed.iter().any(|&c| r[c] != 0))
            .map(|(k, _)| k)
    }

    pub fn dimension(&self) -> usize {
        self.non_levi_roots().count()
    }

    /// Semisimple part of the Levi factor, if any, and the torus rank.
    pub fn levi(&self) -> (Option<RootSystem>, usize) {
        let semisimple = self.rs.subsystem(&self.levi_mask()).map(|(rs, _)| rs);
        (semisimple, self.crossed.len())
    }

    pub fn levi_label(&self) -> String {
        match self.levi().0 {
            Some(rs) => format!("{rs} + T{}", self.crossed.len()),
            None => format!("T{}", self.crossed.len()),
        }
    }

    /// Weight of ω_{G/P}.
    pub fn canonical_weight(&self) -> Weight {
        let mut acc = Weight::zero(self.rank());
        for k in self.non_levi_roots() {
            acc = &acc - &self.rs.positive_roots_weights()[k];
        }
        acc
    }

    pub fn is_p_dominant(&self, w: &Weight) -> bool {
        self.rs.is_dominant_on(w, &self.levi_mask())
    }

    pub fn check_p_dominant(&self, w: &Weight) -> Result<(), BwbError> {
        self.rs.check_weight(w)?;
        if let Some(node) = self.levi_mask().nodes().find(|&i| w.0[i] < 0) {
            return Err(BwbError::NotPDominant { weight: w.clone(), space: self.to_string(), node: node + 1 });
        }
        Ok(())
    }

    /// The line bundle weight `Σ a_k ω_{c_k}` over the crossed nodes in order.
    pub fn line_weight(&self, degrees: &[i64]) -> Result<Weight, BwbError> {
        if degrees.len() != self.crossed.len() {
            return Err(BwbError::Parse(format!(
                "{} has {} crossed nodes, got {} degrees",
                self,
                self.crossed.len(),
                degrees.len()
            )));
        }
        let mut w = Weight::zero(self.rank());
        for (&c, &a) in self.crossed.iter().zip(degrees) {
            w.0[c] = a;
        }
        Ok(w)
    }

    /// Cohomology of `E_λ` for a weight assumed P-dominant.
    pub fn bwb(&self, weight: &Weight) -> Result<GradedDims, BwbError> {
        self.check_p_dominant(weight)?;
        Ok(bwb_unchecked(&self.rs, weight))
    }

    /// Relative Borel–Weil–Bott for `G/P -> G/Q` where Q is given by
    /// `target_crossed ⊆ crossed`. Returns the Q-dominant weight and the
    /// degree of the single nonvanishing higher direct image, or None if
    /// every direct image vanishes.
    pub fn pushforward(&self, weight: &Weight, target_crossed: &BTreeSet<usize>) -> Option<(Weight, usize)> {
        debug_assert!(target_crossed.is_subset(&self.crossed));
        let mask = NodeMask::complement_of(self.rank(), target_crossed.iter().copied());
        let shifted = weight + &self.rs.rho();
        match self.rs.dominantize_on(&shifted, &mask) {
            Dominantization::Singular => None,
            Dominantization::Regular { dominant, length } => Some((&dominant - &self.rs.rho(), length)),
        }
    }
}

/// Bott's algorithm for the full group: `λ + ρ` sorted, singular or one degree.
pub fn bwb_unchecked(rs: &RootSystem, weight: &Weight) -> GradedDims {
    let shifted = weight + &rs.rho();
    match rs.dominantize(&shifted) {
        Dominantization::Singular => GradedDims::zero(),
        Dominantization::Regular { dominant, length } => {
            let hw = &dominant - &rs.rho();
            let dim = rs.weyl_dim(&hw).expect("sorted weight is dominant");
            GradedDims::single(length as i64, hw, 1, dim)
        }
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.rs)?;
        for (i, c) in self.crossed.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", c + 1)?;
        }
        Ok(())
    }
}

impl FromStr for MarkedDiagram {
    type Err = BwbError;

    /// Grammar: `<series><rank>[x<series><rank>...]:x<i>[,x<j>...]` with
    /// 1-based node numbers, e.g. `A4:x2,x3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (group, nodes) = s
            .split_once(':')
            .ok_or_else(|| BwbError::Parse(format!("expected '<group>:x<i>,...' at position 0 in '{s}'")))?;
        let rs: RootSystem = group.parse()?;
        let mut crossed = Vec::new();
        let mut pos = group.len() + 1;
        for part in nodes.split(',') {
            let p = part.trim();
            let num = p.strip_prefix('x').unwrap_or(p);
            let n: usize = num
                .parse()
                .map_err(|_| BwbError::Parse(format!("bad node '{p}' at position {pos} in '{s}'")))?;
            if n == 0 || n > rs.rank() {
                return Err(BwbError::Parse(format!("node {n} out of range 1..={} at position {pos}", rs.rank())));
            }
            crossed.push(n - 1);
            pos += part.len() + 1;
        }
        MarkedDiagram::new(Arc::new(rs), crossed)
    }
}

/// An irreducible homogeneous bundle `E_λ` on G/P.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrreducibleBundle {
    space: MarkedDiagram,
    weight: Weight,
}

impl IrreducibleBundle {
    pub fn new(space: MarkedDiagram, weight: Weight) -> Result<Self, BwbError> {
        space.check_p_dominant(&weight)?;
        Ok(IrreducibleBundle { space, weight })
    }

    pub fn space(&self) -> &MarkedDiagram {
        &self.space
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn cohomology(&self) -> GradedDims {
        bwb_unchecked(self.space.root_system(), &self.weight)
    }

    pub fn rank(&self) -> Result<u64, BwbError> {
        Ok(self.space.root_system().weyl_dim_on(&self.weight, &self.space.levi_mask())?)
    }

    pub fn dual(&self) -> IrreducibleBundle {
        let w = self.space.root_system().dual_weight_on(&self.weight, &self.space.levi_mask());
        IrreducibleBundle { space: self.space.clone(), weight: w }
    }

    /// Tensor with a line bundle given by a weight supported on crossed nodes.
    pub fn twist(&self, line: &Weight) -> Result<IrreducibleBundle, BwbError> {
        IrreducibleBundle::new(self.space.clone(), &self.weight + line)
    }

    /// Weight of the determinant line bundle: the sum of all Levi weights.
    pub fn det_weight(&self) -> Result<Weight, BwbError> {
        let rs = self.space.root_system();
        let ch = rs.freudenthal_weights_on(&self.weight, &self.space.levi_mask(), lie_core::DEFAULT_WEIGHT_BOUND)?;
        let mut acc = Weight::zero(rs.rank());
        for (w, m) in ch {
            acc = acc.add_scaled(&w, m as i64);
        }
        Ok(acc)
    }
}

impl fmt::Display for IrreducibleBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{} on {}", self.weight, self.space)
    }
}
