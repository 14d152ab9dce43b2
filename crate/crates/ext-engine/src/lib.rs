//! Ext groups between homogeneous bundles on G/P and on the hyperplane
//! section M = Z(s) of a roof, s ∈ H^0(L).
//!
//! A bundle is stored as a list of pieces, each irreducible for the Levi
//! factor of a "home" parabolic Q_C ⊇ P, tensored with a line bundle
//! pulled back from nodes outside C. Pieces of one bundle may be glued by
//! nontrivial extensions, so cohomology of a multi-piece bundle is the
//! first page of a spectral sequence; it is resolved only positionally.

mod eightfold;
mod les;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use bwb::{bwb_unchecked, BwbError, GradedDims, IrreducibleBundle, MarkedDiagram};
use lie_core::{LieError, NodeMask, Weight};
use roof_catalog::{BundleRef, CatalogError, RoofDescriptor};
use serde::Serialize;
use tensor::{extract_irreducibles, klimyk_on, BundleSum, TensorError, DEFAULT_ENUM_BOUND};
use thiserror::Error;

pub use eightfold::{eightfold, EightfoldReport, KoszulEntry, KoszulTable};
pub use les::{resolve_koszul, KoszulResolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Bwb(#[from] BwbError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("bundles live on different spaces: {0} and {1}")]
    SpaceMismatch(String, String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("Euler characteristic does not balance: {0}")]
    Euler(String),
}

/// An equivariant bundle on `space`, given by Levi(Q_home)-irreducible
/// pieces and a line bundle twist supported on crossed nodes outside home.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousBundle {
    space: MarkedDiagram,
    home: BTreeSet<usize>,
    pieces: Vec<Weight>,
    twist: Weight,
}

impl HomogeneousBundle {
    /// Twist coordinates on home nodes are absorbed into the pieces. A
    /// single one-dimensional piece is normalized to a line bundle.
    pub fn new(
        space: MarkedDiagram,
        home: BTreeSet<usize>,
        pieces: Vec<Weight>,
        twist: Weight,
    ) -> Result<Self, ExtError> {
        let rs = space.root_system();
        rs.check_weight(&twist)?;
        if !home.is_subset(space.crossed()) {
            return Err(ExtError::InvalidBundle(format!("home {home:?} is not among the crossed nodes of {space}")));
        }
        if let Some(i) = (0..rs.rank()).find(|i| twist.0[*i] != 0 && !space.crossed().contains(i)) {
            return Err(ExtError::InvalidBundle(format!("twist {twist} is not a line bundle (node {})", i + 1)));
        }
        if pieces.is_empty() {
            return Err(ExtError::InvalidBundle("no pieces".into()));
        }
        let mask = NodeMask::complement_of(rs.rank(), home.iter().copied());
        let absorbed = restrict(&twist, &home);
        let mut rest = twist.clone();
        for &c in &home {
            rest.0[c] = 0;
        }
        let mut out = Vec::with_capacity(pieces.len());
        for p in pieces {
            rs.check_weight(&p)?;
            if !rs.is_dominant_on(&p, &mask) {
                return Err(ExtError::InvalidBundle(format!("piece {p} is not dominant for the Levi of home {home:?}")));
            }
            out.push(&p + &absorbed);
        }
        if out.len() == 1 && rs.weyl_dim_on(&out[0], &mask)? == 1 {
            let line = &out[0] + &rest;
            return Ok(HomogeneousBundle::line(space, line));
        }
        Ok(HomogeneousBundle { space, home, pieces: out, twist: rest })
    }

    /// The line bundle `O(w)`; w must be supported on crossed nodes.
    pub fn line(space: MarkedDiagram, w: Weight) -> Self {
        let rank = space.rank();
        HomogeneousBundle { space, home: BTreeSet::new(), pieces: vec![Weight::zero(rank)], twist: w }
    }

    pub fn irreducible(e: &IrreducibleBundle) -> Result<Self, ExtError> {
        let space = e.space().clone();
        let home = space.crossed().clone();
        let rank = space.rank();
        HomogeneousBundle::new(space, home, vec![e.weight().clone()], Weight::zero(rank))
    }

    /// Resolve a catalog symbol with its bidegree twist.
    pub fn named(roof: &RoofDescriptor, r: &BundleRef) -> Result<Self, ExtError> {
        let (a, b) = r.twist;
        let space = roof.total_space().clone();
        if r.symbol == "O" {
            return Ok(HomogeneousBundle::line(space, roof.line(a, b)));
        }
        let nb = roof.named(&r.symbol)?;
        HomogeneousBundle::new(space, nb.home.clone(), nb.pieces.clone(), roof.line(a, b))
    }

    pub fn space(&self) -> &MarkedDiagram {
        &self.space
    }

    pub fn home(&self) -> &BTreeSet<usize> {
        &self.home
    }

    pub fn pieces(&self) -> &[Weight] {
        &self.pieces
    }

    pub fn twist_weight(&self) -> &Weight {
        &self.twist
    }

    pub fn is_line(&self) -> bool {
        self.home.is_empty() && self.pieces.len() == 1 && self.pieces[0].is_zero()
    }

    fn home_mask(&self) -> NodeMask {
        NodeMask::complement_of(self.space.rank(), self.home.iter().copied())
    }

    pub fn rank(&self) -> Result<u64, ExtError> {
        let rs = self.space.root_system();
        let mask = self.home_mask();
        let mut r = 0;
        for p in &self.pieces {
            r += rs.weyl_dim_on(p, &mask)?;
        }
        Ok(r)
    }

    pub fn dual(&self) -> Self {
        let rs = self.space.root_system();
        let mask = self.home_mask();
        let pieces = self.pieces.iter().rev().map(|p| rs.dual_weight_on(p, &mask)).collect();
        HomogeneousBundle { space: self.space.clone(), home: self.home.clone(), pieces, twist: -&self.twist }
    }

    /// Tensor with the line bundle `O(w)`.
    pub fn twist(&self, w: &Weight) -> Result<Self, ExtError> {
        HomogeneousBundle::new(self.space.clone(), self.home.clone(), self.pieces.clone(), &self.twist + w)
    }

    /// Torus character of the fibre at the base point.
    pub fn torus_character(&self, bound: u64) -> Result<BTreeMap<Weight, u64>, ExtError> {
        let rs = self.space.root_system();
        let mask = self.home_mask();
        let mut ch = BTreeMap::new();
        for p in &self.pieces {
            for (w, m) in rs.freudenthal_weights_on(p, &mask, bound)? {
                *ch.entry(&w + &self.twist).or_insert(0) += m;
            }
        }
        Ok(ch)
    }

    /// Pieces irreducible for the Levi of `target ⊇ home`, with the twist
    /// coordinates on `target` absorbed; multiplicities are expanded.
    fn refine(&self, target: &BTreeSet<usize>, bound: u64) -> Result<Vec<Weight>, ExtError> {
        debug_assert!(self.home.is_subset(target));
        let absorbed = restrict(&self.twist, target);
        if *target == self.home {
            return Ok(self.pieces.iter().map(|p| p + &absorbed).collect());
        }
        let rs = self.space.root_system();
        let from = self.home_mask();
        let to = NodeMask::complement_of(rs.rank(), target.iter().copied());
        let mut out = Vec::new();
        for p in &self.pieces {
            let ch = rs.freudenthal_weights_on(p, &from, bound)?;
            for (w, m) in extract_irreducibles(rs, &to, &ch, bound)? {
                for _ in 0..m {
                    out.push(&w + &absorbed);
                }
            }
        }
        Ok(out)
    }

    /// The pieces as irreducible bundles on `space` itself.
    pub fn graded_pieces(&self, bound: u64) -> Result<Vec<IrreducibleBundle>, ExtError> {
        let crossed = self.space.crossed().clone();
        let mut out = Vec::new();
        for w in self.refine(&crossed, bound)? {
            out.push(IrreducibleBundle::new(self.space.clone(), w)?);
        }
        Ok(out)
    }

    /// Cohomology, positionally resolved across pieces.
    pub fn cohomology(&self) -> Result<ExtGp, ExtError> {
        let o = HomogeneousBundle::line(self.space.clone(), Weight::zero(self.space.rank()));
        ext_gp(&o, self)
    }

    fn key(&self) -> (BTreeSet<usize>, Vec<Weight>, Weight) {
        (self.home.clone(), self.pieces.clone(), self.twist.clone())
    }
}

fn restrict(w: &Weight, nodes: &BTreeSet<usize>) -> Weight {
    let mut out = Weight::zero(w.len());
    for &i in nodes {
        out.0[i] = w.0[i];
    }
    out
}

impl fmt::Display for HomogeneousBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_line() {
            return write!(f, "O{}", self.twist);
        }
        let home: Vec<String> = self.home.iter().map(|i| format!("x{}", i + 1)).collect();
        let pieces: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}: {}]", home.join(","), pieces.join(" | "))?;
        if !self.twist.is_zero() {
            write!(f, " ⊗ O{}", self.twist)?;
        }
        Ok(())
    }
}

/// `Ext^•(E, F)` on G/P. `dims` is exact unless `ambiguous` lists degrees k
/// where a differential from degree k to k+1 between different pieces
/// cannot be excluded; then `dims` is an upper bound with exact Euler
/// characteristic.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ExtGp {
    pub dims: GradedDims,
    pub ambiguous: Vec<i64>,
}

impl ExtGp {
    pub fn is_exact(&self) -> bool {
        self.ambiguous.is_empty()
    }

    /// True when the vanishing is certain: the first page is already zero.
    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }
}

type CacheKey = (String, (BTreeSet<usize>, Vec<Weight>, Weight), (BTreeSet<usize>, Vec<Weight>, Weight));

fn cache() -> &'static RwLock<BTreeMap<CacheKey, ExtGp>> {
    static CACHE: OnceLock<RwLock<BTreeMap<CacheKey, ExtGp>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// `Ext^k(E, F) = H^k(G/P, E^∨ ⊗ F)` with the default resource bound.
pub fn ext_gp(e: &HomogeneousBundle, f: &HomogeneousBundle) -> Result<ExtGp, ExtError> {
    ext_gp_bounded(e, f, DEFAULT_ENUM_BOUND)
}

pub fn ext_gp_bounded(e: &HomogeneousBundle, f: &HomogeneousBundle, bound: u64) -> Result<ExtGp, ExtError> {
    if e.space != f.space {
        return Err(ExtError::SpaceMismatch(e.space.to_string(), f.space.to_string()));
    }
    let key = (e.space.to_string(), e.key(), f.key());
    if let Some(hit) = cache().read().expect("ext cache").get(&key) {
        return Ok(hit.clone());
    }
    let out = compute_ext(e, f, bound)?;
    cache().write().expect("ext cache").insert(key, out.clone());
    Ok(out)
}

fn compute_ext(e: &HomogeneousBundle, f: &HomogeneousBundle, bound: u64) -> Result<ExtGp, ExtError> {
    let space = &e.space;
    let rs = space.root_system();
    let ev = e.dual();
    let home: BTreeSet<usize> = ev.home.union(&f.home).copied().collect();
    let mask = NodeMask::complement_of(rs.rank(), home.iter().copied());
    let left = ev.refine(&home, bound)?;
    let right = f.refine(&home, bound)?;
    let mut rest = &ev.twist + &f.twist;
    for &c in &home {
        rest.0[c] = 0;
    }
    // Rπ_* O(rest) along G/P -> G/Q_home is one irreducible in one degree.
    let Some((eta, shift)) = space.pushforward(&rest, &home) else {
        return Ok(ExtGp::default());
    };
    let mut contributions = Vec::new();
    for p in &left {
        for q in &right {
            let mut c = GradedDims::zero();
            for (nu, m) in klimyk_on(rs, &mask, p, q, bound)? {
                for (mu, k) in klimyk_on(rs, &mask, &nu, &eta, bound)? {
                    c.add_shifted(&bwb_unchecked(rs, &mu), shift as i64, m * k);
                }
            }
            if !c.is_zero() {
                contributions.push(c);
            }
        }
    }
    Ok(combine_positionally(&contributions))
}

/// Sum first-page contributions of distinct pieces, flagging degrees k with
/// one contribution in k and a different one in k+1.
pub fn combine_positionally(contributions: &[GradedDims]) -> ExtGp {
    let mut dims = GradedDims::zero();
    let mut ambiguous = BTreeSet::new();
    for (i, a) in contributions.iter().enumerate() {
        dims.add(a);
        for (j, b) in contributions.iter().enumerate() {
            if i != j {
                for k in a.degrees() {
                    if b.dim(k + 1) > 0 {
                        ambiguous.insert(k);
                    }
                }
            }
        }
    }
    ExtGp { dims, ambiguous: ambiguous.into_iter().collect() }
}

/// Additive extension over formal sums of irreducible bundles.
pub fn ext_gp_sum(e: &BundleSum, f: &BundleSum) -> Result<GradedDims, ExtError> {
    let mut out = GradedDims::zero();
    for (a, m) in e.bundles() {
        for (b, n) in f.bundles() {
            let x = ext_gp(&HomogeneousBundle::irreducible(&a)?, &HomogeneousBundle::irreducible(&b)?)?;
            out.add_shifted(&x.dims, 0, m * n);
        }
    }
    Ok(out)
}

/// One undetermined map `H^k(A) -> H^k(B)` of the long exact sequence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Connecting {
    pub degree: i64,
    pub source_dim: u64,
    pub target_dim: u64,
}

impl fmt::Display for Connecting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{} map C^{} -> C^{} undetermined", self.degree, self.source_dim, self.target_dim)
    }
}

/// `Ext^•_M(E|_M, F|_M)` from `0 -> A -> B -> B|_M -> 0` with
/// `A = E^∨⊗F⊗L^∨` and `B = E^∨⊗F`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExtOnM {
    Exact { dims: GradedDims },
    Ambiguous { lower: GradedDims, connecting: Vec<Connecting>, euler: i128 },
}

impl ExtOnM {
    pub fn exact(&self) -> Option<&GradedDims> {
        match self {
            ExtOnM::Exact { dims } => Some(dims),
            ExtOnM::Ambiguous { .. } => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact().is_some_and(|d| d.is_zero())
    }
}

impl fmt::Display for ExtOnM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtOnM::Exact { dims } => write!(f, "{dims}"),
            ExtOnM::Ambiguous { lower, connecting, euler } => {
                write!(f, "ambiguous (at least {lower}, χ = {euler}")?;
                for c in connecting {
                    write!(f, "; {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Both ambient terms and the resolved restriction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OnMReport {
    pub twisted: ExtGp,
    pub untwisted: ExtGp,
    pub ext: ExtOnM,
}

pub fn ext_on_m(roof: &RoofDescriptor, e: &HomogeneousBundle, f: &HomogeneousBundle) -> Result<ExtOnM, ExtError> {
    Ok(ext_on_m_report(roof, e, f)?.ext)
}

pub fn ext_on_m_report(
    roof: &RoofDescriptor,
    e: &HomogeneousBundle,
    f: &HomogeneousBundle,
) -> Result<OnMReport, ExtError> {
    ext_on_m_report_bounded(roof, e, f, DEFAULT_ENUM_BOUND)
}

pub fn ext_on_m_report_bounded(
    roof: &RoofDescriptor,
    e: &HomogeneousBundle,
    f: &HomogeneousBundle,
    bound: u64,
) -> Result<OnMReport, ExtError> {
    let fl = f.twist(&-&roof.l_weight())?;
    let a = ext_gp_bounded(e, &fl, bound)?;
    let b = ext_gp_bounded(e, f, bound)?;
    let ext = resolve_restriction(&a, &b)?;
    Ok(OnMReport { twisted: a, untwisted: b, ext })
}

/// Positional resolution of `H^k(A) -> H^k(B) -> H^k(M) -> H^{k+1}(A)`:
/// exact iff no degree carries both `H^k(A)` and `H^k(B)`.
pub fn resolve_restriction(a: &ExtGp, b: &ExtGp) -> Result<ExtOnM, ExtError> {
    let euler = b.dims.euler_characteristic() - a.dims.euler_characteristic();
    let mut connecting = Vec::new();
    if !a.is_exact() || !b.is_exact() {
        for x in [a, b] {
            for &k in &x.ambiguous {
                connecting.push(Connecting { degree: k, source_dim: x.dims.dim(k), target_dim: x.dims.dim(k + 1) });
            }
        }
        return Ok(ExtOnM::Ambiguous { lower: GradedDims::zero(), connecting, euler });
    }
    for k in a.dims.degrees() {
        if b.dims.dim(k) > 0 {
            connecting.push(Connecting { degree: k, source_dim: a.dims.dim(k), target_dim: b.dims.dim(k) });
        }
    }
    if connecting.is_empty() {
        let mut dims = b.dims.clone();
        dims.add_shifted(&a.dims, -1, 1);
        if dims.euler_characteristic() != euler {
            return Err(ExtError::Euler(format!("{dims} vs χ = {euler}")));
        }
        return Ok(ExtOnM::Exact { dims });
    }
    let degrees: BTreeSet<i64> = a.dims.degrees().map(|k| k - 1).chain(b.dims.degrees()).collect();
    let mut lower = Vec::new();
    for k in degrees {
        let coker = b.dims.dim(k).saturating_sub(a.dims.dim(k));
        let ker = a.dims.dim(k + 1).saturating_sub(b.dims.dim(k + 1));
        lower.push((k, coker + ker));
    }
    Ok(ExtOnM::Ambiguous { lower: GradedDims::from_dims(lower), connecting, euler })
}

/// `E` is L-semiorthogonal to `F` iff `Ext^•(E, F⊗L^∨) = 0`; the table is
/// returned either way.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LSemiorthogonality {
    pub holds: bool,
    pub witness: ExtGp,
}

pub fn l_semiorthogonal(
    roof: &RoofDescriptor,
    e: &HomogeneousBundle,
    f: &HomogeneousBundle,
) -> Result<LSemiorthogonality, ExtError> {
    l_semiorthogonal_bounded(roof, e, f, DEFAULT_ENUM_BOUND)
}

pub fn l_semiorthogonal_bounded(
    roof: &RoofDescriptor,
    e: &HomogeneousBundle,
    f: &HomogeneousBundle,
    bound: u64,
) -> Result<LSemiorthogonality, ExtError> {
    let witness = ext_gp_bounded(e, &f.twist(&-&roof.l_weight())?, bound)?;
    Ok(LSemiorthogonality { holds: witness.is_zero(), witness })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DaggerReport {
    pub ext_e2_e1: ExtGp,
    pub ext_e1l_e2: ExtGp,
    pub holds: bool,
}

/// `Ext^•(E2, E1) = Ext^•(E1⊗L, E2) = 0` on the total space.
pub fn condition_dagger(
    roof: &RoofDescriptor,
    e1: &HomogeneousBundle,
    e2: &HomogeneousBundle,
) -> Result<DaggerReport, ExtError> {
    condition_dagger_bounded(roof, e1, e2, DEFAULT_ENUM_BOUND)
}

pub fn condition_dagger_bounded(
    roof: &RoofDescriptor,
    e1: &HomogeneousBundle,
    e2: &HomogeneousBundle,
    bound: u64,
) -> Result<DaggerReport, ExtError> {
    let ext_e2_e1 = ext_gp_bounded(e2, e1, bound)?;
    let ext_e1l_e2 = ext_gp_bounded(&e1.twist(&roof.l_weight())?, e2, bound)?;
    let holds = ext_e2_e1.is_zero() && ext_e1l_e2.is_zero();
    Ok(DaggerReport { ext_e2_e1, ext_e1l_e2, holds })
}
