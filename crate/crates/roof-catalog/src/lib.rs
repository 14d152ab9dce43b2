//! The homogeneous roofs G/P with their two projections, the Grothendieck
//! line bundle `L = O(1,1)`, and per-roof tables of named bundles.
//!
//! Bidegrees `O(a,b)` put `a` on the node crossed for the first side and
//! `b` on the node crossed for the second side.

mod data;
mod symbol;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use bwb::{BwbError, MarkedDiagram};
use lie_core::{LieError, NodeMask, RootSystem, Series, Weight};
use thiserror::Error;

pub use data::{catalog_text, load_catalog, CatalogRecord, CATALOG_FORMAT_VERSION, SHIPPED_CATALOG};
pub use symbol::BundleRef;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Bwb(#[from] BwbError),
    #[error("unknown roof '{0}'")]
    UnknownRoof(String),
    #[error("unknown bundle symbol '{symbol}' on roof {roof}")]
    UnknownSymbol { roof: String, symbol: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog invariant violated for {label}: {detail}")]
    Invariant { label: String, detail: String },
}

/// The families of homogeneous roofs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `P^k x P^k`.
    AxA(usize),
    /// `F(1,k,k+1)`.
    AM(usize),
    /// `F(k,k+1,2k+1)`, type `A_{2k}`.
    AG(usize),
    /// `IF(k-1,k,3k-2)` for even k, type `C_{3k/2-1}`.
    C(usize),
    /// `OG(k-1,2k)`.
    D(usize),
    F4,
    G2,
}

impl Family {
    pub fn label(&self) -> String {
        match *self {
            Family::AxA(k) => format!("A{k}xA{k}"),
            Family::AM(k) => format!("AM{k}"),
            Family::AG(k) => format!("AG{}", 2 * k),
            Family::C(k) => format!("C{}", 3 * k / 2 - 1),
            Family::D(k) => format!("D{k}"),
            Family::F4 => "F4".into(),
            Family::G2 => "G2".into(),
        }
    }

    /// Whether the appendix gives a mutation sequence for this family.
    pub fn has_script(&self) -> bool {
        matches!(self, Family::AxA(_) | Family::AM(_) | Family::AG(2) | Family::C(2) | Family::G2)
    }
}

/// A bundle on the roof, irreducible on `G/Q_home` where `Q_home` is the
/// parabolic crossed at `home`, and pulled back to G/P. `pieces` are the
/// graded pieces of the `Q_home`-module; a single piece means irreducible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedBundle {
    pub symbol: String,
    pub home: BTreeSet<usize>,
    pub pieces: Vec<Weight>,
    /// Rank and determinant bidegree expected from the classical description.
    pub rank: u64,
    pub det: (i64, i64),
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct RoofDescriptor {
    family: Family,
    label: String,
    total: MarkedDiagram,
    sides: [MarkedDiagram; 2],
    side_nodes: [usize; 2],
    r: usize,
    bundles: Vec<NamedBundle>,
}

impl PartialEq for RoofDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl RoofDescriptor {
    fn build(family: Family) -> Result<Self, CatalogError> {
        let (rs, nodes): (RootSystem, [usize; 2]) = match family {
            Family::AxA(k) => (RootSystem::product(&[(Series::A, k), (Series::A, k)])?, [0, k]),
            Family::AM(k) => (RootSystem::simple(Series::A, k)?, [0, k - 1]),
            Family::AG(k) => (RootSystem::simple(Series::A, 2 * k)?, [k - 1, k]),
            Family::C(k) => (RootSystem::simple(Series::C, 3 * k / 2 - 1)?, [k - 2, k - 1]),
            Family::D(k) => (RootSystem::simple(Series::D, k)?, [k - 2, k - 1]),
            Family::F4 => (RootSystem::simple(Series::F, 4)?, [1, 2]),
            Family::G2 => (RootSystem::simple(Series::G, 2)?, [0, 1]),
        };
        let rs = Arc::new(rs);
        let total = MarkedDiagram::new(rs.clone(), nodes)?;
        let sides = [MarkedDiagram::new(rs.clone(), [nodes[0]])?, MarkedDiagram::new(rs, [nodes[1]])?];
        // Fibres of both projections are P^{r-1}.
        let r = total.dimension() + 1 - sides[0].dimension();
        let mut roof =
            RoofDescriptor { family, label: family.label(), total, sides, side_nodes: nodes, r, bundles: vec![] };
        roof.bundles = roof.named_bundles()?;
        roof.check()?;
        Ok(roof)
    }

    fn invariant(&self, detail: String) -> CatalogError {
        CatalogError::Invariant { label: self.label.clone(), detail }
    }

    /// Index, dimension and named-bundle checks.
    fn check(&self) -> Result<(), CatalogError> {
        let l = self.l_weight();
        if self.total.canonical_weight() != l.scale(-(self.r as i64)) {
            return Err(self.invariant(format!("canonical weight {} is not -{}L", self.total.canonical_weight(), self.r)));
        }
        for s in &self.sides {
            if self.total.dimension() != s.dimension() + self.r - 1 {
                return Err(self.invariant(format!("dim {} vs side {} + r - 1", self.total.dimension(), s.dimension())));
            }
        }
        let h = self.total.bwb(&l)?;
        if h.degrees().collect::<Vec<_>>() != vec![0] {
            return Err(self.invariant(format!("H(L) = {h} is not concentrated in degree 0")));
        }
        for b in &self.bundles {
            self.check_bundle(b)?;
        }
        Ok(())
    }

    fn check_bundle(&self, b: &NamedBundle) -> Result<(), CatalogError> {
        let rs = self.total.root_system();
        let home = self.total.with_crossed(b.home.iter().copied())?;
        let mask = home.levi_mask();
        let mut rank = 0;
        let mut det = Weight::zero(rs.rank());
        for p in &b.pieces {
            home.check_p_dominant(p)?;
            rank += rs.weyl_dim_on(p, &mask)?;
            for (w, m) in rs.freudenthal_weights_on(p, &mask, lie_core::DEFAULT_WEIGHT_BOUND)? {
                det = det.add_scaled(&w, m as i64);
            }
        }
        if rank != b.rank {
            return Err(self.invariant(format!("{}: rank {rank}, expected {}", b.symbol, b.rank)));
        }
        if det != self.line(b.det.0, b.det.1) {
            return Err(self.invariant(format!("{}: det {det}, expected O{:?}", b.symbol, b.det)));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn total_space(&self) -> &MarkedDiagram {
        &self.total
    }

    pub fn sides(&self) -> &[MarkedDiagram; 2] {
        &self.sides
    }

    /// The crossed node of each side, 0-based.
    pub fn side_nodes(&self) -> [usize; 2] {
        self.side_nodes
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn root_system(&self) -> &RootSystem {
        self.total.root_system()
    }

    pub fn rank(&self) -> usize {
        self.total.rank()
    }

    /// Weight of `O(a,b)`.
    pub fn line(&self, a: i64, b: i64) -> Weight {
        let mut v = vec![0; self.rank()];
        v[self.side_nodes[0]] += a;
        v[self.side_nodes[1]] += b;
        Weight(v)
    }

    pub fn l_weight(&self) -> Weight {
        self.line(1, 1)
    }

    /// Bidegree of a weight supported on the two crossed nodes.
    pub fn bidegree(&self, w: &Weight) -> Option<(i64, i64)> {
        let [p, q] = self.side_nodes;
        let supported = w.coords().iter().enumerate().all(|(i, &c)| c == 0 || i == p || i == q);
        supported.then(|| (w.0[p], w.0[q]))
    }

    pub fn dimension(&self) -> usize {
        self.total.dimension()
    }

    /// Dimension of the hyperplane section M = Z(s), s ∈ H^0(L).
    pub fn dim_m(&self) -> usize {
        self.total.dimension() - 1
    }

    /// Dimensions of the Calabi–Yau pair; negative means empty.
    pub fn cy_pair_dimension(&self) -> (i64, i64) {
        let d = |s: &MarkedDiagram| s.dimension() as i64 - self.r as i64;
        (d(&self.sides[0]), d(&self.sides[1]))
    }

    /// `ω_M = L^{-(r-1)}`.
    pub fn hyperplane_canonical(&self) -> Weight {
        self.l_weight().scale(-(self.r as i64 - 1))
    }

    pub fn bundles(&self) -> &[NamedBundle] {
        &self.bundles
    }

    pub fn named(&self, symbol: &str) -> Result<&NamedBundle, CatalogError> {
        self.bundles
            .iter()
            .find(|b| b.symbol == symbol)
            .ok_or_else(|| CatalogError::UnknownSymbol { roof: self.label.clone(), symbol: symbol.into() })
    }

    pub fn has_script(&self) -> bool {
        self.family.has_script()
    }

    fn named_bundles(&self) -> Result<Vec<NamedBundle>, CatalogError> {
        let n = self.rank();
        let all: BTreeSet<usize> = self.side_nodes.iter().copied().collect();
        let mut out = vec![NamedBundle {
            symbol: "O".into(),
            home: all,
            pieces: vec![Weight::zero(n)],
            rank: 1,
            det: (0, 0),
            note: "structure sheaf".into(),
        }];
        let single = |symbol: &str, side: usize, w: Weight, rank: u64, det: (i64, i64), note: &str| NamedBundle {
            symbol: symbol.into(),
            home: [self.side_nodes[side]].into_iter().collect(),
            pieces: vec![w],
            rank,
            det,
            note: note.into(),
        };
        let e = |i: usize| Weight::fundamental(n, i);
        match self.family {
            Family::AG(k) => {
                // G(k,2k+1) and G(k+1,2k+1) inside A_{2k}.
                let dim_v = 2 * k as u64 + 1;
                for (side, sub) in [(0usize, k), (1, k + 1)] {
                    let node = self.side_nodes[side];
                    let d = |x: i64| if side == 0 { (x, 0) } else { (0, x) };
                    let uv = e(0);
                    let u = if node > 0 { &e(node - 1) - &e(node) } else { e(node).scale(-1) };
                    let q = e(n - 1);
                    let qv = if node + 1 < n { &e(node + 1) - &e(node) } else { e(node).scale(-1) };
                    let s = sub as u64;
                    out.push(single(&format!("U{sub}"), side, u, s, d(-1), "tautological subbundle"));
                    out.push(single(&format!("U{sub}^v"), side, uv, s, d(1), "dual tautological"));
                    out.push(single(&format!("Q{sub}"), side, q, dim_v - s, d(1), "tautological quotient"));
                    out.push(single(&format!("Q{sub}^v"), side, qv, dim_v - s, d(-1), "dual quotient"));
                }
            }
            Family::C(2) => {
                // IG(2,4): U^v has highest weight ω1 over the Levi A1 at node 1.
                out.push(single("U^v", 1, e(0), 2, (0, 1), "dual tautological of IG(2,4)"));
                out.push(single("U", 1, &e(0) - &e(1), 2, (0, -1), "tautological of IG(2,4)"));
            }
            Family::G2 => {
                out.push(single("U^v", 1, e(0), 2, (0, 1), "dual tautological of G2/P2"));
                out.push(single("U", 1, &e(0) - &e(1), 2, (0, -1), "tautological of G2/P2"));
                // The spinor bundle of the quadric G2/P1 restricted from B3: its
                // P1-module is a nonsplit extension of three Levi pieces.
                let spin_v = vec![Weight(vec![1, 0]), Weight(vec![-1, 1]), Weight(vec![0, 0])];
                let spin = vec![Weight(vec![0, 0]), Weight(vec![-2, 1]), Weight(vec![-1, 0])];
                let home: BTreeSet<usize> = [self.side_nodes[0]].into_iter().collect();
                out.push(NamedBundle {
                    symbol: "S^v".into(),
                    home: home.clone(),
                    pieces: spin_v,
                    rank: 4,
                    det: (2, 0),
                    note: "dual spinor bundle of the quadric".into(),
                });
                out.push(NamedBundle {
                    symbol: "S".into(),
                    home,
                    pieces: spin,
                    rank: 4,
                    det: (-2, 0),
                    note: "spinor bundle of the quadric".into(),
                });
            }
            _ => {}
        }
        Ok(out)
    }
}

impl fmt::Display for RoofDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, sides {} / {}, r={})", self.label, self.total, self.sides[0], self.sides[1], self.r)
    }
}

/// All roofs with family parameter up to `max_param` (at least 2).
pub fn list_roofs(max_param: usize) -> Result<Vec<RoofDescriptor>, CatalogError> {
    let m = max_param.max(2);
    let mut fams = vec![];
    for k in 1..=m {
        fams.push(Family::AxA(k));
    }
    for k in 2..=m {
        fams.push(Family::AM(k));
    }
    for k in 1..=m {
        fams.push(Family::AG(k));
    }
    for k in (2..=m).step_by(2) {
        fams.push(Family::C(k));
    }
    for k in 4..=m.max(4) {
        fams.push(Family::D(k));
    }
    fams.push(Family::F4);
    fams.push(Family::G2);
    fams.into_iter().map(RoofDescriptor::build).collect()
}

/// One representative of every family: A2xA2, AM3, AG4, C2, D4, F4, G2.
pub fn default_roofs() -> Vec<RoofDescriptor> {
    [Family::AxA(2), Family::AM(3), Family::AG(2), Family::C(2), Family::D(4), Family::F4, Family::G2]
        .into_iter()
        .map(|f| RoofDescriptor::build(f).expect("catalog roof"))
        .collect()
}

/// Look up a roof by label, e.g. `C2`, `AG4`, `AM3`, `A2xA2`, `D5`, `G2`.
pub fn roof(label: &str) -> Result<RoofDescriptor, CatalogError> {
    let unknown = || CatalogError::UnknownRoof(label.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let fam = if let Some(rest) = label.strip_prefix("AM") {
        let k = num(rest)?;
        (k >= 2).then_some(Family::AM(k))
    } else if let Some(rest) = label.strip_prefix("AG") {
        let n = num(rest)?;
        (n >= 2 && n % 2 == 0).then_some(Family::AG(n / 2))
    } else if let Some((a, b)) = label.split_once('x') {
        let k = num(a.strip_prefix('A').ok_or_else(unknown)?)?;
        let k2 = num(b.strip_prefix('A').ok_or_else(unknown)?)?;
        (k == k2 && k >= 1).then_some(Family::AxA(k))
    } else if let Some(rest) = label.strip_prefix('C') {
        // C_{3k/2-1} with k even.
        let n = num(rest)?;
        ((n + 1) % 3 == 0 && ((n + 1) * 2 / 3) % 2 == 0).then(|| Family::C((n + 1) * 2 / 3))
    } else if let Some(rest) = label.strip_prefix('D') {
        let k = num(rest)?;
        (k >= 4).then_some(Family::D(k))
    } else if label == "F4" {
        Some(Family::F4)
    } else if label == "G2" {
        Some(Family::G2)
    } else {
        None
    };
    RoofDescriptor::build(fam.ok_or_else(unknown)?)
}

/// The Levi mask of `G/Q_home` inside the roof's root system.
pub fn home_mask(roof: &RoofDescriptor, home: &BTreeSet<usize>) -> NodeMask {
    NodeMask::complement_of(roof.rank(), home.iter().copied())
}
