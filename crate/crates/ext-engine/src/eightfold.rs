//! `H^•(X, T_X)` for the Calabi–Yau eightfold X = Z(s) ⊂ F(1,3,V_6),
//! s ∈ H^0(Q^∨(1,2)), through the Koszul complex and the normal sequence.

use std::collections::BTreeMap;

use bwb::{GradedDims, IrreducibleBundle, MarkedDiagram};
use lie_core::Weight;
use serde::Serialize;
use tensor::{decompose_product, exterior_power, extract_irreducibles, DEFAULT_ENUM_BOUND};

use crate::les::{resolve_kernel, resolve_koszul, KoszulResolution};
use crate::{combine_positionally, ExtError};

/// One column j of a Koszul first page: `H^•(W ⊗ Λ^j E^∨)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KoszulEntry {
    pub j: usize,
    pub cohomology: GradedDims,
    /// Degrees where pieces of the filtered W may interact.
    pub ambiguous: Vec<i64>,
}

/// First page and resolution for `W|_X`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KoszulTable {
    pub bundle: String,
    pub columns: Vec<KoszulEntry>,
    pub resolution: KoszulResolution,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EightfoldReport {
    pub ambient: String,
    pub bundle_weight: Weight,
    pub dim_x: usize,
    pub weyl_dim_sections: u64,
    pub weyl_dim_adjoint: u64,
    pub structure_sheaf: KoszulTable,
    pub normal_bundle: KoszulTable,
    pub tangent_ambient: KoszulTable,
    /// `h^0(T_X) = h^{dim X - 1}(O_X)` for a Calabi–Yau X with trivial
    /// canonical bundle, read off the structure sheaf table.
    pub h0_tangent: u64,
    pub tangent: GradedDims,
    pub ambiguities: Vec<String>,
}

impl EightfoldReport {
    pub fn h(&self, m: i64) -> u64 {
        self.tangent.dim(m)
    }

    pub fn is_exact(&self) -> bool {
        self.ambiguities.is_empty()
    }
}

/// Levi-graded pieces of `T_{G/P}`: the non-Levi positive roots as weights.
pub fn tangent_pieces(space: &MarkedDiagram) -> Result<Vec<IrreducibleBundle>, ExtError> {
    let rs = space.root_system();
    let mut ch = BTreeMap::new();
    for (n, w) in rs.positive_roots().iter().zip(rs.positive_roots_weights()) {
        if space.crossed().iter().any(|&c| n[c] != 0) {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
    }
    let mut out = Vec::new();
    for (w, m) in extract_irreducibles(rs, &space.levi_mask(), &ch, DEFAULT_ENUM_BOUND)? {
        for _ in 0..m {
            out.push(IrreducibleBundle::new(space.clone(), w.clone())?);
        }
    }
    Ok(out)
}

/// Koszul first page for `W|_X`, X = Z(s) with s a section of E.
pub fn koszul_table(
    name: &str,
    w: &[IrreducibleBundle],
    e: &IrreducibleBundle,
    dim_x: usize,
) -> Result<KoszulTable, ExtError> {
    let ev = e.dual();
    let rank = e.rank()? as usize;
    let mut columns = Vec::new();
    let mut page = BTreeMap::new();
    for j in 0..=rank {
        let lam = exterior_power(&ev, j)?;
        let mut per_piece = Vec::new();
        for piece in w {
            let mut c = GradedDims::zero();
            for (term, m) in lam.bundles() {
                let prod = decompose_product(piece, &term)?;
                c.add_shifted(&prod.cohomology(), 0, m);
            }
            per_piece.push(c);
        }
        let combined = combine_positionally(&per_piece);
        for (t, n) in combined.dims.dims() {
            page.insert((j, t - j as i64), n);
        }
        columns.push(KoszulEntry { j, cohomology: combined.dims, ambiguous: combined.ambiguous });
    }
    let resolution = resolve_koszul(&page, dim_x as i64);
    Ok(KoszulTable { bundle: name.to_string(), columns, resolution })
}

fn table_ambiguities(t: &KoszulTable, out: &mut Vec<String>) {
    for c in &t.columns {
        for k in &c.ambiguous {
            out.push(format!("{}: column j={} pieces may interact in degrees {k},{}", t.bundle, c.j, k + 1));
        }
    }
    for a in &t.resolution.ambiguous {
        out.push(format!("{}: {a}", t.bundle));
    }
}

pub fn eightfold() -> Result<EightfoldReport, ExtError> {
    let f: MarkedDiagram = "A5:x1,x3".parse()?;
    let rs = f.root_system();
    let qv = Weight::from(vec![0, 0, -1, 1, 0]);
    let ew = &qv + &f.line_weight(&[1, 2])?;
    let e = IrreducibleBundle::new(f.clone(), ew.clone())?;
    let dim_x = f.dimension() - e.rank()? as usize;
    if e.det_weight()? != -&f.canonical_weight() {
        return Err(ExtError::InvalidBundle(format!("det {} is not anticanonical", e.det_weight()?)));
    }
    let o = IrreducibleBundle::new(f.clone(), Weight::zero(f.rank()))?;
    let structure_sheaf = koszul_table("O_X", &[o], &e, dim_x)?;
    let normal_bundle = koszul_table("N_X", std::slice::from_ref(&e), &e, dim_x)?;
    let tangent_ambient = koszul_table("T_F|X", &tangent_pieces(&f)?, &e, dim_x)?;

    let mut ambiguities = Vec::new();
    for t in [&structure_sheaf, &normal_bundle, &tangent_ambient] {
        table_ambiguities(t, &mut ambiguities);
    }
    let ox = &structure_sheaf.resolution.dims;
    if ox.dim(0) != 1 || ox.dim(dim_x as i64) != 1 || ox.total_dim() != 2 {
        ambiguities.push(format!("O_X is not Calabi–Yau: {ox}"));
    }
    let h0_tangent = ox.dim(dim_x as i64 - 1);
    let (tangent, les) =
        resolve_kernel(&tangent_ambient.resolution.dims, &normal_bundle.resolution.dims, Some(h0_tangent));
    ambiguities.extend(les.into_iter().map(|a| format!("normal sequence: {a}")));

    Ok(EightfoldReport {
        ambient: f.to_string(),
        weyl_dim_sections: rs.weyl_dim(&ew)?,
        weyl_dim_adjoint: rs.weyl_dim(&Weight::from(vec![1, 0, 0, 0, 1]))?,
        bundle_weight: ew,
        dim_x,
        structure_sheaf,
        normal_bundle,
        tangent_ambient,
        h0_tangent,
        tangent,
        ambiguities,
    })
}
