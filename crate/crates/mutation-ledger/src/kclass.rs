//! Torus characters of mutations: `[L_A B] = ±([B] - Σ(-1)^k [Ext^k(A,B)] [A])`
//! and `[R_B A] = ±([A] - Σ(-1)^k [Ext^k(A,B)]^∨ [B])`, read at the base
//! point of the total space.

use std::collections::BTreeMap;

use ext_engine::{ExtError, HomogeneousBundle, OnMReport};
use lie_core::{Weight, DEFAULT_WEIGHT_BOUND};
use roof_catalog::RoofDescriptor;

use crate::{LedgerError, MutationKind};

type Virtual = BTreeMap<Weight, i64>;

fn character(e: &HomogeneousBundle) -> Result<Virtual, LedgerError> {
    Ok(e.torus_character(DEFAULT_WEIGHT_BOUND)?.into_iter().map(|(w, m)| (w, m as i64)).collect())
}

fn add(into: &mut Virtual, w: Weight, m: i64) {
    let e = into.entry(w).or_insert(0);
    *e += m;
    if *e == 0 {
        into.retain(|_, v| *v != 0);
    }
}

fn product(x: &Virtual, y: &Virtual) -> Virtual {
    let mut out = Virtual::new();
    for (a, m) in x {
        for (b, n) in y {
            add(&mut out, a + b, m * n);
        }
    }
    out
}

/// `None` when the Ext on M does not come from the total space alone or
/// its G-summands are not all known.
pub(crate) fn check(
    roof: &RoofDescriptor,
    kind: MutationKind,
    a: &HomogeneousBundle,
    b: &HomogeneousBundle,
    x: &HomogeneousBundle,
    report: &OnMReport,
) -> Result<Option<bool>, LedgerError> {
    if !report.twisted.is_zero() || !report.untwisted.is_exact() {
        return Ok(None);
    }
    let rs = roof.root_system();
    let mut ext = Virtual::new();
    for (&k, entry) in report.untwisted.dims.entries() {
        let mut seen = 0;
        for (lam, m) in &entry.summands {
            seen += m * rs.weyl_dim(lam).map_err(ExtError::from)?;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (w, n) in rs.freudenthal_weights(lam).map_err(ExtError::from)? {
                let w = if kind == MutationKind::Right { -&w } else { w };
                add(&mut ext, w, sign * (*m as i64) * n as i64);
            }
        }
        if seen != entry.dim {
            return Ok(None);
        }
    }
    let (keep, through) = match kind {
        MutationKind::Left => (character(b)?, character(a)?),
        MutationKind::Right => (character(a)?, character(b)?),
    };
    let mut expected = keep;
    for (w, m) in product(&ext, &through) {
        add(&mut expected, w, -m);
    }
    let got = character(x)?;
    let negated: Virtual = expected.iter().map(|(w, m)| (w.clone(), -m)).collect();
    Ok(Some(got == expected || got == negated))
}
