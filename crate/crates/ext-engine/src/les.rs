//! Positional resolution of Koszul spectral sequences and short exact
//! sequences. No rank of a map is ever computed: a differential is taken
//! into account only when its source or target position forces it.

use std::collections::BTreeMap;

use bwb::GradedDims;
use serde::Serialize;

/// Outcome of resolving a Koszul first page `E1^{-j,t} = H^t(W ⊗ Λ^j E^∨)`
/// converging to `H^{t-j}(X, W|_X)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KoszulResolution {
    pub dims: GradedDims,
    /// Cancellations forced by total degrees outside `[0, dim X]`.
    pub forced: Vec<String>,
    /// Pairs of positions that may still interact.
    pub ambiguous: Vec<String>,
}

impl KoszulResolution {
    pub fn is_exact(&self) -> bool {
        self.ambiguous.is_empty()
    }
}

/// Differentials run from column j to a smaller column j' and raise the
/// total degree `t - j` by one.
fn can_hit(from: (usize, i64), to: (usize, i64)) -> bool {
    to.0 < from.0 && to.1 == from.1 + 1
}

/// `page` maps `(j, total degree)` to dimensions.
pub fn resolve_koszul(page: &BTreeMap<(usize, i64), u64>, dim_x: i64) -> KoszulResolution {
    let mut page: BTreeMap<(usize, i64), u64> = page.iter().filter(|(_, &n)| n > 0).map(|(&k, &n)| (k, n)).collect();
    let mut forced = Vec::new();
    let mut ambiguous = Vec::new();
    loop {
        let Some((&pos, &n)) = page.iter().find(|((_, d), &n)| n > 0 && (*d < 0 || *d > dim_x)) else {
            break;
        };
        let partners: Vec<(usize, i64)> = page
            .iter()
            .filter(|(&q, &m)| m > 0 && (can_hit(pos, q) || can_hit(q, pos)))
            .map(|(&q, _)| q)
            .collect();
        match partners.as_slice() {
            [q] if page[q] >= n => {
                *page.get_mut(q).expect("partner") -= n;
                page.insert(pos, 0);
                forced.push(format!(
                    "C^{n} at (j={}, degree {}) cancels against (j={}, degree {})",
                    pos.0, pos.1, q.0, q.1
                ));
            }
            _ => {
                ambiguous.push(format!(
                    "C^{n} at (j={}, degree {}) lies outside [0, {dim_x}] with {} possible partners",
                    pos.0,
                    pos.1,
                    partners.len()
                ));
                page.insert(pos, 0);
            }
        }
    }
    let live: Vec<((usize, i64), u64)> = page.iter().filter(|(_, &n)| n > 0).map(|(&k, &n)| (k, n)).collect();
    for &(p, _) in &live {
        for &(q, _) in &live {
            if can_hit(p, q) {
                ambiguous.push(format!("(j={}, degree {}) -> (j={}, degree {})", p.0, p.1, q.0, q.1));
            }
        }
    }
    let dims = GradedDims::from_dims(live.iter().map(|&((_, d), n)| (d, n)));
    KoszulResolution { dims, forced, ambiguous }
}

/// `H^•(A)` for `0 -> A -> B -> C -> 0` from `H^•(B)`, `H^•(C)` and
/// optionally `h^0(A)`. A map `H^k(B) -> H^k(C)` has known rank only when one
/// side vanishes, or for k = 0 when `h^0(A)` is supplied.
pub fn resolve_kernel(b: &GradedDims, c: &GradedDims, h0_a: Option<u64>) -> (GradedDims, Vec<String>) {
    let lo = b.degrees().chain(c.degrees()).min().unwrap_or(0);
    let hi = b.degrees().chain(c.degrees()).max().unwrap_or(0);
    let mut ambiguous = Vec::new();
    let mut ranks = BTreeMap::new();
    for k in lo..=hi {
        let (bk, ck) = (b.dim(k), c.dim(k));
        let rank = if bk == 0 || ck == 0 {
            Some(0)
        } else if k == 0 {
            h0_a.filter(|&h| h <= bk).map(|h| bk - h)
        } else {
            None
        };
        match rank {
            Some(r) => {
                ranks.insert(k, r);
            }
            None => ambiguous.push(format!("rank of H^{k} map C^{bk} -> C^{ck}")),
        }
    }
    let mut dims = Vec::new();
    for k in lo..=hi + 1 {
        let coker = ranks.get(&(k - 1)).map(|r| c.dim(k - 1) - r).unwrap_or(0);
        let ker = ranks.get(&k).map(|r| b.dim(k) - r).unwrap_or(0);
        dims.push((k, coker + ker));
    }
    (GradedDims::from_dims(dims), ambiguous)
}
