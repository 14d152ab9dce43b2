//! Tensor products and exterior powers of homogeneous bundles, decomposed
//! over the Levi factor.
//!
//! Levi representations are handled with full-coordinate weights, so the
//! torus characters at crossed nodes ride along in the same vectors.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use bwb::{BwbError, GradedDims, IrreducibleBundle, MarkedDiagram};
use lie_core::{Character, Dominantization, LieError, NodeMask, RootSystem, Weight};
use thiserror::Error;

/// Default bound on the dimension of an enumerated representation.
pub const DEFAULT_ENUM_BOUND: u64 = 100_000;

static RANK_VIOLATIONS: AtomicU64 = AtomicU64::new(0);
static RANK_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of rank/dimension additivity checks performed and failed so far
/// in this process.
pub fn additivity_stats() -> (u64, u64) {
    (RANK_CHECKS.load(Ordering::Relaxed), RANK_VIOLATIONS.load(Ordering::Relaxed))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Bwb(#[from] BwbError),
    #[error("bundles live on different spaces: {0} and {1}")]
    SpaceMismatch(String, String),
    #[error("exterior power {k} out of range for rank {rank}")]
    DegreeOutOfRange { k: usize, rank: u64 },
    #[error("additivity violated: expected {expected}, got {got} ({context})")]
    Additivity { expected: u64, got: u64, context: String },
    #[error("character is not a nonnegative sum of irreducibles (stuck at {0})")]
    NotEffective(Weight),
}

fn check_additive(expected: u64, got: u64, context: &str) -> Result<(), TensorError> {
    RANK_CHECKS.fetch_add(1, Ordering::Relaxed);
    if expected != got {
        RANK_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        return Err(TensorError::Additivity { expected, got, context: context.to_string() });
    }
    Ok(())
}

/// Brauer–Klimyk on the subsystem `mask`: `V_λ ⊗ V_μ` as a multiset of
/// highest weights. The smaller factor is enumerated.
pub fn klimyk_on(
    rs: &RootSystem,
    mask: &NodeMask,
    lambda: &Weight,
    mu: &Weight,
    bound: u64,
) -> Result<BTreeMap<Weight, u64>, TensorError> {
    let dl = rs.weyl_dim_on(lambda, mask)?;
    let dm = rs.weyl_dim_on(mu, mask)?;
    let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
    let ch = rs.freudenthal_weights_on(small, mask, bound)?;
    let rho = rs.rho();
    let base = big + &rho;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in &ch {
        match rs.dominantize_on(&(&base + nu), mask) {
            Dominantization::Singular => {}
            Dominantization::Regular { dominant, length } => {
                let sign = if length % 2 == 0 { 1 } else { -1 };
                *acc.entry(&dominant - &rho).or_insert(0) += sign * *m as i64;
            }
        }
    }
    let mut out = BTreeMap::new();
    let mut total = 0u64;
    for (w, m) in acc {
        if m < 0 {
            return Err(TensorError::NotEffective(w));
        }
        if m > 0 {
            total += m as u64 * rs.weyl_dim_on(&w, mask)?;
            out.insert(w, m as u64);
        }
    }
    check_additive(dl * dm, total, "Klimyk dimension")?;
    Ok(out)
}

/// Brauer–Klimyk for the full group.
pub fn klimyk_tensor(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>, TensorError> {
    for w in [lambda, mu] {
        rs.check_weight(w)?;
        if !rs.is_dominant(w) {
            return Err(LieError::NotDominant(w.clone()).into());
        }
    }
    klimyk_on(rs, &rs.all_nodes(), lambda, mu, DEFAULT_ENUM_BOUND)
}

/// Split a character of the subsystem `mask` into irreducibles by repeatedly
/// removing the character of a highest remaining weight. Terminates because
/// the remaining multiset strictly shrinks at each step.
pub fn extract_irreducibles(
    rs: &RootSystem,
    mask: &NodeMask,
    ch: &Character,
    bound: u64,
) -> Result<BTreeMap<Weight, u64>, TensorError> {
    let roots: Vec<&Vec<i64>> = rs.positive_roots_on(mask).into_iter().map(|k| &rs.positive_roots()[k]).collect();
    let height = |w: &Weight| -> i64 { roots.iter().map(|r| rs.ip_root(w, r)).sum() };
    let mut rest: BTreeMap<Weight, i64> = ch.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.keys().max_by_key(|w| (height(w), (*w).clone())).cloned() {
        let m = rest[&top];
        if m < 0 || !rs.is_dominant_on(&top, mask) {
            return Err(TensorError::NotEffective(top));
        }
        for (w, k) in rs.freudenthal_weights_on(&top, mask, bound)? {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= m * k as i64;
            if *e < 0 {
                return Err(TensorError::NotEffective(w));
            }
            if *e == 0 {
                rest.remove(&w);
            }
        }
        *out.entry(top).or_insert(0) += m as u64;
    }
    Ok(out)
}

/// Character of `Λ^k V` from the character of V, via the generating function
/// `Π_w (1 + t e^w)^{m_w}`.
pub fn exterior_character(ch: &Character, k: usize) -> Character {
    let rank = ch.keys().next().map_or(0, |w| w.len());
    // layers[j] = character of Λ^j of the weights processed so far
    let mut layers: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); k + 1];
    layers[0].insert(Weight::zero(rank), 1);
    for (w, &m) in ch {
        let mut next: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); k + 1];
        for (j, layer) in layers.iter().enumerate() {
            for (base, &c) in layer {
                let mut binom = 1u64;
                for take in 0..=(m as usize).min(k - j) {
                    if take > 0 {
                        binom = binom * (m - take as u64 + 1) / take as u64;
                    }
                    let nw = base.add_scaled(w, take as i64);
                    *next[j + take].entry(nw).or_insert(0) += c * binom;
                }
            }
        }
        layers = next;
    }
    layers.swap_remove(k)
}

/// Formal sum of irreducible bundles on one G/P.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleSum {
    space: MarkedDiagram,
    terms: BTreeMap<Weight, u64>,
}

impl BundleSum {
    pub fn new(space: MarkedDiagram, terms: BTreeMap<Weight, u64>) -> Result<Self, TensorError> {
        for w in terms.keys() {
            space.check_p_dominant(w)?;
        }
        Ok(BundleSum { space, terms })
    }

    pub fn single(e: &IrreducibleBundle) -> Self {
        BundleSum { space: e.space().clone(), terms: [(e.weight().clone(), 1)].into_iter().collect() }
    }

    pub fn space(&self) -> &MarkedDiagram {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn bundles(&self) -> impl Iterator<Item = (IrreducibleBundle, u64)> + '_ {
        self.terms
            .iter()
            .map(|(w, &m)| (IrreducibleBundle::new(self.space.clone(), w.clone()).expect("P-dominant"), m))
    }

    pub fn rank(&self) -> Result<u64, TensorError> {
        let rs = self.space.root_system();
        let mask = self.space.levi_mask();
        let mut r = 0;
        for (w, m) in &self.terms {
            r += m * rs.weyl_dim_on(w, &mask)?;
        }
        Ok(r)
    }

    pub fn cohomology(&self) -> GradedDims {
        let mut g = GradedDims::zero();
        for (e, m) in self.bundles() {
            g.add_shifted(&e.cohomology(), 0, m);
        }
        g
    }

    pub fn twist(&self, line: &Weight) -> BundleSum {
        BundleSum { space: self.space.clone(), terms: self.terms.iter().map(|(w, &m)| (w + line, m)).collect() }
    }

    /// Levi character of the whole sum.
    pub fn character(&self, bound: u64) -> Result<Character, TensorError> {
        let rs = self.space.root_system();
        let mask = self.space.levi_mask();
        let mut ch = Character::new();
        for (w, m) in &self.terms {
            for (mu, k) in rs.freudenthal_weights_on(w, &mask, bound)? {
                *ch.entry(mu).or_insert(0) += k * m;
            }
        }
        Ok(ch)
    }
}

/// `E ⊗ F` decomposed into irreducible bundles.
pub fn decompose_product(e: &IrreducibleBundle, f: &IrreducibleBundle) -> Result<BundleSum, TensorError> {
    decompose_product_bounded(e, f, DEFAULT_ENUM_BOUND)
}

pub fn decompose_product_bounded(
    e: &IrreducibleBundle,
    f: &IrreducibleBundle,
    bound: u64,
) -> Result<BundleSum, TensorError> {
    if e.space() != f.space() {
        return Err(TensorError::SpaceMismatch(e.space().to_string(), f.space().to_string()));
    }
    let space = e.space().clone();
    let terms = klimyk_on(space.root_system(), &space.levi_mask(), e.weight(), f.weight(), bound)?;
    let sum = BundleSum::new(space, terms)?;
    check_additive(e.rank()? * f.rank()?, sum.rank()?, "tensor rank")?;
    Ok(sum)
}

/// `Λ^k E` decomposed into irreducible bundles.
pub fn exterior_power(e: &IrreducibleBundle, k: usize) -> Result<BundleSum, TensorError> {
    exterior_power_bounded(e, k, DEFAULT_ENUM_BOUND)
}

pub fn exterior_power_bounded(e: &IrreducibleBundle, k: usize, bound: u64) -> Result<BundleSum, TensorError> {
    let rank = e.rank()?;
    if k as u64 > rank {
        return Err(TensorError::DegreeOutOfRange { k, rank });
    }
    let space = e.space();
    let rs = space.root_system();
    let mask = space.levi_mask();
    let ch = rs.freudenthal_weights_on(e.weight(), &mask, bound)?;
    let ext = exterior_character(&ch, k);
    let terms = extract_irreducibles(rs, &mask, &ext, bound)?;
    let sum = BundleSum::new(space.clone(), terms)?;
    check_additive(binomial(rank, k as u64), sum.rank()?, "exterior power rank")?;
    Ok(sum)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k.min(n - k) {
        r = r * (n - i) / (i + 1);
    }
    r
}
