use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::{LieError, NodeMask, RootSystem, Weight};

/// Outcome of sorting a weight into the dominant chamber.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Dominantization {
    Singular,
    Regular { dominant: Weight, length: usize },
}

impl RootSystem {
    /// Simple reflection `s_i(w) = w - w_i α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Result<Weight, LieError> {
        self.check_weight(w)?;
        self.check_node(i)?;
        Ok(self.reflect_unchecked(w, i))
    }

    pub(crate) fn reflect_unchecked(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        w.add_scaled(self.simple_root(i), -c)
    }

    /// Sort `w` into the closed dominant chamber of the subsystem on `mask`,
    /// always reflecting at the first negative node. Returns the sorted
    /// weight and the number of reflections applied.
    pub fn sort_dominant_on(&self, w: &Weight, mask: &NodeMask) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut len = 0;
        while let Some(i) = mask.nodes().find(|&i| cur.0[i] < 0) {
            cur = self.reflect_unchecked(&cur, i);
            len += 1;
        }
        (cur, len)
    }

    /// True if `w` lies on a wall of the subsystem on `mask`, checked by
    /// pairing with every positive coroot of that subsystem.
    pub fn is_singular_on(&self, w: &Weight, mask: &NodeMask) -> bool {
        self.positive_roots_on(mask)
            .into_iter()
            .any(|k| self.ip_root(w, &self.positive_roots()[k]) == 0)
    }

    /// Number of positive roots of the subsystem on `mask` pairing negatively with `w`.
    pub fn inversion_count_on(&self, w: &Weight, mask: &NodeMask) -> usize {
        self.positive_roots_on(mask)
            .into_iter()
            .filter(|&k| self.ip_root(w, &self.positive_roots()[k]) < 0)
            .count()
    }

    pub fn dominantize(&self, w: &Weight) -> Dominantization {
        self.dominantize_on(w, &self.all_nodes())
    }

    /// Bott's sort restricted to the subsystem on `mask`. Singularity is
    /// decided by the wall pairing, not by the sort loop.
    pub fn dominantize_on(&self, w: &Weight, mask: &NodeMask) -> Dominantization {
        if self.is_singular_on(w, mask) {
            return Dominantization::Singular;
        }
        let (dominant, length) = self.sort_dominant_on(w, mask);
        Dominantization::Regular { dominant, length }
    }

    /// The antidominant conjugate of `w` under the Weyl group of `mask`.
    /// For `w` dominant on `mask` this is `w0 w`, the lowest weight.
    pub fn antidominant_on(&self, w: &Weight, mask: &NodeMask) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = mask.nodes().find(|&i| cur.0[i] > 0) {
            cur = self.reflect_unchecked(&cur, i);
        }
        cur
    }

    /// `-w0(λ)` for the Weyl group of `mask`: the highest weight of the dual.
    pub fn dual_weight_on(&self, w: &Weight, mask: &NodeMask) -> Weight {
        -self.antidominant_on(w, mask)
    }

    pub fn is_dominant_on(&self, w: &Weight, mask: &NodeMask) -> bool {
        mask.nodes().all(|i| w.0[i] >= 0)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&c| c >= 0)
    }

    /// Weyl dimension formula on the subsystem `mask`, exact.
    pub fn weyl_dim_big_on(&self, lambda: &Weight, mask: &NodeMask) -> Result<BigUint, LieError> {
        self.check_weight(lambda)?;
        if !self.is_dominant_on(lambda, mask) {
            return Err(LieError::NotDominant(lambda.clone()));
        }
        let shifted = &(lambda.clone()) + &self.rho();
        let rho = self.rho();
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for k in self.positive_roots_on(mask) {
            let r = &self.positive_roots()[k];
            num *= self.ip_root(&shifted, r) as u64;
            den *= self.ip_root(&rho, r) as u64;
        }
        debug_assert!((&num % &den) == BigUint::from(0u8));
        Ok(num / den)
    }

    pub fn weyl_dim_big(&self, lambda: &Weight) -> Result<BigUint, LieError> {
        self.weyl_dim_big_on(lambda, &self.all_nodes())
    }

    pub fn weyl_dim_on(&self, lambda: &Weight, mask: &NodeMask) -> Result<u64, LieError> {
        let d = self.weyl_dim_big_on(lambda, mask)?;
        d.to_u64().ok_or_else(|| LieError::Overflow(d.to_string()))
    }

    /// Dimension of the irreducible representation with highest weight `lambda`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64, LieError> {
        self.weyl_dim_on(lambda, &self.all_nodes())
    }
}
