use std::collections::{BTreeMap, HashMap};

use crate::{LieError, NodeMask, RootSystem, Weight};

/// Formal character: weights with multiplicities.
pub type Character = BTreeMap<Weight, u64>;

pub const DEFAULT_WEIGHT_BOUND: u64 = 1_000_000;

impl RootSystem {
    pub fn freudenthal_weights(&self, lambda: &Weight) -> Result<Character, LieError> {
        self.freudenthal_weights_on(lambda, &self.all_nodes(), DEFAULT_WEIGHT_BOUND)
    }

    /// Weight system of the irreducible representation of the subsystem on
    /// `mask` with highest weight `lambda`.
    ///
    /// Weights keep their full coordinates: they are `lambda - Σ n_j α_j`
    /// with `j` ranging over `mask`, so coordinates at nodes outside the mask
    /// carry the torus characters of a Levi factor.
    pub fn freudenthal_weights_on(
        &self,
        lambda: &Weight,
        mask: &NodeMask,
        bound: u64,
    ) -> Result<Character, LieError> {
        let dim = self.weyl_dim_big_on(lambda, mask)?;
        if dim > bound.into() {
            return Err(LieError::ResourceBound { dim: dim.to_string(), bound });
        }
        let roots: Vec<(&Vec<i64>, &Weight)> = self
            .positive_roots_on(mask)
            .into_iter()
            .map(|k| (&self.positive_roots()[k], &self.positive_roots_weights()[k]))
            .collect();
        let nodes: Vec<usize> = mask.nodes().collect();

        // weight -> (multiplicity, depth vector n)
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        mult.insert(lambda.clone(), 1);
        let mut layer: Vec<(Weight, Vec<i64>)> = vec![(lambda.clone(), vec![0; self.rank()])];
        while !layer.is_empty() {
            let mut cands: BTreeMap<Weight, Vec<i64>> = BTreeMap::new();
            for (w, n) in &layer {
                for &j in &nodes {
                    let nw = w.add_scaled(self.simple_root(j), -1);
                    if mult.contains_key(&nw) || cands.contains_key(&nw) {
                        continue;
                    }
                    let mut nn = n.clone();
                    nn[j] += 1;
                    cands.insert(nw, nn);
                }
            }
            let mut next = Vec::new();
            for (w, n) in cands {
                if !self.below_in_orbit(&w, &n, mask) {
                    continue;
                }
                let mut total: i128 = 0;
                for (rn, rw) in &roots {
                    let mut up = w.add_scaled(rw, 1);
                    while let Some(&m) = mult.get(&up) {
                        total += m as i128 * self.ip_root(&up, rn) as i128;
                        up = up.add_scaled(rw, 1);
                    }
                }
                let den = self.freudenthal_denominator(lambda, &n) as i128;
                debug_assert!(den > 0, "Freudenthal denominator vanished at {w}");
                let m = 2 * total / den;
                debug_assert_eq!(2 * total % den, 0);
                if m > 0 {
                    mult.insert(w.clone(), m as u64);
                    next.push((w, n));
                }
            }
            layer = next;
        }
        Ok(mult.into_iter().collect())
    }

    // Is the dominant conjugate of w = λ - Σ n_j α_j still ≤ λ?
    fn below_in_orbit(&self, w: &Weight, n: &[i64], mask: &NodeMask) -> bool {
        let mut cur = w.clone();
        let mut n = n.to_vec();
        while let Some(i) = mask.nodes().find(|&i| cur.0[i] < 0) {
            let c = cur.0[i];
            cur = cur.add_scaled(self.simple_root(i), -c);
            n[i] += c;
            if n[i] < 0 {
                return false;
            }
        }
        true
    }
}

