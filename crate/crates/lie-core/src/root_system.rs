use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{self, Series};
use crate::{LieError, NodeMask, Weight};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Factor {
    pub series: Series,
    pub rank: usize,
}

/// A finite product of simple root systems of types A-D, F4, G2.
///
/// Nodes of the factors are concatenated in order, so the Cartan matrix is
/// block diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSystem {
    factors: Vec<Factor>,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_w: Vec<Weight>,
    simple_roots: Vec<Weight>,
}

impl RootSystem {
    pub fn simple(series: Series, rank: usize) -> Result<Self, LieError> {
        Self::product(&[(series, rank)])
    }

    pub fn product(factors: &[(Series, usize)]) -> Result<Self, LieError> {
        if factors.is_empty() {
            return Err(LieError::InvalidType("empty product".into()));
        }
        let total: usize = factors.iter().map(|f| f.1).sum();
        let mut cartan = vec![vec![0i64; total]; total];
        let mut sym = Vec::with_capacity(total);
        let mut off = 0;
        for &(s, n) in factors {
            cartan::validate(s, n)?;
            let (a, d) = cartan::simple_cartan(s, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[off + i][off + j] = a[i][j];
                }
            }
            sym.extend(d);
            off += n;
        }
        let simple_roots: Vec<Weight> = (0..total)
            .map(|j| Weight((0..total).map(|i| cartan[i][j]).collect()))
            .collect();
        let mut rs = RootSystem {
            factors: factors.iter().map(|&(series, rank)| Factor { series, rank }).collect(),
            cartan,
            sym,
            positive_roots: Vec::new(),
            positive_roots_w: Vec::new(),
            simple_roots,
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs.positive_roots_w = rs.positive_roots.iter().map(|r| rs.root_to_weight(r)).collect();
        Ok(rs)
    }

    // Closure under simple root strings, processed by height.
    fn generate_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut known: HashSet<Vec<i64>> = HashSet::new();
        let mut all = Vec::new();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect();
        for r in &layer {
            known.insert(r.clone());
        }
        while !layer.is_empty() {
            let mut next = Vec::new();
            for r in &layer {
                let w = self.root_to_weight(r);
                for j in 0..n {
                    let mut p = 0i64;
                    let mut down = r.clone();
                    loop {
                        down[j] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    // p - q = <r, α_j^∨>
                    let q = p - w.0[j];
                    if q > 0 {
                        let mut up = r.clone();
                        up[j] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            all.append(&mut layer);
            next.sort();
            layer = next;
        }
        all
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrizer `d_i = (α_i, α_i)/2` with short roots normalized to 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    /// Positive roots in the simple-root basis, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in the fundamental-weight basis, same order as
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_roots_weights(&self) -> &[Weight] {
        &self.positive_roots_w
    }

    pub fn simple_root(&self, j: usize) -> &Weight {
        &self.simple_roots[j]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn root_to_weight(&self, n: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| (0..r).map(|j| self.cartan[i][j] * n[j]).sum()).collect())
    }

    /// `(λ, β)` for `β = Σ n_j α_j`.
    pub fn ip_root(&self, lambda: &Weight, n: &[i64]) -> i64 {
        n.iter()
            .zip(&self.sym)
            .zip(&lambda.0)
            .map(|((nj, dj), lj)| nj * dj * lj)
            .sum()
    }

    /// `(β, β)` for `β = Σ n_j α_j`.
    pub fn root_norm(&self, n: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if n[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += n[i] * n[j] * self.sym[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// `2(λ+ρ, β) - (β, β)`, the Freudenthal denominator for the weight λ - β.
    pub fn freudenthal_denominator(&self, lambda: &Weight, n: &[i64]) -> i64 {
        let shifted: i64 =
            n.iter().zip(&self.sym).zip(&lambda.0).map(|((nj, dj), lj)| nj * dj * (lj + 1)).sum();
        2 * shifted - self.root_norm(n)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<(), LieError> {
        if w.len() != self.rank() {
            return Err(LieError::RankMismatch { expected: self.rank(), got: w.len() });
        }
        Ok(())
    }

    pub fn check_node(&self, i: usize) -> Result<(), LieError> {
        if i >= self.rank() {
            return Err(LieError::InvalidNode { node: i, rank: self.rank() });
        }
        Ok(())
    }

    pub fn all_nodes(&self) -> NodeMask {
        NodeMask::full(self.rank())
    }

    /// Indices of the positive roots supported on `mask`.
    pub fn positive_roots_on(&self, mask: &NodeMask) -> Vec<usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().enumerate().all(|(k, &c)| c == 0 || mask.contains(k)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Component decomposition of the Dynkin subdiagram on `mask`, as factors
    /// with their node lists. Used to label Levi subsystems.
    pub fn components_on(&self, mask: &NodeMask) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] || !mask.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && mask.contains(j) && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// The sub-root-system on `mask`, as a standalone product with nodes
    /// renumbered in increasing order. Returns the system and the original
    /// node index of each new node.
    pub fn subsystem(&self, mask: &NodeMask) -> Option<(RootSystem, Vec<usize>)> {
        let comps = self.components_on(mask);
        if comps.is_empty() {
            return None;
        }
        let mut factors = Vec::new();
        let mut order = Vec::new();
        for comp in &comps {
            let (series, rank, nodes) = classify_component(self, comp);
            factors.push((series, rank));
            order.extend(nodes);
        }
        let rs = RootSystem::product(&factors).ok()?;
        Some((rs, order))
    }
}

// Identify the simple type of a connected subdiagram and return the nodes in
// Bourbaki order for that type.
fn classify_component(rs: &RootSystem, comp: &[usize]) -> (Series, usize, Vec<usize>) {
    let n = comp.len();
    let a = |i: usize, j: usize| rs.cartan[i][j];
    let nbrs = |i: usize| -> Vec<usize> { comp.iter().copied().filter(|&j| j != i && a(i, j) != 0).collect() };
    if n == 1 {
        return (Series::A, 1, comp.to_vec());
    }
    let branch = comp.iter().copied().find(|&i| nbrs(i).len() == 3);
    if let Some(b) = branch {
        // D_n: walk from the end of the long arm.
        let ends: Vec<usize> = comp.iter().copied().filter(|&i| nbrs(i).len() == 1).collect();
        let arm_len = |e: usize| {
            let (mut prev, mut cur, mut len) = (usize::MAX, e, 0);
            while cur != b {
                let nx = nbrs(cur).into_iter().find(|&x| x != prev).unwrap();
                prev = cur;
                cur = nx;
                len += 1;
            }
            len
        };
        let mut ends_sorted = ends.clone();
        ends_sorted.sort_by_key(|&e| std::cmp::Reverse(arm_len(e)));
        let start = ends_sorted[0];
        let mut order = walk_path(start, b, &nbrs);
        let mut tails: Vec<usize> = ends_sorted[1..].to_vec();
        tails.sort();
        order.extend(tails);
        return (Series::D, n, order);
    }
    let ends: Vec<usize> = comp.iter().copied().filter(|&i| nbrs(i).len() == 1).collect();
    let path_from = |s: usize| {
        let mut order = vec![s];
        let mut prev = usize::MAX;
        let mut cur = s;
        loop {
            match nbrs(cur).into_iter().find(|&x| x != prev) {
                Some(nx) => {
                    order.push(nx);
                    prev = cur;
                    cur = nx;
                }
                None => break,
            }
        }
        order
    };
    let order = path_from(ends[0]);
    let multi = order.windows(2).find(|w| a(w[0], w[1]) * a(w[1], w[0]) > 1);
    match multi {
        None => {
            let mut o = order;
            if o[0] > o[n - 1] {
                o.reverse();
            }
            (Series::A, n, o)
        }
        Some(w) => {
            let prod = a(w[0], w[1]) * a(w[1], w[0]);
            if prod == 3 {
                // G2: node 1 short.
                let (x, y) = (w[0], w[1]);
                let o = if rs.sym[x] < rs.sym[y] { vec![x, y] } else { vec![y, x] };
                return (Series::G, 2, o);
            }
            if n == 4 {
                // F4 if the double bond is in the middle.
                let mid = order.windows(2).position(|w| a(w[0], w[1]) * a(w[1], w[0]) == 2).unwrap();
                if mid == 1 {
                    let mut o = order.clone();
                    if rs.sym[o[0]] < rs.sym[o[3]] {
                        o.reverse();
                    }
                    return (Series::F, 4, o);
                }
            }
            // B or C: the double bond sits at one end of the path.
            let mut o = order.clone();
            let end_pair = (o[n - 2], o[n - 1]);
            if a(end_pair.0, end_pair.1) * a(end_pair.1, end_pair.0) != 2 {
                o.reverse();
            }
            let last = o[n - 1];
            let prev = o[n - 2];
            let series = if rs.sym[last] < rs.sym[prev] { Series::B } else { Series::C };
            (series, n, o)
        }
    }
}

fn walk_path(start: usize, stop: usize, nbrs: &dyn Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while cur != stop {
        let nx = nbrs(cur).into_iter().find(|&x| x != prev).unwrap();
        order.push(nx);
        prev = cur;
        cur = nx;
    }
    order
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}{}", fac.series, fac.rank)?;
        }
        Ok(())
    }
}

impl FromStr for RootSystem {
    type Err = LieError;

    /// Parses labels such as `A4`, `G2`, `A2xA2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            if part.len() < 2 {
                return Err(LieError::Parse(format!("bad root system label '{s}'")));
            }
            let series: Series = part[..1].parse()?;
            let rank: usize = part[1..]
                .parse()
                .map_err(|_| LieError::Parse(format!("bad rank in '{part}'")))?;
            factors.push((series, rank));
        }
        RootSystem::product(&factors)
    }
}
