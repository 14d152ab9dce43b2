//! Brute-force feasibility for small systems, independent of elimination.
//!
//! Maximise `t` subject to `a_i·x + c_i >= t` on strict rows, `a_i·x + c_i
//! >= 0` on the others, `-1 <= t <= 1` and `|x_j| <= BOX`, by evaluating every
//! vertex of that polytope. The system is feasible iff the maximum exists and
//! is positive. Small integer data keep some solution inside the box.

use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub const BOX: i128 = 1_000_000;

/// `(coefficients, constant, strict)` with `coefficients·x + constant > 0`
/// (strict) or `>= 0`.
pub type Row = (Vec<i64>, i64, bool);

fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != Q::from_integer(0))?;
        m.swap(col, p);
        rhs.swap(col, p);
        for r in 0..n {
            if r != col && m[r][col] != Q::from_integer(0) {
                let f = m[r][col] / m[col][col];
                for c in col..n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
                let v = rhs[col];
                rhs[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn feasible(nvars: usize, rows: &[Row]) -> bool {
    let q = |v: i64| Q::from_integer(v as i128);
    // Half-spaces over (x, t): g·(x,t) >= h.
    let mut hs: Vec<(Vec<Q>, Q)> = Vec::new();
    for (a, c, strict) in rows {
        let mut g: Vec<Q> = a.iter().map(|&v| q(v)).collect();
        g.push(if *strict { q(-1) } else { q(0) });
        hs.push((g, q(-*c)));
    }
    for j in 0..=nvars {
        let bound = if j == nvars { 1 } else { BOX };
        let mut up = vec![q(0); nvars + 1];
        up[j] = q(-1);
        hs.push((up, Q::from_integer(-bound)));
        let mut down = vec![q(0); nvars + 1];
        down[j] = q(1);
        hs.push((down, Q::from_integer(-bound)));
    }
    let mut best: Option<Q> = None;
    for s in subsets(hs.len(), nvars + 1) {
        let m = s.iter().map(|&i| hs[i].0.clone()).collect();
        let r = s.iter().map(|&i| hs[i].1).collect();
        let Some(p) = solve(m, r) else { continue };
        let inside = hs.iter().all(|(g, h)| g.iter().zip(&p).fold(Q::from_integer(0), |acc, (a, b)| acc + a * b) >= *h);
        if inside && best.is_none_or(|b| p[nvars] > b) {
            best = Some(p[nvars]);
        }
    }
    best.is_some_and(|t| t > Q::from_integer(0))
}
