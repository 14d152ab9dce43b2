//! One-parameter subgroup systems for the GLSM on
//! `V = Hom(C, V_{2k+2}) ⊕ Hom(C^{k+1}, V_{2k+2}) ⊕ V_{k+1}^∨` with
//! `g·(v, B, x) = (v λ^{-1}, B h^{-1}, λ^3 det h^2 x h^{-1})`.
//!
//! `g_t = diag(t^{α_0}, …, t^{α_{k+1}})`, `α_0` acting through `λ`. The
//! limit of `g_t·(v, B, x)` exists when every nonzero coordinate has a
//! nonnegative weight:
//!
//! ```text
//! ±Σ α_i                          > 0    (ρ_±^{-1}(g_t) → 0)
//! -α_j                            >= 0   j = l..k+1, the nonzero columns of (v|B)
//! 3α_0 + 2Σ_{i>=1} α_i - α_j      >= 0   j = 1..k+1, the coordinates of x
//! ```

use crate::{ChambersError, Constraint, InequalitySystem, Relation};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TauSign {
    Positive,
    Negative,
}

/// The system at a point whose first `l` columns of `(v|B)` vanish; `l = 0`
/// is the general point.
pub fn build_phase_system(k: usize, tau: TauSign, l: usize) -> Result<InequalitySystem, ChambersError> {
    if k < 2 {
        return Err(ChambersError::BadK(k));
    }
    let n = k + 2;
    if l > k + 1 {
        return Err(ChambersError::BadL { l, max: k + 1 });
    }
    let variables = (0..n).map(|i| format!("a{i}")).collect();
    let mut rows = Vec::new();
    let sign = match tau {
        TauSign::Positive => 1,
        TauSign::Negative => -1,
    };
    rows.push(Constraint::homogeneous(&vec![sign; n], Relation::Greater));
    for j in l..n {
        let mut c = vec![0; n];
        c[j] = -1;
        rows.push(Constraint::homogeneous(&c, Relation::GreaterEq));
    }
    for j in 1..n {
        let mut c = vec![2; n];
        c[0] = 3;
        c[j] -= 1;
        rows.push(Constraint::homogeneous(&c, Relation::GreaterEq));
    }
    InequalitySystem::new(variables, rows)
}
