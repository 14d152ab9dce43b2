//! Exact feasibility of mixed strict/non-strict linear inequality systems by
//! Fourier–Motzkin elimination, and the one-parameter subgroup systems of the
//! GLSM phase analysis.

mod phase;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use phase::{build_phase_system, TauSign};
pub use text::{parse_system, render_constraint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChambersError {
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("k = {0}: the phase systems need k >= 2")]
    BadK(usize),
    #[error("l = {l}: at most k+1 = {max} column constraints can be dropped")]
    BadL { l: usize, max: usize },
    #[error("constraint {index} has {got} coefficients, the system has {want} variables")]
    Arity { index: usize, got: usize, want: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `> 0`
    Greater,
    /// `>= 0`
    GreaterEq,
}

impl Relation {
    fn and(self, other: Relation) -> Relation {
        if self == Relation::Greater || other == Relation::Greater {
            Relation::Greater
        } else {
            Relation::GreaterEq
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }
}

/// `coeffs · x + constant  rel  0`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
    pub rel: Relation,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, constant: BigRational, rel: Relation) -> Self {
        Constraint { coeffs, constant, rel }
    }

    /// Integer coefficients, no constant term.
    pub fn homogeneous(coeffs: &[i64], rel: Relation) -> Self {
        Constraint { coeffs: coeffs.iter().map(|&c| int(c)).collect(), constant: BigRational::zero(), rel }
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let v = self.value(x);
        match self.rel {
            Relation::Greater => v.is_positive(),
            Relation::GreaterEq => !v.is_negative(),
        }
    }

    /// A row without variables that cannot hold.
    fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
            && match self.rel {
                Relation::Greater => !self.constant.is_positive(),
                Relation::GreaterEq => self.constant.is_negative(),
            }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.is_contradiction()
    }

    /// Scaled so the first nonzero entry (coefficients, then constant) has
    /// absolute value 1.
    fn normalized(&self) -> Constraint {
        let lead = self.coeffs.iter().chain(std::iter::once(&self.constant)).find(|c| !c.is_zero());
        match lead {
            Some(l) => {
                let s = l.abs();
                Constraint {
                    coeffs: self.coeffs.iter().map(|c| c / &s).collect(),
                    constant: &self.constant / &s,
                    rel: self.rel,
                }
            }
            None => self.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InequalitySystem {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl InequalitySystem {
    pub fn new(variables: Vec<String>, constraints: Vec<Constraint>) -> Result<Self, ChambersError> {
        for (index, c) in constraints.iter().enumerate() {
            if c.coeffs.len() != variables.len() {
                return Err(ChambersError::Arity { index, got: c.coeffs.len(), want: variables.len() });
            }
        }
        Ok(InequalitySystem { variables, constraints })
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A row derived during elimination together with the nonnegative
/// multipliers of the original rows that produce it.
#[derive(Clone, Debug)]
struct Row {
    c: Constraint,
    from: Vec<BigRational>,
}

/// A nonnegative combination of the original constraints whose variable
/// part vanishes and whose constant part violates the relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Contradiction {
    /// `(constraint index, multiplier)`, multipliers positive.
    pub multipliers: Vec<(usize, BigRational)>,
    pub derived: Constraint,
}

impl Contradiction {
    /// Recompute the combination from the system and check it.
    pub fn verify(&self, sys: &InequalitySystem) -> bool {
        let n = sys.variables.len();
        let mut coeffs = vec![BigRational::zero(); n];
        let mut constant = BigRational::zero();
        let mut rel = Relation::GreaterEq;
        for (i, m) in &self.multipliers {
            if !m.is_positive() {
                return false;
            }
            let Some(c) = sys.constraints.get(*i) else { return false };
            for (acc, a) in coeffs.iter_mut().zip(&c.coeffs) {
                *acc += m * a;
            }
            constant += m * &c.constant;
            rel = rel.and(c.rel);
        }
        let derived = Constraint { coeffs, constant, rel };
        derived == self.derived && derived.is_contradiction()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FmReport {
    pub feasible: bool,
    pub witness: Option<Vec<BigRational>>,
    pub contradiction: Option<Contradiction>,
    pub trace: Vec<String>,
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in rows {
        if r.c.is_trivial() {
            continue;
        }
        if seen.insert(r.c.normalized()) {
            out.push(r);
        }
    }
    out
}

fn combine(p: &Row, n: &Row, var: usize) -> Row {
    // p has a positive, n a negative coefficient at var.
    let mp = -&n.c.coeffs[var];
    let mn = p.c.coeffs[var].clone();
    let coeffs = p.c.coeffs.iter().zip(&n.c.coeffs).map(|(a, b)| &mp * a + &mn * b).collect();
    let constant = &mp * &p.c.constant + &mn * &n.c.constant;
    let from = p.from.iter().zip(&n.from).map(|(a, b)| &mp * a + &mn * b).collect();
    let raw = Row { c: Constraint { coeffs, constant, rel: p.c.rel.and(n.c.rel) }, from };
    // Keep numbers small: scale by the first nonzero entry.
    let norm = raw.c.normalized();
    let scale = match raw.c.coeffs.iter().chain(std::iter::once(&raw.c.constant)).find(|c| !c.is_zero()) {
        Some(l) => l.abs(),
        None => BigRational::one(),
    };
    Row { c: norm, from: raw.from.iter().map(|f| f / &scale).collect() }
}

/// Bounds on `x_var` from rows in variables `0..=var`, the others fixed.
fn choose(rows: &[Row], var: usize, fixed: &[BigRational]) -> BigRational {
    let mut lo: Option<(BigRational, bool)> = None;
    let mut hi: Option<(BigRational, bool)> = None;
    for r in rows {
        let a = &r.c.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest = r.c.coeffs[..var].iter().zip(fixed).fold(r.c.constant.clone(), |acc, (c, v)| acc + c * v);
        let bound = -rest / a;
        let strict = r.c.rel == Relation::Greater;
        if a.is_positive() {
            if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && strict && !s)) {
                lo = Some((bound, strict));
            }
        } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && strict && !s)) {
            hi = Some((bound, strict));
        }
    }
    match (lo, hi) {
        (None, None) => BigRational::zero(),
        (Some((l, false)), None) => l,
        (Some((l, true)), None) => l.floor() + BigRational::one(),
        (None, Some((h, false))) => h,
        (None, Some((h, true))) => h.ceil() - BigRational::one(),
        (Some((l, ls)), Some((h, hs))) => {
            if !ls && (l == h || l.is_integer()) {
                return l;
            }
            if !hs && h.is_integer() && h != l {
                return h;
            }
            // The open interval is nonempty here; prefer an integer inside it.
            let mid = (&l + &h) / int(2);
            let cand = l.floor() + BigRational::one();
            if cand < h || (!hs && cand == h) {
                cand
            } else {
                mid
            }
        }
    }
}

/// Exact Fourier–Motzkin elimination, last variable first. Strictness is
/// carried through every combination. A feasible system gets a witness by
/// back-substitution, checked against every original row; an infeasible one
/// gets a nonnegative combination of the original rows that is contradictory.
pub fn feasible(sys: &InequalitySystem) -> FmReport {
    let n = sys.variables.len();
    let m = sys.constraints.len();
    let mut trace = Vec::new();
    let mut rows: Vec<Row> = sys
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut from = vec![BigRational::zero(); m];
            from[i] = BigRational::one();
            Row { c: c.clone(), from }
        })
        .collect();
    let mut levels: Vec<Vec<Row>> = Vec::with_capacity(n);
    let contradiction = |rows: &[Row]| rows.iter().find(|r| r.c.is_contradiction()).cloned();
    let mut bad = contradiction(&rows);
    for var in (0..n).rev() {
        if bad.is_some() {
            break;
        }
        rows = dedup(rows);
        levels.push(rows.clone());
        let (mut pos, mut neg, mut keep) = (vec![], vec![], vec![]);
        for r in rows {
            match r.c.coeffs[var].clone() {
                a if a.is_positive() => pos.push(r),
                a if a.is_negative() => neg.push(r),
                _ => keep.push(r),
            }
        }
        let (np, nn, nk) = (pos.len(), neg.len(), keep.len());
        for p in &pos {
            for q in &neg {
                keep.push(combine(p, q, var));
            }
        }
        rows = keep;
        trace.push(format!(
            "eliminate {}: {np} lower and {nn} upper bounds, {nk} rows without it, {} rows",
            sys.variables[var],
            rows.len()
        ));
        bad = contradiction(&rows);
    }
    if let Some(r) = bad {
        let multipliers: Vec<(usize, BigRational)> =
            r.from.iter().enumerate().filter(|(_, f)| !f.is_zero()).map(|(i, f)| (i, f.clone())).collect();
        let derived = Constraint {
            coeffs: vec![BigRational::zero(); n],
            constant: multipliers.iter().fold(BigRational::zero(), |acc, (i, f)| acc + f * &sys.constraints[*i].constant),
            rel: multipliers.iter().fold(Relation::GreaterEq, |acc, (i, _)| acc.and(sys.constraints[*i].rel)),
        };
        trace.push(format!(
            "contradiction {} {} 0 from {}",
            derived.constant,
            derived.rel.symbol(),
            multipliers.iter().map(|(i, f)| format!("{f}*[{}]", i + 1)).collect::<Vec<_>>().join(" + ")
        ));
        let c = Contradiction { multipliers, derived };
        debug_assert!(c.verify(sys));
        return FmReport { feasible: false, witness: None, contradiction: Some(c), trace };
    }
    let mut x: Vec<BigRational> = Vec::with_capacity(n);
    for (var, level) in levels.iter().rev().enumerate() {
        x.push(choose(level, var, &x));
    }
    assert!(sys.satisfied_by(&x), "Fourier–Motzkin witness fails the system");
    trace.push(format!("witness ({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")));
    FmReport { feasible: true, witness: Some(x), contradiction: None, trace }
}

impl fmt::Display for InequalitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_system(self, f)
    }
}
