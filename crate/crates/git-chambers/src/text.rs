//! Text format, one constraint per line:
//!
//! ```text
//! vars a0 a1 a2
//! a0 + a1 + a2 > 0
//! -a1 >= 0
//! 3 a0 + 2 a1 - a2 >= 1/2   # comments run to the end of the line
//! a0 <= 2 a1
//! ```
//!
//! Both sides are linear expressions; `<` and `<=` are flipped on reading.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{ChambersError, Constraint, InequalitySystem, Relation};

fn perr(line: usize, detail: impl Into<String>) -> ChambersError {
    ChambersError::Parse { line, detail: detail.into() }
}

fn number(line: usize, s: &str) -> Result<BigRational, ChambersError> {
    let bad = || perr(line, format!("bad number '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `(coefficients, constant)` of a linear expression.
fn expression(line: usize, s: &str, vars: &[String]) -> Result<(Vec<BigRational>, BigRational), ChambersError> {
    let mut coeffs = vec![BigRational::zero(); vars.len()];
    let mut constant = BigRational::zero();
    let spaced = s.replace('+', " + ").replace('-', " - ").replace('*', " ");
    let mut sign = BigRational::one();
    let mut factor: Option<BigRational> = None;
    let mut empty = true;
    let flush = |factor: &mut Option<BigRational>, sign: &mut BigRational, constant: &mut BigRational| {
        if let Some(f) = factor.take() {
            *constant += &*sign * f;
        }
        *sign = BigRational::one();
    };
    for tok in spaced.split_whitespace() {
        empty = false;
        match tok {
            "+" | "-" => {
                flush(&mut factor, &mut sign, &mut constant);
                if tok == "-" {
                    sign = -sign;
                }
            }
            t if t.starts_with(|c: char| c.is_ascii_digit()) => {
                if factor.is_some() {
                    return Err(perr(line, format!("two numbers in a row at '{t}'")));
                }
                factor = Some(number(line, t)?);
            }
            t => {
                let i = vars.iter().position(|v| v == t).ok_or_else(|| perr(line, format!("unknown variable '{t}'")))?;
                let f = factor.take().unwrap_or_else(BigRational::one);
                coeffs[i] += &sign * f;
                sign = BigRational::one();
            }
        }
    }
    flush(&mut factor, &mut sign, &mut constant);
    if empty {
        return Err(perr(line, "empty side"));
    }
    Ok((coeffs, constant))
}

pub fn parse_system(text: &str) -> Result<InequalitySystem, ChambersError> {
    let mut vars: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("vars") {
            if vars.is_some() {
                return Err(perr(line, "second 'vars' line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(perr(line, "no variables"));
            }
            vars = Some(names);
            continue;
        }
        let vars = vars.as_ref().ok_or_else(|| perr(line, "constraint before the 'vars' line"))?;
        let ops = [(">=", false, Relation::GreaterEq), ("<=", true, Relation::GreaterEq), (">", false, Relation::Greater), ("<", true, Relation::Greater)];
        let (lhs, rhs, flip, rel) = ops
            .iter()
            .find_map(|(op, flip, rel)| body.split_once(op).map(|(l, r)| (l, r, *flip, *rel)))
            .ok_or_else(|| perr(line, "no relation (>, >=, <, <=)"))?;
        let (mut a, mut c) = expression(line, lhs, vars)?;
        let (b, d) = expression(line, rhs, vars)?;
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        c -= d;
        if flip {
            a = a.into_iter().map(|x| -x).collect();
            c = -c;
        }
        rows.push(Constraint { coeffs: a, constant: c, rel });
    }
    let vars = vars.ok_or_else(|| perr(0, "missing 'vars' line"))?;
    InequalitySystem::new(vars, rows)
}

/// One constraint in the text format, e.g. `3 a0 + 2 a1 - a2 >= 0`.
pub fn render_constraint(c: &Constraint, variables: &[String]) -> String {
    let mut out = String::new();
    for (a, v) in c.coeffs.iter().zip(variables) {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(v);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} {} {}", c.rel.symbol(), -&c.constant)
}

pub(crate) fn write_system(sys: &InequalitySystem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "vars {}", sys.variables.join(" "))?;
    for c in &sys.constraints {
        writeln!(f, "{}", render_constraint(c, &sys.variables))?;
    }
    Ok(())
}
