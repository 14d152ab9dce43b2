//! Builtin scripts: hand-written files for C2, A^G_4 and G2, generated
//! schedules for A^M_n and A_n x A_n.

use std::collections::BTreeMap;

use roof_catalog::{BundleRef, Family};

use crate::dsl::{parse_script, Script, ScriptStep};
use crate::{Direction, LedgerError, MutationStep, SodObject};

const C2: &str = include_str!("../scripts/C2.mut");
const AG4: &str = include_str!("../scripts/AG4.mut");
const G2: &str = include_str!("../scripts/G2.mut");

/// Positional replay without Ext checks, used to generate swap indices.
struct Schedule {
    objects: Vec<SodObject>,
    steps: Vec<ScriptStep>,
    serre: i64,
}

impl Schedule {
    fn push(&mut self, step: MutationStep, citation: &str) {
        match &step {
            MutationStep::CyMutate(Direction::Right) => {
                let c = self.objects.iter().position(SodObject::is_cy).expect("CY");
                self.objects.swap(c, c + 1);
            }
            MutationStep::SerreForward => {
                let p = self.objects.iter().position(|o| !o.is_cy()).expect("object");
                let o = self.objects.remove(p);
                self.objects.push(o.twisted(self.serre, self.serre));
            }
            MutationStep::SwapOrthogonal(i) => self.objects.swap(*i, i + 1),
            MutationStep::TwistAll(a, b) => self.objects = self.objects.iter().map(|o| o.twisted(*a, *b)).collect(),
            other => unreachable!("not generated: {other}"),
        }
        self.steps.push(ScriptStep { step, citation: citation.to_string(), line: 0 });
    }
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn rows(first: i64, count: i64, n: i64, col: impl Fn(i64, i64) -> (i64, i64)) -> Vec<SodObject> {
    let mut out = Vec::new();
    for i in first..first + count {
        for j in 0..=n {
            let (a, b) = col(i, j);
            out.push(SodObject::Named(BundleRef::new("O", a, b)));
        }
    }
    out
}

/// The row schedule shared by A^M_n and A_n x A_n. `move_cy` first moves
/// the CY block past the objects that are about to leave.
fn row_schedule(n: i64, first_row: i64, row_count: i64, serre: i64, move_cy: bool) -> (Vec<SodObject>, Vec<ScriptStep>) {
    let mut start = vec![SodObject::cy("Y1")];
    start.extend(rows(first_row, row_count, n, |i, j| (i + j, i)));
    let mut s = Schedule { objects: start.clone(), steps: vec![], serre };
    let width = (n + 1) as usize;
    for k in 1..=n as usize {
        if move_cy {
            for _ in 0..k {
                s.push(MutationStep::CyMutate(Direction::Right), &format!("phase {k}: move the CY block {} right", count(k, "step")));
            }
        }
        for _ in 0..k {
            s.push(
                MutationStep::SerreForward,
                &format!("phase {k}: send the first {} to the end, twisted by O({serre},{serre})", count(k, "object")),
            );
        }
        let cite = format!(
            "phase {k}: on each row move the last {} {} left; O(m+1,1) is orthogonal to O(2+t,2+t)",
            count(k, "object"),
            count(n as usize - k, "step")
        );
        for row in 0..row_count as usize {
            let begin = 1 + row * width;
            for j in 0..k {
                let mut at = begin + width - k + j;
                for _ in 0..(n as usize - k) {
                    s.push(MutationStep::SwapOrthogonal(at - 1), &cite);
                    at -= 1;
                }
            }
        }
    }
    s.push(MutationStep::TwistAll(-n, -n), &format!("twist the collection by O({},{})", -n, -n));
    (start, s.steps)
}

/// `A^M_n`: F(1,n,n+1) with `omega_M = O(1-n,1-n)`.
pub fn am_script(n: usize) -> Script {
    let n = n as i64;
    let (start, steps) = row_schedule(n, 1, n - 1, n - 1, true);
    let mut target = vec![SodObject::cy("Y2")];
    target.extend(rows(1, n - 1, n, |i, j| (i, i - n + j)));
    Script { roof: format!("AM{n}"), start, target, target_steps: vec![], steps }
}

/// `A_n x A_n`: the CY block is empty; `omega_M = O(-n,-n)`.
pub fn axa_script(n: usize) -> Script {
    let n = n as i64;
    let (start, steps) = row_schedule(n, 0, n, n, false);
    let mut target = vec![SodObject::cy("Y2")];
    target.extend(rows(0, n, n, |i, j| (i, i - n + j)));
    Script { roof: format!("A{n}xA{n}"), start, target, target_steps: vec![], steps }
}

/// The script for a roof label, if the appendix gives one.
pub fn builtin_script(label: &str) -> Result<Script, LedgerError> {
    let roof = roof_catalog::roof(label)?;
    let parse = |text: &str| parse_script(text);
    match roof.family() {
        Family::C(2) => parse(C2),
        Family::AG(2) => parse(AG4),
        Family::G2 => parse(G2),
        Family::AM(n) => Ok(am_script(n)),
        Family::AxA(n) => Ok(axa_script(n)),
        _ => Err(LedgerError::NoScript(label.to_string())),
    }
}

/// Labels verified by `verify all`.
pub fn script_roofs() -> Vec<String> {
    let mut out = vec!["C2".to_string()];
    out.extend((2..=5).map(|n| format!("AM{n}")));
    out.extend((1..=4).map(|n| format!("A{n}xA{n}")));
    out.push("AG4".into());
    out.push("G2".into());
    out
}

pub fn builtin_scripts() -> Result<BTreeMap<String, Script>, LedgerError> {
    script_roofs().into_iter().map(|l| builtin_script(&l).map(|s| (l, s))).collect()
}
