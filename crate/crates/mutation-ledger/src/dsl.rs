//! The line-oriented script language.
//!
//! ```text
//! roof C2
//! start CY O(-1,1) O(0,1) O(1,1) O(2,1)
//! target O(0,0) U^v(0,0) O(0,1) O(0,2) CY
//! # a comment line is the citation of the steps that follow it
//! serre-
//! R 3   # a trailing comment overrides it for one step
//! ```
//!
//! Steps: `L <i>`, `R <i>`, `swap <i>`, `serre+`, `serre-`, `twist <a> <b>`,
//! `cy left|right`, `rewrite <rule-id> <i>`. Positions are 1-based and
//! count the CY block. `target-step <step>` lines transform the written
//! target before the comparison.

use std::fmt::Write as _;

use roof_catalog::BundleRef;

use crate::{Direction, LedgerError, MutationStep, SodObject};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScriptStep {
    pub step: MutationStep,
    pub citation: String,
    /// Source line, 1-based; 0 for generated scripts.
    pub line: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Script {
    pub roof: String,
    pub start: Vec<SodObject>,
    pub target: Vec<SodObject>,
    pub target_steps: Vec<ScriptStep>,
    pub steps: Vec<ScriptStep>,
}

fn perr(line: usize, detail: impl Into<String>) -> LedgerError {
    LedgerError::Parse { line, detail: detail.into() }
}

fn parse_objects(line: usize, words: &[&str], side: &str) -> Result<Vec<SodObject>, LedgerError> {
    words
        .iter()
        .map(|w| {
            if *w == "CY" {
                Ok(SodObject::cy(side))
            } else {
                w.parse::<BundleRef>().map(SodObject::Named).map_err(|e| perr(line, e.to_string()))
            }
        })
        .collect()
}

fn position(line: usize, w: Option<&&str>) -> Result<usize, LedgerError> {
    let w = w.ok_or_else(|| perr(line, "missing position"))?;
    match w.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(perr(line, format!("bad position '{w}' (positions start at 1)"))),
    }
}

fn integer(line: usize, w: Option<&&str>) -> Result<i64, LedgerError> {
    let w = w.ok_or_else(|| perr(line, "missing integer"))?;
    w.parse().map_err(|_| perr(line, format!("bad integer '{w}'")))
}

pub(crate) fn parse_step(line: usize, words: &[&str]) -> Result<MutationStep, LedgerError> {
    let step = match words {
        ["L", ..] => MutationStep::LeftPair(position(line, words.get(1))?),
        ["R", ..] => MutationStep::RightPair(position(line, words.get(1))?),
        ["swap", ..] => MutationStep::SwapOrthogonal(position(line, words.get(1))?),
        ["serre+"] => MutationStep::SerreForward,
        ["serre-"] => MutationStep::SerreBackward,
        ["twist", ..] => MutationStep::TwistAll(integer(line, words.get(1))?, integer(line, words.get(2))?),
        ["cy", "left"] => MutationStep::CyMutate(Direction::Left),
        ["cy", "right"] => MutationStep::CyMutate(Direction::Right),
        ["rewrite", id, ..] => MutationStep::RewriteApply(id.to_string(), position(line, words.get(2))?),
        _ => return Err(perr(line, format!("unknown step '{}'", words.join(" ")))),
    };
    let arity = match &step {
        MutationStep::SerreForward | MutationStep::SerreBackward => 1,
        MutationStep::LeftPair(_) | MutationStep::RightPair(_) | MutationStep::SwapOrthogonal(_) => 2,
        MutationStep::CyMutate(_) => 2,
        MutationStep::TwistAll(..) | MutationStep::RewriteApply(..) => 3,
    };
    if words.len() != arity {
        return Err(perr(line, format!("trailing input in '{}'", words.join(" "))));
    }
    Ok(step)
}

pub fn parse_script(text: &str) -> Result<Script, LedgerError> {
    let mut roof = None;
    let mut start = None;
    let mut target = None;
    let mut target_steps = Vec::new();
    let mut steps = Vec::new();
    let mut citation = String::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim())),
            None => (raw.trim(), None),
        };
        if body.is_empty() {
            if let Some(c) = comment {
                citation = c.to_string();
            }
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let cite = comment.map(str::to_string).unwrap_or_else(|| citation.clone());
        match words[0] {
            "roof" if words.len() == 2 => roof = Some(words[1].to_string()),
            "start" => start = Some(parse_objects(line, &words[1..], "Y1")?),
            "target" => target = Some(parse_objects(line, &words[1..], "Y2")?),
            "target-step" => {
                target_steps.push(ScriptStep { step: parse_step(line, &words[1..])?, citation: cite, line })
            }
            _ => steps.push(ScriptStep { step: parse_step(line, &words)?, citation: cite, line }),
        }
    }
    Ok(Script {
        roof: roof.ok_or_else(|| perr(0, "missing 'roof' line"))?,
        start: start.ok_or_else(|| perr(0, "missing 'start' line"))?,
        target: target.ok_or_else(|| perr(0, "missing 'target' line"))?,
        target_steps,
        steps,
    })
}

fn join(objs: &[SodObject]) -> String {
    objs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" ")
}

/// Inverse of [`parse_script`] up to source line numbers.
pub fn print_script(s: &Script) -> String {
    let mut out = String::new();
    writeln!(out, "roof {}", s.roof).unwrap();
    writeln!(out, "start {}", join(&s.start)).unwrap();
    writeln!(out, "target {}", join(&s.target)).unwrap();
    let mut current = String::new();
    for (prefix, list) in [("target-step ", &s.target_steps), ("", &s.steps)] {
        for st in list {
            if st.citation != current {
                writeln!(out, "# {}", st.citation).unwrap();
                current = st.citation.clone();
            }
            writeln!(out, "{prefix}{}", st.step).unwrap();
        }
    }
    out
}
