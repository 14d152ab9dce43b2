//! Argument grammars that clap does not cover.

use bwb::MarkedDiagram;
use git_chambers::TauSign;
use lie_core::Weight;

fn integers(tokens: &[&str], source: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    let mut pos = 0;
    for t in tokens {
        let at = source[pos..].find(t).map_or(pos, |i| pos + i);
        out.push(t.parse().map_err(|_| format!("bad integer '{t}' at position {at} in '{source}'"))?);
        pos = at + t.len();
    }
    Ok(out)
}

/// A weight given as `rank` coordinates, as degrees on the crossed nodes, or
/// as `O(a,b,...)`. Coordinates may be separated by spaces or commas.
pub fn weight(space: &MarkedDiagram, args: &[String]) -> Result<Weight, String> {
    let source = args.join(" ");
    let trimmed = source.trim();
    if let Some(inner) = trimmed.strip_prefix("O(") {
        let inner = inner.strip_suffix(')').ok_or_else(|| format!("expected ')' at position {} in '{trimmed}'", trimmed.len()))?;
        let tokens: Vec<&str> = inner.split(',').map(str::trim).collect();
        let degrees = integers(&tokens, trimmed)?;
        return space.line_weight(&degrees).map_err(|e| e.to_string());
    }
    let body = trimmed.trim_start_matches('(').trim_end_matches(')');
    let tokens: Vec<&str> = body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    let coords = integers(&tokens, trimmed)?;
    if coords.len() == space.rank() {
        Ok(Weight::from(coords))
    } else if coords.len() == space.crossed().len() {
        space.line_weight(&coords).map_err(|e| e.to_string())
    } else {
        Err(format!(
            "{space} needs {} weight coordinates or {} degrees, got {}",
            space.rank(),
            space.crossed().len(),
            coords.len()
        ))
    }
}

pub fn tau(s: &str) -> Result<TauSign, String> {
    match s {
        "+" | "pos" | "positive" | ">0" => Ok(TauSign::Positive),
        "-" | "neg" | "negative" | "<0" => Ok(TauSign::Negative),
        _ => Err(format!("bad sign '{s}': expected '+' or '-'")),
    }
}
