//! Line-oriented catalog file: one `roof` record per roof and one `bundle`
//! record per named bundle. Loading re-derives every record from the code
//! constructors and rejects any mismatch.

use std::collections::BTreeSet;
use std::fmt::Write;

use lie_core::Weight;

use crate::{roof, CatalogError, NamedBundle, RoofDescriptor};

pub const CATALOG_FORMAT_VERSION: u32 = 1;

/// The catalog shipped with the crate.
pub const SHIPPED_CATALOG: &str = include_str!("../data/catalog.txt");

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CatalogRecord {
    Roof { label: String, space: String, sides: [String; 2], r: usize, dim: usize, cy: (i64, i64), omega_m: (i64, i64) },
    Bundle { roof: String, bundle: NamedBundle },
}

fn nodes_text(nodes: &BTreeSet<usize>) -> String {
    nodes.iter().map(|n| format!("x{}", n + 1)).collect::<Vec<_>>().join(",")
}

fn roof_record(r: &RoofDescriptor) -> CatalogRecord {
    let om = r.bidegree(&r.hyperplane_canonical()).expect("supported on crossed nodes");
    CatalogRecord::Roof {
        label: r.label().to_string(),
        space: r.total_space().to_string(),
        sides: [r.sides()[0].to_string(), r.sides()[1].to_string()],
        r: r.r(),
        dim: r.dimension(),
        cy: r.cy_pair_dimension(),
        omega_m: om,
    }
}

fn render(rec: &CatalogRecord, out: &mut String) {
    match rec {
        CatalogRecord::Roof { label, space, sides, r, dim, cy, omega_m } => {
            let _ = writeln!(
                out,
                "roof {label} space={space} sides={}|{} r={r} dim={dim} cy={},{} omega_M={},{}",
                sides[0], sides[1], cy.0, cy.1, omega_m.0, omega_m.1
            );
        }
        CatalogRecord::Bundle { roof, bundle } => {
            let pieces: Vec<String> = bundle.pieces.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(
                out,
                "bundle {roof} {} home={} rank={} det={},{} pieces={}",
                bundle.symbol,
                nodes_text(&bundle.home),
                bundle.rank,
                bundle.det.0,
                bundle.det.1,
                pieces.join(";")
            );
        }
    }
}

/// Render the records of the given roofs in the catalog file format.
pub fn catalog_text(roofs: &[RoofDescriptor]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# homogeneous roof catalog");
    let _ = writeln!(out, "format {CATALOG_FORMAT_VERSION}");
    for r in roofs {
        render(&roof_record(r), &mut out);
        for b in r.bundles() {
            render(&CatalogRecord::Bundle { roof: r.label().to_string(), bundle: b.clone() }, &mut out);
        }
    }
    out
}

fn parse_pair(s: &str, line: usize) -> Result<(i64, i64), CatalogError> {
    let bad = || CatalogError::Parse(format!("line {line}: bad pair '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn parse_weight(s: &str, line: usize) -> Result<Weight, CatalogError> {
    let bad = || CatalogError::Parse(format!("line {line}: bad weight '{s}'"));
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let coords: Result<Vec<i64>, _> = inner.split(',').map(|c| c.trim().parse::<i64>()).collect();
    Ok(Weight(coords.map_err(|_| bad())?))
}

fn fields(rest: &[&str], line: usize) -> Result<std::collections::BTreeMap<String, String>, CatalogError> {
    rest.iter()
        .map(|f| {
            f.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| CatalogError::Parse(format!("line {line}: expected key=value, got '{f}'")))
        })
        .collect()
}

/// Parse a catalog file and validate every record against the code
/// constructors, including the rank/determinant checks of named bundles.
pub fn load_catalog(text: &str) -> Result<Vec<CatalogRecord>, CatalogError> {
    let mut version = None;
    let mut out = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        let get = |m: &std::collections::BTreeMap<String, String>, k: &str| {
            m.get(k).cloned().ok_or_else(|| CatalogError::Parse(format!("line {line}: missing '{k}'")))
        };
        match parts[0] {
            "format" => {
                let v: u32 = parts
                    .get(1)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| CatalogError::Parse(format!("line {line}: bad format line")))?;
                if v != CATALOG_FORMAT_VERSION {
                    return Err(CatalogError::Parse(format!("line {line}: unsupported format {v}")));
                }
                version = Some(v);
            }
            "roof" if parts.len() >= 2 => {
                let m = fields(&parts[2..], line)?;
                let sides = get(&m, "sides")?;
                let (s1, s2) = sides
                    .split_once('|')
                    .ok_or_else(|| CatalogError::Parse(format!("line {line}: bad sides '{sides}'")))?;
                let rec = CatalogRecord::Roof {
                    label: parts[1].to_string(),
                    space: get(&m, "space")?,
                    sides: [s1.to_string(), s2.to_string()],
                    r: get(&m, "r")?.parse().map_err(|_| CatalogError::Parse(format!("line {line}: bad r")))?,
                    dim: get(&m, "dim")?.parse().map_err(|_| CatalogError::Parse(format!("line {line}: bad dim")))?,
                    cy: parse_pair(&get(&m, "cy")?, line)?,
                    omega_m: parse_pair(&get(&m, "omega_M")?, line)?,
                };
                let expected = roof_record(&roof(parts[1])?);
                if rec != expected {
                    return Err(CatalogError::Invariant {
                        label: parts[1].to_string(),
                        detail: format!("line {line} disagrees with the constructor"),
                    });
                }
                out.push(rec);
            }
            "bundle" if parts.len() >= 3 => {
                let m = fields(&parts[3..], line)?;
                let home: Result<BTreeSet<usize>, _> = get(&m, "home")?
                    .split(',')
                    .map(|n| n.trim_start_matches('x').parse::<usize>().map(|k| k - 1))
                    .collect();
                let pieces: Result<Vec<Weight>, _> =
                    get(&m, "pieces")?.split(';').map(|p| parse_weight(p, line)).collect();
                let r = roof(parts[1])?;
                let known = r.named(parts[2])?;
                let bundle = NamedBundle {
                    symbol: parts[2].to_string(),
                    home: home.map_err(|_| CatalogError::Parse(format!("line {line}: bad home")))?,
                    pieces: pieces?,
                    rank: get(&m, "rank")?.parse().map_err(|_| CatalogError::Parse(format!("line {line}: bad rank")))?,
                    det: parse_pair(&get(&m, "det")?, line)?,
                    note: known.note.clone(),
                };
                r.check_bundle(&bundle)?;
                if &bundle != known {
                    return Err(CatalogError::Invariant {
                        label: parts[1].to_string(),
                        detail: format!("line {line}: bundle {} disagrees with the constructor", parts[2]),
                    });
                }
                out.push(CatalogRecord::Bundle { roof: parts[1].to_string(), bundle });
            }
            other => return Err(CatalogError::Parse(format!("line {line}: unknown record '{other}'"))),
        }
    }
    if version.is_none() {
        return Err(CatalogError::Parse("missing format line".into()));
    }
    Ok(out)
}
