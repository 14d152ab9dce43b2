use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use bwb::{GradedDims, IrreducibleBundle, MarkedDiagram};
use ext_engine::{
    condition_dagger_bounded, eightfold, ext_gp_bounded, ext_on_m_report_bounded, l_semiorthogonal_bounded, ExtGp,
    ExtOnM, HomogeneousBundle, KoszulTable,
};
use git_chambers::{build_phase_system, feasible, parse_system, render_constraint, InequalitySystem};
use mutation_ledger::{builtin_script, parse_script, run_script, script_roofs, Certificate, Options, Script};
use roof_catalog::{catalog_text, default_roofs, list_roofs, BundleRef, RoofDescriptor, CATALOG_FORMAT_VERSION};
use serde_json::{json, Value};

use crate::{parse, Cli, Command, Outcome, Status};

type Res = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ok(text: String, result: Value) -> Res {
    Ok(Outcome { text, result, status: Status::Ok })
}

fn checked(holds: bool, text: String, result: Value) -> Res {
    let status = if holds { Status::Ok } else { Status::CheckFailed };
    Ok(Outcome { text, result, status })
}

pub fn run(cli: &Cli) -> Res {
    let bound = cli.max_weights;
    match &cli.command {
        Command::Cohomology { space, weight } => cohomology(space, weight),
        Command::Ext { roof, on_m, e, f } => ext(roof, *on_m, e, f, bound),
        Command::Dagger { roof, e1, e2 } => dagger(roof, e1, e2, bound),
        Command::Lso { roof, e, f } => lso(roof, e, f, bound),
        Command::Verify { target, script, lenient, out, .. } => {
            verify(target.as_deref(), script.as_deref(), !lenient, out.as_deref())
        }
        Command::Eightfold => eightfold_cmd(),
        Command::Chambers { k, tau, l, file } => chambers(*k, tau.as_deref(), *l, file.as_deref()),
        Command::Catalog { max_param } => catalog(*max_param),
    }
}

/// One line per degree, e.g. `H^0 = C^5  [V(1,0,0,0)]`.
fn render_graded(name: &str, h: &GradedDims) -> String {
    if h.is_zero() {
        return format!("{name} = 0\n");
    }
    let mut out = String::new();
    for (d, e) in h.entries() {
        let _ = write!(out, "{name}^{d} = C^{}", e.dim);
        if !e.summands.is_empty() {
            let parts: Vec<String> = e
                .summands
                .iter()
                .map(|(w, &m)| if m == 1 { format!("V{w}") } else { format!("{m} V{w}") })
                .collect();
            let _ = write!(out, "  [{}]", parts.join(" + "));
        }
        out.push('\n');
    }
    out
}

fn render_ext_gp(x: &ExtGp) -> String {
    if x.is_exact() {
        format!("{}", x.dims)
    } else {
        format!("{} (upper bound; differentials possible from degrees {:?})", x.dims, x.ambiguous)
    }
}

fn cohomology(space: &str, weight: &[String]) -> Res {
    let sp: MarkedDiagram = space.parse().map_err(err)?;
    let w = parse::weight(&sp, weight)?;
    let e = IrreducibleBundle::new(sp.clone(), w.clone()).map_err(err)?;
    let h = e.cohomology();
    let rank = e.rank().map_err(err)?;
    let mut text = format!("space {sp}  dim {}  Levi {}\nweight {w}  rank {rank}\n", sp.dimension(), sp.levi_label());
    text.push_str(&render_graded("H", &h));
    let result = json!({
        "space": sp.to_string(),
        "dimension": sp.dimension(),
        "weight": w,
        "rank": rank,
        "cohomology": h,
    });
    ok(text, result)
}

fn bundle(roof: &RoofDescriptor, s: &str) -> Result<HomogeneousBundle, String> {
    let r: BundleRef = s.parse().map_err(err)?;
    HomogeneousBundle::named(roof, &r).map_err(err)
}

fn load_roof(label: &str) -> Result<RoofDescriptor, String> {
    roof_catalog::roof(label).map_err(err)
}

fn ext(label: &str, on_m: bool, e: &str, f: &str, bound: u64) -> Res {
    let roof = load_roof(label)?;
    let (eb, fb) = (bundle(&roof, e)?, bundle(&roof, f)?);
    if !on_m {
        let x = ext_gp_bounded(&eb, &fb, bound).map_err(err)?;
        let text = format!("Ext^•({e}, {f}) on {} = {}\n", roof.total_space(), render_ext_gp(&x));
        let result = json!({ "roof": roof.label(), "space": roof.total_space().to_string(), "ext": x });
        return ok(text, result);
    }
    let rep = ext_on_m_report_bounded(&roof, &eb, &fb, bound).map_err(err)?;
    let status = match rep.ext {
        ExtOnM::Exact { .. } => "exact",
        ExtOnM::Ambiguous { .. } => "ambiguous",
    };
    let text = format!(
        "Ext^•_M({e}, {f}) on the {} hyperplane section = {}\nstatus {status}\n  Ext^•({e}, {f} ⊗ L^v) = {}\n  Ext^•({e}, {f}) = {}\n",
        roof.label(),
        rep.ext,
        render_ext_gp(&rep.twisted),
        render_ext_gp(&rep.untwisted)
    );
    let result = json!({ "roof": roof.label(), "on_m": true, "report": rep });
    ok(text, result)
}

fn dagger(label: &str, e1: &str, e2: &str, bound: u64) -> Res {
    let roof = load_roof(label)?;
    let rep = condition_dagger_bounded(&roof, &bundle(&roof, e1)?, &bundle(&roof, e2)?, bound).map_err(err)?;
    let text = format!(
        "Ext^•({e2}, {e1}) = {}\nExt^•({e1} ⊗ L, {e2}) = {}\ncondition (†) {}\n",
        render_ext_gp(&rep.ext_e2_e1),
        render_ext_gp(&rep.ext_e1l_e2),
        if rep.holds { "holds" } else { "fails" }
    );
    let result = json!({ "roof": roof.label(), "pair": [e1, e2], "report": rep });
    checked(rep.holds, text, result)
}

fn lso(label: &str, e: &str, f: &str, bound: u64) -> Res {
    let roof = load_roof(label)?;
    let rep = l_semiorthogonal_bounded(&roof, &bundle(&roof, e)?, &bundle(&roof, f)?, bound).map_err(err)?;
    let text = format!(
        "{e} is L-semiorthogonal to {f}: {}\nExt^•({e}, {f} ⊗ L^v) = {}\n",
        rep.holds,
        render_ext_gp(&rep.witness)
    );
    let result = json!({ "roof": roof.label(), "pair": [e, f], "report": rep });
    checked(rep.holds, text, result)
}

/// Write through a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("certificate");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

struct Run {
    name: String,
    certificate: Certificate,
    error: Option<String>,
}

fn verify(target: Option<&str>, script: Option<&Path>, strict: bool, out: Option<&Path>) -> Res {
    let jobs: Vec<(String, Script)> = match (target, script) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let s = parse_script(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let name = path.file_stem().and_then(|n| n.to_str()).unwrap_or("script").to_string();
            vec![(name, s)]
        }
        (Some("all"), None) => {
            script_roofs().into_iter().map(|l| builtin_script(&l).map(|s| (l, s))).collect::<Result<_, _>>().map_err(err)?
        }
        (Some(label), None) => vec![(label.to_string(), builtin_script(label).map_err(err)?)],
        (None, None) => return Err("verify needs a roof label, 'all' or --script".into()),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let opts = if strict { Options::strict() } else { Options::lenient() };
    let runs: Vec<Run> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(name, script)| {
                s.spawn(move || match run_script(script, &opts) {
                    Ok(c) => Run { name: name.clone(), certificate: c, error: None },
                    Err(f) => Run { name: name.clone(), error: Some(f.error.to_string()), certificate: f.certificate },
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify thread")).collect()
    });

    let mut text = String::new();
    let mut entries = Vec::new();
    let mut all_ok = true;
    for r in &runs {
        let c = &r.certificate;
        let verified = r.error.is_none() && c.verified;
        all_ok &= verified;
        let path: Option<PathBuf> = out.map(|d| d.join(format!("{}.json", r.name)));
        if let Some(p) = &path {
            write_atomic(p, &c.to_json()).map_err(|e| format!("{}: {e}", p.display()))?;
        }
        let _ = write!(
            text,
            "{:<7} {}  {} steps, {} swaps, {} flags, {} open checks",
            r.name,
            if verified { "verified" } else { "FAILED" },
            c.steps.len(),
            c.swap_count(),
            c.flags.len(),
            c.open_checks.len()
        );
        if let Some(p) = &path {
            let _ = write!(text, "  -> {}", p.display());
        }
        text.push('\n');
        if let Some(e) = &r.error {
            let _ = writeln!(text, "  error: {e}");
        }
        for f in &c.flags {
            let _ = writeln!(text, "  flag: {f}");
        }
        for o in &c.open_checks {
            let _ = writeln!(text, "  open: {o}");
        }
        entries.push(json!({
            "name": r.name,
            "verified": verified,
            "error": r.error,
            "path": path.map(|p| p.display().to_string()),
            "certificate": c,
        }));
    }
    let result = json!({ "strict": strict, "runs": entries });
    checked(all_ok, text, result)
}

fn render_table(t: &KoszulTable) -> String {
    let mut out = String::new();
    for c in &t.columns {
        let _ = write!(out, "  H^•({} ⊗ Λ^{} E^v) = {}", t.bundle, c.j, c.cohomology);
        if !c.ambiguous.is_empty() {
            let _ = write!(out, "  (filtration may interact in degrees {:?})", c.ambiguous);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "  => H^•(X, {}) = {}", t.bundle, t.resolution.dims);
    for a in &t.resolution.ambiguous {
        let _ = writeln!(out, "  ambiguous: {a}");
    }
    out
}

fn eightfold_cmd() -> Res {
    let r = eightfold().map_err(err)?;
    let mut text = format!(
        "X = zero locus of E{} on {}, dim X = {}\ndim H^0(E) = {}\ndim sl6 = {}\nh^0(T_X) = {}\n",
        r.bundle_weight, r.ambient, r.dim_x, r.weyl_dim_sections, r.weyl_dim_adjoint, r.h0_tangent
    );
    for t in [&r.structure_sheaf, &r.normal_bundle, &r.tangent_ambient] {
        text.push_str(&render_table(t));
    }
    for (m, n) in r.tangent.dims() {
        let _ = writeln!(text, "H^{m}(X, T_X) = C^{n}");
    }
    for a in &r.ambiguities {
        let _ = writeln!(text, "ambiguous: {a}");
    }
    let _ = writeln!(text, "status {}", if r.is_exact() { "exact" } else { "ambiguous" });
    let result = json!({ "h1": r.h(1), "h7": r.h(7), "exact": r.is_exact(), "report": r });
    checked(r.is_exact(), text, result)
}

fn chambers(k: Option<usize>, tau: Option<&str>, l: usize, file: Option<&Path>) -> Res {
    let sys: InequalitySystem = match (file, k, tau) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_system(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(k), Some(tau)) => build_phase_system(k, parse::tau(tau)?, l).map_err(err)?,
        _ => return Err("chambers needs k and a sign, or --file".into()),
    };
    let rep = feasible(&sys);
    let mut text = sys.to_string();
    let witness: Option<Vec<String>> = rep.witness.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect());
    let contradiction = rep.contradiction.as_ref().map(|c| {
        json!({
            "multipliers": c.multipliers.iter().map(|(i, m)| json!({ "row": i + 1, "multiplier": m.to_string() })).collect::<Vec<_>>(),
            "derived": render_constraint(&c.derived, &sys.variables),
            "verified": c.verify(&sys),
        })
    });
    if let Some(w) = &witness {
        let pairs: Vec<String> = sys.variables.iter().zip(w).map(|(v, x)| format!("{v} = {x}")).collect();
        let _ = writeln!(text, "feasible\nwitness {}", pairs.join(", "));
    }
    if let Some(c) = &rep.contradiction {
        let terms: Vec<String> = c.multipliers.iter().map(|(i, m)| format!("{m} * row {}", i + 1)).collect();
        let _ = writeln!(
            text,
            "infeasible\ncombination {} gives {}",
            terms.join(" + "),
            render_constraint(&c.derived, &sys.variables)
        );
        for t in &rep.trace {
            let _ = writeln!(text, "  {t}");
        }
    }
    let result = json!({
        "system": sys.to_string(),
        "variables": sys.variables,
        "feasible": rep.feasible,
        "witness": witness,
        "contradiction": contradiction,
        "trace": rep.trace,
    });
    ok(text, result)
}

fn catalog(max_param: Option<usize>) -> Res {
    let roofs = match max_param {
        Some(n) => list_roofs(n).map_err(err)?,
        None => default_roofs(),
    };
    let text = catalog_text(&roofs);
    let entries: Vec<Value> = roofs
        .iter()
        .map(|r| {
            let bundles: Vec<Value> = r
                .bundles()
                .iter()
                .map(|b| {
                    json!({
                        "symbol": b.symbol,
                        "home": b.home.iter().map(|n| n + 1).collect::<Vec<_>>(),
                        "rank": b.rank,
                        "det": [b.det.0, b.det.1],
                        "pieces": b.pieces,
                    })
                })
                .collect();
            json!({
                "label": r.label(),
                "space": r.total_space().to_string(),
                "sides": [r.sides()[0].to_string(), r.sides()[1].to_string()],
                "r": r.r(),
                "dimension": r.dimension(),
                "dim_m": r.dim_m(),
                "cy_pair_dimension": [r.cy_pair_dimension().0, r.cy_pair_dimension().1],
                "omega_m": r.bidegree(&r.hyperplane_canonical()),
                "has_script": r.has_script(),
                "bundles": bundles,
            })
        })
        .collect();
    let result = json!({ "format_version": CATALOG_FORMAT_VERSION, "roofs": entries, "text": text });
    ok(text, result)
}
