//! Bookkeeping for semiorthogonal decompositions of the hyperplane section
//! M of a roof: ordered lists of exceptional objects and one Calabi–Yau
//! block, transformed by mutations, Serre functor moves and overall twists.
//! Every step is checked through the Ext engine and recorded in a
//! certificate.

mod dsl;
mod kclass;
mod rules;
mod scripts;

use std::fmt;

use ext_engine::{
    condition_dagger, ext_on_m_report, DaggerReport, ExtError, ExtOnM, HomogeneousBundle, OnMReport,
};
use roof_catalog::{BundleRef, CatalogError, RoofDescriptor};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use dsl::{parse_script, print_script, Script, ScriptStep};
pub use rules::{rule, rule_index, rules, rules_for, Pattern, RewriteRule};
pub use scripts::{am_script, axa_script, builtin_script, builtin_scripts, script_roofs};

/// Version of the certificate JSON layout.
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("position {index} out of range for {len} objects")]
    Index { index: usize, len: usize },
    #[error("{0}")]
    NotNamed(String),
    #[error("{a} and {b} are not orthogonal on M: {ext}")]
    NotOrthogonal { a: String, b: String, ext: String },
    #[error("rule {rule}: {detail}")]
    Rule { rule: String, detail: String },
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
    #[error("strict mode: {0}")]
    Strict(String),
    #[error("script line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("no script: no full exceptional collection known for {0}")]
    NoScript(String),
    #[error("collection must contain exactly one Calabi–Yau block, found {0}")]
    CyCount(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationKind {
    Left,
    Right,
}

/// An object of the ordered list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SodObject {
    Named(BundleRef),
    /// `L_{left} right` or `R_{right} left`, kept unevaluated.
    FormalCone { left: Box<SodObject>, right: Box<SodObject>, kind: MutationKind },
    /// The image of `D^b(Y)`; decorations are functor tags, newest first.
    CyBlock { side: String, decorations: Vec<String> },
}

impl SodObject {
    pub fn named(symbol: &str, a: i64, b: i64) -> Self {
        SodObject::Named(BundleRef::new(symbol, a, b))
    }

    pub fn cy(side: &str) -> Self {
        SodObject::CyBlock { side: side.into(), decorations: vec![] }
    }

    pub fn is_cy(&self) -> bool {
        matches!(self, SodObject::CyBlock { .. })
    }

    pub fn as_named(&self) -> Option<&BundleRef> {
        match self {
            SodObject::Named(b) => Some(b),
            _ => None,
        }
    }

    fn twisted(&self, a: i64, b: i64) -> SodObject {
        match self {
            SodObject::Named(r) => SodObject::Named(r.twisted(a, b)),
            SodObject::FormalCone { left, right, kind } => SodObject::FormalCone {
                left: Box::new(left.twisted(a, b)),
                right: Box::new(right.twisted(a, b)),
                kind: *kind,
            },
            cy => cy.clone(),
        }
    }

    fn contains_cone(&self) -> bool {
        matches!(self, SodObject::FormalCone { .. })
    }
}

impl fmt::Display for SodObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SodObject::Named(r) => write!(f, "{r}"),
            SodObject::FormalCone { left, right, kind: MutationKind::Left } => write!(f, "L_{{{left}}}{right}"),
            SodObject::FormalCone { left, right, kind: MutationKind::Right } => write!(f, "R_{{{right}}}{left}"),
            SodObject::CyBlock { .. } => write!(f, "CY"),
        }
    }
}

impl Serialize for SodObject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Left,
    Right,
}

/// Positions are 0-based; the script language shows them 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MutationStep {
    LeftPair(usize),
    RightPair(usize),
    SwapOrthogonal(usize),
    SerreForward,
    SerreBackward,
    TwistAll(i64, i64),
    CyMutate(Direction),
    RewriteApply(String, usize),
}

impl fmt::Display for MutationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MutationStep::LeftPair(i) => write!(f, "L {}", i + 1),
            MutationStep::RightPair(i) => write!(f, "R {}", i + 1),
            MutationStep::SwapOrthogonal(i) => write!(f, "swap {}", i + 1),
            MutationStep::SerreForward => write!(f, "serre+"),
            MutationStep::SerreBackward => write!(f, "serre-"),
            MutationStep::TwistAll(a, b) => write!(f, "twist {a} {b}"),
            MutationStep::CyMutate(Direction::Left) => write!(f, "cy left"),
            MutationStep::CyMutate(Direction::Right) => write!(f, "cy right"),
            MutationStep::RewriteApply(id, i) => write!(f, "rewrite {id} {}", i + 1),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Options {
    pub check_dagger: bool,
    /// Every flag becomes an error.
    pub strict: bool,
    /// Decoration labels for the K-equivalence reading of the operations.
    pub k_equivalence: bool,
}

impl Options {
    pub fn strict() -> Self {
        Options { check_dagger: true, strict: true, k_equivalence: false }
    }

    pub fn lenient() -> Self {
        Options { check_dagger: true, strict: false, k_equivalence: false }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CollectionState {
    roof: RoofDescriptor,
    objects: Vec<SodObject>,
}

impl CollectionState {
    pub fn new(roof: RoofDescriptor, objects: Vec<SodObject>) -> Result<Self, LedgerError> {
        let cy = objects.iter().filter(|o| o.is_cy()).count();
        if cy != 1 {
            return Err(LedgerError::CyCount(cy));
        }
        for o in &objects {
            if let SodObject::Named(r) = o {
                HomogeneousBundle::named(&roof, r)?;
            }
        }
        Ok(CollectionState { roof, objects })
    }

    pub fn roof(&self) -> &RoofDescriptor {
        &self.roof
    }

    pub fn objects(&self) -> &[SodObject] {
        &self.objects
    }

    pub fn cy_index(&self) -> usize {
        self.objects.iter().position(|o| o.is_cy()).expect("one CY block")
    }

    pub fn decorations(&self) -> &[String] {
        match &self.objects[self.cy_index()] {
            SodObject::CyBlock { decorations, .. } => decorations,
            _ => unreachable!(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.objects.iter().map(|o| o.to_string()).collect()
    }

    fn decorate(&mut self, tag: String) {
        let i = self.cy_index();
        if let SodObject::CyBlock { decorations, .. } = &mut self.objects[i] {
            decorations.insert(0, tag);
        }
    }

    fn bundle(&self, i: usize) -> Result<(BundleRef, HomogeneousBundle), LedgerError> {
        let o = self.objects.get(i).ok_or(LedgerError::Index { index: i + 1, len: self.objects.len() })?;
        let r = o
            .as_named()
            .ok_or_else(|| LedgerError::NotNamed(format!("object {} ({o}) is not a named bundle", i + 1)))?;
        Ok((r.clone(), HomogeneousBundle::named(&self.roof, r)?))
    }

    fn check_pair(&self, i: usize) -> Result<(), LedgerError> {
        if i + 1 >= self.objects.len() {
            return Err(LedgerError::Index { index: i + 2, len: self.objects.len() });
        }
        Ok(())
    }

    /// `Ext^•_M(later, earlier)` for every adjacent pair of named objects.
    pub fn adjacent_semiorthogonality(&self) -> Result<Vec<AdjacentCheck>, LedgerError> {
        let mut out = Vec::new();
        for i in 0..self.objects.len().saturating_sub(1) {
            let (Some(a), Some(b)) = (self.objects[i].as_named(), self.objects[i + 1].as_named()) else {
                continue;
            };
            let ea = HomogeneousBundle::named(&self.roof, a)?;
            let eb = HomogeneousBundle::named(&self.roof, b)?;
            let ext = ext_engine::ext_on_m(&self.roof, &eb, &ea)?;
            out.push(AdjacentCheck { earlier: a.to_string(), later: b.to_string(), ext });
        }
        Ok(out)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AdjacentCheck {
    pub earlier: String,
    pub later: String,
    /// `Ext^•_M(later, earlier)`, expected to vanish.
    pub ext: ExtOnM,
}

impl AdjacentCheck {
    pub fn holds(&self) -> bool {
        self.ext.is_exact_zero()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RuleUse {
    pub id: String,
    pub citation: String,
    pub twist: (i64, i64),
}

/// Everything checked while applying one step.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StepRecord {
    pub step: String,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext: Option<OnMReport>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleUse>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dagger: Option<DaggerReport>,
    /// Class of the result against the mutation formula in the
    /// representation ring of the torus; absent when not applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_class: Option<bool>,
    pub flags: Vec<String>,
    pub state: Vec<String>,
}

impl StepRecord {
    fn new(step: &MutationStep) -> Self {
        StepRecord {
            step: step.to_string(),
            citation: String::new(),
            pair: None,
            ext: None,
            outcome: String::new(),
            rule: None,
            dagger: None,
            k_class: None,
            flags: vec![],
            state: vec![],
        }
    }
}

fn ref_tag(prefix: &str, r: &BundleRef, opts: &Options) -> String {
    if opts.k_equivalence {
        format!("{prefix}_{{f_*[{r}]}}")
    } else {
        format!("{prefix}_{{{r}}}")
    }
}

/// Apply one step. The input state is left untouched.
pub fn apply_step(
    state: &CollectionState,
    step: &MutationStep,
    opts: &Options,
) -> Result<(CollectionState, StepRecord), LedgerError> {
    let mut next = state.clone();
    let mut rec = StepRecord::new(step);
    let r = state.roof.r() as i64;
    match step {
        MutationStep::SerreForward => {
            let p = next
                .objects
                .iter()
                .position(|o| !o.is_cy())
                .ok_or_else(|| LedgerError::NotNamed("no exceptional object to move".into()))?;
            let obj = next.objects.remove(p);
            if p > 0 {
                if let Some(n) = obj.as_named() {
                    next.decorate(ref_tag("R", n, opts));
                }
            }
            next.objects.push(obj.twisted(r - 1, r - 1));
            rec.outcome = format!("{obj} sent to the end by the inverse Serre functor");
        }
        MutationStep::SerreBackward => {
            let p = next
                .objects
                .iter()
                .rposition(|o| !o.is_cy())
                .ok_or_else(|| LedgerError::NotNamed("no exceptional object to move".into()))?;
            let obj = next.objects.remove(p);
            if p < next.objects.len() {
                if let Some(n) = obj.as_named() {
                    next.decorate(ref_tag("L", n, opts));
                }
            }
            next.objects.insert(0, obj.twisted(1 - r, 1 - r));
            rec.outcome = format!("{obj} sent to the front by the Serre functor");
        }
        MutationStep::TwistAll(a, b) => {
            next.objects = next.objects.iter().map(|o| o.twisted(*a, *b)).collect();
            let tag = if opts.k_equivalence { format!("T_{{{a},{b}}}") } else { format!("twist({a},{b})") };
            next.decorate(tag);
            rec.outcome = format!("all objects twisted by O({a},{b})");
        }
        MutationStep::CyMutate(dir) => {
            let c = next.cy_index();
            let other = match dir {
                Direction::Right => c + 1,
                Direction::Left => c.checked_sub(1).ok_or(LedgerError::Index { index: 0, len: next.objects.len() })?,
            };
            let o = next
                .objects
                .get(other)
                .cloned()
                .ok_or(LedgerError::Index { index: other + 1, len: next.objects.len() })?;
            let n = o.as_named().ok_or_else(|| LedgerError::NotNamed(format!("cannot move CY past {o}")))?;
            next.objects.swap(c, other);
            let prefix = if *dir == Direction::Right { "R" } else { "L" };
            next.decorate(ref_tag(prefix, n, opts));
            rec.outcome = format!("CY block mutated past {o}");
        }
        MutationStep::SwapOrthogonal(i) => {
            state.check_pair(*i)?;
            let (ra, a) = state.bundle(*i)?;
            let (rb, b) = state.bundle(i + 1)?;
            let report = ext_on_m_report(&state.roof, &a, &b)?;
            rec.pair = Some([ra.to_string(), rb.to_string()]);
            if !report.ext.is_exact_zero() {
                return Err(LedgerError::NotOrthogonal { a: ra.to_string(), b: rb.to_string(), ext: report.ext.to_string() });
            }
            rec.ext = Some(report);
            if opts.check_dagger {
                record_dagger(&state.roof, &a, &b, &mut rec)?;
            }
            next.objects.swap(*i, i + 1);
            rec.outcome = "orthogonal pair exchanged".into();
        }
        MutationStep::LeftPair(i) | MutationStep::RightPair(i) => {
            let kind = if matches!(step, MutationStep::LeftPair(_)) { MutationKind::Left } else { MutationKind::Right };
            mutate_pair(state, &mut next, &mut rec, *i, kind, None, opts)?;
        }
        MutationStep::RewriteApply(id, i) => {
            let rule = rule(id).ok_or_else(|| LedgerError::UnknownRule(id.clone()))?;
            mutate_pair(state, &mut next, &mut rec, *i, rule.kind, Some(rule), opts)?;
        }
    }
    if opts.strict && !rec.flags.is_empty() {
        return Err(LedgerError::Strict(format!("{}: {}", rec.step, rec.flags.join("; "))));
    }
    rec.state = next.labels();
    Ok((next, rec))
}

fn record_dagger(
    roof: &RoofDescriptor,
    e1: &HomogeneousBundle,
    e2: &HomogeneousBundle,
    rec: &mut StepRecord,
) -> Result<(), LedgerError> {
    let d = condition_dagger(roof, e1, e2)?;
    if !d.holds {
        rec.flags.push("condition (†) fails".into());
    }
    rec.dagger = Some(d);
    Ok(())
}

fn mutate_pair(
    state: &CollectionState,
    next: &mut CollectionState,
    rec: &mut StepRecord,
    i: usize,
    kind: MutationKind,
    forced: Option<&RewriteRule>,
    opts: &Options,
) -> Result<(), LedgerError> {
    state.check_pair(i)?;
    let (ra, a) = state.bundle(i)?;
    let (rb, b) = state.bundle(i + 1)?;
    rec.pair = Some([ra.to_string(), rb.to_string()]);
    let report = ext_on_m_report(&state.roof, &a, &b)?;
    if opts.check_dagger {
        record_dagger(&state.roof, &a, &b, rec)?;
    }
    let roof = &state.roof;
    let matched = match forced {
        Some(rule) => {
            let twist = rule.matches(roof, &ra, &rb)?.ok_or_else(|| LedgerError::Rule {
                rule: rule.id.to_string(),
                detail: format!("pattern does not match ({ra}, {rb})"),
            })?;
            if !rule.signature_holds(&report.ext) {
                return Err(LedgerError::Rule {
                    rule: rule.id.to_string(),
                    detail: format!("signature {} required, Ext on M is {}", rule.signature_text(), report.ext),
                });
            }
            Some((rule, twist))
        }
        None if report.ext.is_exact_zero() => None,
        None => {
            let mut found = None;
            for rule in rules_for(roof.label()).into_iter().filter(|r| r.kind == kind) {
                if let Some(t) = rule.matches(roof, &ra, &rb)? {
                    if rule.signature_holds(&report.ext) {
                        found = Some((rule, t));
                        break;
                    }
                    rec.flags.push(format!("rule {} matches the pattern but not the signature", rule.id));
                }
            }
            found
        }
    };
    let (oa, ob) = (state.objects[i].clone(), state.objects[i + 1].clone());
    let (first, second) = match (&matched, kind) {
        (Some((rule, t)), _) => {
            let res = rule.result.instantiate(*t);
            let x = HomogeneousBundle::named(roof, &res)?;
            rec.k_class = kclass::check(roof, kind, &a, &b, &x, &report)?;
            if rec.k_class == Some(false) {
                rec.flags.push("class of the result does not satisfy the mutation formula".into());
            }
            rec.rule = Some(RuleUse { id: rule.id.to_string(), citation: rule.citation.to_string(), twist: *t });
            rec.outcome = format!("rewritten to {res} by {}", rule.id);
            let res = SodObject::Named(res);
            match kind {
                MutationKind::Left => (res, oa),
                MutationKind::Right => (ob, res),
            }
        }
        (None, _) if report.ext.is_exact_zero() => {
            rec.outcome = "orthogonal pair: the mutation is an exchange".into();
            (ob, oa)
        }
        (None, MutationKind::Left) => {
            rec.flags.push(format!("no rule for L_{{{ra}}}{rb}; kept as a formal cone"));
            rec.outcome = "formal cone".into();
            let cone = SodObject::FormalCone { left: Box::new(oa.clone()), right: Box::new(ob), kind };
            (cone, oa)
        }
        (None, MutationKind::Right) => {
            rec.flags.push(format!("no rule for R_{{{rb}}}{ra}; kept as a formal cone"));
            rec.outcome = "formal cone".into();
            let cone = SodObject::FormalCone { left: Box::new(oa), right: Box::new(ob.clone()), kind };
            (ob, cone)
        }
    };
    if let ExtOnM::Ambiguous { .. } = report.ext {
        rec.flags.push(format!("Ext on M is ambiguous: {}", report.ext));
    }
    rec.ext = Some(report);
    next.objects[i] = first;
    next.objects[i + 1] = second;
    Ok(())
}

/// Result of comparing the final state with the target collection.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Comparison {
    pub matches: bool,
    pub mismatches: Vec<String>,
}

/// Named objects are compared as bundles, so `Q3(1,1)` equals `Q3^v(1,2)`.
/// The CY block is compared by position only.
pub fn compare_states(a: &CollectionState, b: &CollectionState) -> Result<Comparison, LedgerError> {
    let mut mismatches = Vec::new();
    if a.objects.len() != b.objects.len() {
        mismatches.push(format!("{} objects against {}", a.objects.len(), b.objects.len()));
    }
    for (k, (x, y)) in a.objects.iter().zip(&b.objects).enumerate() {
        let same = match (x, y) {
            (SodObject::CyBlock { .. }, SodObject::CyBlock { .. }) => true,
            (SodObject::Named(p), SodObject::Named(q)) => {
                HomogeneousBundle::named(&a.roof, p)? == HomogeneousBundle::named(&b.roof, q)?
            }
            _ => false,
        };
        if !same {
            mismatches.push(format!("position {}: {x} against {y}", k + 1));
        }
    }
    Ok(Comparison { matches: mismatches.is_empty(), mismatches })
}

/// A replay of one script.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Certificate {
    pub version: u32,
    pub roof: String,
    pub strict: bool,
    pub start: Vec<String>,
    pub target: Vec<String>,
    /// Steps turning the written target into the compared one.
    pub target_derivation: Vec<StepRecord>,
    pub steps: Vec<StepRecord>,
    pub final_state: Vec<String>,
    pub decorations: Vec<String>,
    pub start_semiorthogonality: Vec<AdjacentCheck>,
    pub final_semiorthogonality: Vec<AdjacentCheck>,
    pub comparison: Option<Comparison>,
    pub flags: Vec<String>,
    /// Adjacent pairs whose vanishing the positional resolution cannot
    /// decide; recorded, not counted as failures.
    pub open_checks: Vec<String>,
    pub verified: bool,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn swap_count(&self) -> usize {
        self.steps.iter().filter(|s| s.step.starts_with("swap")).count()
    }
}

/// A failed run with everything recorded up to the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFailure {
    pub error: LedgerError,
    pub certificate: Certificate,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} steps)", self.error, self.certificate.steps.len())
    }
}

impl std::error::Error for RunFailure {}

fn fold(
    mut state: CollectionState,
    steps: &[ScriptStep],
    opts: &Options,
    out: &mut Vec<StepRecord>,
) -> Result<CollectionState, (LedgerError, CollectionState)> {
    for s in steps {
        match apply_step(&state, &s.step, opts) {
            Ok((next, mut rec)) => {
                rec.citation = s.citation.clone();
                out.push(rec);
                state = next;
            }
            Err(e) => {
                let e = match e {
                    LedgerError::Parse { .. } => e,
                    other => LedgerError::Parse { line: s.line, detail: format!("{} failed: {other}", s.step) },
                };
                return Err((e, state));
            }
        }
    }
    Ok(state)
}

/// Replay a script and compare with its target.
pub fn run_script(script: &Script, opts: &Options) -> Result<Certificate, Box<RunFailure>> {
    let roof = match roof_catalog::roof(&script.roof) {
        Ok(r) => r,
        Err(e) => {
            return Err(Box::new(RunFailure { error: e.into(), certificate: empty_certificate(script, opts) }));
        }
    };
    let mut cert = empty_certificate(script, opts);
    let fail = |error: LedgerError, cert: Certificate| Box::new(RunFailure { error, certificate: cert });
    let start = match CollectionState::new(roof.clone(), script.start.clone()) {
        Ok(s) => s,
        Err(e) => return Err(fail(e, cert)),
    };
    let target = match CollectionState::new(roof, script.target.clone()) {
        Ok(s) => s,
        Err(e) => return Err(fail(e, cert)),
    };
    match start.adjacent_semiorthogonality() {
        Ok(c) => cert.start_semiorthogonality = c,
        Err(e) => return Err(fail(e, cert)),
    }
    // The derivation rewrites the description of the target collection; it
    // is not one of the mutations of the equivalence, so (†) is not required.
    let derivation_opts = Options { check_dagger: false, ..*opts };
    let target = match fold(target, &script.target_steps, &derivation_opts, &mut cert.target_derivation) {
        Ok(t) => t,
        Err((e, _)) => return Err(fail(e, cert)),
    };
    let mut steps = Vec::new();
    let result = fold(start, &script.steps, opts, &mut steps);
    cert.steps = steps;
    let end = match result {
        Ok(s) => s,
        Err((e, s)) => {
            cert.final_state = s.labels();
            cert.decorations = s.decorations().to_vec();
            return Err(fail(e, cert));
        }
    };
    cert.final_state = end.labels();
    cert.decorations = end.decorations().to_vec();
    for (k, rec) in cert.target_derivation.iter().chain(&cert.steps).enumerate() {
        for f in &rec.flags {
            cert.flags.push(format!("step {} ({}): {f}", k + 1, rec.step));
        }
    }
    if end.objects.iter().any(|o| o.contains_cone()) {
        cert.flags.push("final state contains formal cones".into());
    }
    match end.adjacent_semiorthogonality() {
        Ok(c) => cert.final_semiorthogonality = c,
        Err(e) => return Err(fail(e, cert)),
    }
    for c in cert.start_semiorthogonality.iter().chain(&cert.final_semiorthogonality) {
        let line = format!("Ext on M from {} to {} is {}", c.later, c.earlier, c.ext);
        match c.ext {
            ExtOnM::Exact { .. } if !c.holds() => cert.flags.push(line),
            ExtOnM::Ambiguous { .. } => cert.open_checks.push(line),
            _ => {}
        }
    }
    let cmp = match compare_states(&end, &target) {
        Ok(c) => c,
        Err(e) => return Err(fail(e, cert)),
    };
    let matches = cmp.matches;
    cert.comparison = Some(cmp);
    cert.verified = matches && cert.flags.is_empty();
    if !matches {
        return Err(fail(LedgerError::Strict("final state differs from the target".into()), cert));
    }
    if opts.strict && !cert.flags.is_empty() {
        let msg = cert.flags.join("; ");
        return Err(fail(LedgerError::Strict(msg), cert));
    }
    Ok(cert)
}

fn empty_certificate(script: &Script, opts: &Options) -> Certificate {
    Certificate {
        version: CERTIFICATE_VERSION,
        roof: script.roof.clone(),
        strict: opts.strict,
        start: script.start.iter().map(|o| o.to_string()).collect(),
        target: script.target.iter().map(|o| o.to_string()).collect(),
        target_derivation: vec![],
        steps: vec![],
        final_state: vec![],
        decorations: vec![],
        start_semiorthogonality: vec![],
        final_semiorthogonality: vec![],
        comparison: None,
        flags: vec![],
        open_checks: vec![],
        verified: false,
    }
}
