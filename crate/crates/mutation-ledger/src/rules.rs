//! Named mutation identities. A rule fires only when the Ext table on M has
//! exactly the stated signature.

use std::collections::BTreeMap;

use ext_engine::{ExtOnM, HomogeneousBundle};
use lie_core::{Weight, DEFAULT_WEIGHT_BOUND};
use roof_catalog::{BundleRef, RoofDescriptor};

use crate::{LedgerError, MutationKind};

/// A symbol with a twist offset relative to the rule variables `(a,b)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pattern {
    pub symbol: &'static str,
    pub offset: (i64, i64),
}

impl Pattern {
    pub fn instantiate(&self, t: (i64, i64)) -> BundleRef {
        BundleRef::new(self.symbol, self.offset.0 + t.0, self.offset.1 + t.1)
    }
}

/// `kind` acts on the pair `(first, second)`. A left rule replaces it by
/// `(L_first second, first)`, a right rule by `(second, R_second first)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    pub id: &'static str,
    pub roof: &'static str,
    pub kind: MutationKind,
    pub first: Pattern,
    pub second: Pattern,
    pub result: Pattern,
    /// `(degree, dimension)` of `Ext^•_M(first, second)`.
    pub signature: Vec<(i64, u64)>,
    /// The rule undoing this one at the same position.
    pub inverse: &'static str,
    pub citation: &'static str,
}

fn det(e: &HomogeneousBundle) -> Result<Weight, LedgerError> {
    let mut d = Weight::zero(e.space().rank());
    for (w, m) in e.torus_character(DEFAULT_WEIGHT_BOUND)? {
        d = d.add_scaled(&w, m as i64);
    }
    Ok(d)
}

impl RewriteRule {
    /// The rule variables `(a,b)` for which the pattern is the given pair,
    /// comparing bundles up to isomorphism.
    pub fn matches(
        &self,
        roof: &RoofDescriptor,
        first: &BundleRef,
        second: &BundleRef,
    ) -> Result<Option<(i64, i64)>, LedgerError> {
        if roof.label() != self.roof {
            return Ok(None);
        }
        let x = HomogeneousBundle::named(roof, first)?;
        let x0 = HomogeneousBundle::named(roof, &self.first.instantiate((0, 0)))?;
        let rank = x.rank()? as i64;
        if rank != x0.rank()? as i64 {
            return Ok(None);
        }
        let diff = &det(&x)? - &det(&x0)?;
        if diff.coords().iter().any(|c| c % rank != 0) {
            return Ok(None);
        }
        let line = Weight(diff.coords().iter().map(|c| c / rank).collect());
        let Some(t) = roof.bidegree(&line) else {
            return Ok(None);
        };
        if HomogeneousBundle::named(roof, &self.first.instantiate(t))? != x {
            return Ok(None);
        }
        let y = HomogeneousBundle::named(roof, second)?;
        if HomogeneousBundle::named(roof, &self.second.instantiate(t))? != y {
            return Ok(None);
        }
        Ok(Some(t))
    }

    pub fn signature_holds(&self, ext: &ExtOnM) -> bool {
        ext.exact().is_some_and(|d| d.dims() == self.signature)
    }

    pub fn signature_text(&self) -> String {
        let parts: Vec<String> = self.signature.iter().map(|(k, n)| format!("C^{n}[{}]", -k)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The identity in the paper's notation, e.g. `R_{O(a+1,b-1)}Q3(a,b) = Q2(a,b)`.
    pub fn statement(&self) -> String {
        let show = |p: &Pattern| {
            let c = |v: &str, o: i64| match o {
                0 => v.to_string(),
                o if o > 0 => format!("{v}+{o}"),
                o => format!("{v}{o}"),
            };
            format!("{}({},{})", p.symbol, c("a", p.offset.0), c("b", p.offset.1))
        };
        match self.kind {
            MutationKind::Left => {
                format!("L_{{{}}}{} = {}", show(&self.first), show(&self.second), show(&self.result))
            }
            MutationKind::Right => {
                format!("R_{{{}}}{} = {}", show(&self.second), show(&self.first), show(&self.result))
            }
        }
    }
}

fn p(symbol: &'static str, a: i64, b: i64) -> Pattern {
    Pattern { symbol, offset: (a, b) }
}

#[allow(clippy::too_many_arguments)]
fn mk(
    id: &'static str,
    roof: &'static str,
    kind: MutationKind,
    first: Pattern,
    second: Pattern,
    result: Pattern,
    signature: &[(i64, u64)],
    inverse: &'static str,
    citation: &'static str,
) -> RewriteRule {
    RewriteRule { id, roof, kind, first, second, result, signature: signature.to_vec(), inverse, citation }
}

fn table() -> Vec<RewriteRule> {
    use MutationKind::{Left, Right};
    let mut t = vec![
        mk(
            "c2-extension-R",
            "C2",
            Right,
            p("O", 1, 0),
            p("O", -1, 1),
            p("U^v", 0, 0),
            &[(1, 1)],
            "c2-extension-L",
            "0 -> O(-1,1) -> U^v -> O(1,0) -> 0",
        ),
        mk(
            "c2-extension-L",
            "C2",
            Left,
            p("O", -1, 1),
            p("U^v", 0, 0),
            p("O", 1, 0),
            &[(0, 1)],
            "c2-extension-R",
            "0 -> O(-1,1) -> U^v -> O(1,0) -> 0",
        ),
        mk(
            "g2-spinor-L",
            "G2",
            Left,
            p("U^v", -1, 0),
            p("U", 0, 0),
            p("S", 0, 0),
            &[(1, 1)],
            "g2-spinor-R",
            "0 -> U -> S -> U^v(-1,0) -> 0",
        ),
        mk(
            "g2-spinor-R",
            "G2",
            Right,
            p("S", 0, 0),
            p("U^v", -1, 0),
            p("U", 0, 0),
            &[(0, 1)],
            "g2-spinor-L",
            "0 -> U -> S -> U^v(-1,0) -> 0",
        ),
        mk(
            "g2-line-R",
            "G2",
            Right,
            p("U^v", -1, 0),
            p("O", 0, 0),
            p("O", -2, 1),
            &[(0, 1)],
            "g2-line-L",
            "0 -> O(-2,1) -> U^v(-1,0) -> O -> 0",
        ),
        mk(
            "g2-line-L",
            "G2",
            Left,
            p("O", 0, 0),
            p("O", -2, 1),
            p("U^v", -1, 0),
            &[(1, 1)],
            "g2-line-R",
            "0 -> O(-2,1) -> U^v(-1,0) -> O -> 0",
        ),
        mk(
            "g2-spinor-dual-L",
            "G2",
            Left,
            p("O", 0, 0),
            p("S^v", 0, 0),
            p("S", 0, 0),
            &[(0, 8)],
            "g2-spinor-dual-R",
            "0 -> S -> O^8 -> S^v -> 0",
        ),
        mk(
            "g2-spinor-dual-R",
            "G2",
            Right,
            p("S", 0, 0),
            p("O", 0, 0),
            p("S^v", 0, 0),
            &[(0, 8)],
            "g2-spinor-dual-L",
            "0 -> S -> O^8 -> S^v -> 0",
        ),
        mk(
            "ag4-tilde-Q-R",
            "AG4",
            Right,
            p("Q3", 0, 0),
            p("O", 1, -1),
            p("Q2", 0, 0),
            &[(1, 1)],
            "ag4-tilde-Q-L",
            "0 -> O(1,-1) -> Q2 -> Q3 -> 0",
        ),
        mk(
            "ag4-tilde-Q-L",
            "AG4",
            Left,
            p("O", 1, -1),
            p("Q2", 0, 0),
            p("Q3", 0, 0),
            &[(0, 1)],
            "ag4-tilde-Q-R",
            "0 -> O(1,-1) -> Q2 -> Q3 -> 0",
        ),
        mk(
            "ag4-tilde-U-R",
            "AG4",
            Right,
            p("U3", 0, 0),
            p("O", 1, -1),
            p("U2", 0, 0),
            &[(0, 1)],
            "ag4-tilde-U-L",
            "0 -> U2 -> U3 -> O(1,-1) -> 0",
        ),
        mk(
            "ag4-tilde-U-L",
            "AG4",
            Left,
            p("O", 1, -1),
            p("U2", 0, 0),
            p("U3", 0, 0),
            &[(1, 1)],
            "ag4-tilde-U-R",
            "0 -> U2 -> U3 -> O(1,-1) -> 0",
        ),
        mk(
            "ag4-tilde-Qv-L",
            "AG4",
            Left,
            p("O", -1, 1),
            p("Q3^v", 0, 0),
            p("Q2^v", 0, 0),
            &[(1, 1)],
            "ag4-tilde-Qv-R",
            "0 -> Q3^v -> Q2^v -> O(-1,1) -> 0",
        ),
        mk(
            "ag4-tilde-Qv-R",
            "AG4",
            Right,
            p("Q2^v", 0, 0),
            p("O", -1, 1),
            p("Q3^v", 0, 0),
            &[(0, 1)],
            "ag4-tilde-Qv-L",
            "0 -> Q3^v -> Q2^v -> O(-1,1) -> 0",
        ),
        mk(
            "ag4-tilde-Uv-L",
            "AG4",
            Left,
            p("O", -1, 1),
            p("U3^v", 0, 0),
            p("U2^v", 0, 0),
            &[(0, 1)],
            "ag4-tilde-Uv-R",
            "0 -> O(-1,1) -> U3^v -> U2^v -> 0",
        ),
        mk(
            "ag4-tilde-Uv-R",
            "AG4",
            Right,
            p("U2^v", 0, 0),
            p("O", -1, 1),
            p("U3^v", 0, 0),
            &[(1, 1)],
            "ag4-tilde-Uv-L",
            "0 -> O(-1,1) -> U3^v -> U2^v -> 0",
        ),
    ];
    let families = [
        ("2", "U2", "U2^v", "Q2", "Q2^v", "0 -> U2 -> V5 ⊗ O -> Q2 -> 0", "0 -> Q2^v -> V5^v ⊗ O -> U2^v -> 0"),
        ("3", "U3", "U3^v", "Q3", "Q3^v", "0 -> U3 -> V5 ⊗ O -> Q3 -> 0", "0 -> Q3^v -> V5^v ⊗ O -> U3^v -> 0"),
    ];
    for (k, u, uv, q, qv, seq, dual_seq) in families {
        let [uq_l, uq_r, taut_l, taut_r] = if k == "2" {
            ["ag4-uq-L2", "ag4-uq-R2", "ag4-taut-L2", "ag4-taut-R2"]
        } else {
            ["ag4-uq-L3", "ag4-uq-R3", "ag4-taut-L3", "ag4-taut-R3"]
        };
        t.push(mk(uq_l, "AG4", Left, p("O", 0, 0), p(uv, 0, 0), p(qv, 0, 0), &[(0, 5)], uq_r, dual_seq));
        t.push(mk(uq_r, "AG4", Right, p(qv, 0, 0), p("O", 0, 0), p(uv, 0, 0), &[(0, 5)], uq_l, dual_seq));
        t.push(mk(taut_l, "AG4", Left, p("O", 0, 0), p(q, 0, 0), p(u, 0, 0), &[(0, 5)], taut_r, seq));
        t.push(mk(taut_r, "AG4", Right, p(u, 0, 0), p("O", 0, 0), p(q, 0, 0), &[(0, 5)], taut_l, seq));
    }
    t
}

/// All rules, in a fixed order.
pub fn rules() -> &'static [RewriteRule] {
    static RULES: std::sync::OnceLock<Vec<RewriteRule>> = std::sync::OnceLock::new();
    RULES.get_or_init(table)
}

pub fn rule(id: &str) -> Option<&'static RewriteRule> {
    rules().iter().find(|r| r.id == id)
}

pub fn rules_for(label: &str) -> Vec<&'static RewriteRule> {
    rules().iter().filter(|r| r.roof == label).collect()
}

/// Rule ids grouped by roof label.
pub fn rule_index() -> BTreeMap<&'static str, Vec<&'static str>> {
    let mut m: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for r in rules() {
        m.entry(r.roof).or_default().push(r.id);
    }
    m
}
