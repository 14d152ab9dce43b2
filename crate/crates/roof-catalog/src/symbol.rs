use std::fmt;
use std::str::FromStr;

use crate::CatalogError;

/// A named bundle with a bidegree twist, e.g. `U2^v(1,2)` or `O(-1,1)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct BundleRef {
    pub symbol: String,
    pub twist: (i64, i64),
}

impl BundleRef {
    pub fn new(symbol: &str, a: i64, b: i64) -> Self {
        BundleRef { symbol: symbol.to_string(), twist: (a, b) }
    }

    pub fn twisted(&self, a: i64, b: i64) -> Self {
        BundleRef { symbol: self.symbol.clone(), twist: (self.twist.0 + a, self.twist.1 + b) }
    }
}

impl fmt::Display for BundleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.symbol, self.twist.0, self.twist.1)
    }
}

impl FromStr for BundleRef {
    type Err = CatalogError;

    /// Grammar: `<name>[^v][(a,b)]` where `<name>` is alphanumeric; a missing
    /// twist means `(0,0)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |pos: usize, what: &str| CatalogError::Parse(format!("{what} at position {pos} in '{s}'"));
        let end = s.find('(').unwrap_or(s.len());
        let symbol = s[..end].trim();
        let name = symbol.strip_suffix("^v").unwrap_or(symbol);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(err(0, "expected a bundle name"));
        }
        if !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(err(0, "bundle name must start with a letter"));
        }
        if end == s.len() {
            return Ok(BundleRef::new(symbol, 0, 0));
        }
        let inner = s[end + 1..].strip_suffix(')').ok_or_else(|| err(s.len(), "expected ')'"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| err(end + 1, "expected 'a,b'"))?;
        let a: i64 = a.trim().parse().map_err(|_| err(end + 1, "bad integer"))?;
        let b: i64 = b.trim().parse().map_err(|_| err(end + 2 + inner.find(',').unwrap_or(0), "bad integer"))?;
        Ok(BundleRef::new(symbol, a, b))
    }
}
