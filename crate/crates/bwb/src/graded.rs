use std::collections::BTreeMap;
use std::fmt;

use lie_core::Weight;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

/// One degree of a cohomology or Ext table.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeEntry {
    pub dim: u64,
    /// Highest weights of the G-summands with multiplicities. Empty when
    /// the degree is known only by dimension.
    pub summands: BTreeMap<Weight, u64>,
}

/// Graded dimensions `degree -> (dim, summands)`; zero degrees are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedDims {
    entries: BTreeMap<i64, DegreeEntry>,
}

impl GradedDims {
    pub fn zero() -> Self {
        GradedDims::default()
    }

    pub fn single(degree: i64, weight: Weight, mult: u64, dim_each: u64) -> Self {
        let mut g = GradedDims::zero();
        g.add_summand(degree, weight, mult, dim_each);
        g
    }

    /// A degree known only by its dimension.
    pub fn from_dims(dims: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut g = GradedDims::zero();
        for (d, n) in dims {
            if n > 0 {
                g.entries.entry(d).or_default().dim += n;
            }
        }
        g
    }

    pub fn add_summand(&mut self, degree: i64, weight: Weight, mult: u64, dim_each: u64) {
        if mult == 0 || dim_each == 0 {
            return;
        }
        let e = self.entries.entry(degree).or_default();
        e.dim += mult * dim_each;
        *e.summands.entry(weight).or_insert(0) += mult;
    }

    pub fn add(&mut self, other: &GradedDims) {
        for (&d, e) in &other.entries {
            let mine = self.entries.entry(d).or_default();
            mine.dim += e.dim;
            for (w, m) in &e.summands {
                *mine.summands.entry(w.clone()).or_insert(0) += m;
            }
        }
    }

    /// Add `times` copies of `other` shifted up by `shift` degrees.
    pub fn add_shifted(&mut self, other: &GradedDims, shift: i64, times: u64) {
        if times == 0 {
            return;
        }
        for (&d, e) in &other.entries {
            let mine = self.entries.entry(d + shift).or_default();
            mine.dim += e.dim * times;
            for (w, m) in &e.summands {
                *mine.summands.entry(w.clone()).or_insert(0) += m * times;
            }
        }
    }

    pub fn shifted(&self, shift: i64) -> GradedDims {
        let mut g = GradedDims::zero();
        g.add_shifted(self, shift, 1);
        g
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<i64, DegreeEntry> {
        &self.entries
    }

    pub fn dim(&self, degree: i64) -> u64 {
        self.entries.get(&degree).map_or(0, |e| e.dim)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.values().map(|e| e.dim).sum()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.entries
            .iter()
            .map(|(&d, e)| if d.rem_euclid(2) == 0 { e.dim as i128 } else { -(e.dim as i128) })
            .sum()
    }

    /// `(degree, dim)` pairs in increasing degree.
    pub fn dims(&self) -> Vec<(i64, u64)> {
        self.entries.iter().map(|(&d, e)| (d, e.dim)).collect()
    }

    /// Drop the summand labels and keep the dimensions only.
    pub fn dims_only(&self) -> GradedDims {
        GradedDims::from_dims(self.dims())
    }

    pub fn is_concentrated(&self, degree: i64, dim: u64) -> bool {
        self.entries.len() == 1 && self.dim(degree) == dim
    }
}

impl fmt::Display for GradedDims {
    /// Renders as e.g. `C^5[0] + C[-1]`, following the shift notation in
    /// which `C[-k]` sits in degree k.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.dim == 1 {
                write!(f, "C[{}]", -d)?;
            } else {
                write!(f, "C^{}[{}]", e.dim, -d)?;
            }
        }
        Ok(())
    }
}

struct WeightsJson<'a>(&'a BTreeMap<Weight, u64>);

impl Serialize for WeightsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (w, m) in self.0 {
            seq.serialize_element(&(w, m))?;
        }
        seq.end()
    }
}

struct EntryJson<'a>(i64, &'a DegreeEntry);

impl Serialize for EntryJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("degree", &self.0)?;
        m.serialize_entry("dim", &self.1.dim)?;
        m.serialize_entry("weights", &WeightsJson(&self.1.summands))?;
        m.end()
    }
}

impl Serialize for GradedDims {
    /// `[{"degree": d, "dim": n, "weights": [[coords, mult], ...]}, ...]`
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (&d, e) in &self.entries {
            seq.serialize_element(&EntryJson(d, e))?;
        }
        seq.end()
    }
}
