//! Cartan matrices and symmetrizers of the simple types.
//!
//! Convention used throughout the workspace: Bourbaki node numbering and
//! `A[i][j] = <α_j, α_i^∨>`. The simple root α_j written in fundamental
//! weights is therefore column `j` of `A`. The symmetrizer `d_i` is
//! `(α_i, α_i) / 2` normalized so that short roots have `d = 1`, which gives
//! `d_i A[i][j] = (α_i, α_j)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::LieError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Series {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            "E" => Err(LieError::Unsupported("E-series root systems are not supported".into())),
            _ => Err(LieError::Parse(format!("unknown series '{s}'"))),
        }
    }
}

pub(crate) fn validate(series: Series, rank: usize) -> Result<(), LieError> {
    let ok = match series {
        Series::A => rank >= 1,
        Series::B | Series::C => rank >= 2,
        Series::D => rank >= 3,
        Series::F => rank == 4,
        Series::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(LieError::InvalidType(format!("{series}{rank}")))
    }
}

/// Cartan matrix and symmetrizer of one simple factor.
pub(crate) fn simple_cartan(series: Series, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let mut d = vec![1i64; n];
    match series {
        Series::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n short
            link(n - 2, n - 1, -1, -2);
            d = vec![2; n];
            d[n - 1] = 1;
        }
        Series::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n long
            link(n - 2, n - 1, -2, -1);
            d[n - 1] = 2;
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            d = vec![2, 2, 1, 1];
        }
        Series::G => {
            // α_1 short
            link(0, 1, -3, -1);
            d = vec![1, 3];
        }
    }
    (a, d)
}

/// Classical number of positive roots.
pub fn positive_root_count(series: Series, n: usize) -> usize {
    match series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
        Series::F => 24,
        Series::G => 6,
    }
}
