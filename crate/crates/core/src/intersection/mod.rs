//! Psi-class correlators `<tau_b1 ... tau_bn>_g` and linear Hodge integrals.
//!
//! Two independent routes: the DVV recursion ([`CorrelatorTable`]) and
//! inversion of the ELSV formula from Hurwitz numbers ([`hodge_solve`],
//! [`ElsvCorrelators`]).

pub mod dvv;
pub mod hodge;
pub mod kdv;

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::exact_core::{format_rational, Rational};
use crate::partitions::partitions_of;

pub use dvv::{dvv_rhs, verify_dvv, verify_dvv_suite, CorrelatorTable, DvvOutcome};
pub use hodge::{elsv_eval, hodge_solve, ElsvCorrelators, HodgeOptions, HodgeSolution, HodgeTable};
pub use kdv::{double_bracket, verify_kdv, witten_f, Window};

/// `(g, b)` with `b` sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    pub g: u32,
    pub b: Vec<u32>,
}

impl CorrelatorKey {
    pub fn new(g: u32, b: &[u32]) -> Self {
        CorrelatorKey { g, b: sorted(b) }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `2g - 2 + n`.
    pub fn euler(&self) -> i64 {
        euler(self.g, self.b.len())
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "tau{b}")?;
        }
        write!(f, ">_{}", self.g)
    }
}

/// `<tau_b lambda_k>_g` with `b` sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeKey {
    pub g: u32,
    pub b: Vec<u32>,
    pub k: u32,
}

impl fmt::Display for HodgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for b in &self.b {
            write!(f, "tau{b} ")?;
        }
        write!(f, "lambda{}>_{}", self.k, self.g)
    }
}

pub(crate) fn sorted(b: &[u32]) -> Vec<u32> {
    let mut v = b.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

pub fn euler(g: u32, n: usize) -> i64 {
    2 * i64::from(g) - 2 + n as i64
}

/// Stable and satisfying `sum b = 3g - 3 + n`.
pub fn gate_valid(g: u32, b: &[u32]) -> bool {
    let n = b.len() as i64;
    let sum: i64 = b.iter().map(|&x| i64::from(x)).sum();
    n > 0 && euler(g, b.len()) > 0 && sum == 3 * i64::from(g) - 3 + n
}

/// The only genus the dimension gate allows for `b`, if any.
pub fn gate_genus(b: &[u32]) -> Option<u32> {
    let n = b.len() as i64;
    let sum: i64 = b.iter().map(|&x| i64::from(x)).sum();
    let three_g = sum - n + 3;
    if three_g < 0 || three_g % 3 != 0 {
        return None;
    }
    let g = (three_g / 3) as u32;
    gate_valid(g, b).then_some(g)
}

/// Anything that can answer correlator queries.
pub trait CorrelatorSource {
    /// `<tau_b>_g`; the order of `b` does not matter.
    fn correlator(&self, g: u32, b: &[u32]) -> Result<Rational>;
}

/// Descending vectors of length `n` with the given sum.
pub fn index_vectors(sum: u32, n: usize) -> Vec<Vec<u32>> {
    partitions_of(sum)
        .into_iter()
        .filter(|p| p.len() <= n)
        .map(|p| {
            let mut v = p.parts().to_vec();
            v.resize(n, 0);
            v
        })
        .collect()
}

/// Every gate-valid key with `0 < 2g - 2 + n <= max_euler`, ordered by
/// `2g - 2 + n`, then genus, then `b`.
pub fn gate_valid_keys(max_euler: u32) -> Vec<CorrelatorKey> {
    let mut out = Vec::new();
    for e in 1..=i64::from(max_euler) {
        for g in 0..=((e + 2) / 2) as u32 {
            let n = e - 2 * i64::from(g) + 2;
            if n < 1 {
                continue;
            }
            let n = n as usize;
            let sum = 3 * i64::from(g) - 3 + n as i64;
            if sum < 0 {
                continue;
            }
            for b in index_vectors(sum as u32, n) {
                out.push(CorrelatorKey { g, b });
            }
        }
    }
    out
}

#[derive(Serialize)]
struct ExportRecord<'a> {
    g: u32,
    b: &'a [u32],
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    v: String,
}

/// JSON lines `{"g":..,"b":[..],"v":"num/den"}`.
pub fn write_correlators<'a>(
    w: &mut impl Write,
    entries: impl IntoIterator<Item = (&'a CorrelatorKey, &'a Rational)>,
) -> Result<()> {
    for (key, v) in entries {
        let rec = ExportRecord {
            g: key.g,
            b: &key.b,
            k: None,
            v: format_rational(v),
        };
        writeln!(w, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
    }
    Ok(())
}

/// JSON lines `{"g":..,"b":[..],"k":..,"v":"num/den"}`.
pub fn write_hodge<'a>(
    w: &mut impl Write,
    entries: impl IntoIterator<Item = (&'a HodgeKey, &'a Rational)>,
) -> Result<()> {
    for (key, v) in entries {
        let rec = ExportRecord {
            g: key.g,
            b: &key.b,
            k: Some(key.k),
            v: format_rational(v),
        };
        writeln!(w, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
    }
    Ok(())
}
