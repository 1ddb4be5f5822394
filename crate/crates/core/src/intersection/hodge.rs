//! Linear Hodge integrals from Hurwitz numbers by inverting ELSV:
//!
//! ```text
//! H_{g,mu} |Aut mu| / (r! prod mu_i^mu_i / mu_i!)
//!     = sum_k (-1)^k sum_b <tau_b lambda_k>_g prod mu_i^b_i
//! ```
//!
//! over ordered `b` with `sum b + k = 3g - 3 + n`. Grouping `b` by its sorted
//! form gives one unknown per `(sorted b, k)` whose coefficient is the
//! monomial symmetric function `m_b(mu)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{euler, gate_valid, index_vectors, sorted, CorrelatorSource, HodgeKey};
use crate::error::{Error, Result};
use crate::exact_core::{exact_linear_solve, factorial, int, Rational, RowBasis};
use crate::hurwitz::{branch_count, HurwitzSource};
use crate::partitions::{bounded_partitions, Partition};

pub type HodgeTable = BTreeMap<HodgeKey, Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgeOptions {
    /// Largest part allowed in an evaluation partition.
    pub max_part: u32,
    /// How many unused partitions to keep for a forward check.
    pub held_out: usize,
}

impl Default for HodgeOptions {
    fn default() -> Self {
        HodgeOptions {
            max_part: 6,
            held_out: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HodgeSolution {
    pub g: u32,
    pub n: usize,
    pub table: HodgeTable,
    /// Partitions whose Hurwitz numbers built the system.
    pub used: Vec<Partition>,
    /// Partitions left out of the solve.
    pub held_out: Vec<Partition>,
}

impl HodgeSolution {
    /// The `k = 0` entries, i.e. plain correlators.
    pub fn correlators(&self) -> BTreeMap<Vec<u32>, Rational> {
        self.table
            .iter()
            .filter(|(k, _)| k.k == 0)
            .map(|(k, v)| (k.b.clone(), v.clone()))
            .collect()
    }
}

/// Distinct rearrangements of `v`.
fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m_b(mu) = sum over distinct rearrangements b' of prod mu_i^b'_i`.
fn monomial_symmetric(b: &[u32], mu: &[u32]) -> BigInt {
    distinct_permutations(b)
        .iter()
        .map(|bp| {
            bp.iter()
                .zip(mu)
                .map(|(&e, &m)| BigInt::from(m).pow(e))
                .fold(BigInt::one(), |a, x| a * x)
        })
        .sum()
}

/// `r! prod mu_i^mu_i / mu_i! / |Aut mu|`.
fn elsv_prefactor(g: u32, mu: &Partition) -> Result<Rational> {
    let r = branch_count(g, mu)?;
    let mut c = int(factorial(r));
    for &m in mu.parts() {
        c *= Rational::new(BigInt::from(m).pow(m), factorial(m));
    }
    Ok(c / int(mu.aut_order()))
}

fn unknowns(g: u32, n: usize) -> Vec<HodgeKey> {
    let dim = 3 * i64::from(g) - 3 + n as i64;
    let mut out = Vec::new();
    for k in 0..=g {
        let w = dim - i64::from(k);
        if w < 0 {
            continue;
        }
        for b in index_vectors(w as u32, n) {
            out.push(HodgeKey { g, b, k });
        }
    }
    out
}

fn row(keys: &[HodgeKey], mu: &Partition) -> Vec<Rational> {
    keys.iter()
        .map(|key| {
            let m = int(monomial_symmetric(&key.b, mu.parts()));
            if key.k % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect()
}

/// Length-`n` partitions with parts at most `max_part`, ordered by size,
/// then distinct parts first, then descending parts.
fn candidates(n: usize, max_part: u32) -> Vec<Partition> {
    let mut v = bounded_partitions(n, max_part);
    v.sort_by(|a, b| {
        (a.size(), !a.has_distinct_parts())
            .cmp(&(b.size(), !b.has_distinct_parts()))
            .then_with(|| b.parts().cmp(a.parts()))
    });
    v
}

/// Solves for every `<tau_b lambda_k>_g` with `sum b + k = 3g - 3 + n`.
pub fn hodge_solve(
    source: &impl HurwitzSource,
    g: u32,
    n: usize,
    options: HodgeOptions,
) -> Result<HodgeSolution> {
    if n == 0 || euler(g, n) <= 0 {
        return Err(Error::Precondition(format!(
            "(g, n) = ({g}, {n}) is unstable"
        )));
    }
    if g > 3 || n > 6 {
        return Err(Error::Precondition(format!(
            "(g, n) = ({g}, {n}) exceeds g <= 3, n <= 6"
        )));
    }
    let keys = unknowns(g, n);
    let mut basis = RowBasis::new();
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    let all = candidates(n, options.max_part);
    let mut rest = all.iter();
    for mu in rest.by_ref() {
        if basis.rank() == keys.len() {
            skipped.push(mu.clone());
            break;
        }
        if basis.try_insert(&row(&keys, mu)) {
            used.push(mu.clone());
        } else {
            skipped.push(mu.clone());
        }
    }
    if basis.rank() < keys.len() {
        return Err(Error::InsufficientPartitions {
            g,
            n,
            rank: basis.rank(),
            unknowns: keys.len(),
        });
    }
    let held_out: Vec<Partition> = skipped
        .into_iter()
        .chain(rest.cloned())
        .take(options.held_out)
        .collect();

    let matrix: Vec<Vec<Rational>> = used.iter().map(|mu| row(&keys, mu)).collect();
    let rhs: Vec<Rational> = used
        .iter()
        .map(|mu| Ok(source.hurwitz(g, mu)? / elsv_prefactor(g, mu)?))
        .collect::<Result<_>>()?;
    let values = exact_linear_solve(&matrix, &rhs)?;
    let table = keys.into_iter().zip(values).collect();
    Ok(HodgeSolution {
        g,
        n,
        table,
        used,
        held_out,
    })
}

/// Forward ELSV: predicts `H_{g,mu}` from a Hodge table.
pub fn elsv_eval(g: u32, mu: &Partition, table: &HodgeTable) -> Result<Rational> {
    let mut sum = Rational::zero();
    for key in unknowns(g, mu.len()) {
        let v = table
            .get(&key)
            .ok_or_else(|| Error::MissingEntry(key.to_string()))?;
        sum += row(std::slice::from_ref(&key), mu).remove(0) * v;
    }
    Ok(sum * elsv_prefactor(g, mu)?)
}

/// Correlators obtained only through ELSV inversion, solving each `(g, n)`
/// on first use.
pub struct ElsvCorrelators<'a, S: HurwitzSource> {
    source: &'a S,
    options: HodgeOptions,
    solved: Mutex<HashMap<(u32, usize), Arc<HodgeSolution>>>,
}

impl<'a, S: HurwitzSource> ElsvCorrelators<'a, S> {
    pub fn new(source: &'a S, options: HodgeOptions) -> Self {
        ElsvCorrelators {
            source,
            options,
            solved: Mutex::new(HashMap::new()),
        }
    }

    pub fn solution(&self, g: u32, n: usize) -> Result<Arc<HodgeSolution>> {
        if let Some(s) = self.solved.lock().unwrap().get(&(g, n)) {
            return Ok(s.clone());
        }
        let s = Arc::new(hodge_solve(self.source, g, n, self.options)?);
        self.solved.lock().unwrap().insert((g, n), s.clone());
        Ok(s)
    }
}

impl<S: HurwitzSource> CorrelatorSource for ElsvCorrelators<'_, S> {
    fn correlator(&self, g: u32, b: &[u32]) -> Result<Rational> {
        if !gate_valid(g, b) {
            return Ok(Rational::zero());
        }
        let key = HodgeKey {
            g,
            b: sorted(b),
            k: 0,
        };
        let solution = self.solution(g, b.len())?;
        solution
            .table
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::MissingEntry(key.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{rat, ratio};
    use crate::hurwitz::HurwitzTable;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_slice(parts).unwrap()
    }

    fn hk(g: u32, b: &[u32], k: u32) -> HodgeKey {
        HodgeKey {
            g,
            b: b.to_vec(),
            k,
        }
    }

    #[test]
    fn permutations_of_multisets() {
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(monomial_symmetric(&[1, 0], &[3, 2]), BigInt::from(5));
    }

    #[test]
    fn genus_one_one_point() {
        let t = HurwitzTable::new();
        let s = hodge_solve(&t, 1, 1, HodgeOptions::default()).unwrap();
        assert_eq!(s.table.len(), 2);
        assert_eq!(s.table[&hk(1, &[1], 0)], ratio(1, 24));
        assert_eq!(s.table[&hk(1, &[0], 1)], ratio(1, 24));
        assert_eq!(s.used, vec![p(&[1]), p(&[2])]);
        assert_eq!(elsv_eval(1, &p(&[3]), &s.table).unwrap(), rat(9));
        assert_eq!(elsv_eval(1, &p(&[1]), &s.table).unwrap(), rat(0));
    }

    #[test]
    fn genus_zero_three_points() {
        let t = HurwitzTable::new();
        let s = hodge_solve(&t, 0, 3, HodgeOptions::default()).unwrap();
        assert_eq!(s.table.len(), 1);
        assert_eq!(s.table[&hk(0, &[0, 0, 0], 0)], rat(1));
        assert_eq!(elsv_eval(0, &p(&[1, 1, 1]), &s.table).unwrap(), rat(4));
    }

    #[test]
    fn unstable_and_missing() {
        let t = HurwitzTable::new();
        assert!(matches!(
            hodge_solve(&t, 0, 2, HodgeOptions::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            elsv_eval(1, &p(&[2]), &HodgeTable::new()),
            Err(Error::MissingEntry(_))
        ));
    }

    #[test]
    fn budget_too_small() {
        let t = HurwitzTable::new();
        let opts = HodgeOptions {
            max_part: 1,
            held_out: 0,
        };
        assert!(matches!(
            hodge_solve(&t, 1, 1, opts),
            Err(Error::InsufficientPartitions { .. })
        ));
    }

    #[test]
    fn held_out_partitions_reproduced() {
        let t = HurwitzTable::new();
        for (g, n) in [(1, 1), (1, 2), (2, 1), (0, 4)] {
            let s = hodge_solve(&t, g, n, HodgeOptions::default()).unwrap();
            assert!(!s.held_out.is_empty());
            for mu in &s.held_out {
                assert_eq!(
                    elsv_eval(g, mu, &s.table).unwrap(),
                    t.hurwitz(g, mu).unwrap(),
                    "g={g} mu={mu}"
                );
            }
        }
    }
}
