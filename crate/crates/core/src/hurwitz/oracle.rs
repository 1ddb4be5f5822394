//! Brute-force Hurwitz numbers from the symmetric group.
//!
//! Counts all tuples `(sigma, tau_1..tau_r)` with `tau_r ... tau_1 sigma = 1`
//! by dynamic programming over `S_d` (repeated convolution with the class of
//! transpositions), then extracts the transitive ones: the orbit containing
//! the point 0 is a union of cycles of `sigma` carrying an interleaved
//! sub-tuple, so
//!
//! ```text
//! T(mu, r) = sum_{mu = A + B} C(d-1, |A|-1) sum_s C(r, s) Conn(A, s) T(B, r-s)
//! ```
//!
//! which is solved for `Conn(mu, r)` (the `A = mu` term).

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::branch_count;
use crate::error::{Error, Result};
use crate::exact_core::{binomial, factorial, Rational};
use crate::partitions::{sub_multisets, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_degree: u32,
    pub max_branch: u32,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_degree: 6,
            max_branch: 10,
        }
    }
}

/// Per-degree table: `counts[k][perm]` is the number of ordered
/// `k`-tuples of transpositions whose product is `perm`.
struct GroupTable {
    perms: Vec<Vec<u8>>,
    cycle_types: Vec<Partition>,
    counts: Vec<Vec<u128>>,
}

impl GroupTable {
    fn build(d: u32, max_branch: u32) -> Self {
        let d = d as usize;
        let perms = all_permutations(d);
        let index: HashMap<Vec<u8>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut transpositions = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let mut t: Vec<u8> = (0..d as u8).collect();
                t.swap(a, b);
                transpositions.push(t);
            }
        }
        // left[t][i] = index of t * perms[i]
        let left: Vec<Vec<usize>> = transpositions
            .iter()
            .map(|t| {
                perms
                    .iter()
                    .map(|p| index[&compose(t, p)])
                    .collect()
            })
            .collect();
        let identity = index[&(0..d as u8).collect::<Vec<_>>()];
        let mut counts = vec![vec![0u128; perms.len()]];
        counts[0][identity] = 1;
        for k in 0..max_branch as usize {
            let prev = &counts[k];
            let mut next = vec![0u128; perms.len()];
            for row in &left {
                for (i, &c) in prev.iter().enumerate() {
                    if c != 0 {
                        next[row[i]] += c;
                    }
                }
            }
            counts.push(next);
        }
        let cycle_types = perms.iter().map(|p| cycle_type(p)).collect();
        GroupTable {
            perms,
            cycle_types,
            counts,
        }
    }

    /// All (not necessarily transitive) tuples with `sigma` of type `mu`.
    fn total(&self, mu: &Partition, r: usize) -> BigInt {
        let index: HashMap<&Vec<u8>, usize> =
            self.perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut sum = BigInt::zero();
        for (i, p) in self.perms.iter().enumerate() {
            if &self.cycle_types[i] == mu {
                // tau_r ... tau_1 = sigma^{-1}
                sum += BigInt::from(self.counts[r][index[&inverse(p)]]);
            }
        }
        sum
    }
}

fn all_permutations(d: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// `(a * b)(i) = a(b(i))`.
fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn inverse(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

pub(crate) fn cycle_type(p: &[u8]) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    Partition::new(lengths).expect("cycle lengths are positive")
}

/// Reusable oracle; group tables and connected counts are memoized.
pub struct HurwitzOracle {
    bounds: OracleBounds,
    groups: Mutex<HashMap<u32, std::sync::Arc<GroupTable>>>,
    connected: Mutex<HashMap<(Partition, u32), BigInt>>,
}

impl HurwitzOracle {
    pub fn new(bounds: OracleBounds) -> Self {
        HurwitzOracle {
            bounds,
            groups: Mutex::new(HashMap::new()),
            connected: Mutex::new(HashMap::new()),
        }
    }

    pub fn bounds(&self) -> OracleBounds {
        self.bounds
    }

    pub fn in_range(&self, g: u32, mu: &Partition) -> bool {
        matches!(branch_count(g, mu), Ok(r) if r <= self.bounds.max_branch)
            && mu.size() <= self.bounds.max_degree
    }

    fn group(&self, d: u32) -> std::sync::Arc<GroupTable> {
        self.groups
            .lock()
            .unwrap()
            .entry(d)
            .or_insert_with(|| std::sync::Arc::new(GroupTable::build(d, self.bounds.max_branch)))
            .clone()
    }

    fn total(&self, mu: &Partition, r: u32) -> BigInt {
        if mu.is_empty() {
            return if r == 0 { BigInt::one() } else { BigInt::zero() };
        }
        self.group(mu.size()).total(mu, r as usize)
    }

    /// Number of transitive tuples with `sigma` of type `mu` and `r`
    /// transpositions.
    fn connected(&self, mu: &Partition, r: u32) -> BigInt {
        if let Some(v) = self.connected.lock().unwrap().get(&(mu.clone(), r)) {
            return v.clone();
        }
        let d = i64::from(mu.size());
        let mut value = self.total(mu, r);
        for (a, b) in sub_multisets(mu.parts()) {
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let a = Partition::new(a).unwrap();
            let b = Partition::new(b).unwrap();
            let blocks = binomial(d - 1, i64::from(a.size()) - 1);
            for s in 0..=r {
                let conn = self.connected(&a, s);
                if conn.is_zero() {
                    continue;
                }
                value -= &blocks * binomial(i64::from(r), i64::from(s)) * conn * self.total(&b, r - s);
            }
        }
        self.connected
            .lock()
            .unwrap()
            .insert((mu.clone(), r), value.clone());
        value
    }

    pub fn hurwitz(&self, g: u32, mu: &Partition) -> Result<Rational> {
        let r = branch_count(g, mu)?;
        if !self.in_range(g, mu) {
            return Err(Error::OracleOutOfRange(format!(
                "g={g}, mu={mu}: need |mu| <= {} and r <= {} (r = {r})",
                self.bounds.max_degree, self.bounds.max_branch
            )));
        }
        Ok(Rational::new(
            self.connected(mu, r),
            factorial(mu.size()),
        ))
    }
}

/// One-shot oracle evaluation with default bounds.
pub fn hurwitz_oracle(g: u32, mu: &Partition) -> Result<Rational> {
    HurwitzOracle::new(OracleBounds::default()).hurwitz(g, mu)
}
