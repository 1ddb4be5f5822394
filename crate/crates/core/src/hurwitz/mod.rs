//! Simple Hurwitz numbers `H_{g,mu}` via the cut-and-join recursion, an
//! independent group-theoretic oracle, and the generating functions built
//! from them.
//!
//! Normalization: `H_{g,mu}` is `1/d!` times the number of tuples
//! `(sigma, tau_1, ..., tau_r)` in `S_d` with `sigma` of cycle type `mu`,
//! every `tau_i` a transposition, `tau_r ... tau_1 sigma = 1`, and the
//! generated group transitive, where `r = 2g - 2 + |mu| + l(mu)`.

pub mod cache;
pub mod oracle;
pub mod phi;

use std::collections::HashMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::sync::{Mutex, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_core::{binomial, int, Rational};
use crate::partitions::Partition;

pub use oracle::{hurwitz_oracle, HurwitzOracle, OracleBounds};
pub use phi::{phi_lambda, phi_truncation, verify_cut_join_pde};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzKey {
    pub g: u32,
    pub mu: Partition,
}

impl HurwitzKey {
    pub fn new(g: u32, mu: Partition) -> Self {
        HurwitzKey { g, mu }
    }
}

fn signed_branch_count(g: i64, mu: &Partition) -> i64 {
    2 * g - 2 + i64::from(mu.size()) + mu.len() as i64
}

/// `r = 2g - 2 + |mu| + l(mu)`, the number of simple branch points.
pub fn branch_count(g: u32, mu: &Partition) -> Result<u32> {
    let r = signed_branch_count(i64::from(g), mu);
    if r < 0 || mu.is_empty() {
        return Err(Error::UnstableKey(format!("g={g}, mu={mu}")));
    }
    Ok(r as u32)
}

/// Anything that can supply Hurwitz numbers: the memoized recursion, or a
/// wrapper around it.
pub trait HurwitzSource {
    fn hurwitz(&self, g: u32, mu: &Partition) -> Result<Rational>;
}

/// Memo table for the cut-and-join recursion, optionally mirrored to an
/// append-only cache file.
#[derive(Default)]
pub struct HurwitzTable {
    memo: RwLock<HashMap<HurwitzKey, Rational>>,
    log: Mutex<Option<BufWriter<File>>>,
}

impl HurwitzTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Opens (or creates) a cache file: existing records are loaded and every
    /// newly computed value is appended.
    pub fn with_cache_file(path: &Path) -> Result<Self> {
        let table = Self::new();
        if path.exists() {
            for (key, value) in cache::load_records(path)? {
                table.insert_loaded(key, value);
            }
        } else {
            cache::write_records(path, std::iter::empty())?;
        }
        let file = std::fs::OpenOptions::new().append(true).open(path)?;
        *table.log.lock().unwrap() = Some(BufWriter::new(file));
        Ok(table)
    }

    /// Loads a cache file into a fresh in-memory table.
    pub fn cache_load(path: &Path) -> Result<Self> {
        let table = Self::new();
        for (key, value) in cache::load_records(path)? {
            table.insert_loaded(key, value);
        }
        Ok(table)
    }

    /// Writes the whole memo, sorted, to `path`.
    pub fn cache_store(&self, path: &Path) -> Result<()> {
        cache::write_records(path, self.entries().iter().map(|(k, v)| (k, v)))
    }

    pub fn flush(&self) -> Result<()> {
        if let Some(w) = self.log.lock().unwrap().as_mut() {
            use std::io::Write;
            w.flush()?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All memoized entries sorted by genus, then degree, then parts.
    pub fn entries(&self) -> Vec<(HurwitzKey, Rational)> {
        let mut v: Vec<_> = self
            .memo
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| cache::key_order(a, b));
        v
    }

    fn insert_loaded(&self, key: HurwitzKey, value: Rational) {
        self.memo.write().unwrap().insert(key, value);
    }

    fn lookup(&self, key: &HurwitzKey) -> Option<Rational> {
        self.memo.read().unwrap().get(key).cloned()
    }

    fn store(&self, key: HurwitzKey, value: Rational) {
        let fresh = {
            let mut memo = self.memo.write().unwrap();
            match memo.get(&key) {
                Some(existing) => {
                    debug_assert_eq!(existing, &value);
                    false
                }
                None => {
                    memo.insert(key.clone(), value.clone());
                    true
                }
            }
        };
        if fresh {
            if let Some(w) = self.log.lock().unwrap().as_mut() {
                // A failed append only loses cache persistence, never correctness.
                let _ = cache::append_record(w, &key, &value);
            }
        }
    }

    /// Value with the recursion's conventions for degenerate keys: negative
    /// genus, empty partitions and negative `r` give zero.
    fn value(&self, g: i64, mu: &Partition) -> Rational {
        if g < 0 || mu.is_empty() || signed_branch_count(g, mu) < 0 {
            return Rational::zero();
        }
        let key = HurwitzKey::new(g as u32, mu.clone());
        if let Some(v) = self.lookup(&key) {
            return v;
        }
        let v = self.recurse(g, mu);
        self.store(key, v.clone());
        v
    }

    fn recurse(&self, g: i64, mu: &Partition) -> Rational {
        let r = signed_branch_count(g, mu);
        if r == 0 {
            // (0, (1)) is the only key with r = 0.
            return Rational::from_integer(1.into());
        }
        let mut total = Rational::zero();
        for (nu, w) in mu.join_targets() {
            total += w * self.value(g, &nu);
        }
        for (nu, w) in mu.cut_targets() {
            total += w * self.value(g - 1, &nu);
        }
        for split in mu.split_targets() {
            // Each unordered cut once; the ordered sides cover both placements.
            if split.cut.0 > split.cut.1 {
                continue;
            }
            for g1 in 0..=g {
                let r1 = signed_branch_count(g1, &split.first);
                let b = binomial(r - 1, r1);
                if b.is_zero() {
                    continue;
                }
                let h1 = self.value(g1, &split.first);
                if h1.is_zero() {
                    continue;
                }
                let h2 = self.value(g - g1, &split.second);
                if h2.is_zero() {
                    continue;
                }
                total += int(b) * &split.coefficient * h1 * h2;
            }
        }
        total
    }
}

impl HurwitzSource for HurwitzTable {
    /// `H_{g,mu}`; an empty or unstable key is an error at this level.
    fn hurwitz(&self, g: u32, mu: &Partition) -> Result<Rational> {
        branch_count(g, mu)?;
        Ok(self.value(i64::from(g), mu))
    }
}

/// A source that reports one altered value, for fault-injection tests.
pub struct WithOverride<'a, S: HurwitzSource> {
    pub inner: &'a S,
    pub key: HurwitzKey,
    pub value: Rational,
}

impl<S: HurwitzSource> HurwitzSource for WithOverride<'_, S> {
    fn hurwitz(&self, g: u32, mu: &Partition) -> Result<Rational> {
        if g == self.key.g && mu == &self.key.mu {
            return Ok(self.value.clone());
        }
        self.inner.hurwitz(g, mu)
    }
}
