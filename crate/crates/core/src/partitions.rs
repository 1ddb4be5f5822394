//! Integer partitions and the join / cut / split moves of the cut-and-join
//! recursion, together with their weights.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_core::{factorial, int, ratio, Rational};

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Canonicalizes `parts` (any order). Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn from_slice(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec())
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|mu|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `l(mu)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_i(mu)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    /// Distinct part values, descending.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.dedup();
        v
    }

    /// `|Aut(mu)| = prod_i m_i(mu)!`.
    pub fn aut_order(&self) -> BigInt {
        self.distinct_parts()
            .into_iter()
            .map(|i| factorial(self.multiplicity(i)))
            .fold(BigInt::one(), |a, b| a * b)
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.distinct_parts().len() == self.len()
    }

    fn without_one(&self, value: u32) -> Vec<u32> {
        let mut rest = self.0.clone();
        let pos = rest.iter().position(|&p| p == value).expect("part present");
        rest.remove(pos);
        rest
    }

    fn with_parts(mut parts: Vec<u32>, extra: &[u32]) -> Partition {
        parts.extend_from_slice(extra);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Distinct partitions obtained by joining two parts, each with weight
    /// `I1 = (a+b)/(1+delta_ab) * m_{a+b}(nu)`.
    pub fn join_targets(&self) -> Vec<(Partition, Rational)> {
        let values = self.distinct_parts();
        let mut out = Vec::new();
        for (x, &a) in values.iter().enumerate() {
            for &b in &values[x..] {
                if a == b && self.multiplicity(a) < 2 {
                    continue;
                }
                let mut rest = self.without_one(a);
                let pos = rest.iter().position(|&p| p == b).unwrap();
                rest.remove(pos);
                let nu = Self::with_parts(rest, &[a + b]);
                let delta = if a == b { 2 } else { 1 };
                let w = ratio((a + b) as i64, delta) * int(nu.multiplicity(a + b));
                out.push((nu, w));
            }
        }
        out
    }

    /// Distinct partitions obtained by cutting one part into `p <= mu_i - p`,
    /// each with weight
    /// `I2 = p(mu_i - p)/(1+delta) * m_p(nu) (m_{mu_i-p}(nu) - delta)`.
    pub fn cut_targets(&self) -> Vec<(Partition, Rational)> {
        let mut out = Vec::new();
        for s in self.distinct_parts() {
            for p in 1..=s / 2 {
                let q = s - p;
                let nu = Self::with_parts(self.without_one(s), &[p, q]);
                let delta = u32::from(p == q);
                let w = ratio((p * q) as i64, 1 + delta as i64)
                    * int(nu.multiplicity(p))
                    * int(nu.multiplicity(q) - delta);
                out.push((nu, w));
            }
        }
        out
    }

    /// Ordered pairs `(nu1, nu2)` of nonempty partitions obtained by cutting a
    /// part into `p` (landing in `nu1`) and `mu_i - p` (landing in `nu2`), for
    /// every `1 <= p < mu_i`, with the remaining parts distributed over the
    /// two sides in all ways. Weight
    /// `I3 = p(mu_i - p)/(1+delta) * m_p(nu1) m_{mu_i-p}(nu2)`.
    ///
    /// Different cuts can produce the same pair; such entries are kept
    /// separate because they are separate terms of the recursion.
    pub fn split_targets(&self) -> Vec<SplitTarget> {
        let mut out = Vec::new();
        for s in self.distinct_parts() {
            let rest = self.without_one(s);
            let splits = sub_multisets(&rest);
            for p in 1..s {
                let q = s - p;
                let delta = i64::from(p == q);
                for (a, b) in &splits {
                    let first = Self::with_parts(a.clone(), &[p]);
                    let second = Self::with_parts(b.clone(), &[q]);
                    let w = ratio((p * q) as i64, 1 + delta)
                        * int(first.multiplicity(p))
                        * int(second.multiplicity(q));
                    out.push(SplitTarget {
                        first,
                        second,
                        cut: (p, q),
                        coefficient: w,
                    });
                }
            }
        }
        out
    }
}

/// One term of the splitting sum: `cut.0` lands in `first`, `cut.1` in `second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTarget {
    pub first: Partition,
    pub second: Partition,
    pub cut: (u32, u32),
    pub coefficient: Rational,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All ways to split a multiset (given as a descending list) into an ordered
/// pair of sub-multisets, each split listed once.
pub fn sub_multisets(parts: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut values: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match values.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => values.push((p, 1)),
        }
    }
    let mut out = vec![(Vec::new(), Vec::new())];
    for (v, c) in values {
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for (a, b) in &out {
            for k in 0..=c {
                let mut a2: Vec<u32> = a.clone();
                let mut b2: Vec<u32> = b.clone();
                a2.extend(std::iter::repeat_n(v, k));
                b2.extend(std::iter::repeat_n(v, c - k));
                next.push((a2, b2));
            }
        }
        out = next;
    }
    out
}

/// Partitions of `d` in reverse lexicographic order, e.g. `(3), (2,1), (1,1,1)`.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(d: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if d == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=d.min(max)).rev() {
            prefix.push(k);
            rec(d - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_with_length(d: u32, len: usize) -> Vec<Partition> {
    partitions_of(d)
        .into_iter()
        .filter(|p| p.len() == len)
        .collect()
}

/// Partitions of length `len` whose parts are all at most `max_part`.
pub fn bounded_partitions(len: usize, max_part: u32) -> Vec<Partition> {
    fn rec(len: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if len == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=max).rev() {
            prefix.push(k);
            rec(len - 1, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_part, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_slice(parts).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(p(&[2, 2, 1]).multiplicity(2), 2);
        assert_eq!(p(&[2, 2, 1]).multiplicity(3), 0);
        assert_eq!(p(&[1]).multiplicity(1), 1);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(p(&[1, 1, 1]).aut_order(), BigInt::from(6));
        assert_eq!(p(&[2, 1]).aut_order(), BigInt::from(1));
        assert_eq!(p(&[2, 2, 1]).aut_order(), BigInt::from(2));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 2]).parts(), &[2, 2, 1]);
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn join_examples() {
        assert_eq!(p(&[2, 1]).join_targets(), vec![(p(&[3]), rat(3))]);
        assert_eq!(p(&[2, 2]).join_targets(), vec![(p(&[4]), rat(2))]);
        assert!(p(&[1]).join_targets().is_empty());
    }

    #[test]
    fn cut_examples() {
        assert_eq!(p(&[3]).cut_targets(), vec![(p(&[2, 1]), rat(2))]);
        assert_eq!(p(&[2]).cut_targets(), vec![(p(&[1, 1]), rat(1))]);
        assert!(p(&[1]).cut_targets().is_empty());
    }

    #[test]
    fn split_examples() {
        let t = p(&[3]).split_targets();
        let pairs: Vec<_> = t
            .iter()
            .map(|s| (s.first.clone(), s.second.clone(), s.coefficient.clone()))
            .collect();
        assert!(pairs.contains(&(p(&[1]), p(&[2]), rat(2))));
        assert!(pairs.contains(&(p(&[2]), p(&[1]), rat(2))));
        assert!(p(&[1]).split_targets().is_empty());

        // mu = (2,1): cutting 2 -> (1,1), spare part 1 goes left or right;
        // cutting the part 1 is impossible.
        let t = p(&[2, 1]).split_targets();
        assert_eq!(t.len(), 2);
        let find = |a: &[u32], b: &[u32]| {
            t.iter()
                .find(|s| s.first == p(a) && s.second == p(b))
                .map(|s| s.coefficient.clone())
        };
        // I3 = 1*1/2 * m_1(nu1) * m_1(nu2)
        assert_eq!(find(&[1, 1], &[1]), Some(rat(1)));
        assert_eq!(find(&[1], &[1, 1]), Some(rat(1)));
    }

    #[test]
    fn submultiset_counts() {
        // (2,2,1): 3 choices for the 2s times 2 for the 1
        assert_eq!(sub_multisets(&[2, 2, 1]).len(), 6);
        assert_eq!(sub_multisets(&[]).len(), 1);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_with_length(6, 3).len(), 3);
        assert_eq!(bounded_partitions(2, 6).len(), 21);
    }
}
