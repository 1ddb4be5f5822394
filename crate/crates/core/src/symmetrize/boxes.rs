//! The symmetrization operators `box_n` and `box_{i,j}`.

use crate::error::{Error, Result};
use crate::exact_core::MultiSeries;
use crate::hurwitz::{phi_truncation, HurwitzSource};

use super::trees::precondition;

/// All permutations of `0..n` (as image vectors).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All `k`-subsets of `items`, each in ascending order.
pub(crate) fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[idx + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `box_n(p_alpha z^|alpha|) = [l(alpha) = n] sum_{sigma in S_n} x_sigma(1)^alpha_1 ... x_sigma(n)^alpha_n`,
/// for a series in `(z, p_1, ..., p_m)`. The result is known to degree
/// `degree - n` in `x_1..x_n`.
pub fn box_n(s: &MultiSeries, n: usize) -> Result<MultiSeries> {
    let perms = permutations(n);
    let mut out = MultiSeries::zero(n, s.degree().saturating_sub(n));
    for (e, c) in s.terms() {
        let mut alpha = Vec::new();
        for (i, &k) in e.iter().enumerate().skip(1) {
            alpha.extend(std::iter::repeat_n(i as u32, k as usize));
        }
        let size: u32 = alpha.iter().sum();
        if size != e[0] {
            return Err(Error::Precondition(format!(
                "box_n needs p_alpha z^|alpha| monomials, got exponents {e:?}"
            )));
        }
        if alpha.len() != n {
            continue;
        }
        for sigma in &perms {
            let mut x = vec![0u32; n];
            for (i, &a) in alpha.iter().enumerate() {
                x[sigma[i]] += a;
            }
            out.add_term(x, c.clone());
        }
    }
    Ok(out)
}

/// `sum f(x_R, x_S, x_T)` over ordered set partitions `(R, S, T)` of
/// `{1..n}` with `|R| = i`, `|S| = j`, each block in increasing order.
pub fn box_split(i: usize, j: usize, f: &MultiSeries) -> Result<MultiSeries> {
    let n = f.nvars();
    precondition(i + j <= n, || format!("box_split needs i + j <= n, got {i} + {j} > {n}"))?;
    let all: Vec<usize> = (0..n).collect();
    let mut out = MultiSeries::zero(n, f.degree());
    for r in subsets(&all, i) {
        let rest: Vec<usize> = all.iter().copied().filter(|x| !r.contains(x)).collect();
        for s in subsets(&rest, j) {
            let t: Vec<usize> = rest.iter().copied().filter(|x| !s.contains(x)).collect();
            let map: Vec<usize> = r.iter().chain(&s).chain(&t).copied().collect();
            out.add_assign(&f.remap(&map, n))?;
        }
    }
    Ok(out)
}

/// `box_n Phi_{g,n}` in `x_1..x_n`, to total degree `degree`.
pub fn box_phi(source: &impl HurwitzSource, g: u32, n: usize, degree: usize) -> Result<MultiSeries> {
    precondition(n >= 1 && degree >= 1, || "box_phi needs n >= 1 and degree >= 1".into())?;
    box_n(&phi_truncation(source, g, n, degree as u32)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{rat, ratio};
    use crate::hurwitz::HurwitzTable;

    fn zp(exps: Vec<u32>) -> MultiSeries {
        MultiSeries::monomial(exps, rat(1), 10)
    }

    #[test]
    fn box_examples() {
        // p_2 z^2 in (z, p1, p2, p3)
        let b = box_n(&zp(vec![2, 0, 1, 0]), 1).unwrap();
        assert_eq!(b.term_count(), 1);
        assert_eq!(b.coeff(&[2]), rat(1));
        let b = box_n(&zp(vec![3, 1, 1, 0]), 2).unwrap();
        assert_eq!(b.term_count(), 2);
        assert_eq!(b.coeff(&[2, 1]), rat(1));
        assert_eq!(b.coeff(&[1, 2]), rat(1));
        assert!(box_n(&zp(vec![3, 0, 0, 1]), 2).unwrap().is_zero());
        // repeated parts keep their multiplicity
        assert_eq!(box_n(&zp(vec![2, 2, 0, 0]), 2).unwrap().coeff(&[1, 1]), rat(2));
        assert!(box_n(&zp(vec![1, 0, 1, 0]), 1).is_err());
    }

    #[test]
    fn split_examples() {
        let f = MultiSeries::monomial(vec![2, 1], rat(1), 5);
        assert_eq!(box_split(0, 0, &f).unwrap(), f);
        let s = box_split(1, 1, &f).unwrap();
        assert_eq!(s.term_count(), 2);
        assert_eq!(s.coeff(&[2, 1]), rat(1));
        assert_eq!(s.coeff(&[1, 2]), rat(1));
        assert!(box_split(2, 1, &f).is_err());
        // 4 * 3 ordered placements of a distinguishing monomial
        let g = MultiSeries::monomial(vec![3, 2, 1, 0], rat(1), 8);
        let s = box_split(1, 1, &g).unwrap();
        let count: i64 = s.terms().map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64)).sum();
        assert_eq!(count, 12);
    }

    #[test]
    fn boxed_phi_is_symmetric() {
        let t = HurwitzTable::new();
        let b = box_phi(&t, 0, 3, 6).unwrap();
        // (1,1,1): 3! permutations of H_{0,(1,1,1)}/r! = 4/4!
        assert_eq!(b.coeff(&[1, 1, 1]), ratio(1, 1));
        for (e, c) in b.terms() {
            let swapped = vec![e[1], e[0], e[2]];
            assert_eq!(&b.coeff(&swapped), c);
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(&[0, 1, 2, 3], 2).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }
}
