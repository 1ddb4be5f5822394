//! The join-and-cut equation for `box_n Phi_{g,n}`, checked in the
//! coordinates `x_i` after substituting `y_i = y(x_i)`.
//!
//! With `D_i = (y_i - 1) d/dy_i = (1 - w_i) x_i d/dx_i` and `nabla_i = x_i d/dx_i`:
//!
//! ```text
//! (sum_i D_i + n + 2g - 2) F_{g,n} = T1 + T2 + T3 + T4
//! T1 = 1/2 sum_i (nabla_i nabla_{n+1} F_{g-1,n+1})|_{x_{n+1} = x_i}
//! T2 = sum_{r<s} [y_r^2 (y_s - 1) G(x_r, x_rest) - y_s^2 (y_r - 1) G(x_s, x_rest)] / (y_r - y_s)
//! T3 = sum_{k=3}^{n} sum_r sum_{|S|=k-1} G^{0,k}(x_r, x_S) G^{g,n-k+1}(x_r, x_T)
//! T4 = 1/2 sum_{a=1}^{g-1} sum_{k=1}^{n} (same with G^{a,k} and G^{g-a,n-k+1})
//! ```
//!
//! where `F_{g,n} = box_n Phi_{g,n}` and `G^{g,n} = nabla_1 F_{g,n}`. In `T2`
//! the quotient by `y_r - y_s` is taken as an exact quotient by `x_r - x_s`
//! times the inverse of the unit `(y_r - y_s)/(x_r - x_s)`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exact_core::{format_rational, monomial_name, ratio, rat, MultiSeries, Series1};
use crate::hurwitz::HurwitzSource;
use crate::report::{Check, Report};

use super::boxes::{box_phi, subsets};
use super::lemma31::x_names;
use super::trees::{precondition, rooted_tree_w, y_of_x};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MasterOptions {
    /// Leave out `T4`, for fault injection.
    pub drop_t4: bool,
}

struct Boxes<'a, S: HurwitzSource> {
    source: &'a S,
    memo: HashMap<(u32, usize, usize), MultiSeries>,
    used: BTreeSet<(u32, usize)>,
}

impl<S: HurwitzSource> Boxes<'_, S> {
    fn get(&mut self, g: u32, n: usize, degree: usize) -> Result<MultiSeries> {
        self.used.insert((g, n));
        if let Some(s) = self.memo.get(&(g, n, degree)) {
            return Ok(s.clone());
        }
        let s = box_phi(self.source, g, n, degree)?;
        self.memo.insert((g, n, degree), s.clone());
        Ok(s)
    }

    /// `nabla_1 F_{g,n}`.
    fn first_nabla(&mut self, g: u32, n: usize, degree: usize) -> Result<MultiSeries> {
        Ok(self.get(g, n, degree)?.nabla(0))
    }
}

/// Places `f` (in `map.len()` variables) into `n` variables.
fn place(f: &MultiSeries, map: &[usize], n: usize) -> MultiSeries {
    f.remap(map, n)
}

/// `sum_r sum_{|S|=k-1} A(x_r, x_S) B(x_r, x_T)` over `r` and subsets `S` of the other variables.
fn glue(a: &MultiSeries, b: &MultiSeries, k: usize, n: usize) -> Result<MultiSeries> {
    let mut out = MultiSeries::zero(n, a.degree().min(b.degree()));
    for r in 0..n {
        let others: Vec<usize> = (0..n).filter(|&t| t != r).collect();
        for s in subsets(&others, k - 1) {
            let t: Vec<usize> = others.iter().copied().filter(|x| !s.contains(x)).collect();
            let am: Vec<usize> = std::iter::once(r).chain(s.iter().copied()).collect();
            let bm: Vec<usize> = std::iter::once(r).chain(t.iter().copied()).collect();
            out.add_assign(&place(a, &am, n).mul(&place(b, &bm, n))?)?;
        }
    }
    Ok(out)
}

fn uni(s: &Series1, i: usize, n: usize, degree: usize) -> MultiSeries {
    MultiSeries::from_univariate(s, i, n, degree)
}

pub fn master_eq_check(source: &impl HurwitzSource, g: u32, n: usize, degree: usize) -> Result<Report> {
    master_eq_check_with(source, g, n, degree, MasterOptions::default())
}

/// Both sides to total `x`-degree `degree`. When any `Phi_{g',n'}` that
/// enters is unstable (`2g' - 2 + n' <= 0`) the checks are exploratory.
pub fn master_eq_check_with(
    source: &impl HurwitzSource,
    g: u32,
    n: usize,
    degree: usize,
    options: MasterOptions,
) -> Result<Report> {
    precondition((1..=5).contains(&n) && g <= 3 && degree >= 1, || {
        format!("master equation check needs 1 <= n <= 5, g <= 3, got (g, n) = ({g}, {n})")
    })?;
    let dp = degree + 1;
    let w = rooted_tree_w(dp);
    let y = y_of_x(dp + 1);
    let y_minus_1 = &y - &Series1::one(dp + 1);
    let one_minus_w = &Series1::one(dp) - &w;
    let mut boxes = Boxes {
        source,
        memo: HashMap::new(),
        used: BTreeSet::new(),
    };

    let f = boxes.get(g, n, dp)?;
    let mut lhs = f.scale(&rat(n as i64 + 2 * i64::from(g) - 2));
    for i in 0..n {
        lhs.add_assign(&uni(&one_minus_w, i, n, dp).mul(&f.nabla(i))?)?;
    }

    let mut t1 = MultiSeries::zero(n, dp);
    if g >= 1 {
        let big = boxes.get(g - 1, n + 1, dp)?;
        for i in 0..n {
            let gi = big.nabla(i).nabla(n).identify(n, i);
            t1.add_assign(&gi.scale(&ratio(1, 2)))?;
        }
    }

    let mut t2 = MultiSeries::zero(n, dp);
    let mut divisible: Option<String> = None;
    if n >= 2 {
        let gfun = boxes.first_nabla(g, n - 1, dp + 1)?;
        for r in 0..n {
            for s in r + 1..n {
                let rest: Vec<usize> = (0..n).filter(|&t| t != r && t != s).collect();
                let gr = place(&gfun, &[&[r][..], &rest].concat(), n);
                let gs = place(&gfun, &[&[s][..], &rest].concat(), n);
                let (yr, ys) = (uni(&y, r, n, dp + 1), uni(&y, s, n, dp + 1));
                let ym1r = uni(&y_minus_1, r, n, dp + 1);
                let ym1s = uni(&y_minus_1, s, n, dp + 1);
                let n1 = yr.mul(&yr)?.mul(&ym1s)?.mul(&gr)?;
                let n2 = ys.mul(&ys)?.mul(&ym1r)?.mul(&gs)?;
                let numerator = n1.sub(&n2)?;
                let quotient = match numerator.div_by_difference(r, s) {
                    Ok(q) => q,
                    Err(Error::NotDivisible(m)) => {
                        divisible.get_or_insert(format!("pair (x{}, x{}): {m}", r + 1, s + 1));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let unit = yr.sub(&ys)?.div_by_difference(r, s)?;
                t2.add_assign(&quotient.mul(&unit.inverse()?)?)?;
            }
        }
    }

    let mut t3 = MultiSeries::zero(n, dp);
    for k in 3..=n {
        let a = boxes.first_nabla(0, k, dp)?;
        let b = boxes.first_nabla(g, n - k + 1, dp)?;
        t3.add_assign(&glue(&a, &b, k, n)?)?;
    }

    let mut t4 = MultiSeries::zero(n, dp);
    if !options.drop_t4 {
        for a in 1..g {
            for k in 1..=n {
                let left = boxes.first_nabla(a, k, dp)?;
                let right = boxes.first_nabla(g - a, n - k + 1, dp)?;
                t4.add_assign(&glue(&left, &right, k, n)?.scale(&ratio(1, 2)))?;
            }
        }
    }

    let rhs = t1.add(&t2)?.add(&t3)?.add(&t4)?;
    let names = x_names(n);
    let failure = lhs.differences(&rhs, degree)?.into_iter().next().map(|(e, a, b)| {
        format!(
            "coefficient of {}: lhs {} != rhs {}",
            monomial_name(&e, &names),
            format_rational(&a),
            format_rational(&b)
        )
    });

    let unstable: Vec<String> = boxes
        .used
        .iter()
        .filter(|&&(gg, nn)| 2 * i64::from(gg) - 2 + nn as i64 <= 0)
        .map(|(gg, nn)| format!("Phi_{{{gg},{nn}}}"))
        .collect();
    let mut report = Report::new("master")
        .param("g", g)
        .param("n", n)
        .param("degree", degree)
        .param("drop_t4", options.drop_t4);
    let mut checks = Vec::new();
    if n >= 2 {
        checks.push(Check::from_result(
            format!("({g},{n}) T2 numerators divisible by x_r - x_s"),
            divisible,
        ));
    }
    let mut name = format!("({g},{n}) join-and-cut equation to x-degree {degree}");
    if options.drop_t4 {
        name.push_str(" without T4");
    }
    if !unstable.is_empty() {
        name.push_str(&format!(" (uses unstable {})", unstable.join(", ")));
    }
    checks.push(Check::from_result(name, failure));
    for c in checks {
        report.push(if unstable.is_empty() { c } else { c.exploratory() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::HurwitzTable;

    #[test]
    fn low_degree_stable_cases() {
        let t = HurwitzTable::new();
        for (g, n) in [(1, 2), (2, 1)] {
            let r = master_eq_check(&t, g, n, 5).unwrap();
            assert!(r.passed(), "{}", r.to_plain(true));
            assert!(r.checks.iter().all(|c| !c.exploratory));
        }
    }

    #[test]
    fn unstable_inputs_are_flagged() {
        let t = HurwitzTable::new();
        let r = master_eq_check(&t, 1, 1, 4).unwrap();
        assert!(r.checks.iter().all(|c| c.exploratory));
        assert!(r.checks[0].name.contains("Phi_{0,2}"));
    }

    #[test]
    fn dropping_t4_is_detected() {
        let t = HurwitzTable::new();
        let r = master_eq_check_with(&t, 2, 1, 5, MasterOptions { drop_t4: true }).unwrap();
        assert!(!r.passed());
    }
}
