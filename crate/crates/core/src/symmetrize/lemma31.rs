//! `box_n Phi_{g,n} = sum (-1)^k <tau_b lambda_k>_g sum_{b'} prod phi_{b'_i}(x_i)`,
//! the outer sum over sorted `b` and the inner one over its distinct
//! rearrangements.

use crate::error::{Error, Result};
use crate::exact_core::{format_rational, monomial_name, MultiSeries, Series1};
use crate::hurwitz::HurwitzSource;
use crate::intersection::{index_vectors, HodgeKey, HodgeTable};
use crate::report::{Check, Report};

use super::boxes::{box_phi, permutations};
use super::trees::{phi_series, precondition};

pub(crate) fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Compares `box_n Phi_{g,n}` from Hurwitz numbers with its expansion in
/// `phi_i` through the Hodge table, to total `x`-degree `degree`.
pub fn lemma31_check(
    source: &impl HurwitzSource,
    table: &HodgeTable,
    g: u32,
    n: usize,
    degree: usize,
) -> Result<Report> {
    precondition((n >= 1 && g >= 1) || (n >= 3 && g == 0), || {
        format!("the Hodge expansion needs n, g >= 1 or n >= 3, got (g, n) = ({g}, {n})")
    })?;
    let lhs = box_phi(source, g, n, degree)?;

    let phis: Vec<Series1> = (0..=3 * g + n as u32).map(|i| phi_series(i, degree)).collect();
    let mut rhs = MultiSeries::zero(n, degree);
    let dim = 3 * i64::from(g) - 3 + n as i64;
    for k in 0..=g {
        let w = dim - i64::from(k);
        if w < 0 {
            continue;
        }
        for b in index_vectors(w as u32, n) {
            let key = HodgeKey { g, b, k };
            let v = table
                .get(&key)
                .ok_or_else(|| Error::MissingEntry(key.to_string()))?;
            let v = if k % 2 == 1 { -v.clone() } else { v.clone() };
            let mut seen = std::collections::BTreeSet::new();
            for sigma in permutations(n) {
                let arranged: Vec<u32> = sigma.iter().map(|&s| key.b[s]).collect();
                if !seen.insert(arranged.clone()) {
                    continue;
                }
                let mut term = MultiSeries::constant(v.clone(), n, degree);
                for (i, &bi) in arranged.iter().enumerate() {
                    term = term.mul(&MultiSeries::from_univariate(&phis[bi as usize], i, n, degree))?;
                }
                rhs.add_assign(&term)?;
            }
        }
    }

    let names = x_names(n);
    let failure = lhs.differences(&rhs, degree)?.into_iter().next().map(|(e, a, b)| {
        format!(
            "coefficient of {}: box Phi {} != Hodge side {}",
            monomial_name(&e, &names),
            format_rational(&a),
            format_rational(&b)
        )
    });
    let mut report = Report::new("lemma31")
        .param("g", g)
        .param("n", n)
        .param("degree", degree);
    report.push(Check::from_result(
        format!("box_{n} Phi_{{{g},{n}}} Hodge expansion to x-degree {degree}"),
        failure,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::HurwitzTable;
    use crate::intersection::{hodge_solve, HodgeOptions};

    #[test]
    fn small_cases_pass() {
        let t = HurwitzTable::new();
        for (g, n, d) in [(1, 1, 6), (0, 3, 5)] {
            let s = hodge_solve(&t, g, n, HodgeOptions::default()).unwrap();
            let r = lemma31_check(&t, &s.table, g, n, d).unwrap();
            assert!(r.passed(), "{}", r.to_plain(true));
        }
    }

    #[test]
    fn unstable_rejected_and_bad_table_fails() {
        let t = HurwitzTable::new();
        assert!(matches!(
            lemma31_check(&t, &HodgeTable::new(), 0, 2, 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            lemma31_check(&t, &HodgeTable::new(), 1, 1, 4),
            Err(Error::MissingEntry(_))
        ));
        let mut table = hodge_solve(&t, 1, 1, HodgeOptions::default()).unwrap().table;
        let key = HodgeKey { g: 1, b: vec![0], k: 1 };
        table.insert(key, crate::exact_core::rat(0));
        assert!(!lemma31_check(&t, &table, 1, 1, 4).unwrap().passed());
    }
}
