//! The verification suites behind `tauforge verify`, with their desk-scale
//! defaults.

use serde_json::json;

use crate::error::Result;
use crate::exact_core::{format_rational, rat};
use crate::hurwitz::{
    branch_count, verify_cut_join_pde, HurwitzKey, HurwitzOracle, HurwitzSource, HurwitzTable,
    OracleBounds, WithOverride,
};
use crate::intersection::{
    elsv_eval, gate_valid_keys, hodge_solve, verify_dvv_suite, verify_kdv, CorrelatorSource,
    CorrelatorTable, ElsvCorrelators, HodgeOptions, Window,
};
use crate::partitions::{partitions_of, Partition};
use crate::report::{Check, Report};
use crate::symmetrize::{
    lemma31_check, lemma32_check, master_eq_check, master_eq_check_with, verify_ftable,
    w_identity_check, MasterOptions,
};

fn equal_check(name: String, got: &crate::exact_core::Rational, want: &crate::exact_core::Rational) -> Check {
    if got == want {
        Check::pass(name)
    } else {
        Check::fail(name, format!("{} != {}", format_rational(got), format_rational(want)))
    }
}

/// Recursion against the brute-force count for `|mu| <= max_degree`,
/// `r <= max_branch`.
pub fn oracle_suite(table: &HurwitzTable, max_degree: u32, max_branch: u32) -> Result<Report> {
    let oracle = HurwitzOracle::new(OracleBounds {
        max_degree,
        max_branch,
    });
    let mut report = Report::new("oracle")
        .param("max_degree", max_degree)
        .param("max_branch", max_branch);
    for d in 1..=max_degree {
        let mut first = None;
        let mut count = 0;
        for mu in partitions_of(d) {
            let mut g = 0;
            while branch_count(g, &mu)? <= max_branch {
                let (h, o) = (table.hurwitz(g, &mu)?, oracle.hurwitz(g, &mu)?);
                count += 1;
                if h != o && first.is_none() {
                    first = Some(format!(
                        "H_{{{g},{mu}}}: recursion {} != oracle {}",
                        format_rational(&h),
                        format_rational(&o)
                    ));
                }
                g += 1;
            }
        }
        report.push(Check::from_result(
            format!("recursion equals oracle for |mu| = {d} ({count} keys)"),
            first,
        ));
    }
    for (g, parts, num, den) in [
        (0, vec![1], 1, 1),
        (0, vec![2], 1, 2),
        (0, vec![3], 1, 1),
        (1, vec![2], 1, 2),
        (1, vec![1, 1], 1, 2),
    ] {
        let mu = Partition::new(parts)?;
        let want = crate::exact_core::ratio(num, den);
        report.push(equal_check(format!("H_{{{g},{mu}}}"), &table.hurwitz(g, &mu)?, &want));
    }
    Ok(report)
}

/// The PDE on the window, plus a corrupted table that must fail.
pub fn cutjoin_suite(table: &HurwitzTable, dmax: u32, rmax: u32) -> Result<Report> {
    let mut report = verify_cut_join_pde(table, dmax, rmax)?;
    let bad = WithOverride {
        inner: table,
        key: HurwitzKey::new(0, Partition::from_slice(&[2])?),
        value: rat(1),
    };
    let detected = !verify_cut_join_pde(&bad, dmax, rmax)?.passed();
    report.push(Check::from_result(
        "fault injection: H_{0,(2)} := 1 is detected",
        (!detected).then(|| "corrupted table passed".to_string()),
    ));
    Ok(report)
}

pub const ELSV_CASES: &[(u32, usize)] = &[(0, 3), (1, 1), (1, 2), (2, 1), (2, 2)];

/// Solves each `(g, n)` and re-predicts both the partitions used and the
/// held-out ones.
pub fn elsv_suite(table: &HurwitzTable, cases: &[(u32, usize)], options: HodgeOptions) -> Result<Report> {
    let mut report = Report::new("elsv")
        .param("cases", json!(cases))
        .param("max_part", options.max_part)
        .param("held_out", options.held_out);
    for &(g, n) in cases {
        let s = hodge_solve(table, g, n, options)?;
        for (label, list) in [("used", &s.used), ("held-out", &s.held_out)] {
            let mut bad = None;
            for mu in list.iter() {
                let (p, h) = (elsv_eval(g, mu, &s.table)?, table.hurwitz(g, mu)?);
                if p != h && bad.is_none() {
                    bad = Some(format!("{mu}: ELSV {} != H {}", format_rational(&p), format_rational(&h)));
                }
            }
            let shown: Vec<String> = list.iter().map(|m| m.to_string()).collect();
            report.push(Check::from_result(
                format!("({g},{n}) reproduces {label} partitions {}", shown.join(" ")),
                bad,
            ));
        }
        if (g, n) == (1, 1) {
            let mu = Partition::from_slice(&[3])?;
            report.push(equal_check(
                "elsv_eval(1,(3)) = H_{1,(3)} = 9".into(),
                &elsv_eval(1, &mu, &s.table)?,
                &table.hurwitz(1, &mu)?,
            ));
            report.push(equal_check("H_{1,(3)} = 9".into(), &table.hurwitz(1, &mu)?, &rat(9)));
        }
    }
    Ok(report)
}

/// DVV correlators against the `k = 0` slice of the ELSV inversion up to
/// `cross_euler`, and the DVV identity evaluated purely on ELSV tables up to
/// `identity_euler`.
pub fn dvv_suite(table: &HurwitzTable, identity_euler: u32, cross_euler: u32) -> Result<Report> {
    let elsv = ElsvCorrelators::new(table, HodgeOptions::default());
    let dvv = CorrelatorTable::new();
    let mut report = Report::new("dvv")
        .param("identity_max_euler", identity_euler)
        .param("cross_max_euler", cross_euler);
    for key in gate_valid_keys(cross_euler) {
        report.push(equal_check(
            format!("DVV value equals ELSV value at {key}"),
            &dvv.tau(key.g, &key.b),
            &elsv.correlator(key.g, &key.b)?,
        ));
    }
    for (g, b, num, den) in [
        (0, vec![0, 0, 0], 1, 1),
        (1, vec![1], 1, 24),
        (1, vec![2, 0], 1, 24),
        (1, vec![1, 1], 1, 24),
        (0, vec![1, 0, 0, 0], 1, 1),
    ] {
        let key = crate::intersection::CorrelatorKey::new(g, &b);
        report.push(equal_check(
            format!("{key} = {}", format_rational(&crate::exact_core::ratio(num, den))),
            &dvv.tau(g, &b),
            &crate::exact_core::ratio(num, den),
        ));
    }
    let identity = verify_dvv_suite(&elsv, identity_euler)?;
    for c in identity.checks {
        let mut c = c;
        c.name = format!("{} on ELSV tables", c.name);
        report.push(c);
    }
    Ok(report)
}

pub fn kdv_suite(nmax: u32, window: Window) -> Result<Report> {
    verify_kdv(&CorrelatorTable::new(), nmax, window)
}

pub const LEMMA31_CASES: &[(u32, usize)] = &[(1, 1), (1, 2), (0, 3)];

pub fn lemma31_suite(table: &HurwitzTable, cases: &[(u32, usize)], degree: usize) -> Result<Report> {
    let mut report = Report::new("lemma31")
        .param("cases", json!(cases))
        .param("degree", degree);
    for &(g, n) in cases {
        let s = hodge_solve(table, g, n, HodgeOptions::default())?;
        report.extend(lemma31_check(table, &s.table, g, n, degree)?);
    }
    Ok(report)
}

/// `w = x e^w` to `w_order` and `phi_i = F_i(y)` for `i <= imax`.
pub fn lemma32_suite(imax: u32, order: usize, w_order: usize) -> Result<Report> {
    let mut report = Report::new("lemma32")
        .param("imax", imax)
        .param("order", order)
        .param("w_order", w_order);
    report.push(w_identity_check(w_order)?);
    for i in 0..=imax {
        report.extend(lemma32_check(i, order)?);
    }
    Ok(report)
}

pub fn ftable_suite(imax: u32) -> Result<Report> {
    verify_ftable(imax)
}

pub const MASTER_CASES: &[(u32, usize)] = &[(1, 3), (2, 2)];
pub const MASTER_EXPLORATORY: &[(u32, usize)] = &[(0, 3), (0, 4)];

/// Stable cases, a dropped-`T4` fault injection, and the exploratory cases
/// with unstable inputs.
pub fn master_suite(table: &HurwitzTable, cases: &[(u32, usize)], exploratory: &[(u32, usize)], degree: usize) -> Result<Report> {
    let mut report = Report::new("master")
        .param("cases", json!(cases))
        .param("exploratory", json!(exploratory))
        .param("degree", degree);
    for &(g, n) in cases {
        report.extend(master_eq_check(table, g, n, degree)?);
    }
    if let Some(&(g, n)) = cases.iter().find(|(g, _)| *g >= 2) {
        let dropped = master_eq_check_with(table, g, n, degree, MasterOptions { drop_t4: true })?;
        report.push(Check::from_result(
            format!("fault injection: dropping T4 at ({g},{n}) is detected"),
            dropped.passed().then(|| "equation still holds without T4".to_string()),
        ));
    }
    for &(g, n) in exploratory {
        report.extend(master_eq_check(table, g, n, degree)?);
    }
    Ok(report)
}

/// Default parameters of every suite.
pub fn all_suites(table: &HurwitzTable) -> Result<Report> {
    let parts = vec![
        oracle_suite(table, 6, 10)?,
        cutjoin_suite(table, 5, 8)?,
        elsv_suite(table, ELSV_CASES, HodgeOptions::default())?,
        dvv_suite(table, 3, 4)?,
        kdv_suite(4, Window::new(4, 4))?,
        lemma31_suite(table, LEMMA31_CASES, 8)?,
        lemma32_suite(6, 20, 30)?,
        ftable_suite(15)?,
        master_suite(table, MASTER_CASES, MASTER_EXPLORATORY, 8)?,
    ];
    let mut all = Report::new("all");
    for r in parts {
        all.params.insert(r.suite.clone(), json!(r.params));
        for mut c in r.checks {
            c.name = format!("{}: {}", r.suite, c.name);
            all.push(c);
        }
    }
    Ok(all)
}
