//! Generating functions of Hurwitz numbers and the cut-and-join PDE.

use super::{branch_count, HurwitzSource};
use crate::error::{Error, Result};
use crate::exact_core::{factorial, format_rational, int, monomial_name, rat, MultiSeries};
use crate::partitions::{partitions_of, Partition};
use crate::report::{Check, Report};

fn p_exponents(mu: &Partition, offset: usize, nvars: usize) -> Vec<u32> {
    let mut e = vec![0; nvars];
    for &part in mu.parts() {
        e[offset + part as usize - 1] += 1;
    }
    e
}

/// `Phi_{g,n}(z, p) = sum_{l(mu)=n, |mu|<=dmax} H_{g,mu}/r! p_mu z^|mu|`
/// in the variables `(z, p_1, ..., p_dmax)`.
pub fn phi_truncation(
    source: &impl HurwitzSource,
    g: u32,
    n: usize,
    dmax: u32,
) -> Result<MultiSeries> {
    if dmax == 0 {
        return Err(Error::Precondition("dmax must be at least 1".into()));
    }
    let nvars = dmax as usize + 1;
    let mut out = MultiSeries::zero(nvars, dmax as usize + n);
    for d in 1..=dmax {
        for mu in partitions_of(d) {
            if mu.len() != n {
                continue;
            }
            let r = branch_count(g, &mu)?;
            let h = source.hurwitz(g, &mu)?;
            let mut e = p_exponents(&mu, 1, nvars);
            e[0] = d;
            out.add_term(e, h / int(factorial(r)));
        }
    }
    Ok(out)
}

/// `Phi(lambda, p) = sum_{g,mu} H_{g,mu} lambda^r/r! p_mu` over
/// `|mu| <= dmax` and `r <= rmax`, in the variables `(lambda, p_1, ..., p_dmax)`.
///
/// The result is exact as a polynomial; its nominal degree is the largest
/// total degree present.
pub fn phi_lambda(source: &impl HurwitzSource, dmax: u32, rmax: u32) -> Result<MultiSeries> {
    let nvars = dmax as usize + 1;
    let mut out = MultiSeries::zero(nvars, (rmax + dmax) as usize);
    for d in 1..=dmax {
        for mu in partitions_of(d) {
            let mut g = 0;
            while let Ok(r) = branch_count(g, &mu) {
                if r > rmax {
                    break;
                }
                let h = source.hurwitz(g, &mu)?;
                let mut e = p_exponents(&mu, 1, nvars);
                e[0] = r;
                out.add_term(e, h / int(factorial(r)));
                g += 1;
            }
        }
    }
    Ok(out)
}

fn in_window(e: &[u32], dmax: u32, rmax: u32) -> bool {
    let weight: u32 = e[1..].iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum();
    e[0] < rmax && weight <= dmax && weight > 0
}

/// Checks
/// `dPhi/dlambda = 1/2 sum_{i,j} (ij p_{i+j} Phi_ij + ij p_{i+j} Phi_i Phi_j + (i+j) p_i p_j Phi_{i+j})`
/// on every monomial `lambda^k p^alpha` with `k < rmax` and weighted degree
/// `|alpha| <= dmax`; those coefficients only involve terms of the truncation.
pub fn verify_cut_join_pde(source: &impl HurwitzSource, dmax: u32, rmax: u32) -> Result<Report> {
    if dmax == 0 || dmax > 6 || rmax > 10 {
        return Err(Error::Precondition(format!(
            "need 1 <= dmax <= 6 and rmax <= 10, got dmax={dmax}, rmax={rmax}"
        )));
    }
    let phi = phi_lambda(source, dmax, rmax)?;
    let nvars = phi.nvars();
    let big = 2 * phi.degree() + 2;
    let phi = phi.with_degree(big);
    let p = |i: usize| MultiSeries::variable(i, nvars, big);

    let lhs = phi.derivative(0).with_degree(big);
    let mut rhs = MultiSeries::zero(nvars, big);
    let first: Vec<MultiSeries> = (0..nvars)
        .map(|i| phi.derivative(i).with_degree(big))
        .collect();
    let d = dmax as usize;
    for i in 1..=d {
        for j in 1..=d - i {
            let ij = rat((i * j) as i64);
            let second = first[i].derivative(j).with_degree(big);
            let product = first[i].mul(&first[j])?;
            let inner = second.add(&product)?.scale(&ij);
            rhs.add_assign(&inner.mul(&p(i + j))?)?;
            let joined = first[i + j].mul(&p(i))?.mul(&p(j))?;
            rhs.add_assign(&joined.scale(&rat((i + j) as i64)))?;
        }
    }
    let rhs = rhs.scale(&(rat(1) / rat(2)));

    let diffs = lhs.differences(&rhs, big)?;
    let names: Vec<String> = std::iter::once("lambda".to_string())
        .chain((1..=d).map(|i| format!("p{i}")))
        .collect();
    let failure = diffs
        .into_iter()
        .find(|(e, _, _)| in_window(e, dmax, rmax))
        .map(|(e, a, b)| {
            format!(
                "coefficient of {}: lhs {} != rhs {}",
                monomial_name(&e, &names),
                format_rational(&a),
                format_rational(&b)
            )
        });
    let mut report = Report::new("cutjoin-pde")
        .param("dmax", dmax)
        .param("rmax", rmax);
    report.push(Check::from_result(
        format!("cut-and-join PDE, |mu| <= {dmax}, lambda-degree < {rmax}"),
        failure,
    ));
    Ok(report)
}
