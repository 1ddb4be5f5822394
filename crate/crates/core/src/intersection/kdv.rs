//! Witten's free energy and the KdV relations between double brackets
//! `<<tau_S>> = d_S F`, as truncated series in `t_0, ..., t_K`.

use num_bigint::BigInt;
use num_traits::One;

use super::{gate_genus, CorrelatorSource};
use crate::error::Result;
use crate::exact_core::{factorial, format_rational, int, monomial_name, ratio, Exponents, MultiSeries, Rational};
use crate::report::{Check, Report};

/// Variables `t_0..t_K`, total degree at most `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub k: usize,
    pub d: usize,
}

impl Window {
    pub fn new(k: usize, d: usize) -> Self {
        Window { k, d }
    }

    fn nvars(&self) -> usize {
        self.k + 1
    }

    /// Exponent vectors of total degree at most `d`, in graded order.
    pub fn monomials(&self) -> Vec<Exponents> {
        fn rec(i: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[i] = e as u32;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        rec(0, self.d, &mut vec![0; self.nvars()], &mut out);
        out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
        out
    }

    fn names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| format!("t{i}")).collect()
    }
}

fn expand(e: &[u32]) -> Vec<u32> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i as u32, c as usize))
        .collect()
}

fn exp_factorial(e: &[u32]) -> BigInt {
    e.iter().map(|&c| factorial(c)).fold(BigInt::one(), |a, x| a * x)
}

/// `F_g = sum <tau_k1 ... tau_kn>_g t_k1...t_kn / n!` over the window.
pub fn witten_f(source: &impl CorrelatorSource, g: u32, window: Window) -> Result<MultiSeries> {
    let mut out = MultiSeries::zero(window.nvars(), window.d);
    for e in window.monomials() {
        let b = expand(&e);
        if gate_genus(&b) != Some(g) {
            continue;
        }
        let v = source.correlator(g, &b)?;
        out.add_term(e.clone(), v / int(exp_factorial(&e)));
    }
    Ok(out)
}

/// `<<tau_S>>` summed over all genera; the dimension gate leaves at most one
/// genus per monomial.
pub fn double_bracket(source: &impl CorrelatorSource, s: &[u32], window: Window) -> Result<MultiSeries> {
    let mut out = MultiSeries::zero(window.nvars(), window.d);
    for e in window.monomials() {
        let mut b = s.to_vec();
        b.extend(expand(&e));
        if let Some(g) = gate_genus(&b) {
            let v = source.correlator(g, &b)?;
            out.add_term(e.clone(), v / int(exp_factorial(&e)));
        }
    }
    Ok(out)
}

fn with_zeros(first: u32, zeros: usize) -> Vec<u32> {
    let mut v = vec![first];
    v.extend(std::iter::repeat_n(0, zeros));
    v
}

/// Checks
/// `(2n+1) <<tau_n tau_0^2>> = <<tau_{n-1} tau_0>> <<tau_0^3>> + 2 <<tau_{n-1} tau_0^2>> <<tau_0^2>> + 1/4 <<tau_{n-1} tau_0^4>>`
/// coefficientwise on the window, for each `1 <= n <= nmax`.
pub fn verify_kdv(source: &impl CorrelatorSource, nmax: u32, window: Window) -> Result<Report> {
    let mut report = Report::new("kdv")
        .param("nmax", nmax)
        .param("K", window.k)
        .param("D", window.d);
    let names = window.names();
    let t0 = {
        let mut e = vec![0; window.nvars()];
        e[0] = 1;
        e
    };
    let db = |s: Vec<u32>| double_bracket(source, &s, window);
    let s03 = db(with_zeros(0, 2))?;
    let s02 = db(with_zeros(0, 1))?;
    for n in 1..=nmax {
        let lhs = db(with_zeros(n, 2))?.scale(&int(2 * n + 1));
        let a = db(with_zeros(n - 1, 1))?.mul(&s03)?;
        let b = db(with_zeros(n - 1, 2))?.mul(&s02)?.scale(&int(2));
        let c = db(with_zeros(n - 1, 4))?.scale(&ratio(1, 4));
        let rhs = a.add(&b)?.add(&c)?;

        let failure = window.monomials().into_iter().find_map(|e| {
            let (l, r) = (lhs.coeff(&e), rhs.coeff(&e));
            (l != r).then(|| {
                format!(
                    "coefficient of {}: lhs {} != rhs {}",
                    monomial_name(&e, &names),
                    format_rational(&l),
                    format_rational(&r)
                )
            })
        });
        report.push(Check::from_result(format!("KdV n={n} on window"), failure));

        if window.d >= 1 {
            let parts: Vec<Rational> = [&lhs, &a, &b, &c].iter().map(|s| s.coeff(&t0)).collect();
            let name = format!(
                "KdV n={n}, coefficient of t0: {} = {} + {} + {}",
                format_rational(&parts[0]),
                format_rational(&parts[1]),
                format_rational(&parts[2]),
                format_rational(&parts[3])
            );
            let sum = &parts[1] + &parts[2] + &parts[3];
            report.push(if parts[0] == sum {
                Check::pass(name)
            } else {
                Check::fail(name, format!("right side sums to {}", format_rational(&sum)))
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;
    use crate::intersection::CorrelatorTable;

    #[test]
    fn free_energy_examples() {
        let t = CorrelatorTable::new();
        let f0 = witten_f(&t, 0, Window::new(0, 3)).unwrap();
        assert_eq!(f0.term_count(), 1);
        assert_eq!(f0.coeff(&[3]), ratio(1, 6));
        let f1 = witten_f(&t, 1, Window::new(1, 1)).unwrap();
        assert_eq!(f1.term_count(), 1);
        assert_eq!(f1.coeff(&[0, 1]), ratio(1, 24));
        assert!(witten_f(&t, 2, Window::new(3, 0)).unwrap().is_zero());
    }

    #[test]
    fn bracket_coefficients() {
        let t = CorrelatorTable::new();
        let s = double_bracket(&t, &[1, 0, 0], Window::new(1, 2)).unwrap();
        assert_eq!(s.coeff(&[0, 0]), rat(0));
        assert_eq!(s.coeff(&[1, 0]), rat(1));
    }

    #[test]
    fn kdv_small_windows() {
        let t = CorrelatorTable::new();
        let r = verify_kdv(&t, 2, Window::new(3, 3)).unwrap();
        assert!(r.passed(), "{}", r.to_plain(true));
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "KdV n=1, coefficient of t0: 3 = 1 + 2 + 0"));
    }
}
