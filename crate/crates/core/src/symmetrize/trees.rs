//! The rooted tree series `w = x e^w`, `y = 1/(1-w)`, the series `phi_i`
//! and the polynomials `F_i(y) = [(y^2 - y) d/dy y]^i (y - 1)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_core::{factorial, format_rational, int, rat, Rational, Series1, UniPoly};
use crate::report::{Check, Report};

/// `w(x) = sum_{m>=1} m^{m-1}/m! x^m` to order `n`.
pub fn rooted_tree_w(n: usize) -> Series1 {
    Series1::from_fn(n, |m| {
        if m == 0 {
            rat(0)
        } else {
            Rational::new(BigInt::from(m).pow(m as u32 - 1), factorial(m as u32))
        }
    })
}

/// `y(x) = 1/(1 - w(x))`.
pub fn y_of_x(n: usize) -> Series1 {
    let one_minus_w = &Series1::one(n) - &rooted_tree_w(n);
    one_minus_w.inverse().expect("1 - w is a unit")
}

/// `phi_i = (x d/dx)^{i+1} w = sum m^{m+i}/m! x^m`.
pub fn phi_series(i: u32, n: usize) -> Series1 {
    let mut s = rooted_tree_w(n);
    for _ in 0..=i {
        s = s.nabla();
    }
    s
}

/// `F_i(y)`, by applying `u -> (y^2 - y) y u'` to `y - 1` `i` times.
pub fn f_direct(i: u32) -> UniPoly {
    let y2_minus_y = UniPoly::new(vec![rat(0), rat(-1), rat(1)]);
    let mut f = UniPoly::new(vec![rat(-1), rat(1)]);
    for _ in 0..i {
        f = y2_minus_y.mul(&f.nabla());
    }
    f
}

/// `w - x e^w` vanishes to order `n`.
pub fn w_identity_check(n: usize) -> Result<Check> {
    let w = rooted_tree_w(n);
    let rhs = Series1::x(n).mul(&w.exp()?);
    let defect = &w - &rhs;
    let name = format!("w - x exp(w) = 0 to order {n}");
    Ok(match (0..=n).find(|&m| !defect.coeff(m).is_zero()) {
        None => Check::pass(name),
        Some(m) => Check::fail(name, format!("coefficient of x^{m} is {}", format_rational(&defect.coeff(m)))),
    })
}

/// `phi_i(x) = F_i(y(x))` to order `n`.
pub fn lemma32_check(i: u32, n: usize) -> Result<Report> {
    let lhs = phi_series(i, n);
    let rhs = f_direct(i).compose_series(&y_of_x(n))?;
    let mut report = Report::new("lemma32").param("i", i).param("order", n);
    let failure = (0..=n).find(|&m| lhs.coeff(m) != rhs.coeff(m)).map(|m| {
        format!(
            "coefficient of x^{m}: phi {} != F(y) {}",
            format_rational(&lhs.coeff(m)),
            format_rational(&rhs.coeff(m))
        )
    });
    report.push(Check::from_result(format!("phi_{i}(x) = F_{i}(y(x)) to order {n}"), failure));
    Ok(report)
}

/// `prod (2 b_i - 1)!!`, the top coefficient of `L(prod phi_{b_i})`.
pub fn leading_coeff_report(b: &[u32]) -> Rational {
    b.iter()
        .map(|&x| crate::exact_core::odd_double_factorial(x))
        .fold(int(1), |a, c| a * c)
}

pub(crate) fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
