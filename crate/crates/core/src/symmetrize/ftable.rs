//! The coefficients `f(j, i)` of `F_i(y) = sum_j f(j,i) y^{2i+2-j}`.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use super::trees::{f_direct, precondition};
use crate::error::Result;
use crate::exact_core::{double_factorial, factorial, format_rational, int, odd_double_factorial, rat, Rational};
use crate::report::{Check, Report};

/// `f(j, i)` for `1 <= i <= imax`, `1 <= j <= i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FCoeffTable {
    imax: u32,
    /// `rows[i - 1][j - 1] = f(j, i)`
    rows: Vec<Vec<Rational>>,
}

impl FCoeffTable {
    pub fn imax(&self) -> u32 {
        self.imax
    }

    /// `f(j, i)`, zero outside `1 <= j <= i + 1`.
    pub fn get(&self, j: u32, i: u32) -> Rational {
        if i == 0 || i > self.imax || j == 0 || j > i + 1 {
            return Rational::zero();
        }
        self.rows[i as usize - 1][j as usize - 1].clone()
    }

    /// All entries as `(i, j, f)` in row order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i as u32 + 1, j as u32 + 1, v))
        })
    }

    /// CSV with header `i,j,f`.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "i,j,f")?;
        for (i, j, v) in self.entries() {
            writeln!(w, "{i},{j},{}", format_rational(v))?;
        }
        Ok(())
    }
}

/// Fills the table from `f(1,1) = 1`, `f(2,1) = -1` with
/// `f(j, i+1) = (2i+2-j) f(j,i) - (2i+3-j) f(j-1,i)` and zero padding.
pub fn f_table(imax: u32) -> Result<FCoeffTable> {
    precondition(imax >= 1, || "imax must be at least 1".into())?;
    let mut t = FCoeffTable {
        imax: 1,
        rows: vec![vec![rat(1), rat(-1)]],
    };
    for i in 1..imax {
        let row: Vec<Rational> = (1..=i + 2)
            .map(|j| {
                let a = i64::from(2 * i + 2) - i64::from(j);
                let b = i64::from(2 * i + 3) - i64::from(j);
                int(a) * t.get(j, i) - int(b) * t.get(j - 1, i)
            })
            .collect();
        t.rows.push(row);
        t.imax = i + 1;
    }
    Ok(t)
}

/// `f(2,i) = -(2i-2)!! [1 + sum_{k=1}^{i-1} (2k+1)!!/(2k)!!]`.
pub fn f2_sum_formula(i: u32) -> Rational {
    let mut s = rat(1);
    for k in 1..i {
        s += Rational::new(double_factorial(2 * k + 1), double_factorial(2 * k));
    }
    -int(double_factorial(2 * i - 2)) * s
}

/// Recursion against direct expansion, closed forms and row sums.
pub fn verify_ftable(imax: u32) -> Result<Report> {
    let t = f_table(imax)?;
    let mut report = Report::new("ftable").param("imax", imax);
    let mut first = |name: &str, bad: Option<String>| report.push(Check::from_result(name.to_string(), bad));

    let direct = (1..=imax).find_map(|i| {
        let f = f_direct(i);
        (1..=i + 1).find_map(|j| {
            let c = f.coeff((2 * i + 2 - j) as usize);
            (c != t.get(j, i)).then(|| {
                format!("f({j},{i}): table {} != direct {}", format_rational(&t.get(j, i)), format_rational(&c))
            })
        })
        .or_else(|| {
            // nothing outside the expected degree range
            let extra = f.coeffs().iter().enumerate().any(|(d, c)| !c.is_zero() && (d < i as usize + 1 || d > 2 * i as usize + 1));
            extra.then(|| format!("F_{i} has terms outside y^{}..y^{}", i + 1, 2 * i + 1))
        })
    });
    first("recursion equals direct expansion of F_i", direct);

    let f1 = (1..=imax).find_map(|i| {
        let want = odd_double_factorial(i);
        (t.get(1, i) != want).then(|| format!("i={i}: {} != {}", format_rational(&t.get(1, i)), format_rational(&want)))
    });
    first("f(1,i) = (2i-1)!!", f1);

    let last = (1..=imax).find_map(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let want = int(factorial(i)) * rat(sign);
        (t.get(i + 1, i) != want).then(|| format!("i={i}: {} != {}", format_rational(&t.get(i + 1, i)), format_rational(&want)))
    });
    first("f(i+1,i) = (-1)^i i!", last);

    let f2 = (1..=imax).find_map(|i| {
        let want = -odd_double_factorial(i + 1) / rat(3);
        (t.get(2, i) != want).then(|| format!("i={i}: {} != {}", format_rational(&t.get(2, i)), format_rational(&want)))
    });
    first("f(2,i) = -(2i+1)!!/3", f2);

    let f2_sum = (1..=imax).find_map(|i| {
        let want = f2_sum_formula(i);
        (t.get(2, i) != want).then(|| format!("i={i}: {} != {}", format_rational(&t.get(2, i)), format_rational(&want)))
    });
    first("f(2,i) = -(2i-2)!! [1 + sum (2k+1)!!/(2k)!!]", f2_sum);

    let f2_fact = (1..=imax).find_map(|i| {
        let lhs = int(2 * i) * t.get(2, i);
        let den = BigInt::from(3) * BigInt::from(2).pow(i - 1) * factorial(i - 1);
        let want = -Rational::new(factorial(2 * i + 1), den);
        (lhs != want).then(|| format!("i={i}: {} != {}", format_rational(&lhs), format_rational(&want)))
    });
    first("2i f(2,i) = -(2i+1)!/(3 2^(i-1) (i-1)!)", f2_fact);

    let boundary = (1..imax).find_map(|i| {
        let want = -int(i + 1) * t.get(i + 1, i);
        (t.get(i + 2, i + 1) != want).then(|| format!("i={i}"))
    });
    first("f(i+2,i+1) = -(i+1) f(i+1,i)", boundary);

    let sums = (1..=imax).find_map(|i| {
        let s: Rational = (1..=i + 1).map(|j| t.get(j, i)).sum();
        (!s.is_zero()).then(|| format!("i={i}: row sum {}", format_rational(&s)))
    });
    first("row sums vanish", sums);

    Ok(report)
}
