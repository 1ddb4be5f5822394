//! Univariate power series truncated at an explicit order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series1 {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Series1 {
    pub fn zero(order: usize) -> Self {
        Series1 {
            order,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds from leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[m] = c;
        }
        s
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        Series1 {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^m`; zero beyond the truncation order.
    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), order.min(self.order))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series1 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x d/dx`.
    pub fn nabla(&self) -> Self {
        Series1 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c * int(m as u64))
                .collect(),
        }
    }

    /// `d/dx`; the result is known to one order less.
    pub fn derivative(&self) -> Self {
        let order = self.order.saturating_sub(1);
        Self::from_fn(order, |m| self.coeff(m + 1) * int(m as u64 + 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order), |acc, _| acc.mul(self))
    }

    /// `exp(a)` for `a(0) = 0`, via `m b_m = sum_k k a_k b_{m-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut out = Self::one(self.order);
        for m in 1..=self.order {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k as u64) * &out.coeffs[m - k];
                }
            }
            out.coeffs[m] = acc / int(m as u64);
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = self.coeffs[0].recip();
        let mut out = Self::zero(self.order);
        out.coeffs[0] = inv0.clone();
        for m in 1..=self.order {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &out.coeffs[m - k];
            }
            out.coeffs[m] = -acc * &inv0;
        }
        Ok(out)
    }

    /// `self(inner(x))`, requiring `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut out = Self::zero(order);
        for c in self.coeffs.iter().take(order + 1).rev() {
            out = out.mul(&inner);
            out.coeffs[0] += c;
        }
        Ok(out)
    }
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        let order = self.order.min(rhs.order);
        Series1::from_fn(order, |m| &self.coeffs[m] + &rhs.coeffs[m])
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        let order = self.order.min(rhs.order);
        Series1::from_fn(order, |m| &self.coeffs[m] - &rhs.coeffs[m])
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        Series1::mul(self, rhs)
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{rat, ratio};

    fn s(cs: &[Rational], order: usize) -> Series1 {
        Series1::from_coeffs(cs.iter().cloned(), order)
    }

    #[test]
    fn products_truncate() {
        let one_plus_x = s(&[rat(1), rat(1)], 2);
        assert_eq!(&one_plus_x * &one_plus_x, s(&[rat(1), rat(2), rat(1)], 2));

        let a = s(&[rat(1), rat(1)], 1);
        let b = s(&[rat(1), rat(-1)], 1);
        assert_eq!(&a * &b, Series1::one(1));

        let w = s(&[rat(0), rat(1), rat(1), ratio(3, 2)], 3);
        assert_eq!(&w * &w, s(&[rat(0), rat(0), rat(1), rat(2)], 3));
    }

    #[test]
    fn mixed_orders_use_minimum() {
        let a = Series1::one(5);
        let b = Series1::x(2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn nabla_examples() {
        assert!(Series1::one(4).nabla().is_zero());
        assert_eq!(Series1::x(3).nabla(), Series1::x(3));
        let w = s(&[rat(0), rat(1), rat(1), ratio(3, 2)], 3);
        assert_eq!(w.nabla(), s(&[rat(0), rat(1), rat(2), ratio(9, 2)], 3));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series1::zero(3).exp().unwrap(), Series1::one(3));
        let ex = Series1::x(3).exp().unwrap();
        assert_eq!(ex, s(&[rat(1), rat(1), ratio(1, 2), ratio(1, 6)], 3));

        // log(1+x) = x - x^2/2 + x^3/3 - x^4/4
        let log1p = Series1::from_fn(4, |m| {
            if m == 0 {
                rat(0)
            } else {
                ratio(if m % 2 == 1 { 1 } else { -1 }, m as i64)
            }
        });
        assert_eq!(log1p.exp().unwrap(), s(&[rat(1), rat(1)], 4));

        assert_eq!(Series1::one(2).exp(), Err(Error::NonzeroConstant));
    }

    #[test]
    fn compose_examples() {
        let y2 = s(&[rat(0), rat(0), rat(1)], 4);
        assert_eq!(y2.compose(&Series1::x(4)).unwrap(), y2);

        let a = s(&[rat(0), rat(1), rat(1)], 2);
        let b = s(&[rat(0), rat(1), rat(1)], 2);
        assert_eq!(a.compose(&b).unwrap(), s(&[rat(0), rat(1), rat(2)], 2));

        let b = s(&[rat(0), ratio(2, 3), rat(-5), rat(7)], 3);
        assert_eq!(Series1::x(3).compose(&b).unwrap(), b);

        assert_eq!(a.compose(&Series1::one(2)), Err(Error::NonzeroConstant));
    }

    #[test]
    fn inverse_of_unit() {
        let a = s(&[rat(2), rat(1), rat(-3)], 5);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Series1::one(5));
        assert_eq!(Series1::x(3).inverse(), Err(Error::NotAUnit));
    }
}
