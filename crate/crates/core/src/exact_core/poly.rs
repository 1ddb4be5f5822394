//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{binomial, int, Rational};
use super::series::Series1;
use crate::error::Result;

/// `sum_k c_k y^k`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// `c y^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `y d/dy`.
    pub fn nabla(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as u64))
                .collect(),
        )
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    /// Taylor shift: the polynomial `u -> p(u + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut apow = Rational::one();
            for j in (0..=k).rev() {
                out[j] += c * int(binomial(k as i64, j as i64)) * &apow;
                apow *= a;
            }
        }
        Self::new(out)
    }

    /// `p(s(x))` for a series `s`; a nonzero constant term of `s` is handled
    /// by re-centring the polynomial at `s(0)` first.
    pub fn compose_series(&self, s: &Series1) -> Result<Series1> {
        let c0 = s.coeff(0);
        let centred = self.shift(&c0);
        let inner = s - &Series1::constant(c0, s.order());
        // u^k is O(x^k) once inner(0) = 0, so terms above the order drop out.
        Series1::from_coeffs(centred.coeffs.iter().cloned(), s.order()).compose(&inner)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})y")?,
                _ => write!(f, "({c})y^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    #[test]
    fn shift_matches_eval() {
        let p = UniPoly::new(vec![rat(-1), rat(0), rat(3), rat(2)]);
        let q = p.shift(&rat(1));
        for t in -3..4 {
            assert_eq!(q.eval(&rat(t)), p.eval(&(rat(t) + rat(1))));
        }
    }

    #[test]
    fn compose_with_non_centred_series() {
        // p(y) = y^2 at y = 1 + x gives 1 + 2x + x^2
        let p = UniPoly::monomial(rat(1), 2);
        let s = Series1::from_coeffs([rat(1), rat(1)], 4);
        let c = p.compose_series(&s).unwrap();
        assert_eq!(c, Series1::from_coeffs([rat(1), rat(2), rat(1)], 4));
    }
}
