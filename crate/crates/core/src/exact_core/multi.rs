//! Sparse multivariate power series truncated at a total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::series::Series1;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Sparse series in `nvars` variables, known up to total degree `degree`.
///
/// No zero coefficient is ever stored and every stored monomial has total
/// degree at most `degree`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Exponents, Rational>,
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

impl MultiSeries {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        MultiSeries {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, nvars: usize, degree: usize) -> Self {
        let mut s = Self::zero(nvars, degree);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, degree: usize) -> Self {
        Self::constant(Rational::one(), nvars, degree)
    }

    pub fn monomial(exps: Exponents, c: Rational, degree: usize) -> Self {
        let mut s = Self::zero(exps.len(), degree);
        s.add_term(exps, c);
        s
    }

    /// The series `x_i`.
    pub fn variable(i: usize, nvars: usize, degree: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one(), degree)
    }

    /// Places a univariate series in variable `var`.
    pub fn from_univariate(s: &Series1, var: usize, nvars: usize, degree: usize) -> Self {
        let mut out = Self::zero(nvars, degree.min(s.order()));
        for (m, c) in s.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = m as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulates `c * x^exps`; terms above the truncation degree are dropped.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() || total(&exps) > self.degree {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        MultiSeries {
            nvars: self.nvars,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Raises the nominal truncation degree. Only sound for polynomials
    /// whose every term is already present.
    pub fn with_degree(mut self, degree: usize) -> Self {
        if degree < self.degree {
            return self.truncate(degree);
        }
        self.degree = degree;
        self
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.degree);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.degree);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        *self = self.add(other)?;
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(self.nvars, degree);
        for (ea, a) in &self.terms {
            let da = total(ea);
            if da > degree {
                continue;
            }
            for (eb, b) in &other.terms {
                if da + total(eb) > degree {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    /// `x_i d/dx_i`.
    pub fn nabla(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                out.terms.insert(e.clone(), c * int(e[i]));
            }
        }
        out
    }

    /// `d/dx_i`; the result is known to one degree less.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * int(e[i]));
            }
        }
        out
    }

    /// `exp(a)` for `a` with zero constant term, summing `a^k/k!`.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.contains_key(&vec![0; self.nvars]) {
            return Err(Error::NonzeroConstant);
        }
        let mut out = Self::one(self.nvars, self.degree);
        let mut power = Self::one(self.nvars, self.degree);
        for k in 1..=self.degree {
            power = power.mul(self)?.scale(&Rational::new(1.into(), (k as u64).into()));
            if power.is_zero() {
                break;
            }
            out.add_assign(&power)?;
        }
        Ok(out)
    }

    /// Inverse of a unit via the geometric series in `1 - a/a_0`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(&vec![0; self.nvars]);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let one = Self::one(self.nvars, self.degree);
        let defect = one.sub(&self.scale(&inv0))?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.degree {
            power = power.mul(&defect)?;
            if power.is_zero() {
                break;
            }
            out.add_assign(&power)?;
        }
        Ok(out.scale(&inv0))
    }

    /// Renames variables: variable `j` of `self` becomes variable `map[j]`
    /// of a series in `nvars` variables. Colliding targets multiply.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars, "remap length");
        let mut out = Self::zero(nvars, self.degree);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (j, &k) in e.iter().enumerate() {
                f[map[j]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Sets `x_from = x_into` and removes variable `from`.
    pub fn identify(&self, from: usize, into: usize) -> Self {
        assert!(from != into);
        let mut map: Vec<usize> = Vec::with_capacity(self.nvars);
        for j in 0..self.nvars {
            let target = if j == from { into } else { j };
            map.push(if target > from { target - 1 } else { target });
        }
        self.remap(&map, self.nvars - 1)
    }

    /// Exact quotient by `x_r - x_s`.
    ///
    /// Works one homogeneous slice at a time, so the quotient is known to one
    /// degree less than `self`. Any nonzero remainder is an error.
    pub fn div_by_difference(&self, r: usize, s: usize) -> Result<Self> {
        assert!(r != s && r < self.nvars && s < self.nvars);
        // Group by the exponents of the other variables and the combined degree in (x_r, x_s).
        let mut groups: BTreeMap<(Exponents, u32), BTreeMap<u32, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[r] = 0;
            rest[s] = 0;
            groups
                .entry((rest, e[r] + e[s]))
                .or_default()
                .insert(e[r], c.clone());
        }
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for ((rest, k), cs) in groups {
            // sum_a c_a x_r^a x_s^(k-a) = (x_r - x_s) sum_a q_a x_r^a x_s^(k-1-a)
            // with c_a = q_{a-1} - q_a.
            let mut q = Rational::zero();
            for a in 0..=k {
                let c = cs.get(&a).cloned().unwrap_or_else(Rational::zero);
                if a == k {
                    if c != q {
                        return Err(Error::NotDivisible(format!(
                            "remainder {} at x{}^{} with others {:?}",
                            c - q,
                            r,
                            k,
                            rest
                        )));
                    }
                    break;
                }
                q -= c;
                let mut f = rest.clone();
                f[r] = a;
                f[s] = k - 1 - a;
                out.add_term(f, q.clone());
            }
        }
        Ok(out)
    }

    /// Coefficients of total degree at most `degree` on which `self` and
    /// `other` differ, in ascending order.
    pub fn differences(&self, other: &Self, degree: usize) -> Result<Vec<(Exponents, Rational, Rational)>> {
        self.check_vars(other)?;
        let mut keys: Vec<&Exponents> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        Ok(keys
            .into_iter()
            .filter(|e| total(e) <= degree)
            .filter_map(|e| {
                let a = self.coeff(e);
                let b = other.coeff(e);
                (a != b).then(|| (e.clone(), a, b))
            })
            .collect())
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "x{j}")?,
                    _ => write!(f, "x{j}^{k}")?,
                }
            }
        }
        write!(f, " + O(deg {})", self.degree + 1)
    }
}

/// Human-readable monomial such as `x1^2*x3`, using the given variable names.
pub fn monomial_name(exps: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
