//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Solves `A x = rhs` exactly for a square or overdetermined system of full
/// column rank. Overdetermined systems must be exactly consistent.
pub fn exact_linear_solve(a: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    assert_eq!(a.len(), rhs.len(), "row count");
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    if m.len() < ncols {
        return Err(Error::SingularSystem);
    }

    for col in 0..ncols {
        let pivot = (col..m.len())
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * p;
            }
        }
    }
    if m[ncols..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(Error::InconsistentSystem);
    }
    Ok(m.into_iter().take(ncols).map(|mut row| row.pop().unwrap()).collect())
}

/// Incrementally maintained row-echelon basis, used to pick rows that raise
/// the rank of a system.
#[derive(Debug, Clone, Default)]
pub struct RowBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row` if it is independent of the rows seen so far.
    pub fn try_insert(&mut self, row: &[Rational]) -> bool {
        let mut v = row.to_vec();
        for (lead, basis) in &self.rows {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (x, b) in v.iter_mut().zip(basis) {
                    *x -= &factor * b;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(lead) => {
                let inv = v[lead].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                // keep earlier rows reduced against the new lead
                for (_, basis) in self.rows.iter_mut() {
                    if !basis[lead].is_zero() {
                        let factor = basis[lead].clone();
                        for (x, b) in basis.iter_mut().zip(&v) {
                            *x -= &factor * b;
                        }
                    }
                }
                self.rows.push((lead, v));
                true
            }
        }
    }
}
