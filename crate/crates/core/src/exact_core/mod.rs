//! Exact scalars, truncated power series and linear algebra over the rationals.
//!
//! Truncation orders are always supplied by the caller. Binary series
//! operations keep the smaller of the two orders.

pub mod linsolve;
pub mod multi;
pub mod poly;
pub mod rational;
pub mod series;

pub use linsolve::{exact_linear_solve, RowBasis};
pub use multi::{monomial_name, Exponents, MultiSeries};
pub use poly::UniPoly;
pub use rational::{
    binomial, double_factorial, factorial, format_rational, int, odd_double_factorial,
    parse_rational, rat, ratio, Rational,
};
pub use series::Series1;
