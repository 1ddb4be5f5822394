//! Scalars. Every value in the crate is an exact rational number.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `(2k-1)!!` with `(-1)!! = 1`.
pub fn odd_double_factorial(k: u32) -> Rational {
    int(odd_double_factorial_int(k))
}

pub fn odd_double_factorial_int(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// Ordinary double factorial `m!!`, with `0!! = 1`.
pub fn double_factorial(m: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = m;
    while j > 1 {
        acc *= BigInt::from(j);
        j -= 2;
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Binomial coefficient; zero when `k` lies outside `[0, n]`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders as `num/den`, or `num` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::MalformedCache(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::MalformedCache(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::MalformedCache(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => int(
            s.parse::<BigInt>()
                .map_err(|_| Error::MalformedCache(format!("bad integer {s:?}")))?,
        ),
    };
    Ok(parsed)
}

pub fn is_nonnegative_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}
