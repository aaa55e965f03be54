//! Exact rational scalars and their string form.
//!
//! Rationals serialize as decimal integer fraction strings `"p/q"` (or just
//! `"p"` when the denominator is one), the format used by every JSON
//! interface in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, omitting the denominator when it is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` with optional sign.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// `1/n!` as an exact rational.
pub fn inv_factorial(n: usize) -> Q {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Q::new(BigInt::one(), f)
}

/// Sign-alternating `(-1)^n`.
pub fn sign_pow(n: usize) -> Q {
    if n.is_multiple_of(2) {
        qi(1)
    } else {
        qi(-1)
    }
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-3", "1/2", "-7/24", "0"] {
            let q = parse_q(s).unwrap();
            assert_eq!(format_q(&q), s);
        }
        assert_eq!(parse_q("4/8").unwrap(), qr(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn factorial_inverse() {
        assert_eq!(inv_factorial(0), qi(1));
        assert_eq!(inv_factorial(4), qr(1, 24));
    }

    #[test]
    fn signs() {
        assert_eq!(sign_pow(0), qi(1));
        assert_eq!(sign_pow(3), qi(-1));
    }
}
