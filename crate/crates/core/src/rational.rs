//! Exact rational coefficients and small parsing/formatting helpers.

use alloc::string::{String, ToString};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Ratio;
use num_traits::{One, Signed, Zero};

/// Rational from an integer.
pub fn q(n: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qq(n: i64, d: i64) -> Ratio {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_ratio(s: &str) -> Option<Ratio> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Ratio::from_integer(n))
        }
    }
}

/// Canonical reduced rendering, `p/q` with the `/q` omitted for integers.
pub fn ratio_string(r: &Ratio) -> String {
    r.to_string()
}

/// `(-1)^k` as a rational sign.
pub fn sign(k: u64) -> Ratio {
    if k % 2 == 0 {
        Ratio::one()
    } else {
        -Ratio::one()
    }
}

/// Double factorial `(2p-1)!! = 1·3·5···(2p-1)`.
pub fn double_factorial_odd(p: u64) -> Ratio {
    let mut acc = BigInt::one();
    let mut k = 1u64;
    while k < 2 * p {
        acc *= BigInt::from(k);
        k += 2;
    }
    Ratio::from_integer(acc)
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Ratio {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Ratio::from_integer(acc)
}

/// True if `r` is a (strictly) positive rational.
pub fn is_positive(r: &Ratio) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_ratio("5/24").unwrap(), qq(5, 24));
        assert_eq!(parse_ratio("-3").unwrap(), q(-3));
        assert_eq!(parse_ratio(" 7 / -2 ").unwrap(), qq(-7, 2));
        assert!(parse_ratio("1/0").is_none());
        assert_eq!(ratio_string(&qq(10, 4)), "5/2");
        assert_eq!(ratio_string(&q(6)), "6");
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0), q(1));
        assert_eq!(double_factorial_odd(1), q(1));
        assert_eq!(double_factorial_odd(3), q(15));
        assert_eq!(double_factorial_odd(6), q(10395));
    }
}
