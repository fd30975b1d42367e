//! Exact rational scalars. Every computation in this crate happens over `Q`
//! with no rounding; `Rational` values are always reduced to lowest terms
//! with a positive denominator.

use num::{BigInt, BigRational};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// `n/d` as an exact rational.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert_eq!(rat(-1, 2).to_string(), "-1/2");
        assert_eq!(rint(-7).to_string(), "-7");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-22/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }
}
