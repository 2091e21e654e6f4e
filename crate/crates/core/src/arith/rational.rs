use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseRationalError;

/// Formats as `num/den`, omitting `/1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num` or `num/den` (optional leading sign on the numerator).
/// The result is reduced.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num = parse_int(num)?;
    let den = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(ParseRationalError::SignedDenominator);
            }
            parse_int(d)?
        }
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

fn parse_int(s: &str) -> Result<BigInt, ParseRationalError> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidInteger(s.to_string()));
    }
    s.parse().map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))
}

/// The exact rational `r` with `r^n == x`, if it exists.
///
/// Returns `None` when `x` has no rational `n`-th root (or when `x <= 0`,
/// `n == 0`). Odd roots of negative numbers are accepted.
pub fn rational_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if n == 0 {
        return None;
    }
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = integer_nth_root(&x.numer().abs(), n)?;
    let den = integer_nth_root(x.denom(), n)?;
    let r = BigRational::new(num, den);
    Some(if x.is_negative() { -r } else { r })
}

fn integer_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (r.pow(n) == *x).then_some(r)
}

/// The part of a nonzero rational coprime to 2, with sign dropped.
pub fn odd_part(q: &BigRational) -> BigRational {
    let strip = |mut n: BigInt| {
        let two = BigInt::from(2);
        while !n.is_zero() && n.is_even() {
            n /= &two;
        }
        n
    };
    BigRational::new(strip(q.numer().abs()), strip(q.denom().clone()))
}

/// If `|q| == 2^k` for an integer `k` (possibly negative), returns `k`.
pub fn two_power_exponent(q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let pow2 = |n: &BigInt| -> Option<i64> {
        let n = n.abs();
        let k = n.trailing_zeros()?;
        (n == BigInt::one() << k).then_some(k as i64)
    };
    Some(pow2(q.numer())? - pow2(q.denom())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&q("1/900"), 2), Some(q("1/30")));
        assert_eq!(rational_nth_root(&q("8"), 3), Some(q("2")));
        assert_eq!(rational_nth_root(&q("2"), 2), None);
        assert_eq!(rational_nth_root(&q("-8/27"), 3), Some(q("-2/3")));
        assert_eq!(rational_nth_root(&q("-4"), 2), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(format_rational(&q("-2/4")), "-1/2");
        assert_eq!(format_rational(&q("6/3")), "2");
        assert_eq!(format_rational(&q("0/5")), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("+").is_err());
    }

    #[test]
    fn two_adic_helpers() {
        assert_eq!(odd_part(&q("-12/5")), q("3/5"));
        assert_eq!(two_power_exponent(&q("1/8")), Some(-3));
        assert_eq!(two_power_exponent(&q("-2")), Some(1));
        assert_eq!(two_power_exponent(&q("3")), None);
    }
}
