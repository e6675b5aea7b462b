//! Exact decimal text for rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parse `d+` or `d+.d+` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !digits_ok(int) || !digits_ok(frac) || (s.contains('.') && frac.is_empty())
    {
        return None;
    }
    let numer: BigInt = format!("{int}{frac}").parse().ok()?;
    let denom = BigInt::from(10u8).pow(frac.len() as u32);
    Some(BigRational::new(numer, denom))
}

/// The terminating decimal expansion of `q`, or `None` when the reduced
/// denominator has a prime factor other than 2 and 5.
pub fn exact_decimal(q: &BigRational) -> Option<String> {
    let mut d: BigUint = q.denom().abs().to_biguint()?;
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigUint::from(2u8);
    let five = BigUint::from(5u8);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = q * BigRational::from_integer(BigInt::from(10u8).pow(places));
    debug_assert!(scaled.is_integer());
    Some(with_point(&scaled.to_integer(), places as usize))
}

fn with_point(n: &BigInt, places: usize) -> String {
    let neg = n.is_negative();
    let mut digits = n.abs().to_string();
    if places > 0 {
        if digits.len() <= places {
            digits = "0".repeat(places + 1 - digits.len()) + &digits;
        }
        digits.insert(digits.len() - places, '.');
    }
    if neg {
        format!("-{digits}")
    } else {
        digits
    }
}

/// Exact decimal when terminating, otherwise rounded to `sig` significant digits.
pub fn render_decimal(q: &BigRational, sig: usize) -> String {
    exact_decimal(q).unwrap_or_else(|| round_significant(q, sig))
}

/// Round half away from zero to `sig` significant digits, trailing zeros trimmed.
pub fn round_significant(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let ten = BigRational::from_integer(BigInt::from(10u8));
    let a = q.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let places = sig as i64 - 1 - e;
    let factor =
        |k: i64| BigRational::from_integer(BigInt::from(10u8).pow(k.unsigned_abs() as u32));
    let shifted = if places >= 0 {
        &a * factor(places)
    } else {
        &a / factor(places)
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2u8));
    let mut n = (shifted + half).floor().to_integer();
    if q.is_negative() {
        n = -n;
    }
    let s = if places >= 0 {
        with_point(&n, places as usize)
    } else {
        (n * BigInt::from(10u8).pow((-places) as u32)).to_string()
    };
    trim_zeros(s)
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse() {
        assert_eq!(parse_decimal("0.2"), Some(r(1, 5)));
        assert_eq!(parse_decimal("1"), Some(r(1, 1)));
        assert_eq!(parse_decimal("0.0694"), Some(r(694, 10000)));
        assert_eq!(parse_decimal("1."), None);
        assert_eq!(parse_decimal(".5"), None);
        assert_eq!(parse_decimal("a"), None);
    }

    #[test]
    fn exact() {
        assert_eq!(exact_decimal(&r(13, 64)).as_deref(), Some("0.203125"));
        assert_eq!(exact_decimal(&r(0, 1)).as_deref(), Some("0"));
        assert_eq!(exact_decimal(&r(1, 1)).as_deref(), Some("1"));
        assert_eq!(exact_decimal(&r(-3, 40)).as_deref(), Some("-0.075"));
        assert_eq!(exact_decimal(&r(1, 3)), None);
    }

    #[test]
    fn significant() {
        assert_eq!(round_significant(&r(1, 3), 10), "0.3333333333");
        assert_eq!(round_significant(&r(2, 3), 4), "0.6667");
        assert_eq!(round_significant(&r(200, 3), 2), "67");
        assert_eq!(round_significant(&r(20000, 3), 2), "6700");
        assert_eq!(render_decimal(&r(1, 8), 3), "0.125");
    }
}
