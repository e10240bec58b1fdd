//! Exact rational numbers and their decimal text form.
//!
//! Every weight and every dissimilarity value in this crate is a
//! [`BigRational`]. Text input accepts plain decimals (`"12.25"`, `"-3"`,
//! `"1e-2"`) and fractions (`"41/5"`); output uses an exact decimal when the
//! reduced denominator has no prime factors other than 2 and 5, and `p/q`
//! otherwise.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid number {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for RationalParseError {}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses a decimal string or a `p/q` fraction exactly.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    let err = |reason| RationalParseError {
        input: text.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer = parse_decimal(p.trim()).ok_or_else(|| err("bad numerator"))?;
        let denom = parse_decimal(q.trim()).ok_or_else(|| err("bad denominator"))?;
        if denom.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(numer / denom);
    }
    parse_decimal(s).ok_or_else(|| err("not a decimal or p/q fraction"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{whole}{frac}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac.len()).ok()?;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Exact text form: a terminating decimal when one exists, else `p/q`.
pub fn format_rational(value: &Rational) -> String {
    let denom = value.denom();
    if denom.is_one() {
        return value.numer().to_string();
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut rest = denom.clone();
    let mut twos = 0usize;
    let mut fives = 0usize;
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", value.numer(), denom);
    }
    // denom = 2^a 5^b, so value = numer * 10^d / denom / 10^d with d = max(a, b).
    let places = twos.max(fives);
    let scaled = value.numer() * num_traits::pow(BigInt::from(10), places) / denom;
    let (sign, magnitude) = (scaled.sign(), scaled.abs().to_string());
    let padded = format!("{magnitude:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let minus = if sign == Sign::Minus { "-" } else { "" };
    format!("{minus}{int_part}.{frac_part}")
}
