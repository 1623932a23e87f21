//! Exact scalar arithmetic.
//!
//! All coefficients in this crate are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator; there is no floating point
//! anywhere. `BigRational` already enforces exactly that normal form, so the
//! crate aliases it rather than wrapping it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision integer used for group coordinates and lattice work.
pub type Int = BigInt;

/// Arbitrary-precision rational scalar, always in lowest terms, denominator > 0.
pub type Rational = BigRational;

/// Error produced when a scalar literal cannot be parsed exactly.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct RationalParseError {
    pub literal: String,
    pub reason: String,
}

fn bad(literal: &str, reason: impl Into<String>) -> RationalParseError {
    RationalParseError {
        literal: literal.to_string(),
        reason: reason.into(),
    }
}

/// Parses an exact scalar literal: an integer (`-3`), a fraction (`p/q`), or a
/// finite decimal (`1.25`). Decimals are read exactly (digits over a power of
/// ten), never through floating point.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(bad(text, "empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = Int::from_str(num.trim()).map_err(|e| bad(text, format!("numerator: {e}")))?;
        let d = Int::from_str(den.trim()).map_err(|e| bad(text, format!("denominator: {e}")))?;
        if d.is_zero() {
            return Err(bad(text, "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(text, "fractional part must be decimal digits"));
        }
        let negative = whole.trim_start().starts_with('-');
        let w = if whole == "-" || whole.is_empty() {
            Int::zero()
        } else {
            Int::from_str(whole).map_err(|e| bad(text, format!("integer part: {e}")))?
        };
        let digits =
            Int::from_str(frac).map_err(|e| bad(text, format!("fractional part: {e}")))?;
        let scale = Int::from(10u8).pow(frac.len() as u32);
        let mut value = Rational::from(w.abs()) + Rational::new(digits, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n = Int::from_str(s).map_err(|e| bad(text, e.to_string()))?;
    Ok(Rational::from(n))
}

/// Convenience constructor for small rationals in tests and fixtures.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Convenience constructor for small integers as rationals.
pub fn rint(n: i64) -> Rational {
    Rational::from(Int::from(n))
}

/// Renders a rational as `p` or `p/q`; inverse of [`parse_rational`] on its output.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
