//! Exact rational arithmetic, the sawtooth function and Dedekind sums.
//!
//! Every scalar in the crate is a [`Rational`], an arbitrary-precision
//! fraction that is always kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("Dedekind sum argument {0} is zero")]
    ZeroArgument(&'static str),
    #[error("Dedekind sum arguments {x} and {y} are not coprime")]
    NotCoprime { x: BigInt, y: BigInt },
    #[error("invalid rational {0:?}")]
    Parse(String),
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`, reduced.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `a/b`, or `a` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `a/b` or `a`. Whitespace around the tokens is ignored and only the
/// numerator may carry a sign.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s.trim(), None),
    };
    let num = parse_integer(num).ok_or_else(err)?;
    let den = match den {
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            parse_integer(d).ok_or_else(err)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Mathematical floor, rounding toward negative infinity.
pub fn floor(z: &Rational) -> BigInt {
    z.numer().div_floor(z.denom())
}

/// The sawtooth `((z))`: zero on integers and `z - floor(z) - 1/2` otherwise.
pub fn sawtooth(z: &Rational) -> Rational {
    if z.is_integer() {
        return Rational::zero();
    }
    z - Rational::from_integer(floor(z)) - frac(1, 2)
}

fn check_args(x: &BigInt, y: &BigInt) -> Result<(), ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroArgument("x"));
    }
    if y.is_zero() {
        return Err(ArithError::ZeroArgument("y"));
    }
    if !x.gcd(y).is_one() {
        return Err(ArithError::NotCoprime { x: x.clone(), y: y.clone() });
    }
    Ok(())
}

fn signed_sawtooth_sum(x: &BigInt, y: &BigInt, terms: &BigInt) -> Rational {
    let mut sum = Rational::zero();
    let mut j = BigInt::one();
    while &j <= terms {
        let a = sawtooth(&Rational::new(j.clone(), y.clone()));
        if !a.is_zero() {
            sum += a * sawtooth(&Rational::new(&j * x, y.clone()));
        }
        j += 1;
    }
    if y.is_negative() {
        -sum
    } else {
        sum
    }
}

/// `sign(y) * sum_{j=1}^{|x|} ((j/y)) ((jx/y))`, with the summation bound
/// running over the first argument.
///
/// This is not the classical Dedekind sum; see [`dedekind_standard`] for the
/// value that enters the surgery formulas.
pub fn dedekind_paper(x: &BigInt, y: &BigInt) -> Result<Rational, ArithError> {
    check_args(x, y)?;
    Ok(signed_sawtooth_sum(x, y, &x.abs()))
}

/// The classical Dedekind sum `sign(y) * sum_{j=1}^{|y|} ((j/y)) ((jx/y))`.
pub fn dedekind_standard(x: &BigInt, y: &BigInt) -> Result<Rational, ArithError> {
    check_args(x, y)?;
    Ok(signed_sawtooth_sum(x, y, &y.abs()))
}

/// Convenience wrapper over [`dedekind_standard`] for machine integers.
pub fn dedekind(x: i64, y: i64) -> Result<Rational, ArithError> {
    dedekind_standard(&BigInt::from(x), &BigInt::from(y))
}
