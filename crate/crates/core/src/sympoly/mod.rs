//! Laurent polynomials over the rationals on a half-integer exponent grid.
//!
//! Exponents are stored as counts of half-steps: the key `e` stands for
//! `t^(e/2)`. Alexander polynomials in the symmetric convention (symmetric in
//! `t^{1/2}` and `t^{-1/2}`, value one at `t = 1`) are therefore mirror
//! images around the zero key.

mod lift;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;
use crate::rational::Rational;

pub use lift::{cyclotomic_lift, termwise_power_lift};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no normal form")]
    Zero,
    #[error("polynomial vanishes at t = 1 after centering (the branched cover is not a rational homology sphere)")]
    VanishesAtOne,
    #[error("coefficients are not symmetric about the center of the exponent range")]
    Asymmetric,
    #[error("polynomial is not normalized (symmetric with value 1 at t = 1)")]
    NotNormalized,
    #[error("cannot evaluate at zero")]
    EvaluateAtZero,
    #[error("half-integer powers cannot be evaluated at {0}, which is not the square of a rational")]
    NonSquarePoint(Rational),
    #[error("exponents mix whole and half-integer offsets, so no unit multiple is a Laurent polynomial in t")]
    MixedParity,
    #[error("half-integer exponents are not allowed here")]
    HalfIntegerExponents,
    #[error("cover order must be at least 1, got {0}")]
    InvalidOrder(u32),
    #[error("termwise power formula needs an odd cover order, got {0}")]
    EvenOrder(u32),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymPoly {
    terms: BTreeMap<i64, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^(half_steps/2)`
    pub fn monomial(c: Rational, half_steps: i64) -> Self {
        Self::from_half_steps([(half_steps, c)])
    }

    /// Builds from `(half_steps, coefficient)` pairs; repeated exponents add.
    pub fn from_half_steps(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = SymPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Builds from `(whole_power, coefficient)` pairs.
    pub fn from_whole_powers(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        Self::from_half_steps(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    /// `sum_i coeffs[i] * t^(lowest + i)` with integer coefficients.
    pub fn from_int_coeffs(coeffs: &[i64], lowest: i64) -> Self {
        Self::from_whole_powers(
            coeffs
                .iter()
                .zip(lowest..)
                .map(|(&c, e)| (e, Rational::from_integer(c.into()))),
        )
    }

    pub(crate) fn from_intpoly(p: &IntPoly) -> Self {
        Self::from_whole_powers(
            p.coeffs()
                .iter()
                .zip(0i64..)
                .map(|(c, e)| (e, Rational::from_integer(c.clone()))),
        )
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, half_steps: i64) -> Rational {
        self.terms.get(&half_steps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order, keyed by half-steps.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_half_powers(&self) -> bool {
        self.terms.keys().any(|e| e.is_odd())
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Sum of the coefficients.
    pub fn value_at_one(&self) -> Rational {
        self.terms.values().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.is_symmetric() && self.value_at_one().is_one()
    }

    /// Multiplies by `t^(half_steps/2)`.
    pub fn shift(&self, half_steps: i64) -> Self {
        SymPoly {
            terms: self.terms.iter().map(|(e, c)| (e + half_steps, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Exact value at a nonzero rational point. Half-integer powers need the
    /// point to be the square of a positive rational.
    pub fn evaluate(&self, point: &Rational) -> Result<Rational, PolyError> {
        if point.is_zero() {
            return Err(PolyError::EvaluateAtZero);
        }
        let base = if self.has_half_powers() {
            rational_sqrt(point).ok_or_else(|| PolyError::NonSquarePoint(point.clone()))?
        } else {
            point.clone()
        };
        let step = if self.has_half_powers() { 1 } else { 2 };
        Ok(self
            .terms
            .iter()
            .map(|(&e, c)| c * pow_i64(&base, e / step))
            .sum())
    }

    /// The unique representative of this polynomial's unit class
    /// (multiples by `c * t^(j/2)`) that is symmetric and has value one at
    /// `t = 1`.
    pub fn normalize(&self) -> Result<SymPoly, PolyError> {
        let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(PolyError::Zero),
        };
        let value = self.value_at_one();
        if value.is_zero() {
            return Err(PolyError::VanishesAtOne);
        }
        if (lo + hi).is_odd() {
            return Err(PolyError::Asymmetric);
        }
        let centered = self.shift(-(lo + hi) / 2);
        if !centered.is_symmetric() {
            return Err(PolyError::Asymmetric);
        }
        Ok(centered.scale(&value.recip()))
    }

    /// `d^2/dt^2` at `t = 1` of a normalized polynomial.
    pub fn second_derivative_at_one(&self) -> Result<Rational, PolyError> {
        if !self.is_normalized() {
            return Err(PolyError::NotNormalized);
        }
        let quarter = Rational::new(BigInt::one(), BigInt::from(4));
        Ok(self
            .terms
            .iter()
            .map(|(&e, c)| c * Rational::from_integer(BigInt::from(e) * (e - 2)) * &quarter)
            .sum())
    }

    /// Whether `self = c * t^(j/2) * other` for some nonzero rational `c` and
    /// integer `j`.
    pub fn unit_equivalent(&self, other: &SymPoly) -> bool {
        let (Some(a_lo), Some(b_lo)) = (self.min_exponent(), other.min_exponent()) else {
            return self.is_zero() && other.is_zero();
        };
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let ratio = &self.terms[&a_lo] / &other.terms[&b_lo];
        other.shift(a_lo - b_lo).scale(&ratio) == *self
    }

    /// Clears denominators and shifts to an ordinary polynomial with nonzero
    /// constant term. Fails when the exponents do not all share a parity.
    pub(crate) fn integer_representative(&self) -> Result<IntPoly, PolyError> {
        let lo = self.min_exponent().ok_or(PolyError::Zero)?;
        if self.terms.keys().any(|e| (e - lo).is_odd()) {
            return Err(PolyError::MixedParity);
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let width = ((self.max_exponent().unwrap() - lo) / 2) as usize + 1;
        let mut coeffs = vec![BigInt::zero(); width];
        for (e, c) in &self.terms {
            coeffs[((e - lo) / 2) as usize] = (c * Rational::from_integer(lcm.clone())).to_integer();
        }
        Ok(IntPoly::new(coeffs))
    }
}

fn pow_i64(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self + &(-rhs)
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: SymPoly) -> SymPoly {
        &self + &rhs
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        &self - &rhs
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        &self * &rhs
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        -&self
    }
}
