//! Alexander polynomial of the lifted knot in a k-fold branched cyclic cover.
//!
//! For a knot with Alexander polynomial `D(t)`, the lift in the k-fold
//! branched cover has `D_k(t^k) = prod_{j<k} D(z^j t)` up to units, where `z`
//! is a primitive k-th root of unity. The product is carried out exactly in
//! `Z[x]/(x^k - 1)` and projected onto `Q(z)` by reducing modulo the k-th
//! cyclotomic polynomial; the projection is Galois invariant, so every
//! coefficient lands in the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{PolyError, SymPoly};
use crate::intpoly::{cyclotomic, IntPoly};
use crate::rational::Rational;

/// The normalized Alexander polynomial of the lifted knot, in the variable
/// `u = t^k`.
pub fn cyclotomic_lift(poly: &SymPoly, k: u32) -> Result<SymPoly, PolyError> {
    if k == 0 {
        return Err(PolyError::InvalidOrder(k));
    }
    if !poly.is_normalized() {
        return Err(PolyError::NotNormalized);
    }
    if k == 1 {
        return Ok(poly.clone());
    }
    let base = poly.integer_representative()?;
    let product = rotated_product(&base, k as usize);
    SymPoly::from_intpoly(&product).normalize()
}

/// `prod_{j<k} p(z^j s)` rewritten as a polynomial in `s^k`.
fn rotated_product(p: &IntPoly, k: usize) -> IntPoly {
    // acc[m][r] is the coefficient of s^m x^r, with x^k = 1
    let mut acc: Vec<Vec<BigInt>> = vec![unit_vector(k)];
    for j in 0..k {
        let mut next = vec![vec![BigInt::zero(); k]; acc.len() + p.coeffs().len() - 1];
        for (m, row) in acc.iter().enumerate() {
            for (i, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let rot = (i * j) % k;
                let target = &mut next[m + i];
                for (r, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        target[(r + rot) % k] += a * c;
                    }
                }
            }
        }
        acc = next;
    }

    let phi = cyclotomic(k);
    let mut out = Vec::with_capacity(acc.len() / k + 1);
    for (m, row) in acc.into_iter().enumerate() {
        let (_, rem) = IntPoly::new(row)
            .div_rem(&phi)
            .expect("cyclotomic polynomials are monic");
        let c = rem.coeff(0);
        assert!(
            rem.degree().unwrap_or(0) == 0 && (m % k == 0 || c.is_zero()),
            "rotated product is not invariant under the cyclic group"
        );
        if m % k == 0 {
            out.push(c);
        }
    }
    IntPoly::new(out)
}

fn unit_vector(k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); k];
    v[0] = BigInt::one();
    v
}

/// Raises every coefficient of a normalized whole-power polynomial
/// `c_0 + sum c_i (t^i + t^-i)` to the k-th power, giving
/// `c_0^k + sum c_i^k (u^i + u^-i)`.
///
/// This drops the cross terms of the k-fold product, so it generally does
/// not agree with [`cyclotomic_lift`] (for the trefoil at `k = 3` it gives
/// `u - 1 + u^-1` against `(u + 2 + u^-1)/4`). It is kept for comparison
/// only, and the result is left unnormalized.
pub fn termwise_power_lift(poly: &SymPoly, k: u32) -> Result<SymPoly, PolyError> {
    if k.is_even() {
        return Err(PolyError::EvenOrder(k));
    }
    if !poly.is_normalized() {
        return Err(PolyError::NotNormalized);
    }
    if poly.has_half_powers() {
        return Err(PolyError::HalfIntegerExponents);
    }
    Ok(SymPoly::from_half_steps(poly.terms().map(|(e, c)| {
        (e, num_traits::pow::<Rational>(c.clone(), k as usize))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn trefoil() -> SymPoly {
        SymPoly::from_int_coeffs(&[1, -1, 1], -1)
    }

    fn figure_eight() -> SymPoly {
        SymPoly::from_int_coeffs(&[-1, 3, -1], -1)
    }

    #[test]
    fn identity_for_k_one() {
        assert_eq!(cyclotomic_lift(&trefoil(), 1).unwrap(), trefoil());
    }

    #[test]
    fn trefoil_lifts() {
        let third = frac(1, 3);
        let k2 = SymPoly::from_whole_powers([(-1, third.clone()), (0, third.clone()), (1, third)]);
        assert_eq!(cyclotomic_lift(&trefoil(), 2).unwrap(), k2);
        let k3 = SymPoly::from_whole_powers([(-1, frac(1, 4)), (0, frac(1, 2)), (1, frac(1, 4))]);
        assert_eq!(cyclotomic_lift(&trefoil(), 3).unwrap(), k3);
    }

    #[test]
    fn trefoil_six_fold_cover_is_not_a_rational_homology_sphere() {
        // the roots of t^2 - t + 1 are sixth roots of unity
        assert_eq!(cyclotomic_lift(&trefoil(), 6), Err(PolyError::VanishesAtOne));
    }

    #[test]
    fn figure_eight_double_cover() {
        // D(t) D(-t) = (t^2 - 3t + 1)(t^2 + 3t + 1) / t^2 = (u^2 - 7u + 1) / u
        let expected = SymPoly::from_int_coeffs(&[-1, 7, -1], -1).scale(&frac(1, 5));
        assert_eq!(cyclotomic_lift(&figure_eight(), 2).unwrap(), expected);
    }

    #[test]
    fn half_power_input() {
        // (t^{1/2} + t^{-1/2})/2 lifts through 1 + s with s = t^2: root -1 squared is 1
        let p = SymPoly::from_half_steps([(-1, frac(1, 2)), (1, frac(1, 2))]);
        assert_eq!(cyclotomic_lift(&p, 2), Err(PolyError::VanishesAtOne));
        let lifted = cyclotomic_lift(&p, 3).unwrap();
        assert_eq!(lifted, p);
    }

    #[test]
    fn lift_preconditions() {
        assert_eq!(cyclotomic_lift(&trefoil(), 0), Err(PolyError::InvalidOrder(0)));
        assert_eq!(
            cyclotomic_lift(&trefoil().scale(&int(2)), 2),
            Err(PolyError::NotNormalized)
        );
    }

    #[test]
    fn termwise_power_examples() {
        assert_eq!(
            termwise_power_lift(&trefoil(), 3).unwrap(),
            SymPoly::from_int_coeffs(&[1, -1, 1], -1)
        );
        assert_eq!(termwise_power_lift(&SymPoly::one(), 5).unwrap(), SymPoly::one());
        assert_eq!(
            termwise_power_lift(&figure_eight(), 3).unwrap(),
            SymPoly::from_int_coeffs(&[-1, 27, -1], -1)
        );
    }

    #[test]
    fn termwise_power_preconditions() {
        assert_eq!(termwise_power_lift(&trefoil(), 2), Err(PolyError::EvenOrder(2)));
        let half = SymPoly::from_half_steps([(-1, frac(1, 2)), (1, frac(1, 2))]);
        assert_eq!(termwise_power_lift(&half, 3), Err(PolyError::HalfIntegerExponents));
    }

    #[test]
    fn termwise_power_diverges_from_product() {
        let product = cyclotomic_lift(&trefoil(), 3).unwrap();
        let termwise = termwise_power_lift(&trefoil(), 3).unwrap();
        assert!(!product.unit_equivalent(&termwise));
    }
}
