//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use casson_cover::rational::Rational;
use casson_cover::sympoly::SymPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficients of a whole-power polynomial, lowest exponent first, together
/// with that exponent.
pub fn dense(poly: &SymPoly) -> (Vec<Rational>, i64) {
    let lo = poly.min_exponent().expect("nonzero polynomial");
    let hi = poly.max_exponent().unwrap();
    assert!(poly.terms().all(|(e, _)| (e - lo) % 2 == 0), "mixed parity");
    let mut out = vec![Rational::zero(); ((hi - lo) / 2 + 1) as usize];
    for (e, c) in poly.terms() {
        out[((e - lo) / 2) as usize] = c.clone();
    }
    (out, lo)
}

/// The monic polynomial whose roots are the k-th powers of the roots of
/// `poly`, via Newton's identities. Agrees with the lifted Alexander
/// polynomial up to units.
pub fn newton_lift(poly: &SymPoly, k: usize) -> SymPoly {
    let (coeffs, _) = dense(poly);
    let n = coeffs.len() - 1;
    if n == 0 {
        return SymPoly::one();
    }
    let lead = coeffs[n].clone();
    // elementary symmetric functions of the roots
    let e: Vec<Rational> = (0..=n)
        .map(|j| {
            let c = &coeffs[n - j] / &lead;
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let power_sums = power_sums_from_elementary(&e, n * k);
    let lifted_sums: Vec<Rational> = (0..=n).map(|m| power_sums[m * k].clone()).collect();
    let e_lift = elementary_from_power_sums(&lifted_sums, n);
    SymPoly::from_whole_powers((0..=n).map(|j| {
        let c = if j % 2 == 0 { e_lift[j].clone() } else { -e_lift[j].clone() };
        ((n - j) as i64, c)
    }))
}

fn power_sums_from_elementary(e: &[Rational], upto: usize) -> Vec<Rational> {
    let n = e.len() - 1;
    let mut p = vec![Rational::from_integer(BigInt::from(n))];
    for m in 1..=upto {
        let mut acc = Rational::zero();
        for j in 1..=m.min(n) {
            let term = if j == m {
                &e[j] * Rational::from_integer(BigInt::from(m))
            } else {
                &e[j] * &p[m - j]
            };
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

fn elementary_from_power_sums(p: &[Rational], n: usize) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for j in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=j {
            let term = &e[j - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(j)));
    }
    e
}

/// `D(x)` by Horner's rule for a whole-power Laurent polynomial.
pub fn horner(poly: &SymPoly, x: &Rational) -> Rational {
    let (coeffs, lo) = dense(poly);
    assert!(lo % 2 == 0, "half-integer powers");
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    let shift = num_traits::pow(x.clone(), (lo.unsigned_abs() / 2) as usize);
    if lo < 0 {
        acc / shift
    } else {
        acc * shift
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// `prod_{j<k} p(z^j t)` in floating point, for `p` given densely.
pub fn complex_product(coeffs: &[f64], k: usize, t: Complex64) -> Complex64 {
    (0..k)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / k as f64);
            let x = z * t;
            coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * x + c)
        })
        .product()
}

/// `sum c_e t^(m + k e / 2)` for a polynomial whose exponents make every
/// power an integer.
pub fn eval_scaled(poly: &SymPoly, k: i64, m2: i64, t: Complex64) -> Complex64 {
    poly.terms()
        .map(|(e, c)| {
            let twice = m2 + k * e;
            assert!(twice % 2 == 0, "fractional power");
            t.powi((twice / 2) as i32) * to_f64(c)
        })
        .sum()
}

/// Dedekind sum from the cotangent formula
/// `s(h, k) = 1/(4k) sum_{j=1}^{k-1} cot(pi j / k) cot(pi h j / k)`.
pub fn dedekind_cot(h: i64, k: i64) -> f64 {
    let k = k.abs();
    let pi = std::f64::consts::PI;
    let sum: f64 = (1..k)
        .map(|j| {
            let a = pi * j as f64 / k as f64;
            let b = pi * ((h * j).rem_euclid(k)) as f64 / k as f64;
            1.0 / a.tan() / b.tan()
        })
        .sum();
    sum / (4.0 * k as f64)
}

/// Determinant of a small matrix of integer polynomials by cofactor expansion.
pub fn laplace_det(m: &[Vec<Vec<i128>>]) -> Vec<i128> {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut total = vec![0i128];
    for (col, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Vec<i128>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let prod = poly_mul(entry, &laplace_det(&minor));
        let sign = if col % 2 == 0 { 1 } else { -1 };
        if total.len() < prod.len() {
            total.resize(prod.len(), 0);
        }
        for (i, c) in prod.into_iter().enumerate() {
            total[i] += sign * c;
        }
    }
    total
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
