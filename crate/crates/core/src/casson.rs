//! Casson-Walker invariants of a base space and its k-fold cyclic cover.
//!
//! A pairwise surgery description `(K, L, k, p, q, I)` builds the base `X`
//! by `kp/q` surgery on a knot `K` in `S^3` followed by `I`-surgery on a link
//! `L`, and the cover by `p/q` surgery on the lift of `K` to the k-fold
//! branched cover followed by `I`-surgery on the `k` lifts of `L`. The link
//! contributes the same amount to every lift, so only `lambda(X)` is needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::knotdata::KnotRecord;
use crate::rational::{dedekind_standard, ArithError, Rational};
use crate::sympoly::{cyclotomic_lift, PolyError, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CassonError {
    #[error("cover order k must be greater than 1, got {0}")]
    CoverOrder(u32),
    #[error("surgery numerator must be nonzero")]
    ZeroNumerator,
    #[error("surgery denominator q must be at least 1, got {0}")]
    Denominator(i64),
    #[error("surgery coefficients {numerator} and {denominator} are not coprime")]
    NotCoprime { numerator: i64, denominator: i64 },
    #[error("link surgery coefficient {0} is not +1 or -1")]
    LinkCoefficient(i64),
    #[error("lambda of the base space is required")]
    MissingBaseLambda,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check_surgery(a: i64, b: i64) -> Result<(), CassonError> {
    if a == 0 {
        return Err(CassonError::ZeroNumerator);
    }
    if b < 1 {
        return Err(CassonError::Denominator(b));
    }
    if a.gcd(&b) != 1 {
        return Err(CassonError::NotCoprime { numerator: a, denominator: b });
    }
    Ok(())
}

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn s(x: i64, y: i64) -> Result<Rational, CassonError> {
    Ok(dedekind_standard(&BigInt::from(x), &BigInt::from(y))?)
}

/// `lambda` of `a/b` surgery on a knot in `S^3`:
/// `(b/a) D''(1) + s(b, a)`.
pub fn lambda_surgery_s3(delta: &SymPoly, a: i64, b: i64) -> Result<Rational, CassonError> {
    check_surgery(a, b)?;
    Ok(ratio(b, a) * delta.second_derivative_at_one()? + s(b, a)?)
}

/// `lambda` of `p/q` surgery on the lifted knot inside the branched cover:
/// `lambda_branched + (q/p) D''(1) + s(q, p)`.
pub fn lambda_cover_surgery(
    delta_lift: &SymPoly,
    p: i64,
    q: i64,
    lambda_branched: &Rational,
) -> Result<Rational, CassonError> {
    check_surgery(p, q)?;
    Ok(lambda_branched + ratio(q, p) * delta_lift.second_derivative_at_one()? + s(q, p)?)
}

/// `lambda(cover) = lambda(N~) + k (lambda(X) - lambda(N))`.
pub fn lambda_replication(
    lambda_x: &Rational,
    lambda_n: &Rational,
    k: u32,
    lambda_n_tilde: &Rational,
) -> Result<Rational, CassonError> {
    if k < 2 {
        return Err(CassonError::CoverOrder(k));
    }
    Ok(lambda_n_tilde + Rational::from_integer(k.into()) * (lambda_x - lambda_n))
}

/// A pairwise Dehn surgery description together with its invariant inputs.
#[derive(Clone, Debug)]
pub struct PairDescription<'a> {
    pub knot: &'a KnotRecord,
    pub k: u32,
    pub p: i64,
    pub q: i64,
    /// Framings of the link components. They only enter through
    /// `lambda_x` and are validated but otherwise unused.
    pub link_coefficients: Vec<i64>,
    pub lambda_x: Option<Rational>,
    /// Overrides the value stored on the knot record for this `k`.
    pub lambda_branched: Option<Rational>,
}

impl<'a> PairDescription<'a> {
    pub fn new(knot: &'a KnotRecord, k: u32, p: i64, q: i64) -> Self {
        PairDescription {
            knot,
            k,
            p,
            q,
            link_coefficients: Vec::new(),
            lambda_x: None,
            lambda_branched: None,
        }
    }

    pub fn with_lambda_x(mut self, lambda: Rational) -> Self {
        self.lambda_x = Some(lambda);
        self
    }

    pub fn with_lambda_branched(mut self, lambda: Rational) -> Self {
        self.lambda_branched = Some(lambda);
        self
    }

    pub fn validate(&self) -> Result<(), CassonError> {
        if self.k < 2 {
            return Err(CassonError::CoverOrder(self.k));
        }
        let kp = i64::from(self.k)
            .checked_mul(self.p)
            .ok_or(CassonError::NotCoprime { numerator: self.p, denominator: self.q })?;
        check_surgery(kp, self.q)?;
        if let Some(&bad) = self.link_coefficients.iter().find(|c| c.abs() != 1) {
            return Err(CassonError::LinkCoefficient(bad));
        }
        Ok(())
    }

    /// Explicit override first, then the knot record.
    pub fn resolved_branched_lambda(&self) -> Option<&Rational> {
        self.lambda_branched
            .as_ref()
            .or_else(|| self.knot.branched_lambda(self.k))
    }
}

/// `lambda` of the cover, possibly still carrying the unknown invariant of
/// the branched cover of `S^3` as a symbolic summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverLambda {
    /// The rational part of the value.
    pub value: Rational,
    /// Whether `lambda` of the branched cover is still to be added.
    pub branched_unresolved: bool,
}

impl CoverLambda {
    pub fn resolved(&self) -> Option<&Rational> {
        (!self.branched_unresolved).then_some(&self.value)
    }
}

impl fmt::Display for CoverLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.branched_unresolved {
            return write!(f, "{}", self.value);
        }
        if self.value.is_zero() {
            f.write_str("lambda_branched")
        } else if self.value < Rational::zero() {
            write!(f, "lambda_branched - {}", -&self.value)
        } else {
            write!(f, "lambda_branched + {}", self.value)
        }
    }
}

/// `lambda` of the k-fold cover:
/// `k lambda(X) + (q/p)(D''_lift(1) - D''(1)) - k s(q, kp) + s(q, p) + lambda_branched`.
pub fn lambda_pair(desc: &PairDescription<'_>) -> Result<CoverLambda, CassonError> {
    desc.validate()?;
    let lambda_x = desc.lambda_x.as_ref().ok_or(CassonError::MissingBaseLambda)?;
    let k = i64::from(desc.k);
    let kp = k * desc.p;
    let lift = cyclotomic_lift(&desc.knot.alexander, desc.k)?;
    let base_curvature = desc.knot.alexander.second_derivative_at_one()?;
    let lift_curvature = lift.second_derivative_at_one()?;
    let k_rat = Rational::from_integer(k.into());

    let mut value = &k_rat * lambda_x
        + ratio(desc.q, desc.p) * (lift_curvature - base_curvature)
        - &k_rat * s(desc.q, kp)?
        + s(desc.q, desc.p)?;
    let branched = desc.resolved_branched_lambda();
    if let Some(b) = branched {
        value += b;
    }
    Ok(CoverLambda {
        value,
        branched_unresolved: branched.is_none(),
    })
}

/// Evaluates both surgery formulas for the same description and returns
/// `(lambda(N), lambda(N~))`. Handy when no link is present, in which case
/// these are `lambda(X)` and `lambda` of the cover.
pub fn knot_only_pair(
    knot: &KnotRecord,
    k: u32,
    p: i64,
    q: i64,
    lambda_branched: &Rational,
) -> Result<(Rational, Rational), CassonError> {
    PairDescription::new(knot, k, p, q).validate()?;
    let base = lambda_surgery_s3(&knot.alexander, i64::from(k) * p, q)?;
    let lift = cyclotomic_lift(&knot.alexander, k)?;
    let cover = lambda_cover_surgery(&lift, p, q, lambda_branched)?;
    Ok((base, cover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotdata::Catalog;
    use crate::rational::{dedekind, frac, int};

    fn knot(name: &str) -> &'static KnotRecord {
        Catalog::builtin().get(name).unwrap()
    }

    #[test]
    fn surgery_s3_examples() {
        let trefoil = &knot("trefoil").alexander;
        assert_eq!(lambda_surgery_s3(trefoil, 1, 1).unwrap(), int(2));
        assert_eq!(lambda_surgery_s3(trefoil, 6, 1).unwrap(), frac(11, 18));
        for (a, b) in [(5, 2), (-7, 3), (1, 4)] {
            assert_eq!(
                lambda_surgery_s3(&SymPoly::one(), a, b).unwrap(),
                dedekind(b, a).unwrap()
            );
        }
    }

    #[test]
    fn surgery_s3_errors() {
        let unknot = SymPoly::one();
        assert_eq!(lambda_surgery_s3(&unknot, 0, 1), Err(CassonError::ZeroNumerator));
        assert_eq!(
            lambda_surgery_s3(&unknot, 4, 2),
            Err(CassonError::NotCoprime { numerator: 4, denominator: 2 })
        );
        assert_eq!(lambda_surgery_s3(&unknot, 3, 0), Err(CassonError::Denominator(0)));
        let unnormalized = SymPoly::from_int_coeffs(&[2], 0);
        assert_eq!(
            lambda_surgery_s3(&unnormalized, 1, 1),
            Err(CassonError::Poly(PolyError::NotNormalized))
        );
    }

    #[test]
    fn cover_surgery_examples() {
        let trefoil = &knot("trefoil").alexander;
        let lift2 = cyclotomic_lift(trefoil, 2).unwrap();
        assert_eq!(lambda_cover_surgery(&lift2, 3, 1, &int(0)).unwrap(), frac(5, 18));
        assert_eq!(lambda_cover_surgery(&SymPoly::one(), 1, 1, &int(0)).unwrap(), int(0));
        let lift3 = cyclotomic_lift(trefoil, 3).unwrap();
        assert_eq!(lift3.second_derivative_at_one().unwrap(), frac(1, 2));
        assert_eq!(lambda_cover_surgery(&lift3, 2, 1, &int(0)).unwrap(), frac(1, 4));
    }

    #[test]
    fn replication_examples() {
        assert_eq!(lambda_replication(&int(4), &int(4), 3, &frac(2, 7)).unwrap(), frac(2, 7));
        assert_eq!(lambda_replication(&int(5), &int(3), 2, &int(1)).unwrap(), int(5));
        assert_eq!(
            lambda_replication(&frac(11, 18), &frac(11, 18), 2, &frac(5, 18)).unwrap(),
            frac(5, 18)
        );
        assert_eq!(
            lambda_replication(&int(0), &int(0), 1, &int(0)),
            Err(CassonError::CoverOrder(1))
        );
    }

    #[test]
    fn pair_trefoil() {
        let desc = PairDescription::new(knot("trefoil"), 2, 3, 1)
            .with_lambda_x(frac(11, 18))
            .with_lambda_branched(int(0));
        let v = lambda_pair(&desc).unwrap();
        assert_eq!(v.resolved(), Some(&frac(5, 18)));
        assert_eq!(v.to_string(), "5/18");
    }

    #[test]
    fn pair_unknot_reduces_to_dedekind_sum() {
        for (k, p, q) in [(2, 3, 1), (3, -2, 5), (4, 1, 3)] {
            let kp = i64::from(k) * p;
            let desc = PairDescription::new(knot("unknot"), k, p, q)
                .with_lambda_x(dedekind(q, kp).unwrap())
                .with_lambda_branched(int(0));
            assert_eq!(lambda_pair(&desc).unwrap().value, dedekind(q, p).unwrap());
        }
    }

    #[test]
    fn pair_figure_eight_matches_cover_surgery() {
        let fig8 = knot("figure_eight");
        let (base, cover) = knot_only_pair(fig8, 2, 1, 1, &int(0)).unwrap();
        let desc = PairDescription::new(fig8, 2, 1, 1)
            .with_lambda_x(base)
            .with_lambda_branched(int(0));
        assert_eq!(lambda_pair(&desc).unwrap().value, cover);
    }

    #[test]
    fn unresolved_branched_lambda_stays_symbolic() {
        let desc = PairDescription::new(knot("trefoil"), 2, 3, 1).with_lambda_x(frac(11, 18));
        let v = lambda_pair(&desc).unwrap();
        assert!(v.branched_unresolved);
        assert_eq!(v.resolved(), None);
        assert_eq!(v.to_string(), "lambda_branched + 5/18");
        let neg = CoverLambda { value: frac(-1, 3), branched_unresolved: true };
        assert_eq!(neg.to_string(), "lambda_branched - 1/3");
    }

    #[test]
    fn record_supplies_branched_lambda() {
        let mut record = knot("trefoil").clone();
        record.branched_cover_lambda.insert(2, frac(1, 7));
        let desc = PairDescription::new(&record, 2, 3, 1).with_lambda_x(frac(11, 18));
        assert_eq!(lambda_pair(&desc).unwrap().resolved(), Some(&(frac(5, 18) + frac(1, 7))));
        let overridden = desc.clone().with_lambda_branched(int(0));
        assert_eq!(lambda_pair(&overridden).unwrap().resolved(), Some(&frac(5, 18)));
    }

    #[test]
    fn description_validation() {
        let t = knot("trefoil");
        let base = |k, p, q| PairDescription::new(t, k, p, q).with_lambda_x(int(0));
        assert_eq!(lambda_pair(&base(1, 3, 1)), Err(CassonError::CoverOrder(1)));
        assert_eq!(lambda_pair(&base(2, 0, 1)), Err(CassonError::ZeroNumerator));
        assert_eq!(lambda_pair(&base(2, 3, 0)), Err(CassonError::Denominator(0)));
        assert_eq!(
            lambda_pair(&base(2, 3, 2)),
            Err(CassonError::NotCoprime { numerator: 6, denominator: 2 })
        );
        let mut d = base(2, 3, 1);
        d.link_coefficients = vec![1, -1, 2];
        assert_eq!(lambda_pair(&d), Err(CassonError::LinkCoefficient(2)));
        d.link_coefficients = vec![1, -1];
        assert!(lambda_pair(&d).is_ok());
        assert_eq!(
            lambda_pair(&PairDescription::new(t, 2, 3, 1)),
            Err(CassonError::MissingBaseLambda)
        );
        // the 6-fold branched cover of the trefoil is not a rational homology sphere
        assert_eq!(
            lambda_pair(&base(6, 1, 1)),
            Err(CassonError::Poly(PolyError::VanishesAtOne))
        );
    }

    #[test]
    fn affine_in_inputs() {
        let t = knot("pretzel_-2_3_7");
        let at = |lx: Rational, lb: Rational| {
            let desc = PairDescription::new(t, 3, -2, 5).with_lambda_x(lx).with_lambda_branched(lb);
            lambda_pair(&desc).unwrap().value
        };
        let origin = at(int(0), int(0));
        assert_eq!(at(int(1), int(0)) - &origin, int(3));
        assert_eq!(at(frac(2, 5), int(0)) - &origin, frac(6, 5));
        assert_eq!(at(int(0), frac(-7, 4)) - &origin, frac(-7, 4));
    }
}
