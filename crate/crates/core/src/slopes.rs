//! Surgery slopes on a knot, their covering correspondence, and the
//! distance bounds between finite and cyclic surgery slopes.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Undefined,
    #[error("invalid slope '{0}'")]
    Parse(String),
    #[error("cover order must be at least 1")]
    ZeroOrder,
    #[error("cover order {k} does not divide the numerator {numerator}")]
    NotDivisible { k: u64, numerator: i64 },
    #[error("divisor families need a positive numerator, got {0}")]
    NonPositiveNumerator(i64),
    #[error("cover order k must be greater than 1, got {0}")]
    InvalidCoverOrder(u64),
    #[error("claim {slope} has cover order {found}, expected {expected}")]
    MixedCoverOrders { slope: Slope, expected: u64, found: u64 },
    #[error("unknown hypothesis flag '{0}'")]
    UnknownFlag(String),
    #[error("unknown claim kind '{0}'")]
    UnknownKind(String),
}

/// An unoriented slope `p/q` in lowest terms with `q >= 0`; `1/0` is the meridian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self, SlopeError> {
        if p == 0 && q == 0 {
            return Err(SlopeError::Undefined);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn meridian() -> Self {
        Slope { p: 1, q: 0 }
    }

    pub fn numerator(&self) -> i64 {
        self.p
    }

    pub fn denominator(&self) -> i64 {
        self.q
    }

    pub fn is_meridian(&self) -> bool {
        self.q == 0
    }

    /// The slope as a rational number, or `None` for the meridian.
    pub fn to_rational(&self) -> Option<Rational> {
        (self.q != 0).then(|| Rational::new(self.p.into(), self.q.into()))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, SlopeError> {
        let bad = || SlopeError::Parse(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

/// `|p_a q_b - q_a p_b|` for slopes given as possibly unreduced pairs.
pub fn cross_distance(a: (i64, i64), b: (i64, i64)) -> u128 {
    let d = i128::from(a.0) * i128::from(b.1) - i128::from(a.1) * i128::from(b.0);
    d.unsigned_abs()
}

/// Geometric intersection number of two slopes.
pub fn distance(a: &Slope, b: &Slope) -> u128 {
    cross_distance((a.p, a.q), (b.p, b.q))
}

/// A slope on the lifted knot obtained from a slope `kp/q` on the base knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverSlope {
    pub slope: Slope,
    /// Set when the numerator is `+-1`: a cyclic filling of the lift then
    /// says nothing about the base.
    pub one_directional: bool,
}

/// `kp/q` on the base knot to `p/q` on its lift to the k-fold branched cover.
pub fn cover_slope(base: &Slope, k: u64) -> Result<CoverSlope, SlopeError> {
    if k == 0 {
        return Err(SlopeError::ZeroOrder);
    }
    let numerator = base.p;
    let k_signed = i64::try_from(k).map_err(|_| SlopeError::NotDivisible { k, numerator })?;
    if numerator % k_signed != 0 {
        return Err(SlopeError::NotDivisible { k, numerator });
    }
    let slope = Slope::new(numerator / k_signed, base.q)?;
    Ok(CoverSlope { slope, one_directional: slope.p.abs() == 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyEntry {
    pub cover_order: u64,
    pub slope: Slope,
    /// Cover order 1, i.e. the base surgery itself.
    pub trivial: bool,
}

/// For `p/q` with `p > 0`, every `(p/r, r/q)` with `r` a positive divisor of
/// `p`, ordered by decreasing cover order.
pub fn divisor_family(base: &Slope) -> Result<Vec<FamilyEntry>, SlopeError> {
    if base.p <= 0 {
        return Err(SlopeError::NonPositiveNumerator(base.p));
    }
    let p = base.p.unsigned_abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut r = 1u64;
    while r * r <= p {
        if p % r == 0 {
            small.push(r);
            if r * r != p {
                large.push(p / r);
            }
        }
        r += 1;
    }
    small.extend(large.into_iter().rev());
    small
        .into_iter()
        .map(|r| {
            let cover_order = p / r;
            Ok(FamilyEntry {
                cover_order,
                slope: Slope::new(r as i64, base.q)?,
                trivial: cover_order == 1,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlopeKind {
    Finite,
    Cyclic,
}

impl SlopeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SlopeKind::Finite => "finite",
            SlopeKind::Cyclic => "cyclic",
        }
    }
}

impl FromStr for SlopeKind {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, SlopeError> {
        match s.trim() {
            "finite" => Ok(SlopeKind::Finite),
            "cyclic" => Ok(SlopeKind::Cyclic),
            other => Err(SlopeError::UnknownKind(other.to_string())),
        }
    }
}

/// An asserted finite or cyclic filling of the lift to the k-fold cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeClaim {
    pub slope: Slope,
    pub kind: SlopeKind,
    pub cover_order: u64,
}

impl SlopeClaim {
    /// Cyclic fillings other than `0/1` have finite fundamental group.
    fn is_finite(&self) -> bool {
        match self.kind {
            SlopeKind::Finite => true,
            SlopeKind::Cyclic => self.slope.p != 0,
        }
    }

    fn is_nontrivial_cyclic(&self) -> bool {
        self.kind == SlopeKind::Cyclic && self.slope.p.abs() != 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    Irreducible,
    NotSeifertFibered,
    NotCableOnTwistedIBundle,
    Hyperbolic,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 4] = [
        Hypothesis::Irreducible,
        Hypothesis::NotSeifertFibered,
        Hypothesis::NotCableOnTwistedIBundle,
        Hypothesis::Hyperbolic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Hypothesis::Irreducible => "irreducible",
            Hypothesis::NotSeifertFibered => "not_seifert_fibered",
            Hypothesis::NotCableOnTwistedIBundle => "not_cable_on_twisted_I_bundle",
            Hypothesis::Hyperbolic => "hyperbolic",
        }
    }
}

impl FromStr for Hypothesis {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, SlopeError> {
        let s = s.trim();
        Hypothesis::ALL
            .into_iter()
            .find(|h| h.as_str() == s)
            .ok_or_else(|| SlopeError::UnknownFlag(s.to_string()))
    }
}

/// User-asserted geometric properties of the complement of the lift.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Hypotheses {
    pub irreducible: bool,
    pub not_seifert_fibered: bool,
    pub not_cable_on_twisted_i_bundle: bool,
    pub hyperbolic: bool,
}

impl Hypotheses {
    pub fn hyperbolic() -> Self {
        Hypotheses { hyperbolic: true, ..Default::default() }
    }

    /// Parses a comma-separated flag list; the empty string gives no flags.
    pub fn from_csv(csv: &str) -> Result<Self, SlopeError> {
        let mut h = Hypotheses::default();
        for item in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            h.set(item.parse()?);
        }
        Ok(h)
    }

    pub fn set(&mut self, flag: Hypothesis) {
        match flag {
            Hypothesis::Irreducible => self.irreducible = true,
            Hypothesis::NotSeifertFibered => self.not_seifert_fibered = true,
            Hypothesis::NotCableOnTwistedIBundle => self.not_cable_on_twisted_i_bundle = true,
            Hypothesis::Hyperbolic => self.hyperbolic = true,
        }
    }

    /// A hyperbolic complement is irreducible, not Seifert fibered and not a
    /// cable space.
    pub fn holds(&self, flag: Hypothesis) -> bool {
        self.hyperbolic
            || match flag {
                Hypothesis::Irreducible => self.irreducible,
                Hypothesis::NotSeifertFibered => self.not_seifert_fibered,
                Hypothesis::NotCableOnTwistedIBundle => self.not_cable_on_twisted_i_bundle,
                Hypothesis::Hyperbolic => false,
            }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    /// At most one cyclic slope with numerator other than `+-1`.
    SingleCyclic,
    /// Finite slopes at distance at most `5/k`.
    FiniteFinite,
    /// Cyclic slopes with numerator other than `+-1` and finite slopes at distance at most `2/k`.
    HyperbolicCyclicFinite,
    /// Finite slopes at distance at most `3/k`.
    HyperbolicFiniteFinite,
}

impl Bound {
    pub const ALL: [Bound; 4] = [
        Bound::SingleCyclic,
        Bound::FiniteFinite,
        Bound::HyperbolicCyclicFinite,
        Bound::HyperbolicFiniteFinite,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Bound::SingleCyclic => "at_most_one_cyclic",
            Bound::FiniteFinite => "finite_finite_5/k",
            Bound::HyperbolicCyclicFinite => "cyclic_finite_2/k",
            Bound::HyperbolicFiniteFinite => "finite_finite_3/k",
        }
    }

    pub fn hypotheses(&self) -> &'static [Hypothesis] {
        match self {
            Bound::SingleCyclic => &[Hypothesis::Irreducible, Hypothesis::NotSeifertFibered],
            Bound::FiniteFinite => &[
                Hypothesis::Irreducible,
                Hypothesis::NotSeifertFibered,
                Hypothesis::NotCableOnTwistedIBundle,
            ],
            Bound::HyperbolicCyclicFinite | Bound::HyperbolicFiniteFinite => &[Hypothesis::Hyperbolic],
        }
    }

    /// The distance bound `c/k`, or `None` for the counting bound.
    pub fn limit(&self, k: u64) -> Option<Rational> {
        let c = match self {
            Bound::SingleCyclic => return None,
            Bound::FiniteFinite => 5,
            Bound::HyperbolicCyclicFinite => 2,
            Bound::HyperbolicFiniteFinite => 3,
        };
        Some(Rational::new(c.into(), k.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub bound: Bound,
    pub slopes: Vec<Slope>,
    /// Present for distance bounds.
    pub distance: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub k: u64,
    /// Bounds whose hypotheses were all asserted.
    pub applied: Vec<Bound>,
    /// Bounds skipped for lack of hypotheses.
    pub skipped: Vec<Bound>,
    pub violations: Vec<Violation>,
}

impl BoundsReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks claimed finite and cyclic slopes of the lift to the k-fold cover
/// against the distance bounds that the asserted hypotheses make available.
/// Comparisons are exact and every bound is inclusive.
pub fn check_exceptional_bounds(
    claims: &[SlopeClaim],
    k: u64,
    flags: &Hypotheses,
) -> Result<BoundsReport, SlopeError> {
    if k <= 1 {
        return Err(SlopeError::InvalidCoverOrder(k));
    }
    if let Some(c) = claims.iter().find(|c| c.cover_order != k) {
        return Err(SlopeError::MixedCoverOrders {
            slope: c.slope,
            expected: k,
            found: c.cover_order,
        });
    }

    let mut report = BoundsReport { k, applied: Vec::new(), skipped: Vec::new(), violations: Vec::new() };
    for bound in Bound::ALL {
        if bound.hypotheses().iter().all(|&h| flags.holds(h)) {
            report.applied.push(bound);
        } else {
            report.skipped.push(bound);
        }
    }

    let mut distinct: Vec<SlopeClaim> = Vec::new();
    for c in claims {
        if let Some(existing) = distinct.iter_mut().find(|d| d.slope == c.slope) {
            if c.kind == SlopeKind::Cyclic {
                existing.kind = SlopeKind::Cyclic;
            }
        } else {
            distinct.push(*c);
        }
    }

    for &bound in &report.applied {
        if bound == Bound::SingleCyclic {
            let cyclic: Vec<Slope> = distinct
                .iter()
                .filter(|c| c.is_nontrivial_cyclic())
                .map(|c| c.slope)
                .collect();
            if cyclic.len() > 1 {
                report.violations.push(Violation { bound, slopes: cyclic, distance: None });
            }
            continue;
        }
        let limit = bound.limit(k).expect("distance bound");
        for (i, a) in distinct.iter().enumerate() {
            for b in &distinct[i + 1..] {
                let relevant = match bound {
                    Bound::HyperbolicCyclicFinite => {
                        (a.is_nontrivial_cyclic() && b.is_finite())
                            || (b.is_nontrivial_cyclic() && a.is_finite())
                    }
                    _ => a.is_finite() && b.is_finite(),
                };
                if !relevant {
                    continue;
                }
                let d = distance(&a.slope, &b.slope);
                if Rational::from_integer(d.into()) > limit {
                    report.violations.push(Violation {
                        bound,
                        slopes: vec![a.slope, b.slope],
                        distance: Some(d),
                    });
                }
            }
        }
    }
    Ok(report)
}
