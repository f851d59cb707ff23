//! ν-invariants, F-pure threshold bracketing, sharp F-purity of principal
//! pairs, principal test ideals and F-jumping-number detection.
//!
//! All fractions are exact arbitrary-precision rationals; no floating point
//! enters any decision path.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::frobenius::pe_root;
use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{PolyError, Polynomial};
use crate::purity::BracketMembership;

#[derive(Debug, Error)]
pub enum ThresholdError {
    #[error("the polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("the polynomial does not lie in the locality ideal")]
    NotInLocality,
    #[error("the locality ideal must be proper")]
    UnitLocality,
    #[error("the exponent must be nonnegative")]
    NegativeExponent,
    #[error("malformed rational `{0}` (expected `num` or `num/den`)")]
    BadRational(String),
    #[error("exponent {0} overflows the supported range")]
    ExponentTooLarge(BigRational),
    #[error(
        "test-ideal chain did not stabilize within budget; last members <{0}> and <{1}>"
    )]
    ChainBudgetExhausted(Box<Ideal>, Box<Ideal>),
    #[error("power iteration failed to terminate within the theoretical bound")]
    PowerIterationDiverged,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An exact rational in canonical reduced form with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Option<Rational> {
        if denom == 0 {
            return None;
        }
        Some(Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// `⌈self * k⌉` as a machine integer.
    fn ceil_mul(&self, k: u64) -> Result<u64, ThresholdError> {
        let product = &self.0 * BigRational::from_integer(BigInt::from(k));
        let ceiling = product.ceil().to_integer();
        ceiling
            .to_u64()
            .ok_or_else(|| ThresholdError::ExponentTooLarge(product))
    }

    fn from_ratio(numer: u64, denom: u64) -> Rational {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }
}

impl FromStr for Rational {
    type Err = ThresholdError;

    /// Accepts `num` or `num/den`, optionally signed.
    fn from_str(s: &str) -> Result<Rational, ThresholdError> {
        let bad = || ThresholdError::BadRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// ν-invariants and the fpt bracketing interval they pin down.
#[derive(Debug, Clone)]
pub struct FptResult {
    pub prime: u32,
    /// `(e, ν(p^e))` for `e = 1..=e_max`.
    pub nus: Vec<(u32, u64)>,
    /// `ν(p^e_max) / p^e_max`; the true fpt is strictly above it.
    pub lower: Rational,
    /// `(ν(p^e_max) + 1) / p^e_max`; the true fpt is at most this.
    pub upper: Rational,
}

fn check_nu_inputs(f: &Polynomial, at: &Ideal) -> Result<(), ThresholdError> {
    if f.is_zero() {
        return Err(ThresholdError::ZeroPolynomial);
    }
    match crate::purity::ideal_member(at, f) {
        Ok(true) => {}
        Ok(false) => return Err(ThresholdError::NotInLocality),
        Err(e) => return Err(e.into()),
    }
    if at.is_unit_ideal()? {
        return Err(ThresholdError::UnitLocality);
    }
    Ok(())
}

/// `ν(p^e)`: the largest `l` with `f^l ∉ at^[p^e]`, computed by iterated
/// multiplication with reduction after every step. Reduction keeps monomial
/// support inside the box `[0, p^e - 1]` on the flagged variables, bounding
/// intermediate term counts by `p^{en}`.
pub fn nu(f: &Polynomial, e: u32, at: &Ideal) -> Result<u64, ThresholdError> {
    check_nu_inputs(f, at)?;
    let q = f.ring().prime().pow(e)?;
    let membership = BracketMembership::new(at, e)?;
    let guard = q
        .saturating_mul(f.ring().nvars().max(at.gens().len()) as u64)
        .saturating_add(2);
    let mut class = membership.reduce(&Polynomial::one(f.ring()))?;
    for l in 1..=guard {
        class = membership.reduce(&class.mul(f)?)?;
        if class.is_zero() {
            return Ok(l - 1);
        }
    }
    Err(ThresholdError::PowerIterationDiverged)
}

/// Records `ν(p^e)` for `e = 1..=e_max` and brackets the F-pure threshold in
/// the width-`1/p^e_max` interval `(lower, upper]`.
pub fn fpt_bounds(
    f: &Polynomial,
    e_max: u32,
    at: &Ideal,
) -> Result<FptResult, ThresholdError> {
    assert!(e_max >= 1, "e_max must be at least 1");
    let prime = f.ring().characteristic();
    let mut nus = Vec::with_capacity(e_max as usize);
    for e in 1..=e_max {
        let v = nu(f, e, at)?;
        if let Some(&(_, prev)) = nus.last() {
            // ν(p^{e+1}) >= p * ν(p^e), the monotone bracketing fact
            debug_assert!(v >= prev * prime as u64);
        }
        nus.push((e, v));
    }
    let q_max = f.ring().prime().pow(e_max)?;
    let v_max = nus.last().expect("e_max >= 1").1;
    Ok(FptResult {
        prime,
        lower: Rational::from_ratio(v_max, q_max),
        upper: Rational::from_ratio(v_max + 1, q_max),
        nus,
    })
}

/// Sharp F-purity of the pair `(S, t * div f)` at level `e`: true iff
/// `f^⌈t(p^e - 1)⌉ ∉ at^[p^e]`.
pub fn fpure_pair(
    f: &Polynomial,
    t: &Rational,
    e: u32,
    at: &Ideal,
) -> Result<bool, ThresholdError> {
    if t.is_negative() {
        return Err(ThresholdError::NegativeExponent);
    }
    check_nu_inputs(f, at)?;
    let q = f.ring().prime().pow(e)?;
    let exponent = t.ceil_mul(q - 1)?;
    let membership = BracketMembership::new(at, e)?;
    let mut class = membership.reduce(&Polynomial::one(f.ring()))?;
    for _ in 0..exponent {
        if class.is_zero() {
            return Ok(false);
        }
        class = membership.reduce(&class.mul(f)?)?;
    }
    Ok(!class.is_zero())
}

/// A stabilized test-ideal computation.
#[derive(Debug, Clone)]
pub struct TauReport {
    /// `τ(S; f^t)`, the smallest fixed ideal of the twisted Cartier algebra.
    pub ideal: Ideal,
    /// First level `e` with `J_e = J_{e+1}`.
    pub stabilized_at: u32,
}

/// The test ideal of the principal pair `(S, f^t)`, computed as the first
/// repeated value of the ascending root chain
/// `J_e = pe_root(<f^⌈t p^e⌉>, e)` for `e = e_start, e_start + 1, ..`.
///
/// The chain ascends and its union is the test ideal; consecutive agreement
/// is the stabilization test. For thresholds within `1/p^{e_start+1}` of an
/// integer the plateau can occur before the true limit is reached; raising
/// `e_start` tightens the detection. The `budget` caps the number of chain
/// extensions.
pub fn tau_principal(
    f: &Polynomial,
    t: &Rational,
    e_start: u32,
    budget: usize,
) -> Result<TauReport, ThresholdError> {
    if f.is_zero() {
        return Err(ThresholdError::ZeroPolynomial);
    }
    if t.is_negative() {
        return Err(ThresholdError::NegativeExponent);
    }
    assert!(e_start >= 1, "chain must start at level >= 1");

    let chain_member = |e: u32| -> Result<Ideal, ThresholdError> {
        let q = f.ring().prime().pow(e)?;
        let exponent = t.ceil_mul(q)?;
        let power = Ideal::new(f.ring(), [f.pow(exponent)?])?;
        Ok(pe_root(&power, e)?)
    };

    let mut e = e_start;
    let mut current = chain_member(e)?;
    for _ in 0..budget.max(1) {
        let next = chain_member(e + 1)?;
        if !next.contains_ideal(&current)? {
            // ascent J_e ⊆ J_{e+1} is a theorem; failure means a bug
            unreachable!("root chain failed to ascend at level {e}");
        }
        if next.equals(&current)? {
            return Ok(TauReport {
                ideal: current,
                stabilized_at: e,
            });
        }
        current = next;
        e += 1;
    }
    let last = chain_member(e + 1)?;
    Err(ThresholdError::ChainBudgetExhausted(
        Box::new(current),
        Box::new(last),
    ))
}

/// Evaluates `tau_principal` on the grid `k / denom_cap`, `0 <= k <=
/// ⌈t_max * denom_cap⌉`, and reports the grid points where the test ideal
/// strictly drops. Reported values are grid-resolution approximations of the
/// F-jumping numbers, exact when the true jumping number has denominator
/// dividing `denom_cap`.
pub fn jumping_numbers(
    f: &Polynomial,
    t_max: &Rational,
    denom_cap: u64,
    e_level: u32,
    budget: usize,
) -> Result<Vec<Rational>, ThresholdError> {
    if f.is_zero() {
        return Err(ThresholdError::ZeroPolynomial);
    }
    let m = crate::purity::maximal_ideal(f.ring());
    if !crate::purity::ideal_member(&m, f)? {
        return Err(ThresholdError::NotInLocality);
    }
    assert!(
        !t_max.is_negative() && !t_max.as_big().is_zero(),
        "t_max must be positive"
    );
    assert!(denom_cap >= 1, "denominator cap must be positive");

    let k_max = t_max.ceil_mul(denom_cap)?;
    let mut jumps = Vec::new();
    let mut previous = tau_principal(f, &Rational::zero(), e_level, budget)?.ideal;
    for k in 1..=k_max {
        let t = Rational::from_ratio(k, denom_cap);
        let current = tau_principal(f, &t, e_level, budget)?.ideal;
        if !current.equals(&previous)? {
            jumps.push(t);
        }
        previous = current;
    }
    Ok(jumps)
}
