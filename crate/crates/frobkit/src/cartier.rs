//! Cartier-module dynamics on ideals: stable images, nilpotence on
//! quotients, and the gauge calculus that certifies termination.
//!
//! The gauge of a polynomial is the largest exponent appearing in any of its
//! monomials (`-inf` for zero). A p^{-e}-linear operator contracts gauges at
//! rate `1/p^e` up to an additive constant, which is why descending image
//! chains stabilize in finitely many steps.

use std::fmt;

use thiserror::Error;

use crate::frobenius::CartierOp;
use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{Monomial, PolyError, Polynomial};

#[derive(Debug, Error)]
pub enum CartierError {
    #[error("the operator does not map the start ideal into itself")]
    NotDescending,
    #[error("the quotient ideal is not compatible with the operator")]
    IncompatibleQuotient,
    #[error("the chain does not descend modulo the quotient ideal")]
    ChainEscapesQuotient,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A gauge value: `-inf` (only for the zero polynomial) or a nonnegative
/// integer. Ordered with `-inf` below every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gauge {
    NegInfinity,
    Finite(u32),
}

impl Gauge {
    pub fn finite(self) -> Option<u32> {
        match self {
            Gauge::NegInfinity => None,
            Gauge::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::NegInfinity => write!(f, "-inf"),
            Gauge::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Max over monomials of the max single-variable exponent; `-inf` for zero.
pub fn gauge_of(f: &Polynomial) -> Gauge {
    f.terms()
        .iter()
        .map(|(m, _)| m.max_exp())
        .max()
        .map_or(Gauge::NegInfinity, Gauge::Finite)
}

/// The contraction constant `K = p^e * max δ(phi(x^i))` over all basis
/// indices `i ∈ [0, p^e - 1]^n`; then `δ(phi(f)) <= δ(f)/p^e + K/p^e` for
/// every `f`. Zero-valued evaluations contribute nothing.
pub fn gauge_bound(op: &CartierOp) -> Result<u64, CartierError> {
    let q = op.modulus()?;
    let n = op.ring().nvars();
    let mut max_gauge: u64 = 0;
    let mut index = vec![0u32; n];
    loop {
        let basis_monomial = Polynomial::from_terms(
            op.ring(),
            [(Monomial::from_exps(index.clone()), 1u64)],
        );
        let value = op.eval(&basis_monomial)?;
        if let Gauge::Finite(d) = gauge_of(&value) {
            max_gauge = max_gauge.max(d as u64);
        }
        // odometer over [0, q-1]^n
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(q * max_gauge);
            }
            if (index[pos] as u64) + 1 < q {
                index[pos] += 1;
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// Outcome of a stable-image iteration.
#[derive(Debug, Clone)]
pub struct StabilizationReport {
    /// Last member of the chain; a genuine fixed point when `certified`.
    pub stable: Ideal,
    /// Index of the first chain member that repeats (0 when the start is
    /// already fixed), or the budget if uncertified.
    pub steps: usize,
    /// True when the chain provably stabilized within the budget.
    pub certified: bool,
}

/// Iterates `J ↦ phi(F^e_* J)` from `start` until the descending chain
/// repeats. Requires `phi(start) ⊆ start`; the certified value is the
/// largest subideal of `start` on which the operator is surjective.
pub fn sigma(
    op: &CartierOp,
    start: &Ideal,
    budget: usize,
) -> Result<StabilizationReport, CartierError> {
    let mut current = start.clone();
    let mut next = op.apply(&current)?;
    if !current.contains_ideal(&next)? {
        return Err(CartierError::NotDescending);
    }
    let mut steps = 0usize;
    while steps < budget {
        if next.equals(&current)? {
            return Ok(StabilizationReport {
                stable: current,
                steps,
                certified: true,
            });
        }
        current = next;
        next = op.apply(&current)?;
        steps += 1;
    }
    let certified = next.equals(&current)?;
    Ok(StabilizationReport {
        stable: current,
        steps,
        certified,
    })
}

/// Nilpotence of the induced structural map on `S/I`: true iff some
/// `κ^n(J) ⊆ I` with `n <= budget`. The chain `κ^n(J) + I` descends, so the
/// first repeat decides.
pub fn is_nilpotent_mod(
    op: &CartierOp,
    j: &Ideal,
    i: &Ideal,
    budget: usize,
) -> Result<bool, CartierError> {
    if !crate::purity::is_compatible(op, i).map_err(flatten_purity)? {
        return Err(CartierError::IncompatibleQuotient);
    }
    let mut current = j.sum(i)?;
    if !current.contains_ideal(&op.apply(j)?.sum(i)?)? {
        return Err(CartierError::ChainEscapesQuotient);
    }
    if current.equals(i)? {
        return Ok(true); // J ⊆ I already, n = 0
    }
    for _ in 1..=budget {
        let next = op.apply(&current)?.sum(i)?;
        if next.equals(i)? {
            return Ok(true);
        }
        if next.equals(&current)? {
            return Ok(false); // proper fixed point: never reaches I
        }
        current = next;
    }
    Ok(false)
}

fn flatten_purity(e: crate::purity::PurityError) -> CartierError {
    match e {
        crate::purity::PurityError::Groebner(g) => CartierError::Groebner(g),
        crate::purity::PurityError::Poly(p) => CartierError::Poly(p),
        // is_compatible raises only the two variants above
        _ => unreachable!("unexpected error from compatibility check"),
    }
}
