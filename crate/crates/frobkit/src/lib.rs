//! Frobenius-theoretic invariants of polynomial rings over prime fields.
//!
//! The crate computes F-purity via Fedder-type criteria, compatibly split
//! ideals and their lattice closure, Cartier-operator dynamics (stable images,
//! nilpotence, gauge bounds), ν-invariants, F-pure threshold brackets,
//! principal test ideals and F-jumping numbers. Everything is exact: no
//! floating point enters any decision path.

pub mod cartier;
pub mod cli;
pub mod frobenius;
pub mod groebner;
pub mod polyring;
pub mod purity;
pub mod thresholds;

pub use cartier::{gauge_bound, gauge_of, is_nilpotent_mod, sigma, Gauge, StabilizationReport};
pub use frobenius::{bracket_power, pe_root, CartierOp};
pub use groebner::{GroebnerError, Ideal};
pub use polyring::{
    parse_poly, Monomial, MonomialOrder, ParseError, PolyError, Polynomial, Prime, RingDecl,
};
pub use purity::{
    fedder_ci, fedder_hypersurface, fedder_ideal, is_compatible, is_splitting, lattice_closure,
    maximal_ideal, LatticeReport, PurityError,
};
pub use thresholds::{
    fpt_bounds, fpure_pair, jumping_numbers, nu, tau_principal, FptResult, Rational, TauReport,
    ThresholdError,
};
