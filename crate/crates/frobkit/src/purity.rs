//! F-purity tests (Fedder's criterion for hypersurfaces, complete
//! intersections and general ideals), Frobenius-splitting detection,
//! compatibility testing, and the lattice closure of compatibly split ideals.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::frobenius::{bracket_power, CartierOp};
use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{PolyError, Polynomial, RingDecl};

#[derive(Debug, Error)]
pub enum PurityError {
    #[error("the polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("the locality ideal must be proper")]
    UnitLocality,
    #[error("the locality ideal must contain the ideal under test")]
    NotContained,
    #[error("empty list of polynomials")]
    EmptyList,
    #[error("a polynomial is not contained in the locality ideal")]
    NotInLocality,
    #[error("seed #{0} is not compatible with the operator")]
    IncompatibleSeed(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The homogeneous maximal ideal `<x_1, .., x_n>`, the default locality point.
pub fn maximal_ideal(ring: &RingDecl) -> Ideal {
    let gens = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i));
    Ideal::new(ring, gens).expect("variables lie in their own ring")
}

/// Membership tester for `at^[p^e]` with a term-wise fast path when `at` is
/// generated by variables (no Gröbner run), used throughout the Fedder and
/// ν-invariant computations.
pub(crate) enum BracketMembership {
    /// `at` generated by a subset of the variables: a term lies in the
    /// bracket iff one of the flagged exponents reaches `q`.
    Monomial { q: u64, flagged: Vec<bool> },
    /// General case: reduce modulo a Gröbner basis of `at^[p^e]`.
    Groebner { bracket: Ideal },
}

impl BracketMembership {
    pub(crate) fn new(at: &Ideal, e: u32) -> Result<BracketMembership, GroebnerError> {
        let ring = at.ring();
        let q = ring.prime().pow(e)?;
        if let Some(flagged) = variable_mask(at) {
            return Ok(BracketMembership::Monomial { q, flagged });
        }
        Ok(BracketMembership::Groebner {
            bracket: bracket_power(at, e)?,
        })
    }

    /// Canonical representative of `f` modulo the bracket; zero iff member.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        match self {
            BracketMembership::Monomial { q, flagged } => {
                let kept = f.terms().iter().filter_map(|(m, c)| {
                    let inside = m
                        .exps()
                        .iter()
                        .zip(flagged)
                        .any(|(&a, &fl)| fl && a as u64 >= *q);
                    if inside {
                        None
                    } else {
                        Some((m.clone(), *c as u64))
                    }
                });
                Ok(Polynomial::from_terms(f.ring(), kept))
            }
            BracketMembership::Groebner { bracket } => bracket.normal_form(f),
        }
    }

    pub(crate) fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// When every generator is a scalar multiple of a single variable, returns
/// the mask of those variables.
fn variable_mask(at: &Ideal) -> Option<Vec<bool>> {
    let mut flagged = vec![false; at.ring().nvars()];
    for g in at.gens() {
        if g.num_terms() != 1 {
            return None;
        }
        let m = &g.terms()[0].0;
        if m.total_degree() != 1 {
            return None;
        }
        let idx = m.exps().iter().position(|&e| e == 1)?;
        flagged[idx] = true;
    }
    Some(flagged)
}

/// Is `f` in `at`? Term-wise for variable-generated `at`.
pub(crate) fn ideal_member(at: &Ideal, f: &Polynomial) -> Result<bool, GroebnerError> {
    if let Some(flagged) = variable_mask(at) {
        return Ok(f.terms().iter().all(|(m, _)| {
            m.exps().iter().zip(&flagged).any(|(&a, &fl)| fl && a >= 1)
        }));
    }
    at.contains(f)
}

fn check_proper(at: &Ideal) -> Result<(), PurityError> {
    if variable_mask(at).is_some() {
        return Ok(()); // variable-generated ideals are proper
    }
    if at.is_unit_ideal()? {
        return Err(PurityError::UnitLocality);
    }
    Ok(())
}

/// Computes the class of `f^k` modulo `at^[p^e]` by iterated multiplication
/// with reduction after every step; exact because reduction is a congruence.
fn power_class(
    f: &Polynomial,
    k: u64,
    membership: &BracketMembership,
) -> Result<Polynomial, GroebnerError> {
    let mut acc = membership.reduce(&Polynomial::one(f.ring()))?;
    for _ in 0..k {
        if acc.is_zero() {
            return Ok(acc);
        }
        acc = membership.reduce(&acc.mul(f)?)?;
    }
    Ok(acc)
}

/// Fedder's criterion for a hypersurface: `S/<f>` is F-pure near `V(at)` iff
/// `f^(p^e - 1) ∉ at^[p^e]`.
pub fn fedder_hypersurface(
    f: &Polynomial,
    e: u32,
    at: &Ideal,
) -> Result<bool, PurityError> {
    if f.is_zero() {
        return Err(PurityError::ZeroPolynomial);
    }
    check_proper(at)?;
    let q = f.ring().prime().pow(e)?;
    let membership = BracketMembership::new(at, e)?;
    Ok(!power_class(f, q - 1, &membership)?.is_zero())
}

/// Fedder's criterion for a complete intersection `<f_1, .., f_m>`: F-pure
/// near `V(at)` iff the product of the `(p^e - 1)`-st powers avoids
/// `at^[p^e]`. The regular-sequence hypothesis is a caller obligation and is
/// not verified.
pub fn fedder_ci(fs: &[Polynomial], e: u32, at: &Ideal) -> Result<bool, PurityError> {
    if fs.is_empty() {
        return Err(PurityError::EmptyList);
    }
    check_proper(at)?;
    let membership = BracketMembership::new(at, e)?;
    let q = at.ring().prime().pow(e)?;
    let mut acc = membership.reduce(&Polynomial::one(at.ring()))?;
    for f in fs {
        if f.is_zero() {
            return Err(PurityError::ZeroPolynomial);
        }
        if !ideal_member(at, f)? {
            return Err(PurityError::NotInLocality);
        }
        for _ in 0..q - 1 {
            if acc.is_zero() {
                return Ok(false);
            }
            acc = membership.reduce(&acc.mul(f)?)?;
        }
    }
    Ok(!acc.is_zero())
}

/// Fedder's criterion in full generality: `S/I` is F-pure near `V(at)` iff
/// `(I^[p^e] : I) ⊄ at^[p^e]`.
pub fn fedder_ideal(i: &Ideal, e: u32, at: &Ideal) -> Result<bool, PurityError> {
    if i.is_unit_ideal()? {
        return Err(PurityError::NotContained);
    }
    check_proper(at)?;
    if !at_contains(at, i)? {
        return Err(PurityError::NotContained);
    }
    if i.is_zero_ideal() {
        // S itself is F-pure
        return Ok(true);
    }
    let colon = bracket_power(i, e)?.colon(i)?;
    let membership = BracketMembership::new(at, e)?;
    for g in colon.basis()? {
        if !membership.contains(g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn at_contains(at: &Ideal, i: &Ideal) -> Result<bool, GroebnerError> {
    for g in i.gens() {
        if !ideal_member(at, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `phi(1)` is a nonzero constant; a scalar rescale of the operator
/// is then a genuine Frobenius splitting.
pub fn is_splitting(op: &CartierOp) -> Result<bool, PurityError> {
    let value = op.eval(&Polynomial::one(op.ring()))?;
    Ok(matches!(value.constant_value(), Some(c) if c != 0))
}

/// Compatibility `phi(F^e_* I) ⊆ I`, tested as `u * I ⊆ I^[p^e]`.
pub fn is_compatible(op: &CartierOp, i: &Ideal) -> Result<bool, PurityError> {
    if op.ring() != i.ring() {
        return Err(PurityError::Poly(PolyError::RingMismatch));
    }
    let bracket = bracket_power(i, op.level())?;
    for g in i.gens() {
        let ug = op.premult().mul(g)?;
        if !bracket.contains(&ug)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of [`lattice_closure`]: deterministically ordered distinct ideals,
/// with `complete == false` when the cap stopped the closure early.
#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub ideals: Vec<Ideal>,
    pub complete: bool,
}

/// Closes `seeds` under pairwise sum, intersection and colon, keeping at most
/// `cap` distinct ideals. Every seed must be compatible with `op`; sums,
/// intersections and colons of compatible ideals are compatible again, so
/// every member of the closure is.
///
/// The trivial ideals `<0>` and `<1>` are compatible with every operator and
/// are not reported: colons such as `I : I` always produce the unit ideal and
/// would otherwise bloat every closure.
pub fn lattice_closure(
    op: &CartierOp,
    seeds: &[Ideal],
    cap: usize,
) -> Result<LatticeReport, PurityError> {
    for (idx, seed) in seeds.iter().enumerate() {
        if !is_compatible(op, seed)? {
            return Err(PurityError::IncompatibleSeed(idx));
        }
    }

    let mut set: BTreeMap<Vec<String>, Ideal> = BTreeMap::new();
    let mut complete = true;
    for seed in seeds {
        if trivial(seed)? {
            continue;
        }
        set.insert(canonical_key(seed)?, seed.clone());
    }
    if set.len() > cap {
        return Ok(LatticeReport {
            ideals: set.into_values().collect(),
            complete: false,
        });
    }

    loop {
        let snapshot: Vec<Ideal> = set.values().cloned().collect();
        let mut fresh: BTreeMap<Vec<String>, Ideal> = BTreeMap::new();
        'pairs: for i in 0..snapshot.len() {
            for j in 0..snapshot.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (&snapshot[i], &snapshot[j]);
                let mut candidates = vec![a.colon(b)?];
                if i < j {
                    candidates.push(a.sum(b)?);
                    candidates.push(a.intersect(b)?);
                }
                for c in candidates {
                    if trivial(&c)? {
                        continue;
                    }
                    let key = canonical_key(&c)?;
                    if set.contains_key(&key) || fresh.contains_key(&key) {
                        continue;
                    }
                    if set.len() + fresh.len() >= cap {
                        complete = false;
                        break 'pairs;
                    }
                    fresh.insert(key, c);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        set.extend(fresh);
        if !complete {
            break;
        }
    }

    Ok(LatticeReport {
        ideals: set.into_values().collect(),
        complete,
    })
}

fn trivial(i: &Ideal) -> Result<bool, GroebnerError> {
    Ok(i.basis()?.is_empty() || i.is_unit_ideal()?)
}

/// Sort/dedup key: the canonical prints of the reduced basis.
pub(crate) fn canonical_key(i: &Ideal) -> Result<Vec<String>, GroebnerError> {
    Ok(i.basis()?.iter().map(|g| g.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, MonomialOrder, Prime};

    fn ring(p: u64, vars: &[&str]) -> RingDecl {
        RingDecl::new(
            vars.iter().copied(),
            Prime::new(p).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn ideal(r: &RingDecl, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(s, r).unwrap())).unwrap()
    }

    #[test]
    fn node_is_f_pure() {
        for p in [2u64, 3, 5, 7] {
            let r = ring(p, &["x", "y"]);
            let f = parse_poly("x*y", &r).unwrap();
            assert!(
                fedder_hypersurface(&f, 1, &maximal_ideal(&r)).unwrap(),
                "node at p = {p}"
            );
        }
    }

    #[test]
    fn cusp_is_not_f_pure() {
        for p in [2u64, 3, 5, 7] {
            let r = ring(p, &["x", "y"]);
            let f = parse_poly("x^3 - y^2", &r).unwrap();
            assert!(
                !fedder_hypersurface(&f, 1, &maximal_ideal(&r)).unwrap(),
                "cusp at p = {p}"
            );
        }
    }

    #[test]
    fn pinch_point_depends_on_characteristic() {
        let r2 = ring(2, &["x", "y", "z"]);
        let f2 = parse_poly("x*y^2 - z^2", &r2).unwrap();
        assert!(!fedder_hypersurface(&f2, 1, &maximal_ideal(&r2)).unwrap());

        for p in [3u64, 5, 7] {
            let r = ring(p, &["x", "y", "z"]);
            let f = parse_poly("x*y^2 - z^2", &r).unwrap();
            assert!(
                fedder_hypersurface(&f, 1, &maximal_ideal(&r)).unwrap(),
                "pinch point at p = {p}"
            );
        }
    }

    #[test]
    fn fedder_at_a_translated_point() {
        // (1,1) is a smooth point of the cusp; F-pure in a neighborhood of it
        let r = ring(5, &["x", "y"]);
        let f = parse_poly("x^3 - y^2", &r).unwrap();
        let at = ideal(&r, &["x - 1", "y - 1"]);
        assert!(fedder_hypersurface(&f, 1, &at).unwrap());
        // while at the singular origin it is not
        assert!(!fedder_hypersurface(&f, 1, &maximal_ideal(&r)).unwrap());
    }

    #[test]
    fn fedder_rejects_bad_inputs() {
        let r = ring(3, &["x"]);
        assert!(matches!(
            fedder_hypersurface(&Polynomial::zero(&r), 1, &maximal_ideal(&r)),
            Err(PurityError::ZeroPolynomial)
        ));
        assert!(matches!(
            fedder_hypersurface(&parse_poly("x", &r).unwrap(), 1, &Ideal::unit(&r)),
            Err(PurityError::UnitLocality)
        ));
    }

    #[test]
    fn fedder_ci_examples() {
        let r3 = ring(3, &["x", "y", "z"]);
        let fs = [
            parse_poly("x*y", &r3).unwrap(),
            parse_poly("z", &r3).unwrap(),
        ];
        assert!(fedder_ci(&fs, 1, &maximal_ideal(&r3)).unwrap());

        let r2 = ring(2, &["x"]);
        assert!(fedder_ci(
            &[parse_poly("x", &r2).unwrap()],
            1,
            &maximal_ideal(&r2)
        )
        .unwrap());
        assert!(!fedder_ci(
            &[parse_poly("x^2", &r2).unwrap()],
            1,
            &maximal_ideal(&r2)
        )
        .unwrap());
    }

    #[test]
    fn fedder_ideal_examples() {
        // union of the coordinate axes in A^3 is F-pure at p = 2
        let r2 = ring(2, &["x", "y", "z"]);
        let axes = ideal(&r2, &["x*y", "x*z", "y*z"]);
        assert!(fedder_ideal(&axes, 1, &maximal_ideal(&r2)).unwrap());

        // cusp again, via the colon route; must agree with the hypersurface path
        let r7 = ring(7, &["x", "y"]);
        let cusp = ideal(&r7, &["x^3 - y^2"]);
        assert!(!fedder_ideal(&cusp, 1, &maximal_ideal(&r7)).unwrap());
        assert!(!fedder_hypersurface(
            &parse_poly("x^3 - y^2", &r7).unwrap(),
            1,
            &maximal_ideal(&r7)
        )
        .unwrap());
    }

    #[test]
    fn elliptic_cone_characteristics() {
        for (p, expected) in [(7u64, true), (5, false), (13, true), (11, false)] {
            let r = ring(p, &["x", "y", "z"]);
            let cone = ideal(&r, &["x^3 + y^3 + z^3"]);
            assert_eq!(
                fedder_ideal(&cone, 1, &maximal_ideal(&r)).unwrap(),
                expected,
                "elliptic cone at p = {p}"
            );
        }
    }

    #[test]
    fn fedder_ideal_checks_containment() {
        let r = ring(3, &["x", "y"]);
        let i = ideal(&r, &["x - 1"]);
        assert!(matches!(
            fedder_ideal(&i, 1, &maximal_ideal(&r)),
            Err(PurityError::NotContained)
        ));
    }

    #[test]
    fn splitting_detection() {
        let r3 = ring(3, &["x", "y"]);
        // u = (xy)^(p-1) is the standard splitting
        let u = parse_poly("x^2*y^2", &r3).unwrap();
        assert!(is_splitting(&CartierOp::new(1, u)).unwrap());

        // Phi itself does not split in more than zero variables
        let r2 = ring(2, &["x"]);
        assert!(!is_splitting(&CartierOp::generator(&r2, 1)).unwrap());

        // u = x^(p-1) + x^p evaluates to 1 at 1
        let u = parse_poly("x + x^2", &r2).unwrap();
        assert!(is_splitting(&CartierOp::new(1, u)).unwrap());
    }

    #[test]
    fn compatibility_examples() {
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        assert!(is_compatible(&op, &ideal(&r, &["x"])).unwrap());
        assert!(!is_compatible(&op, &ideal(&r, &["x - 1"])).unwrap());
        assert!(is_compatible(&op, &ideal(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn splitting_fixes_compatible_ideals() {
        // phi(F_* I) = I, not just contained, when phi splits
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        assert!(is_splitting(&op).unwrap());
        for gens in [&["x"][..], &["y"], &["x", "y"], &["x*y"]] {
            let i = ideal(&r, gens);
            assert!(op.apply(&i).unwrap().equals(&i).unwrap());
        }
    }

    #[test]
    fn lattice_closure_standard_splitting() {
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        let seeds = [ideal(&r, &["x"]), ideal(&r, &["y"])];
        let report = lattice_closure(&op, &seeds, 64).unwrap();
        assert!(report.complete);
        assert_eq!(report.ideals.len(), 4);
        let expected = [
            ideal(&r, &["x"]),
            ideal(&r, &["y"]),
            ideal(&r, &["x", "y"]),
            ideal(&r, &["x*y"]),
        ];
        for want in &expected {
            assert!(
                report
                    .ideals
                    .iter()
                    .any(|got| got.equals(want).unwrap()),
                "missing {:?}",
                canonical_key(want).unwrap()
            );
        }
        for got in &report.ideals {
            assert!(is_compatible(&op, got).unwrap());
        }
    }

    #[test]
    fn lattice_closure_trivial_seeds() {
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        assert!(lattice_closure(&op, &[], 10).unwrap().ideals.is_empty());

        let single = [ideal(&r, &["x", "y"])];
        let report = lattice_closure(&op, &single, 10).unwrap();
        assert_eq!(report.ideals.len(), 1);
        assert!(report.ideals[0].equals(&single[0]).unwrap());
    }

    #[test]
    fn lattice_closure_rejects_incompatible_seed() {
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        let seeds = [ideal(&r, &["x - 1"])];
        assert!(matches!(
            lattice_closure(&op, &seeds, 10),
            Err(PurityError::IncompatibleSeed(0))
        ));
    }

    #[test]
    fn lattice_closure_cap_flags_partial_result() {
        let r = ring(3, &["x", "y"]);
        let op = CartierOp::new(1, parse_poly("x^2*y^2", &r).unwrap());
        let seeds = [ideal(&r, &["x"]), ideal(&r, &["y"])];
        let report = lattice_closure(&op, &seeds, 3).unwrap();
        assert!(!report.complete);
        assert!(report.ideals.len() <= 3);
    }

    #[test]
    fn monotone_e_for_split_hypersurfaces() {
        // splitting at e = 1 persists at e = 2
        for (p, src) in [(3u64, "x*y"), (5, "x*y^2 - z^2")] {
            let vars: &[&str] = if src.contains('z') {
                &["x", "y", "z"]
            } else {
                &["x", "y"]
            };
            let r = ring(p, vars);
            let f = parse_poly(src, &r).unwrap();
            let at = maximal_ideal(&r);
            assert!(fedder_hypersurface(&f, 1, &at).unwrap());
            assert!(fedder_hypersurface(&f, 2, &at).unwrap());
        }
    }
}
