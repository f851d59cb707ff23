//! Frobenius bracket powers, the p^e-th root operator, and the
//! non-commutative algebra of p^{-e}-linear maps represented by
//! premultipliers.
//!
//! Over `S = F_p[x_1..x_n]` the pushforward `F^e_* S` is free with basis
//! `x^i`, `0 <= i_j <= p^e - 1`. The generating map `Phi^e` sends the top
//! basis monomial `x^(p^e-1, .., p^e-1)` to 1 and the rest to 0; every
//! p^{-e}-linear endomorphism is `f -> Phi^e(u * f)` for a unique
//! premultiplier `u`.

use std::collections::BTreeMap;

use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{Monomial, PolyError, Polynomial, RingDecl};

/// A p^{-e}-linear operator `phi(f) = Phi^e(u * f)` on its ring.
#[derive(Debug, Clone, PartialEq)]
pub struct CartierOp {
    ring: RingDecl,
    level: u32,
    premult: Polynomial,
}

impl CartierOp {
    /// Operator of level `e >= 1` with premultiplier `u`.
    pub fn new(level: u32, premult: Polynomial) -> CartierOp {
        assert!(level >= 1, "operator level must be at least 1");
        CartierOp {
            ring: premult.ring().clone(),
            level,
            premult,
        }
    }

    /// The generating map `Phi^e` itself (premultiplier 1).
    pub fn generator(ring: &RingDecl, level: u32) -> CartierOp {
        CartierOp::new(level, Polynomial::one(ring))
    }

    pub fn ring(&self) -> &RingDecl {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn premult(&self) -> &Polynomial {
        &self.premult
    }

    /// `p^e`, guarded against exponent overflow.
    pub fn modulus(&self) -> Result<u64, PolyError> {
        self.ring.prime().pow(self.level)
    }

    /// Evaluates `Phi^e(u * f)`: the coefficient polynomial of `u*f` at the
    /// top basis index `(p^e-1, .., p^e-1)`.
    pub fn eval(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let q = self.modulus()?;
        let w = self.premult.mul(f)?;
        let terms = w.terms().iter().filter_map(|(m, c)| {
            let mut root = Vec::with_capacity(m.arity());
            for &a in m.exps() {
                if (a as u64) % q != q - 1 {
                    return None;
                }
                root.push(((a as u64 - (q - 1)) / q) as u32);
            }
            Some((Monomial::from_exps(root), *c as u64))
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// The image ideal `phi(F^e_* J)`, which equals `pe_root(u * J, e)`;
    /// generator-independent.
    pub fn apply(&self, j: &Ideal) -> Result<Ideal, GroebnerError> {
        if j.ring() != &self.ring {
            return Err(GroebnerError::Poly(PolyError::RingMismatch));
        }
        // u*J expanded lazily per generator to bound peak term counts
        let mut roots: Vec<Polynomial> = Vec::new();
        for g in j.gens() {
            let ug = self.premult.mul(g)?;
            root_coefficients(&ug, self.modulus()?, &mut roots)?;
        }
        prune_redundant(&mut roots);
        Ok(Ideal::new(&self.ring, roots)?)
    }

    /// Composition `self ∘ inner` as a single operator: level adds,
    /// premultiplier is `u_self^(p^(e_inner)) * u_inner`.
    pub fn compose(&self, inner: &CartierOp) -> Result<CartierOp, PolyError> {
        if self.ring != inner.ring {
            return Err(PolyError::RingMismatch);
        }
        let q_inner = inner.modulus()?;
        let level = self
            .level
            .checked_add(inner.level)
            .ok_or(PolyError::ExponentOverflow(u64::MAX))?;
        let premult = self
            .premult
            .frobenius_pow(q_inner)?
            .mul(&inner.premult)?;
        Ok(CartierOp {
            ring: self.ring.clone(),
            level,
            premult,
        })
    }
}

/// The bracket power `I^[p^e]`, generated by `p^e`-th powers of the
/// generators; independent of the generating set.
pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal, GroebnerError> {
    let q = i.ring().prime().pow(e)?;
    let gens: Result<Vec<_>, _> = i.gens().iter().map(|g| g.frobenius_pow(q)).collect();
    Ok(Ideal::new(i.ring(), gens?)?)
}

/// The `p^e`-th root: the smallest ideal `K` with `K^[p^e] ⊇ J`. Each
/// generator is expanded over the free basis `x^i`, `0 <= i_j < p^e`, and all
/// coefficient polynomials are collected (coefficient roots are identities
/// over `F_p`).
pub fn pe_root(j: &Ideal, e: u32) -> Result<Ideal, GroebnerError> {
    let q = j.ring().prime().pow(e)?;
    let mut roots: Vec<Polynomial> = Vec::new();
    for g in j.gens() {
        root_coefficients(g, q, &mut roots)?;
    }
    prune_redundant(&mut roots);
    Ok(Ideal::new(j.ring(), roots)?)
}

/// Splits `g = Σ g_i^q x^i` over the basis residues and appends every nonzero
/// coefficient `g_i` to `out`.
fn root_coefficients(
    g: &Polynomial,
    q: u64,
    out: &mut Vec<Polynomial>,
) -> Result<(), PolyError> {
    let ring = g.ring();
    let mut by_residue: BTreeMap<Vec<u32>, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut residue = Vec::with_capacity(m.arity());
        let mut quotient = Vec::with_capacity(m.arity());
        for &a in m.exps() {
            residue.push((a as u64 % q) as u32);
            quotient.push((a as u64 / q) as u32);
        }
        by_residue
            .entry(residue)
            .or_default()
            .push((Monomial::from_exps(quotient), *c as u64));
    }
    for (_, terms) in by_residue {
        let coeff = Polynomial::from_terms(ring, terms);
        if !coeff.is_zero() {
            out.push(coeff);
        }
    }
    Ok(())
}

/// Drops duplicate generators and single-term generators divisible by another
/// single-term generator; cheap, keeps root ideals small.
fn prune_redundant(gens: &mut Vec<Polynomial>) {
    let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        if kept.contains(&g) {
            continue;
        }
        kept.push(g);
    }
    let monos: Vec<Option<Monomial>> = kept
        .iter()
        .map(|g| {
            if g.num_terms() == 1 {
                Some(g.terms()[0].0.clone())
            } else {
                None
            }
        })
        .collect();
    let mut keep_flags = vec![true; kept.len()];
    for i in 0..kept.len() {
        let Some(mi) = &monos[i] else { continue };
        for j in 0..kept.len() {
            if i == j || !keep_flags[j] {
                continue;
            }
            if let Some(mj) = &monos[j] {
                if mj.divides(mi) && (mj != mi || j < i) {
                    keep_flags[i] = false;
                    break;
                }
            }
        }
    }
    *gens = kept
        .into_iter()
        .zip(keep_flags)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();
}
