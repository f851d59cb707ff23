//! Buchberger-based Gröbner engine: reduced bases, normal forms, ideal
//! colon, intersection and canonical equality.
//!
//! Pair selection follows the normal strategy (smallest lcm of leading
//! monomials, ties by insertion index) with Gebauer-Möller pruning, so
//! repeated runs produce bit-identical reduced bases. A global pair budget
//! caps runaway computations; exceeding it raises [`GroebnerError::CapExceeded`],
//! never a wrong answer.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use thiserror::Error;

use crate::polyring::{inv_mod, Monomial, PolyError, Polynomial, RingDecl};

/// Default cap on S-pair reductions per Gröbner run.
pub const DEFAULT_PAIR_CAP: usize = 200_000;

static PAIR_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PAIR_CAP);

/// The process-wide pair budget used by cached basis computations.
pub fn pair_cap() -> usize {
    PAIR_CAP.load(AtomicOrdering::Relaxed)
}

/// Overrides the process-wide pair budget (CLI: `--pairs-cap` or
/// `FROBKIT_PAIRS_CAP`).
pub fn set_pair_cap(cap: usize) {
    PAIR_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("pair-reduction budget of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("colon by the zero ideal")]
    ZeroColon,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An ideal presented by generators, with a lazily cached reduced Gröbner
/// basis.
///
/// The cache fill is idempotent: concurrent writers compute the identical
/// canonical basis, so sharing across threads is safe.
#[derive(Debug)]
pub struct Ideal {
    ring: RingDecl,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl Ideal {
    /// Builds an ideal from generators; zero generators are dropped.
    pub fn new(
        ring: &RingDecl,
        gens: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Ideal, PolyError> {
        let mut kept = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch);
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &RingDecl) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &RingDecl) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &RingDecl {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The unique reduced Gröbner basis (monic, auto-reduced, sorted
    /// descending by leading monomial). Cached after the first call.
    pub fn basis(&self) -> Result<&[Polynomial], GroebnerError> {
        self.basis_capped(pair_cap())
    }

    pub fn basis_capped(&self, cap: usize) -> Result<&[Polynomial], GroebnerError> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = buchberger(&self.ring, &self.gens, cap)?;
        Ok(self.gb.get_or_init(|| b))
    }

    /// Unique remainder of `f` modulo the reduced basis; zero iff `f` lies in
    /// the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if f.ring() != &self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        let basis: Vec<&Polynomial> = self.basis()?.iter().collect();
        Ok(reduce_full(f, &basis)?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the reduced Gröbner bases coincide term for term.
    pub fn equals(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        if self.ring != other.ring {
            return Err(GroebnerError::Poly(PolyError::RingMismatch));
        }
        Ok(self.basis()? == other.basis()?)
    }

    pub fn is_unit_ideal(&self) -> Result<bool, GroebnerError> {
        let b = self.basis()?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    /// Ideal sum: generators concatenated.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ideal::new(
            &self.ring,
            self.gens.iter().chain(&other.gens).cloned(),
        )
    }

    /// Ideal quotient `self : other = { g | g * other ⊆ self }`, computed as
    /// the intersection of the single-divisor quotients.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        if self.ring != other.ring {
            return Err(GroebnerError::Poly(PolyError::RingMismatch));
        }
        if other.is_zero_ideal() {
            return Err(GroebnerError::ZeroColon);
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.colon_single(g)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    fn colon_single(&self, g: &Polynomial) -> Result<Ideal, GroebnerError> {
        debug_assert!(!g.is_zero());
        if let Some(c) = g.constant_value() {
            // (I : c) = I for a unit c
            debug_assert_ne!(c, 0);
            return Ok(self.clone());
        }
        if self.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let meet = self.intersect(&Ideal::new(&self.ring, [g.clone()])?)?;
        let mut quotients = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            quotients.push(divide_exact(h, g)?);
        }
        Ok(Ideal::new(&self.ring, quotients)?)
    }

    /// Ideal intersection via elimination: a fresh auxiliary variable `t` in
    /// a leading block, eliminated from `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        if self.ring != other.ring {
            return Err(GroebnerError::Poly(PolyError::RingMismatch));
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ext = self.ring.with_elimination_aux();
        let t = Polynomial::variable(&ext, 0);
        let one_minus_t = Polynomial::one(&ext).sub(&t)?;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(t.mul(&lift(f, &ext))?);
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&lift(g, &ext))?);
        }
        let basis = buchberger(&ext, &gens, pair_cap())?;
        let mut kept = Vec::new();
        for b in &basis {
            if b.terms().iter().all(|(m, _)| m.exps()[0] == 0) {
                kept.push(project(b, &self.ring));
            }
        }
        Ok(Ideal::new(&self.ring, kept)?)
    }

    /// Rebuilds the ideal in a ring with the same variables and characteristic
    /// but a different order. The basis cache does not transfer.
    pub fn reorder(&self, ring: &RingDecl) -> Result<Ideal, PolyError> {
        let gens: Result<Vec<_>, _> = self.gens.iter().map(|g| g.reorder(ring)).collect();
        Ideal::new(ring, gens?)
    }
}

/// Lifts a base-ring polynomial into the elimination ring (aux exponent 0).
fn lift(f: &Polynomial, ext: &RingDecl) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        let mut exps = Vec::with_capacity(m.arity() + 1);
        exps.push(0);
        exps.extend_from_slice(m.exps());
        (Monomial::from_exps(exps), *c as u64)
    });
    Polynomial::from_terms(ext, terms)
}

/// Projects an aux-free elimination-ring polynomial back to the base ring.
fn project(f: &Polynomial, base: &RingDecl) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        debug_assert_eq!(m.exps()[0], 0);
        (Monomial::from_exps(m.exps()[1..].to_vec()), *c as u64)
    });
    Polynomial::from_terms(base, terms)
}

/// Fully reduces `f` modulo `basis`: the division-algorithm remainder, unique
/// when the basis is a Gröbner basis.
pub(crate) fn reduce_full(
    f: &Polynomial,
    basis: &[&Polynomial],
) -> Result<Polynomial, PolyError> {
    let ring = f.ring().clone();
    let p = ring.characteristic();
    let mut r = f.clone();
    let mut out: Vec<(Monomial, u32)> = Vec::new();
    'outer: while let Some((lm, lc)) = r.leading() {
        for g in basis {
            let (gm, gc) = g.leading().expect("basis contains no zero");
            if gm.divides(lm) {
                let shift = gm.quotient_into(lm);
                let factor = crate::polyring::mul_mod(lc, inv_mod(gc, p), p);
                r = r.add_scaled(g, &shift, p - factor)?;
                continue 'outer;
            }
        }
        let (m, c) = r.pop_leading().expect("nonempty");
        out.push((m, c));
    }
    Ok(Polynomial::from_sorted_terms(&ring, out))
}

/// Exact division `h / g`; `h` must be a multiple of `g`.
fn divide_exact(h: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    let ring = h.ring().clone();
    let p = ring.characteristic();
    let (gm, gc) = g.leading().expect("division by zero polynomial");
    let gc_inv = inv_mod(gc, p);
    let mut r = h.clone();
    let mut quotient: Vec<(Monomial, u32)> = Vec::new();
    while let Some((lm, lc)) = r.leading() {
        assert!(
            gm.divides(lm),
            "exact division invariant violated: {h} is not a multiple of {g}"
        );
        let shift = gm.quotient_into(lm);
        let factor = crate::polyring::mul_mod(lc, gc_inv, p);
        quotient.push((shift.clone(), factor));
        r = r.add_scaled(g, &shift, p - factor)?;
    }
    Ok(Polynomial::from_sorted_terms(&ring, quotient))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: usize,
}

/// Buchberger with Gebauer-Möller pair elimination and normal selection.
pub(crate) fn buchberger(
    ring: &RingDecl,
    gens: &[Polynomial],
    cap: usize,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0usize;
    let mut reductions = 0usize;

    for g in gens {
        if g.is_zero() {
            continue;
        }
        add_element(g.monic(), &mut basis, &mut alive, &mut pairs, &mut seq);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm, ties by insertion index
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ring.cmp_monomials(&a.lcm, &b.lcm)
                    .then_with(|| a.seq.cmp(&b.seq))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);

        reductions += 1;
        if reductions > cap {
            return Err(GroebnerError::CapExceeded { cap });
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm)?;
        let live: Vec<&Polynomial> = basis
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g)
            .collect();
        let h = reduce_full(&s, &live)?;
        if !h.is_zero() {
            add_element(h.monic(), &mut basis, &mut alive, &mut pairs, &mut seq);
        }
    }

    Ok(reduce_basis(ring, basis, alive)?)
}

fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    lcm: &Monomial,
) -> Result<Polynomial, PolyError> {
    let (fm, _) = f.leading().expect("nonzero");
    let (gm, _) = g.leading().expect("nonzero");
    // both monic
    let a = f.mul_term(&fm.quotient_into(lcm), 1)?;
    let b = g.mul_term(&gm.quotient_into(lcm), 1)?;
    a.sub(&b)
}

/// Gebauer-Möller update: adds `f`, prunes new and old pairs by the product,
/// M/F and chain criteria, and retires basis elements whose leading monomial
/// becomes reducible.
fn add_element(
    f: Polynomial,
    basis: &mut Vec<Polynomial>,
    alive: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    seq: &mut usize,
) {
    let t = basis.len();
    let fm = f.leading().expect("nonzero").0.clone();

    struct Candidate {
        i: usize,
        lcm: Monomial,
        coprime: bool,
        keep: bool,
    }
    let mut cands: Vec<Candidate> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| alive[*i])
        .map(|(i, g)| {
            let gm = g.leading().expect("nonzero").0;
            Candidate {
                i,
                lcm: gm.lcm(&fm),
                coprime: gm.is_coprime(&fm),
                keep: true,
            }
        })
        .collect();

    // M criterion: drop (i,t) when another lcm(j,t) strictly divides lcm(i,t)
    for a in 0..cands.len() {
        if !cands[a].keep {
            continue;
        }
        for b in 0..cands.len() {
            if a == b || !cands[b].keep {
                continue;
            }
            if cands[b].lcm != cands[a].lcm && cands[b].lcm.divides(&cands[a].lcm) {
                cands[a].keep = false;
                break;
            }
        }
    }
    // F criterion: among equal lcms keep the first
    for a in 0..cands.len() {
        if !cands[a].keep {
            continue;
        }
        for b in (a + 1)..cands.len() {
            if cands[b].keep && cands[b].lcm == cands[a].lcm {
                cands[b].keep = false;
            }
        }
    }
    // B criterion: coprime leading monomials reduce to zero
    for c in &mut cands {
        if c.coprime {
            c.keep = false;
        }
    }

    // chain criterion on old pairs
    pairs.retain(|p| {
        if !fm.divides(&p.lcm) {
            return true;
        }
        let lm_i = basis[p.i].leading().expect("nonzero").0;
        let lm_j = basis[p.j].leading().expect("nonzero").0;
        lm_i.lcm(&fm) == p.lcm || lm_j.lcm(&fm) == p.lcm
    });

    for c in cands {
        if c.keep {
            pairs.push(Pair {
                i: c.i,
                j: t,
                lcm: c.lcm,
                seq: *seq,
            });
            *seq += 1;
        }
    }

    // retire elements with now-reducible leading monomials
    for (i, g) in basis.iter().enumerate() {
        if alive[i] && fm.divides(g.leading().expect("nonzero").0) {
            alive[i] = false;
        }
    }
    basis.push(f);
    alive.push(true);
}

/// Minimalizes and tail-reduces into the unique reduced basis, sorted
/// descending by leading monomial.
fn reduce_basis(
    ring: &RingDecl,
    basis: Vec<Polynomial>,
    alive: Vec<bool>,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut live: Vec<Polynomial> = basis
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    live.sort_by(|a, b| {
        ring.cmp_monomials(
            a.leading().expect("nonzero").0,
            b.leading().expect("nonzero").0,
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in live {
        let gm = g.leading().expect("nonzero").0;
        if !minimal
            .iter()
            .any(|h| h.leading().expect("nonzero").0.divides(gm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h)
            .collect();
        let r = reduce_full(&minimal[i], &others)?;
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        ring.cmp_monomials(
            b.leading().expect("nonzero").0,
            a.leading().expect("nonzero").0,
        )
    });
    Ok(reduced)
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
        Ideal::new(
            r,
            gens.iter().map(|s| parse_poly(s, r).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn linear_reduction() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x", "x + y"]);
        let b = i.basis().unwrap();
        let printed: Vec<String> = b.iter().map(|g| g.to_string()).collect();
        assert_eq!(printed, vec!["x", "y"]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let r = ring(5, &["x"]);
        let i = ideal(&r, &["0"]);
        assert!(i.basis().unwrap().is_empty());
        assert!(i.is_zero_ideal());
    }

    /// Brute-force saturation oracle: every S-pair of a Gröbner basis reduces
    /// to zero.
    fn is_groebner(basis: &[Polynomial]) -> bool {
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                let lcm = f
                    .leading()
                    .unwrap()
                    .0
                    .lcm(g.leading().unwrap().0);
                let s = s_polynomial(&f.monic(), &g.monic(), &lcm).unwrap();
                let refs: Vec<&Polynomial> = basis.iter().collect();
                if !reduce_full(&s, &refs).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn grevlex_basis_verified_against_lex_run() {
        let r = ring(7, &["x", "y"]);
        let i = ideal(&r, &["x^2 - y", "y^2 - x"]);
        let b = i.basis().unwrap();
        assert!(is_groebner(b));

        // independent run under lex must define the same ideal
        let lex = r.with_order(MonomialOrder::Lex);
        let i_lex = i.reorder(&lex).unwrap();
        assert!(is_groebner(i_lex.basis().unwrap()));
        for g in i_lex.basis().unwrap() {
            assert!(i.contains(&g.reorder(&r).unwrap()).unwrap());
        }
        for g in b {
            assert!(i_lex.contains(&g.reorder(&lex).unwrap()).unwrap());
        }
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x"]);
        assert!(i
            .normal_form(&parse_poly("x^2", &r).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            i.normal_form(&parse_poly("x + 1", &r).unwrap())
                .unwrap()
                .to_string(),
            "1"
        );

        // reduction oracle by repeated single-step division
        let j = ideal(&r, &["x^2 - y"]);
        let f = parse_poly("x^3*y", &r).unwrap();
        let nf = j.normal_form(&f).unwrap();
        let oracle = single_step_oracle(&f, &j.basis().unwrap()[0]);
        assert_eq!(nf, oracle);
        assert_eq!(nf.to_string(), "x*y^2");
    }

    /// Reduces by cancelling one reducible term at a time, scanning all terms.
    fn single_step_oracle(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let p = f.ring().characteristic();
        let (gm, gc) = g.leading().unwrap();
        let gm = gm.clone();
        let mut cur = f.clone();
        'scan: loop {
            for (m, c) in cur.terms() {
                if gm.divides(m) {
                    let shift = gm.quotient_into(m);
                    let factor = crate::polyring::mul_mod(*c, inv_mod(gc, p), p);
                    cur = cur.add_scaled(g, &shift, p - factor).unwrap();
                    continue 'scan;
                }
            }
            return cur;
        }
    }

    #[test]
    fn colon_examples() {
        // <f^p> : <f> = <f^{p-1}> for f = x^3 - y^2, p = 3
        let r = ring(3, &["x", "y"]);
        let f = parse_poly("x^3 - y^2", &r).unwrap();
        let fp = Ideal::new(&r, [f.pow(3).unwrap()]).unwrap();
        let colon = fp.colon(&Ideal::new(&r, [f.clone()]).unwrap()).unwrap();
        let expected = Ideal::new(&r, [f.pow(2).unwrap()]).unwrap();
        assert!(colon.equals(&expected).unwrap());

        // <xy> : <x> = <y>
        let r5 = ring(5, &["x", "y"]);
        let colon = ideal(&r5, &["x*y"]).colon(&ideal(&r5, &["x"])).unwrap();
        assert!(colon.equals(&ideal(&r5, &["y"])).unwrap());

        // <x^2, xy> : <x> = <x, y>  (monomial colon oracle)
        let colon = ideal(&r5, &["x^2", "x*y"])
            .colon(&ideal(&r5, &["x"]))
            .unwrap();
        assert!(colon.equals(&ideal(&r5, &["x", "y"])).unwrap());
    }

    #[test]
    fn colon_by_zero_is_an_error() {
        let r = ring(5, &["x"]);
        let e = ideal(&r, &["x"]).colon(&Ideal::zero(&r)).unwrap_err();
        assert_eq!(e, GroebnerError::ZeroColon);
    }

    #[test]
    fn intersect_examples() {
        let r = ring(5, &["x", "y"]);
        let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(meet.equals(&ideal(&r, &["x*y"])).unwrap());

        let i = ideal(&r, &["x^2 + y", "x*y"]);
        assert!(i.intersect(&Ideal::unit(&r)).unwrap().equals(&i).unwrap());

        // CRT-style: <x,y> ∩ <x, y-1> = <x, y^2 - y>
        let meet = ideal(&r, &["x", "y"])
            .intersect(&ideal(&r, &["x", "y - 1"]))
            .unwrap();
        assert!(meet.equals(&ideal(&r, &["x", "y^2 - y"])).unwrap());
        // mutual membership spot checks
        assert!(ideal(&r, &["x", "y"])
            .contains_ideal(&meet)
            .unwrap());
        assert!(ideal(&r, &["x", "y - 1"])
            .contains_ideal(&meet)
            .unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(5, &["x", "y"]);
        assert!(ideal(&r, &["x", "y"])
            .equals(&ideal(&r, &["y", "x + y"]))
            .unwrap());
        assert!(!ideal(&r, &["x"]).equals(&ideal(&r, &["x^2"])).unwrap());

        let r2 = ring(2, &["x", "y"]);
        let a = ideal(&r2, &["x^2 + y^2"]);
        let b = Ideal::new(
            &r2,
            [parse_poly("x + y", &r2).unwrap().pow(2).unwrap()],
        )
        .unwrap();
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn cap_is_respected() {
        let r = ring(7, &["x", "y", "z"]);
        let i = ideal(&r, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]);
        match i.basis_capped(1) {
            Err(GroebnerError::CapExceeded { cap: 1 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        // a fresh, uncached run with the default budget succeeds
        assert!(i.basis().is_ok());
    }

    #[test]
    fn determinism_across_runs() {
        let r = ring(7, &["x", "y", "z"]);
        let gens = ["x^2*y - z", "x*z - y^2", "y*z - x"];
        let b1: Vec<String> = ideal(&r, &gens)
            .basis()
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect();
        for _ in 0..3 {
            let b2: Vec<String> = ideal(&r, &gens)
                .basis()
                .unwrap()
                .iter()
                .map(|g| g.to_string())
                .collect();
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn unit_ideal_detection() {
        let r = ring(5, &["x"]);
        assert!(ideal(&r, &["x", "x + 1"]).is_unit_ideal().unwrap());
        assert!(!ideal(&r, &["x"]).is_unit_ideal().unwrap());
    }

    #[test]
    fn membership_soundness_on_random_combinations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x^2 - y", "x*y - 1"]);
        for _ in 0..25 {
            let mut f = Polynomial::zero(&r);
            for g in i.gens() {
                let coeff_terms: Vec<(Monomial, u64)> = (0..rng.gen_range(1..3))
                    .map(|_| {
                        let e = vec![rng.gen_range(0..3u32), rng.gen_range(0..3u32)];
                        (Monomial::from_exps(e), rng.gen_range(1..5u64))
                    })
                    .collect();
                let mult = Polynomial::from_terms(&r, coeff_terms);
                f = f.add(&mult.mul(g).unwrap()).unwrap();
            }
            assert!(i.contains(&f).unwrap());
        }
    }
}
