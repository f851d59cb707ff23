//! Sparse multivariate polynomial arithmetic over prime fields.
//!
//! A [`RingDecl`] fixes the ambient ring `F_p[x_1, .., x_n]` together with a
//! monomial order; [`Polynomial`] values are immutable sparse term lists kept
//! in descending order of that ring's monomial order, with coefficients stored
//! as canonical representatives in `1..p`.

mod parse;

pub use parse::{parse_poly, ParseError, ParseErrorKind};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors from ring construction and polynomial arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the 2^31 bound")]
    CharTooLarge(u64),
    #[error("invalid variable name `{0}`")]
    BadVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown monomial order `{0}` (expected grevlex, lex or grlex)")]
    BadOrder(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent overflow: {0} does not fit in 32 bits")]
    ExponentOverflow(u64),
}

/// A validated prime characteristic, `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, PolyError> {
        if p >= (1 << 31) {
            return Err(PolyError::CharTooLarge(p));
        }
        let p = p as u32;
        if !is_prime_u32(p) {
            return Err(PolyError::NotPrime(p as u64));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^e`, rejecting results that cannot index a monomial exponent.
    pub fn pow(self, e: u32) -> Result<u64, PolyError> {
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(self.0 as u64)
                .filter(|&q| q <= u32::MAX as u64)
                .ok_or(PolyError::ExponentOverflow(u64::MAX))?;
        }
        Ok(q)
    }
}

fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Supported monomial orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Grlex,
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<MonomialOrder, PolyError> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::Grlex),
            other => Err(PolyError::BadOrder(other.to_string())),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
        })
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    vars: Vec<String>,
    prime: Prime,
    order: MonomialOrder,
    /// Leading variables forming a lex elimination block (0 for ordinary rings).
    elim: usize,
}

/// A declared polynomial ring `F_p[x_1, .., x_n]` with a monomial order.
///
/// Cheap to clone; two declarations are equal iff they agree on variables,
/// characteristic and order.
#[derive(Debug, Clone)]
pub struct RingDecl(Arc<RingInner>);

impl PartialEq for RingDecl {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for RingDecl {}

fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingDecl {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        prime: Prime,
        order: MonomialOrder,
    ) -> Result<RingDecl, PolyError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(PolyError::BadVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(RingDecl(Arc::new(RingInner {
            vars,
            prime,
            order,
            elim: 0,
        })))
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn prime(&self) -> Prime {
        self.0.prime
    }

    pub fn characteristic(&self) -> u32 {
        self.0.prime.get()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    /// The same variables and characteristic under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingDecl {
        RingDecl(Arc::new(RingInner {
            vars: self.0.vars.clone(),
            prime: self.0.prime,
            order,
            elim: self.0.elim,
        }))
    }

    /// Extends the ring with one fresh auxiliary variable placed in a leading
    /// lex block, for elimination. Returns the extended ring; the auxiliary
    /// variable has index 0 there.
    pub(crate) fn with_elimination_aux(&self) -> RingDecl {
        let mut name = String::from("t");
        let mut counter = 0usize;
        while self.0.vars.iter().any(|v| *v == name) {
            name = format!("t{counter}");
            counter += 1;
        }
        let mut vars = Vec::with_capacity(self.nvars() + 1);
        vars.push(name);
        vars.extend(self.0.vars.iter().cloned());
        RingDecl(Arc::new(RingInner {
            vars,
            prime: self.0.prime,
            order: self.0.order,
            elim: 1,
        }))
    }

    pub(crate) fn elim_block(&self) -> usize {
        self.0.elim
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        let elim = self.0.elim;
        if elim > 0 {
            match a[..elim].cmp(&b[..elim]) {
                Ordering::Equal => {}
                ne => return ne,
            }
            return cmp_plain(self.0.order, &a[elim..], &b[elim..]);
        }
        cmp_plain(self.0.order, a, b)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }
}

fn total_degree(exps: &[u32]) -> u64 {
    exps.iter().map(|&e| e as u64).sum()
}

fn cmp_plain(order: MonomialOrder, a: &[u32], b: &[u32]) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::Grlex => total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b)),
        MonomialOrder::Grevlex => total_degree(a).cmp(&total_degree(b)).then_with(|| {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    // ties break reverse-lex: smaller trailing exponent wins
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }),
    }
}

/// An exponent vector; arity always matches the owning ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn variable(nvars: usize, index: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        total_degree(&self.exps)
    }

    /// Largest single exponent; the building block of the gauge.
    pub fn max_exp(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        debug_assert_eq!(self.arity(), other.arity());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            exps.push(
                a.checked_add(b)
                    .ok_or(PolyError::ExponentOverflow(a as u64 + b as u64))?,
            );
        }
        Ok(Monomial { exps })
    }

    /// Scales every exponent by `k`; used for Frobenius powers.
    pub fn checked_scale(&self, k: u64) -> Result<Monomial, PolyError> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let s = (a as u64)
                .checked_mul(k)
                .ok_or(PolyError::ExponentOverflow(u64::MAX))?;
            if s > u32::MAX as u64 {
                return Err(PolyError::ExponentOverflow(s));
            }
            exps.push(s as u32);
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(&b, &a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on (a, p); a is nonzero mod p
    let (mut r0, mut r1) = (a as i64, p as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a zero divisor");
    (s0.rem_euclid(p as i64)) as u32
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

/// A sparse polynomial over `F_p`, terms sorted descending in the ring order,
/// coefficients canonical in `1..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingDecl,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &RingDecl) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingDecl) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn constant(ring: &RingDecl, c: u64) -> Polynomial {
        let p = ring.characteristic() as u64;
        let c = (c % p) as u32;
        if c == 0 {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn variable(ring: &RingDecl, index: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.nvars(), index), 1)],
        }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs:
    /// reduces mod p, merges duplicates, drops zeros and sorts canonically.
    pub fn from_terms(
        ring: &RingDecl,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Polynomial {
        let p = ring.characteristic() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity mismatch");
            let e = acc.entry(m).or_insert(0);
            *e = (*e + c % p) % p;
        }
        let mut terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (m, c as u32))
            .collect();
        terms.sort_unstable_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already canonical (descending, nonzero, reduced); internal.
    pub(crate) fn from_sorted_terms(ring: &RingDecl, terms: Vec<(Monomial, u32)>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingDecl {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    /// Leading (monomial, coefficient) in the ring order.
    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value as an element of `F_p` when the polynomial is constant.
    pub fn constant_value(&self) -> Option<u32> {
        if self.terms.is_empty() {
            Some(0)
        } else if self.terms.len() == 1 && self.terms[0].0.is_one() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(rhs)?;
        let p = self.ring.characteristic();
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.ring.cmp_monomials(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = add_mod(self.terms[i].1, rhs.terms[j].1, p);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.ring.characteristic();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), p - c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.characteristic();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), mul_mod(*a, c, p)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial, PolyError> {
        let p = self.ring.characteristic();
        let c = c % p;
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mono, a) in &self.terms {
            terms.push((mono.checked_mul(m)?, mul_mod(*a, c, p)));
        }
        // shifting by a fixed monomial preserves the order
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(rhs)?;
        let p = self.ring.characteristic() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.checked_mul(mb)?;
                let e = acc.entry(m).or_insert(0);
                *e = (*e + *ca as u64 * *cb as u64) % p;
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (m, c as u32))
            .collect();
        terms.sort_unstable_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self + c * x^m * g`, merging in one pass; the workhorse of division.
    pub(crate) fn add_scaled(
        &self,
        g: &Polynomial,
        m: &Monomial,
        c: u32,
    ) -> Result<Polynomial, PolyError> {
        self.add(&g.mul_term(m, c)?)
    }

    /// `f^k` by repeated squaring.
    pub fn pow(&self, k: u64) -> Result<Polynomial, PolyError> {
        let mut result = Polynomial::one(&self.ring);
        if k == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result)
    }

    /// `f^q` for `q = p^e` via the Frobenius endomorphism: exponents scale by
    /// `q`, coefficients are fixed (Fermat).
    pub fn frobenius_pow(&self, q: u64) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_scale(q)?, *c));
        }
        // exponent scaling preserves relative order for grevlex/lex/grlex
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) if lc == 1 => self.clone(),
            Some((_, lc)) => {
                let p = self.ring.characteristic();
                self.scale(inv_mod(lc, p))
            }
        }
    }

    /// Rebuilds the polynomial in a ring with the same variables and
    /// characteristic but a possibly different order.
    pub fn reorder(&self, ring: &RingDecl) -> Result<Polynomial, PolyError> {
        if ring.vars() != self.ring.vars() || ring.prime() != self.ring.prime() {
            return Err(PolyError::RingMismatch);
        }
        Ok(Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.clone(), *c as u64)),
        ))
    }

    fn fmt_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.ring.vars().iter().zip(m.exps()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical print: descending terms joined by ` + `, coefficients in `1..p`,
/// `-` never printed, unit coefficients omitted on nonconstant monomials.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                self.fmt_monomial(f, m)?;
            } else {
                write!(f, "{c}*")?;
                self.fmt_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
