use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::{degrevlex, MonomialOrder};
use super::ring::{same_ring, Ring};
use crate::error::{Error, Result};

pub(crate) type Term = (Monomial, u32);

/// Sparse polynomial in canonical form: terms sorted descending in degrevlex,
/// no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
fn desc(a: &Term, b: &Term) -> Ordering {
    degrevlex(b.0.exponents(), a.0.exponents())
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), index), 1)
    }

    /// `c * m` with `c` a residue in `[0, p)`.
    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = ring.field().from_u64(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds the canonical form of an arbitrary list of terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(ring: &Ring, terms: I) -> Self {
        let field = ring.field();
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(m, c)| (m, field.from_u64(c as u64)))
            .collect();
        debug_assert!(terms.iter().all(|(m, _)| m.nvars() == ring.nvars()));
        terms.sort_unstable_by(desc);
        Polynomial {
            ring: ring.clone(),
            terms: merge_sorted_runs(terms, field),
        }
    }

    /// Terms already sorted descending in degrevlex with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| desc(&w[0], &w[1]) == Ordering::Less));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms sorted descending in `order`.
    pub(crate) fn from_order_sorted(ring: &Ring, mut terms: Vec<Term>, order: &MonomialOrder) -> Self {
        if *order != MonomialOrder::DegRevLex {
            terms.sort_unstable_by(desc);
        }
        Self::from_sorted_unchecked(ring, terms)
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Number of terms.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| degrevlex(m.exponents(), t.0.exponents()))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Order-maximal monomial together with its coefficient.
    pub fn initial_form(&self, order: &MonomialOrder) -> Result<(Monomial, u32)> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        if *order == MonomialOrder::DegRevLex {
            return Ok(first.clone());
        }
        let best = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .expect("nonempty");
        Ok(best.clone())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.ring.field().neg(1)))
    }

    /// Product that rejects exponents beyond the ring's bound.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let bound = self.ring.max_exponent();
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma
                    .checked_mul(mb, bound)
                    .ok_or(Error::ExponentOverflow(bound as u64))?;
                out.push((m, field.mul(*ca, *cb)));
            }
        }
        out.sort_unstable_by(desc);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_sorted_runs(out, field),
        })
    }

    /// `self^k`. Splits `k` into base-`p` digits, so each digit power is taken by
    /// repeated squaring and raised to `p^i` by the Frobenius map.
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let p = self.ring.characteristic() as u64;
        if k == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if let Some(d) = self.total_degree() {
            let bound = self.ring.max_exponent() as u64;
            let top = self.terms.iter().map(|(m, _)| m.max_exponent() as u64).max().unwrap_or(0);
            if d > 0 && top.checked_mul(k).is_none_or(|v| v > bound) {
                return Err(Error::ExponentOverflow(bound));
            }
        }
        let mut result = Polynomial::one(&self.ring);
        let mut rest = k;
        let mut shift = 1u64;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let piece = self.pow_by_squaring(digit)?.frobenius(shift)?;
                result = result.checked_mul(&piece)?;
            }
            rest /= p;
            if rest > 0 {
                shift = shift.checked_mul(p).ok_or(Error::ExponentOverflow(u64::MAX))?;
            }
        }
        Ok(result)
    }

    fn pow_by_squaring(&self, mut k: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^q` for `q` a power of the characteristic: termwise exponent scaling,
    /// since `c^q = c` in `F_p`.
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        let p = self.ring.characteristic() as u64;
        if !is_power_of(q, p) {
            return Err(Error::NotPowerOfCharacteristic { q, p });
        }
        let bound = self.ring.max_exponent();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                m.checked_scale(q, bound)
                    .map(|m| (m, *c))
                    .ok_or(Error::ExponentOverflow(bound as u64))
            })
            .collect::<Result<Vec<_>>>()?;
        // scaling exponents preserves degrevlex
        Ok(Polynomial::from_sorted_unchecked(&self.ring, terms))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field();
        let c = field.from_u64(c as u64);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let field = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), field.mul(*b, c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn map_variables(&self, target: &Ring, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.ring.nvars() || map.iter().any(|&j| j >= target.nvars()) {
            return Err(Error::InvalidArgument("variable map does not fit the rings".into()));
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(n);
            for (i, &e) in m.exponents().iter().enumerate() {
                out.exponents_mut()[map[i]] += e;
            }
            (out, *c)
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// `self + c * other`, rings assumed equal.
    fn combine(&self, other: &Polynomial, c: u32) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: add_scaled(&self.terms, &other.terms, c, None, field, &MonomialOrder::DegRevLex),
        }
    }
}

pub(crate) fn is_power_of(q: u64, p: u64) -> bool {
    if q == 0 || p < 2 {
        return false;
    }
    let mut v = q;
    while v.is_multiple_of(p) {
        v /= p;
    }
    v == 1
}

/// Sums adjacent equal monomials of a sorted list and drops zeros.
fn merge_sorted_runs(terms: Vec<Term>, field: PrimeField) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => {
                last.1 = field.add(last.1, c);
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ if c != 0 => out.push((m, c)),
            _ => {}
        }
    }
    out
}

/// `a + c * shift * b` for term lists sorted descending in `order`.
pub(crate) fn add_scaled(
    a: &[Term],
    b: &[Term],
    c: u32,
    shift: Option<&Monomial>,
    field: PrimeField,
    order: &MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Term {
        let m = match shift {
            Some(s) => t.0.mul(s),
            None => t.0.clone(),
        };
        (m, field.mul(t.1, c))
    };
    let mut pending: Option<Term> = b.first().map(shifted);
    while i < a.len() || pending.is_some() {
        match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    if y.1 != 0 {
                        out.push(pending.take().unwrap());
                    }
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let s = field.add(x.1, y.1);
                    if s != 0 {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let y = pending.take().unwrap();
                if y.1 != 0 {
                    out.push(y);
                }
                j += 1;
                pending = b.get(j).map(shifted);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition across rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction across rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication failed")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::render(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
