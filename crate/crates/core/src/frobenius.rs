//! `e`-th root ideals `a^[1/p^e]`.
//!
//! Over `F_p` the ring `R` is free over `R^q` (`q = p^e`) on the monomials with
//! every exponent below `q`. Writing each generator as `Σ_μ g_μ^q · μ` in that
//! basis, the root ideal is generated by all the coefficients `g_μ`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideals::{EchelonBasis, Ideal};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// The basis `B_e` of `R` over `R^{p^e}`: monomials with all exponents `< q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusBasisIndex {
    e: u32,
    q: u64,
}

impl FrobeniusBasisIndex {
    pub fn new(ring: &Ring, e: u32) -> Result<Self> {
        let p = ring.characteristic() as u64;
        let q = p
            .checked_pow(e)
            .filter(|q| *q <= ring.max_exponent() as u64 + 1)
            .ok_or(Error::ExponentOverflow(ring.max_exponent() as u64))?;
        Ok(FrobeniusBasisIndex { e, q })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Whether `mu` belongs to `B_e`.
    pub fn contains(&self, mu: &Monomial) -> bool {
        mu.exponents().iter().all(|&u| (u as u64) < self.q)
    }
}

/// `f = Σ_μ g_μ^q · μ` with `μ ∈ B_e`; parts with `g_μ = 0` are omitted and
/// the rest are sorted by descending degrevlex order of `μ`.
#[derive(Debug, Clone)]
pub struct RootDecomposition {
    index: FrobeniusBasisIndex,
    parts: Vec<(Monomial, Polynomial)>,
}

impl RootDecomposition {
    pub fn index(&self) -> FrobeniusBasisIndex {
        self.index
    }

    pub fn parts(&self) -> &[(Monomial, Polynomial)] {
        &self.parts
    }

    pub fn part(&self, mu: &Monomial) -> Option<&Polynomial> {
        self.parts.iter().find(|(m, _)| m == mu).map(|(_, g)| g)
    }

    /// `Σ_μ g_μ^q · μ`.
    pub fn reassemble(&self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for (mu, g) in &self.parts {
            let piece = g.frobenius(self.index.q)?.checked_mul(&Polynomial::monomial(ring, mu.clone(), 1))?;
            acc = acc.checked_add(&piece)?;
        }
        Ok(acc)
    }
}

/// Splits every exponent as `u = q·v + r` with `0 ≤ r < q` and files `c·x^v`
/// under `μ = x^r`. The `q`-th root of `c ∈ F_p` is `c` itself.
pub fn decompose(f: &Polynomial, e: u32) -> Result<RootDecomposition> {
    let ring = f.ring();
    let index = FrobeniusBasisIndex::new(ring, e)?;
    let q = index.q;
    let mut buckets: HashMap<Monomial, Vec<(Monomial, u32)>> = HashMap::new();
    for (m, c) in f.terms() {
        let mut mu = m.clone();
        let mut v = m.clone();
        for (i, &u) in m.exponents().iter().enumerate() {
            mu.exponents_mut()[i] = (u as u64 % q) as u32;
            v.exponents_mut()[i] = (u as u64 / q) as u32;
        }
        buckets.entry(mu).or_default().push((v, *c));
    }
    let mut parts: Vec<(Monomial, Polynomial)> = buckets
        .into_iter()
        .map(|(mu, terms)| (mu, Polynomial::from_terms(ring, terms)))
        .collect();
    parts.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
    Ok(RootDecomposition { index, parts })
}

/// The smallest ideal `b` with `a ⊆ b^[p^e]`, returned with its reduced
/// degrevlex basis as generating set.
pub fn eth_root(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    FrobeniusBasisIndex::new(ring, e)?;
    let decomposed = ideal
        .generators()
        .par_iter()
        .map(|g| decompose(g, e))
        .collect::<Result<Vec<_>>>()?;
    let mut span = EchelonBasis::default();
    for d in decomposed {
        for (_, g) in d.parts {
            span.insert(g.into_terms(), ring.field(), &MonomialOrder::DegRevLex);
        }
    }
    ideal_from_span(ring, span)
}

/// `(a^n)^[1/p^e]` without expanding `a^n`.
///
/// With generators `a_1..a_r`, every product `a^α` (`|α| = n`) factors as
/// `(a^⌊α/q⌋)^q · a^ρ` with `ρ = α mod q`, and `(f^q g)^[1/q] = f · g^[1/q]`.
/// Hence the root is `Σ_ρ a^k · (a^ρ)^[1/q]` over `ρ ∈ [0, q)^r` with
/// `|ρ| ≤ n`, `|ρ| ≡ n (mod q)` and `k = (n - |ρ|)/q`.
pub fn eth_root_of_power(ideal: &Ideal, n: u64, e: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    let index = FrobeniusBasisIndex::new(ring, e)?;
    let q = index.q;
    if n == 0 {
        return Ok(Ideal::unit(ring));
    }
    if ideal.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if ideal.is_unit()? {
        return Ok(Ideal::unit(ring));
    }
    if e == 0 {
        return ideal.power(n)?.interreduced();
    }
    let gens = smallest_generating_set(ideal)?;
    let r = gens.len();

    // powers[i][j] = a_i^j for j < min(q, n + 1)
    let top = q.min(n + 1);
    let powers: Vec<Vec<Polynomial>> = gens
        .par_iter()
        .map(|g| {
            let mut list = vec![Polynomial::one(ring)];
            for j in 1..top {
                list.push(list[j as usize - 1].checked_mul(g)?);
            }
            Ok(list)
        })
        .collect::<Result<Vec<_>>>()?;

    // Enumerate ρ_1..ρ_{r-1}; ρ_r is pinned by the residue condition.
    let mut prefixes: Vec<(u64, Polynomial)> = vec![(0, Polynomial::one(ring))];
    for powers_i in powers.iter().take(r - 1) {
        let mut next = Vec::new();
        for (sum, prod) in &prefixes {
            for (j, pw) in powers_i.iter().enumerate() {
                let s = sum + j as u64;
                if s > n {
                    break;
                }
                next.push((s, prod.checked_mul(pw)?));
            }
        }
        prefixes = next;
    }
    let last = &powers[r - 1];
    let leaves: Vec<(u64, Vec<Polynomial>)> = prefixes
        .par_iter()
        .filter_map(|(sum, prod)| {
            let rho_r = (n - sum) % q;
            if rho_r >= last.len() as u64 || sum + rho_r > n {
                return None;
            }
            let total = sum + rho_r;
            let k = (n - total) / q;
            let parts = prod
                .checked_mul(&last[rho_r as usize])
                .and_then(|f| decompose(&f, e))
                .map(|d| d.parts.into_iter().map(|(_, g)| g).collect());
            Some(parts.map(|p| (k, p)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut buckets: HashMap<u64, EchelonBasis> = HashMap::new();
    for (k, parts) in leaves {
        let span = buckets.entry(k).or_default();
        for g in parts {
            span.insert(g.into_terms(), ring.field(), &MonomialOrder::DegRevLex);
        }
    }
    let mut keys: Vec<u64> = buckets.keys().copied().collect();
    keys.sort_unstable();
    let base = Ideal::new(ring, gens)?;
    let mut span = EchelonBasis::default();
    for k in keys {
        let rows = buckets.remove(&k).expect("key").into_rows();
        let factor = base.power(k)?;
        for row in rows {
            let g = Polynomial::from_sorted_unchecked(ring, row);
            for h in factor.generators() {
                span.insert(h.checked_mul(&g)?.into_terms(), ring.field(), &MonomialOrder::DegRevLex);
            }
        }
    }
    ideal_from_span(ring, span)
}

fn smallest_generating_set(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    let gb = ideal.basis()?;
    if gb.len() < ideal.generators().len() {
        Ok(gb.polynomials())
    } else {
        Ok(ideal.generators().to_vec())
    }
}

fn ideal_from_span(ring: &Ring, span: EchelonBasis) -> Result<Ideal> {
    let gens = span
        .into_rows()
        .into_iter()
        .map(|r| Polynomial::from_sorted_unchecked(ring, r))
        .collect();
    Ideal::new(ring, gens)?.interreduced()
}
