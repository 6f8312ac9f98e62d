//! Buchberger's algorithm with the Gebauer–Möller criteria.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use super::linalg::echelon;
use crate::error::{Error, Result};
use crate::poly::{add_scaled, Monomial, MonomialOrder, Polynomial, PrimeField, Ring, Term};

/// Default cap on the number of S-pairs processed by one basis computation.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

static PAIR_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_PAIR_BUDGET);
static AUDIT_PERIOD: AtomicU64 = AtomicU64::new(0);
static AUDIT_TICK: AtomicU64 = AtomicU64::new(0);
static AUDITED: AtomicU64 = AtomicU64::new(0);
static AUDIT_FAILURES: AtomicU64 = AtomicU64::new(0);

/// Sets the process-wide S-pair budget.
pub fn set_pair_budget(pairs: usize) {
    PAIR_BUDGET.store(pairs, Ordering::Relaxed);
}

pub fn pair_budget() -> usize {
    PAIR_BUDGET.load(Ordering::Relaxed)
}

/// Re-checks Buchberger's criterion, and that every input generator reduces
/// to zero, on every `period`-th basis computed from now on (`0` disables
/// auditing).
pub fn set_audit_period(period: u64) {
    AUDIT_PERIOD.store(period, Ordering::Relaxed);
}

/// `(bases audited, bases that failed)` since the process started.
pub fn audit_counts() -> (u64, u64) {
    (
        AUDITED.load(Ordering::Relaxed),
        AUDIT_FAILURES.load(Ordering::Relaxed),
    )
}

/// A reduced Gröbner basis: monic, interreduced, sorted by ascending leading
/// monomial. Terms of each element are kept sorted in the basis order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Vec<Term>>,
    masks: Vec<u64>,
}

impl GroebnerBasis {
    pub(crate) fn compute(ring: &Ring, order: &MonomialOrder, generators: &[Polynomial]) -> Result<Self> {
        let field = ring.field();
        let input: Vec<Vec<Term>> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| sorted_in(g, order))
            .collect();
        let elements = buchberger(input, field, order, pair_budget())?;
        let gb = Self::from_elements(ring, order, elements);
        maybe_audit(&gb, generators);
        Ok(gb)
    }

    fn from_elements(ring: &Ring, order: &MonomialOrder, elements: Vec<Vec<Term>>) -> Self {
        let masks = elements.iter().map(|e| e[0].0.divmask()).collect();
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            elements,
            masks,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0][0].0.is_one()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|e| &e[0].0)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|e| Polynomial::from_order_sorted(&self.ring, e.clone(), &self.order))
            .collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let r = self.reduce_terms(sorted_in(f, &self.order));
        Polynomial::from_order_sorted(&self.ring, r, &self.order)
    }

    pub(crate) fn reduce_terms(&self, f: Vec<Term>) -> Vec<Term> {
        reduce(f, &self.elements, &self.masks, None, self.ring.field(), &self.order)
    }

    /// Same remainder as [`reduce`](Self::reduce), but only reports whether it is zero.
    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        if self.is_unit() {
            return true;
        }
        self.reduce_terms(sorted_in(f, &self.order)).is_empty()
    }

    /// Structural equality of two reduced bases.
    pub fn same_as(&self, other: &GroebnerBasis) -> bool {
        self.order == other.order && self.elements == other.elements
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        is_groebner(&self.elements, self.ring.field(), &self.order)
    }
}

/// Checks Buchberger's criterion for arbitrary polynomials.
pub fn is_groebner_basis(polys: &[Polynomial], order: &MonomialOrder) -> bool {
    let Some(first) = polys.first() else {
        return true;
    };
    let field = first.ring().field();
    let elems: Vec<Vec<Term>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| monic(sorted_in(p, order), field))
        .collect();
    is_groebner(&elems, field, order)
}

fn is_groebner(elems: &[Vec<Term>], field: PrimeField, order: &MonomialOrder) -> bool {
    let masks: Vec<u64> = elems.iter().map(|e| e[0].0.divmask()).collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let s = spoly(&elems[i], &elems[j], field, order);
            if !reduce(s, elems, &masks, None, field, order).is_empty() {
                return false;
            }
        }
    }
    true
}

fn maybe_audit(gb: &GroebnerBasis, generators: &[Polynomial]) {
    let period = AUDIT_PERIOD.load(Ordering::Relaxed);
    if period == 0 {
        return;
    }
    let tick = AUDIT_TICK.fetch_add(1, Ordering::Relaxed);
    if !tick.is_multiple_of(period) {
        return;
    }
    AUDITED.fetch_add(1, Ordering::Relaxed);
    if !gb.satisfies_buchberger_criterion() || !generators.iter().all(|g| gb.reduces_to_zero(g)) {
        AUDIT_FAILURES.fetch_add(1, Ordering::Relaxed);
    }
}

pub(crate) fn sorted_in(f: &Polynomial, order: &MonomialOrder) -> Vec<Term> {
    let mut terms = f.terms().to_vec();
    if *order != MonomialOrder::DegRevLex {
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }
    terms
}

fn monic(mut f: Vec<Term>, field: PrimeField) -> Vec<Term> {
    if let Some((_, c)) = f.first() {
        let inv = field.inv(*c);
        if inv != 1 {
            for t in f.iter_mut() {
                t.1 = field.mul(t.1, inv);
            }
        }
    }
    f
}

/// S-polynomial of two monic polynomials.
fn spoly(f: &[Term], g: &[Term], field: PrimeField, order: &MonomialOrder) -> Vec<Term> {
    let lcm = f[0].0.lcm(&g[0].0);
    let sf = f[0].0.quotient_of(&lcm);
    let sg = g[0].0.quotient_of(&lcm);
    let left: Vec<Term> = f[1..].iter().map(|(m, c)| (m.mul(&sf), *c)).collect();
    add_scaled(&left, &g[1..], field.neg(1), Some(&sg), field, order)
}

/// Full reduction of `f` by the elements selected by `active` (all when `None`).
fn reduce(
    mut f: Vec<Term>,
    basis: &[Vec<Term>],
    masks: &[u64],
    active: Option<&[bool]>,
    field: PrimeField,
    order: &MonomialOrder,
) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < f.len() {
        let (lm, lc) = &f[start];
        let mask = lm.divmask();
        let divisor = (0..basis.len()).find(|&k| {
            active.is_none_or(|a| a[k]) && masks[k] & !mask == 0 && basis[k][0].0.divides(lm)
        });
        match divisor {
            Some(k) => {
                let g = &basis[k];
                let shift = g[0].0.quotient_of(lm);
                let c = field.neg(*lc);
                f = add_scaled(&f[start + 1..], &g[1..], c, Some(&shift), field, order);
                start = 0;
            }
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn buchberger(
    input: Vec<Vec<Term>>,
    field: PrimeField,
    order: &MonomialOrder,
    budget: usize,
) -> Result<Vec<Vec<Term>>> {
    let mut input = echelon(input, field, order);
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(unit) = input.iter().find(|f| f[0].0.is_one()) {
        return Ok(vec![unit.clone()]);
    }
    if input.iter().all(|f| f.len() == 1) {
        return Ok(minimal_monomials(input, order));
    }
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for f in input {
        let h = reduce(f, &basis, &masks, Some(&active), field, order);
        if h.is_empty() {
            continue;
        }
        let h = monic(h, field);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        update(&mut basis, &mut masks, &mut active, &mut pairs, h, order);
    }

    let mut processed = 0usize;
    while let Some(pair) = pairs.pop() {
        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded(format!(
                "Gröbner basis needed more than {budget} S-pairs"
            )));
        }
        let s = spoly(&basis[pair.i], &basis[pair.j], field, order);
        let h = reduce(s, &basis, &masks, Some(&active), field, order);
        if h.is_empty() {
            continue;
        }
        let h = monic(h, field);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        update(&mut basis, &mut masks, &mut active, &mut pairs, h, order);
    }

    let keep: Vec<usize> = (0..basis.len()).filter(|&k| active[k]).collect();
    let minimal: Vec<Vec<Term>> = keep.iter().map(|&k| basis[k].clone()).collect();
    let minimal_masks: Vec<u64> = keep.iter().map(|&k| masks[k]).collect();
    let mut reduced: Vec<Vec<Term>> = minimal
        .iter()
        .map(|g| {
            let tail = reduce(g[1..].to_vec(), &minimal, &minimal_masks, None, field, order);
            let mut out = Vec::with_capacity(tail.len() + 1);
            out.push(g[0].clone());
            out.extend(tail);
            out
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced)
}

/// Gebauer–Möller update: adds `h` and its useful pairs, prunes old pairs and
/// deactivates elements whose leading monomial `h` divides.
fn update(
    basis: &mut Vec<Vec<Term>>,
    masks: &mut Vec<u64>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Vec<Term>,
    order: &MonomialOrder,
) {
    let hk = basis.len();
    let lh = h[0].0.clone();

    let candidates: Vec<(usize, Monomial, bool)> = (0..basis.len())
        .filter(|&k| active[k])
        .map(|k| {
            let lg = &basis[k][0].0;
            (k, lh.lcm(lg), lh.is_coprime(lg))
        })
        .collect();

    // Keep a new pair unless another new pair has an lcm properly dividing it
    // (or an equal lcm that was already kept).
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, (k, lcm, coprime)) in candidates.iter().enumerate() {
        if *coprime {
            kept.push((*k, lcm.clone(), true));
            continue;
        }
        let dominated_by_pending = candidates[idx + 1..]
            .iter()
            .any(|(_, other, _)| other.divides(lcm));
        let dominated_by_kept = kept.iter().any(|(_, other, _)| other.divides(lcm));
        if !dominated_by_pending && !dominated_by_kept {
            kept.push((*k, lcm.clone(), false));
        }
    }

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&basis[p.i][0].0) != p.lcm
            && lh.lcm(&basis[p.j][0].0) != p.lcm)
    });
    pairs.extend(
        kept.into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .map(|(k, lcm, _)| Pair { i: k, j: hk, lcm }),
    );
    // Normal strategy: the pair with the smallest lcm sits at the end.
    pairs.sort_by(|a, b| order.cmp(&b.lcm, &a.lcm));

    for k in 0..basis.len() {
        if active[k] && lh.divides(&basis[k][0].0) {
            active[k] = false;
        }
    }
    masks.push(lh.divmask());
    basis.push(h);
    active.push(true);
}

/// Reduced basis of a monomial ideal: its minimal monomial generators.
fn minimal_monomials(mut gens: Vec<Vec<Term>>, order: &MonomialOrder) -> Vec<Vec<Term>> {
    gens.sort_by(|a, b| {
        a[0].0
            .degree()
            .cmp(&b[0].0.degree())
            .then_with(|| order.cmp(&a[0].0, &b[0].0))
    });
    let mut kept: Vec<Vec<Term>> = Vec::new();
    let mut kept_masks: Vec<u64> = Vec::new();
    for g in gens {
        let m = &g[0].0;
        let mask = m.divmask();
        let redundant = kept
            .iter()
            .zip(&kept_masks)
            .any(|(k, km)| km & !mask == 0 && k[0].0.divides(m));
        if !redundant {
            kept_masks.push(mask);
            kept.push(vec![(m.clone(), 1)]);
        }
    }
    kept.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};

    fn polys(r: &Ring, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn already_reduced_and_empty() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        let o = MonomialOrder::DegRevLex;
        let gb = GroebnerBasis::compute(&r, &o, &polys(&r, &["x", "y"])).unwrap();
        assert_eq!(gb.polynomials(), polys(&r, &["y", "x"]));
        assert!(GroebnerBasis::compute(&r, &o, &[]).unwrap().is_empty());
        let gb = GroebnerBasis::compute(&r, &o, &polys(&r, &["x + 1", "x"])).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let gens = polys(&r, &["x^2 - y", "x^3"]);
            let gb = GroebnerBasis::compute(&r, &order, &gens).unwrap();
            assert!(gb.satisfies_buchberger_criterion());
            assert!(is_groebner_basis(&gb.polynomials(), &order));
            for g in &gens {
                assert!(gb.reduces_to_zero(g));
            }
            // x^3 and x*y agree modulo the ideal: x^3 = x*(x^2 - y) + x*y
            let a = gb.reduce(&parse_polynomial("x^3", &r).unwrap());
            let b = gb.reduce(&parse_polynomial("x*y", &r).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn known_lex_basis() {
        // (x^2 + y^2 - 1, x - y) in lex: {x - y, y^2 - 1/2}; over F_7, 1/2 = 4
        let r = RingSpec::new(7, &["x", "y"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &MonomialOrder::Lex, &polys(&r, &["x^2 + y^2 - 1", "x - y"]))
            .unwrap();
        assert_eq!(gb.polynomials(), polys(&r, &["y^2 - 4", "x - y"]));
    }

    #[test]
    fn not_a_basis_is_detected() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        assert!(!is_groebner_basis(&polys(&r, &["x^2 - y", "x*y - 1"]), &MonomialOrder::DegRevLex));
    }

    #[test]
    fn budget_is_enforced() {
        let r = RingSpec::new(32003, &["x", "y", "z"]).unwrap();
        let gens = polys(&r, &["x^2*y + z^2 - 2", "x*y^2 + x*z - 3", "x*y*z + y^2 - 5"]);
        let res = buchberger(
            gens.iter().map(|g| sorted_in(g, &MonomialOrder::DegRevLex)).collect(),
            r.field(),
            &MonomialOrder::DegRevLex,
            2,
        );
        assert!(matches!(res, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn monomial_fast_path_is_minimal() {
        let r = RingSpec::new(2, &["x", "y"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &MonomialOrder::DegRevLex, &polys(&r, &["x^2*y", "x*y", "y^3", "x^5"]))
            .unwrap();
        assert_eq!(gb.polynomials(), polys(&r, &["x*y", "y^3", "x^5"]));
    }
}
