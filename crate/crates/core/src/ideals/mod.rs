//! Ideals of `F_p[x_1, ..., x_s]`: Gröbner bases, membership, and the lattice
//! operations used by the threshold computations.

mod file;
mod groebner;
mod linalg;

use std::fmt;
use std::sync::{Arc, Mutex};

pub use file::{parse_ideal_file, render_ideal_file};
pub use groebner::{
    audit_counts, is_groebner_basis, pair_budget, set_audit_period, set_pair_budget, GroebnerBasis,
    DEFAULT_PAIR_BUDGET,
};
pub(crate) use linalg::{echelon, EchelonBasis};

use crate::error::{Error, Result};
use crate::poly::{is_power_of, same_ring, Monomial, MonomialOrder, Polynomial, Ring, Term};

/// An ideal given by generators, with lazily computed reduced Gröbner bases.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    bases: Mutex<Vec<Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            bases: Mutex::new(self.bases.lock().expect("basis cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Ideal generated by `generators`; zero generators and repeats are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens: Vec<Polynomial> = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Self::from_parts(ring, gens))
    }

    fn from_parts(ring: &Ring, generators: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators,
            bases: Mutex::new(Vec::new()),
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Self::from_parts(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Self::from_parts(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_s)`.
    pub fn variables(ring: &Ring) -> Ideal {
        Self::from_parts(ring, (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    /// Reduced Gröbner basis for `order`, computed once and cached.
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if !order.is_valid_for(self.ring.nvars()) {
            return Err(Error::InvalidArgument(format!("{order:?} does not fit this ring")));
        }
        let mut cache = self.bases.lock().expect("basis cache poisoned");
        if let Some(gb) = cache.iter().find(|gb| gb.order() == order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, order, &self.generators)?);
        cache.push(gb.clone());
        Ok(gb)
    }

    /// The degrevlex basis, which every membership test uses.
    pub fn basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis(&MonomialOrder::DegRevLex)
    }

    /// This ideal with its reduced degrevlex basis as generating set.
    pub fn interreduced(&self) -> Result<Ideal> {
        let gb = self.basis()?;
        Ok(Ideal {
            ring: self.ring.clone(),
            generators: gb.polynomials(),
            bases: Mutex::new(vec![gb]),
        })
    }

    pub fn normal_form(&self, f: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
        self.check(f.ring())?;
        Ok(self.groebner_basis(order)?.reduce(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check(f.ring())?;
        Ok(self.basis()?.reduces_to_zero(f))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check(&other.ring)?;
        if self.generators.is_empty() {
            return Ok(true);
        }
        let gb = other.basis()?;
        Ok(self.generators.iter().all(|g| gb.reduces_to_zero(g)))
    }

    /// Equality as ideals, via the reduced degrevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check(&other.ring)?;
        Ok(self.basis()?.same_as(&*other.basis()?))
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.generators.iter().any(|g| g.as_constant().is_some_and(|c| c != 0)) {
            return Ok(true);
        }
        Ok(self.basis()?.is_unit())
    }

    fn check(&self, ring: &Ring) -> Result<()> {
        if same_ring(&self.ring, ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(&other.ring)?;
        let mut rows = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                rows.push(f.checked_mul(g)?.into_terms());
            }
        }
        Ok(self.with_rows(rows))
    }

    /// `self^k`, with `self^0` the unit ideal.
    pub fn power(&self, k: u64) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Ideal generated by the linearly independent part of `rows`.
    fn with_rows(&self, rows: Vec<Vec<Term>>) -> Ideal {
        let rows = echelon(rows, self.ring.field(), &MonomialOrder::DegRevLex);
        let gens = rows
            .into_iter()
            .map(|r| Polynomial::from_sorted_unchecked(&self.ring, r))
            .collect();
        Self::from_parts(&self.ring, gens)
    }

    /// Frobenius power `self^[q]`, generated by the `q`-th powers of the generators.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let p = self.ring.characteristic() as u64;
        if !is_power_of(q, p) {
            return Err(Error::NotPowerOfCharacteristic { q, p });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.frobenius(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `(self : f) = { g : g f ∈ self }`, via `self ∩ (f)` computed by eliminating
    /// an auxiliary variable `t` from `t·self + (1 - t)·(f)`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        self.check(f.ring())?;
        if f.is_zero() || self.contains(f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let t_name = self.ring.fresh_name("t");
        let mut names = vec![t_name];
        names.extend(self.ring.variables().iter().cloned());
        let big = crate::poly::RingSpec::with_max_exponent(
            self.ring.characteristic() as u64,
            &names,
            self.ring.max_exponent(),
        )?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::variable(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::with_capacity(self.generators.len() + 1);
        for g in &self.generators {
            gens.push(&t * &g.map_variables(&big, &shift)?);
        }
        gens.push(&one_minus_t * &f.map_variables(&big, &shift)?);
        let gb = GroebnerBasis::compute(&big, &MonomialOrder::Elimination(1), &gens)?;
        let back: Vec<usize> = std::iter::once(usize::MAX).chain(0..n).collect();
        let mut quotients = Vec::new();
        for h in gb.polynomials() {
            if h.terms().iter().any(|(m, _)| m.exponents()[0] > 0) {
                continue;
            }
            let h = restrict(&h, &self.ring, &back);
            let q = exact_quotient(&h, f).ok_or_else(|| {
                Error::InvalidArgument("intersection element not divisible by f".into())
            })?;
            quotients.push(q);
        }
        Ideal::new(&self.ring, quotients)?.interreduced()
    }

    /// Moves the ideal into `target`, sending variable `i` to `map[i]`.
    pub fn map_variables(&self, target: &Ring, map: &[usize]) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_variables(target, map))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }
}

/// Drops variable slots mapped to `usize::MAX`; their exponents must be zero.
fn restrict(h: &Polynomial, target: &Ring, back: &[usize]) -> Polynomial {
    let terms = h.terms().iter().map(|(m, c)| {
        let mut out = Monomial::one(target.nvars());
        for (i, &e) in m.exponents().iter().enumerate() {
            if back[i] != usize::MAX {
                out.exponents_mut()[back[i]] = e;
            }
        }
        (out, *c)
    });
    Polynomial::from_terms(target, terms)
}

/// `h / f` when `f` divides `h` exactly.
pub fn exact_quotient(h: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    if f.is_zero() {
        return None;
    }
    let field = f.ring().field();
    let (lf, cf) = f.terms()[0].clone();
    let inv = field.inv(cf);
    let mut rest = h.clone();
    let mut quotient = Vec::new();
    while let Some((lm, lc)) = rest.terms().first().cloned() {
        if !lf.divides(&lm) {
            return None;
        }
        let m = lf.quotient_of(&lm);
        let c = field.mul(lc, inv);
        rest = &rest - &f.mul_term(&m, c);
        quotient.push((m, c));
    }
    Some(Polynomial::from_terms(f.ring(), quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};

    fn ideal(r: &Ring, src: &[&str]) -> Ideal {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn containment_and_equality() {
        let r = RingSpec::new(3, &["x", "y"]).unwrap();
        let x = ideal(&r, &["x"]);
        let xy = ideal(&r, &["x", "y"]);
        assert!(x.is_subset_of(&xy).unwrap());
        assert!(!xy.is_subset_of(&x).unwrap());
        assert!(xy.equals(&xy).unwrap());
        assert!(xy.equals(&ideal(&r, &["x + y", "x - y"])).unwrap());
    }

    #[test]
    fn normal_forms() {
        let r = RingSpec::new(7, &["x11", "x12", "x21", "x22"]).unwrap();
        let det = ideal(&r, &["x11*x22 - x12*x21"]);
        let diag = parse_polynomial("x11*x22", &r).unwrap();
        let anti = parse_polynomial("x12*x21", &r).unwrap();
        // degrevlex leads with x12*x21, lex with x11*x22
        assert_eq!(det.normal_form(&anti, &MonomialOrder::DegRevLex).unwrap(), diag);
        assert_eq!(det.normal_form(&diag, &MonomialOrder::DegRevLex).unwrap(), diag);
        assert_eq!(det.normal_form(&diag, &MonomialOrder::Lex).unwrap(), anti);
        let nf = det.normal_form(&anti, &MonomialOrder::DegRevLex).unwrap();
        let one = Polynomial::one(&r);
        assert_eq!(det.normal_form(&one, &MonomialOrder::DegRevLex).unwrap(), one);
        let g = &det.generators()[0];
        assert!(det.normal_form(g, &MonomialOrder::Lex).unwrap().is_zero());
        assert_eq!(det.normal_form(&nf, &MonomialOrder::DegRevLex).unwrap(), nf);
    }

    #[test]
    fn powers_and_products() {
        let r = RingSpec::new(2, &["x", "y"]).unwrap();
        let m = ideal(&r, &["x", "y"]);
        assert!(m.power(1).unwrap().equals(&m).unwrap());
        assert!(m.power(0).unwrap().is_unit().unwrap());
        assert!(m.power(2).unwrap().equals(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert!(m.product(&m).unwrap().equals(&m.power(2).unwrap()).unwrap());
        assert!(Ideal::zero(&r).power(0).unwrap().is_unit().unwrap());
        assert!(Ideal::zero(&r).power(3).unwrap().is_zero());
    }

    #[test]
    fn colon_of_monomial_ideal() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        let c = ideal(&r, &["x*y"]).colon(&parse_polynomial("x", &r).unwrap()).unwrap();
        assert!(c.equals(&ideal(&r, &["y"])).unwrap());
        let c = ideal(&r, &["x^2", "y"]).colon(&parse_polynomial("x + y", &r).unwrap()).unwrap();
        assert!(c.equals(&ideal(&r, &["x", "y"])).unwrap());
        let full = ideal(&r, &["x"]).colon(&parse_polynomial("x*y", &r).unwrap()).unwrap();
        assert!(full.is_unit().unwrap());
    }

    #[test]
    fn bracket_powers() {
        let r = RingSpec::new(3, &["x", "y"]).unwrap();
        let i = ideal(&r, &["x + y"]);
        assert!(i.bracket_power(3).unwrap().equals(&ideal(&r, &["x^3 + y^3"])).unwrap());
        assert!(i.bracket_power(1).unwrap().equals(&i).unwrap());
        assert!(matches!(i.bracket_power(2), Err(Error::NotPowerOfCharacteristic { .. })));
    }

    #[test]
    fn mismatched_rings() {
        let a = RingSpec::new(3, &["x"]).unwrap();
        let b = RingSpec::new(3, &["y"]).unwrap();
        let i = ideal(&a, &["x"]);
        assert_eq!(i.sum(&ideal(&b, &["y"])).unwrap_err(), Error::RingMismatch);
        assert_eq!(i.contains(&Polynomial::one(&b)).unwrap_err(), Error::RingMismatch);
        assert!(Ideal::new(&a, vec![Polynomial::one(&b)]).is_err());
    }

    #[test]
    fn exact_division() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        let f = parse_polynomial("x + y", &r).unwrap();
        let g = parse_polynomial("x^2 - y^2", &r).unwrap();
        assert_eq!(exact_quotient(&g, &f).unwrap(), parse_polynomial("x - y", &r).unwrap());
        assert!(exact_quotient(&f, &g).is_none());
    }
}
